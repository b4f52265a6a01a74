// Copyright 2026 The mcvqe Authors
// SPDX-License-Identifier: Apache-2.0

#include <mcvqe/basis.hpp>

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

using namespace mcvqe;
using Catch::Matchers::WithinAbs;

namespace {

// Self-overlap straight from the primitive sum: sum_ij c_i c_j N_i N_j (pi / (a_i + a_j))^{3/2}.
double self_overlap(const ContractedGaussian& g) {
  double s = 0.0;
  for (std::size_t i = 0; i < g.exponents.size(); ++i)
    for (std::size_t j = 0; j < g.exponents.size(); ++j) {
      const double a = g.exponents[i], b = g.exponents[j];
      const double ni = std::pow(2.0 * a / std::numbers::pi, 0.75);
      const double nj = std::pow(2.0 * b / std::numbers::pi, 0.75);
      s += g.coefficients[i] * g.coefficients[j] * ni * nj * std::pow(std::numbers::pi / (a + b), 1.5);
    }
  return s;
}

}  // namespace

TEST_CASE("species constants and invariants") {
  const auto e = ParticleSpecies::electron(2);
  CHECK(e.mass == 1.0);
  CHECK(e.charge == -1);
  CHECK(e.spin_orbitals_per_spatial == 2);
  const auto p = ParticleSpecies::proton(1);
  CHECK(p.charge == 1);
  CHECK(p.spin_orbitals_per_spatial == 1);
  CHECK_THAT(p.mass, WithinAbs(1836.15267343, 1e-8));
  const auto pos = ParticleSpecies::positron(1);
  CHECK(pos.mass == 1.0);
  CHECK(pos.charge == 1);

  ParticleSpecies bad = e;
  bad.mass = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = e;
  bad.count = -1;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  CHECK_THROWS(species_from_string("muon"));
  CHECK(species_from_string("positron") == SpeciesKind::positron);
}

TEST_CASE("normalize gives unit self-overlap") {
  for (double a : {0.05, 1.0, 37.5}) {
    const auto g = normalize({Vec3::Zero(), {a}, {3.0}, SpeciesKind::electron});
    CHECK_THAT(self_overlap(g), WithinAbs(1.0, 1e-14));
  }
  const auto sto = sto3g_hydrogen(Vec3::Zero(), SpeciesKind::electron);
  CHECK_THAT(self_overlap(sto), WithinAbs(1.0, 1e-12));
  const auto again = normalize(sto);
  for (std::size_t i = 0; i < sto.coefficients.size(); ++i)
    CHECK_THAT(again.coefficients[i], WithinAbs(sto.coefficients[i], 1e-12));
  CHECK_THROWS_AS(normalize({Vec3::Zero(), {-1.0}, {1.0}, SpeciesKind::electron}), std::invalid_argument);
  CHECK_THROWS_AS(normalize({Vec3::Zero(), {1.0, 2.0}, {1.0}, SpeciesKind::electron}),
                  std::invalid_argument);
}

TEST_CASE("literal hydrogen basis data") {
  // zeta = 1.24 STO-3G and the 6-31G (3+1) split for hydrogen
  const auto sto = sto3g_hydrogen(Vec3::Zero(), SpeciesKind::electron);
  REQUIRE(sto.exponents.size() == 3);
  CHECK_THAT(sto.exponents[0], WithinAbs(3.42525091, 1e-8));
  CHECK_THAT(sto.exponents[1], WithinAbs(0.62391373, 1e-8));
  CHECK_THAT(sto.exponents[2], WithinAbs(0.16885540, 1e-8));
  const auto b = b631g_hydrogen(Vec3::Zero(), SpeciesKind::positron);
  REQUIRE(b.size() == 2);
  CHECK(b[0].exponents.size() == 3);
  CHECK_THAT(b[0].exponents[0], WithinAbs(18.7311370, 1e-7));
  CHECK_THAT(b[1].exponents[0], WithinAbs(0.1612778, 1e-7));
  CHECK(b[0].species == SpeciesKind::positron);
  for (const auto& g : b) CHECK_THAT(self_overlap(g), WithinAbs(1.0, 1e-12));
}

TEST_CASE("builtin systems") {
  const auto psh = builtin_system(BuiltinSystem::psh);
  CHECK(psh.basis_for(SpeciesKind::electron).size() == 2);
  CHECK(psh.basis_for(SpeciesKind::positron).size() == 2);
  CHECK(psh.nuclei.size() == 1);
  CHECK(psh.total_particles() == 3);

  const auto hhq = builtin_system(BuiltinSystem::hhq);
  CHECK(hhq.basis_for(SpeciesKind::electron).size() == 2);
  CHECK(hhq.basis_for(SpeciesKind::proton).size() == 2);
  REQUIRE(hhq.quantum_center.has_value());
  CHECK_THAT(hhq.quantum_center->z(), WithinAbs(kDefaultHHqBondLength, 0.0));

  // every center is a classical nucleus or the quantum-proton center
  for (const auto* spec : {&psh, &hhq})
    for (const auto& g : spec->basis) {
      bool ok = spec->quantum_center && (g.center - *spec->quantum_center).norm() == 0.0;
      for (const auto& n : spec->nuclei) ok = ok || (g.center - n.position).norm() == 0.0;
      CHECK(ok);
    }

  CHECK(builtin_system(BuiltinSystem::hhq) == hhq);
  CHECK(builtin_system(BuiltinSystem::psh) == psh);
}

TEST_CASE("builtin overrides") {
  GeometryOverrides ov;
  ov.proton_exponents = std::array<double, 2>{6.0, 24.0};
  ov.bond_length = 1.3;
  const auto hhq = builtin_system(BuiltinSystem::hhq, ov);
  const auto prot = hhq.basis_for(SpeciesKind::proton);
  REQUIRE(prot.size() == 2);
  CHECK(prot[0].exponents[0] == 6.0);
  CHECK(prot[1].exponents[0] == 24.0);
  CHECK_THAT(prot[0].center.z(), WithinAbs(1.3, 0.0));

  ov.proton_exponents = std::array<double, 2>{6.0, -1.0};
  CHECK_THROWS_AS(builtin_system(BuiltinSystem::hhq, ov), std::invalid_argument);
  CHECK_THROWS(builtin_from_string("h2o"));
}

TEST_CASE("system text round trip") {
  for (auto which : {BuiltinSystem::hhq, BuiltinSystem::psh}) {
    const auto spec = builtin_system(which);
    const auto back = parse_system(format_system(spec));
    CHECK(back.species == spec.species);
    CHECK(back.nuclei == spec.nuclei);
    REQUIRE(back.basis.size() == spec.basis.size());
    for (std::size_t i = 0; i < spec.basis.size(); ++i)
      for (std::size_t k = 0; k < spec.basis[i].coefficients.size(); ++k)
        CHECK_THAT(back.basis[i].coefficients[k], WithinAbs(spec.basis[i].coefficients[k], 1e-13));
  }
  CHECK_THROWS(parse_system("species electron 2\nbasis electron 0 0 0\n 1.0 1.0\n"));
  CHECK_THROWS(parse_system("species electron 2\nwibble\n"));
  // a basis function whose species is not declared
  CHECK_THROWS(parse_system("species electron 2\nbasis proton 0 0 0\n 1.0 1.0\nend\n"));
}
