// Copyright 2026 The mcvqe Authors
// SPDX-License-Identifier: Apache-2.0

#include <mcvqe/exact.hpp>

#include <catch_amalgamated.hpp>

#include "oracles.hpp"

#include <Eigen/Eigenvalues>

#include <bit>

using namespace mcvqe;
using Catch::Matchers::WithinAbs;

namespace {

// Lowest eigenvalue of the occupation-basis matrix over bitstrings with the given counts.
double sector_minimum(const FermionOp& h, std::uint64_t e_mask, int ne, std::uint64_t n_mask, int nn) {
  const Eigen::MatrixXcd full = oracle::occupation_matrix(h);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index b = 0; b < full.rows(); ++b) {
    const auto u = static_cast<std::uint64_t>(b);
    if (std::popcount(u & e_mask) == ne && std::popcount(u & n_mask) == nn) keep.push_back(b);
  }
  Eigen::MatrixXcd sub(static_cast<Eigen::Index>(keep.size()), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t i = 0; i < keep.size(); ++i)
    for (std::size_t j = 0; j < keep.size(); ++j)
      sub(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = full(keep[i], keep[j]);
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(sub).eigenvalues()(0);
}

}  // namespace

TEST_CASE("small analytic spectra") {
  const auto z = PauliSum::single(1, PauliString::from_string("Z"));
  CHECK_THAT(fci_ground_state(z).energy, WithinAbs(-1.0, 1e-14));

  PauliSum h(1);
  h.add(PauliString::from_string("Z"), 0.3);
  h.add(PauliString::from_string("X"), -0.4);
  const auto r = fci_ground_state(h);
  CHECK_THAT(r.energy, WithinAbs(-0.5, 1e-14));
  CHECK(r.residual < 1e-12);
}

TEST_CASE("sector construction") {
  const auto& p = oracle::problem("hhq");
  const auto occ = sector_occupations(p.layout, reference_sector(p.layout));
  CHECK(occ.size() == 12);
  CHECK(std::is_sorted(occ.begin(), occ.end()));
  CHECK(std::find(occ.begin(), occ.end(), p.layout.reference_occupation()) != occ.end());
  for (auto o : occ) {
    CHECK(std::popcount(o & p.layout.electron_mask()) == 2);
    CHECK(std::popcount(o & p.layout.nuclear_mask()) == 1);
  }
  CHECK(sector_occupations(p.layout, {0, 0}).size() == 1);
}

TEST_CASE("sector FCI against an independent diagonalization") {
  for (const auto* name : {"hhq", "psh"}) {
    const auto& p = oracle::problem(name);
    const auto sector = reference_sector(p.layout);
    const double ref = sector_minimum(p.fermion, p.layout.electron_mask(), sector.electrons,
                                      p.layout.nuclear_mask(), sector.nuclear);

    const auto direct = fci_ground_state(p.fermion, p.layout, sector);
    CHECK_THAT(direct.energy, WithinAbs(ref, 1e-10));
    CHECK(direct.residual < 1e-8);
    CHECK(direct.dimension == 12);
    CHECK_THAT(direct.vector.norm(), WithinAbs(1.0, 1e-12));

    for (auto mapping : {Mapping::jordan_wigner, Mapping::bravyi_kitaev}) {
      const auto r = fci_ground_state(map_to_qubits(p.fermion, mapping), p.layout, sector, mapping);
      CHECK_THAT(r.energy, WithinAbs(ref, 1e-10));
      CHECK(r.residual < 1e-8);
    }
    // variational bound and the unrestricted register minimum
    CHECK(direct.energy <= p.hf.energy + 1e-12);
    CHECK(fci_ground_state(jordan_wigner(p.fermion)).energy <= direct.energy + 1e-10);
  }
}

TEST_CASE("fock_matrix is the ladder-operator matrix") {
  const auto& p = oracle::problem("psh");
  const Eigen::MatrixXcd m = fock_matrix(p.fermion);
  CHECK((m - oracle::occupation_matrix(p.fermion)).cwiseAbs().maxCoeff() < 1e-12);
}
