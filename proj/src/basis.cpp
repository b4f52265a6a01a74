// Copyright 2026 The mcvqe Authors
// SPDX-License-Identifier: Apache-2.0

#include <mcvqe/basis.hpp>

#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace mcvqe {

std::string_view to_string(SpeciesKind kind) {
  switch (kind) {
    case SpeciesKind::electron: return "electron";
    case SpeciesKind::proton: return "proton";
    case SpeciesKind::positron: return "positron";
  }
  return "?";
}

SpeciesKind species_from_string(std::string_view name) {
  if (name == "electron") return SpeciesKind::electron;
  if (name == "proton") return SpeciesKind::proton;
  if (name == "positron") return SpeciesKind::positron;
  throw std::invalid_argument(fmt::format("unknown species '{}'", name));
}

ParticleSpecies ParticleSpecies::electron(int count) {
  return {SpeciesKind::electron, 1.0, -1, count, 2};
}

ParticleSpecies ParticleSpecies::proton(int count, double mass) {
  return {SpeciesKind::proton, mass, +1, count, 1};
}

ParticleSpecies ParticleSpecies::positron(int count) {
  return {SpeciesKind::positron, 1.0, +1, count, 1};
}

void ParticleSpecies::validate() const {
  if (!(mass > 0.0)) throw std::invalid_argument("species mass must be positive");
  if (kind == SpeciesKind::electron && mass != 1.0)
    throw std::invalid_argument("electron mass must be exactly 1");
  if (count < 0) throw std::invalid_argument("species count must be non-negative");
  if (spin_orbitals_per_spatial != 1 && spin_orbitals_per_spatial != 2)
    throw std::invalid_argument("spin_orbitals_per_spatial must be 1 or 2");
}

void ContractedGaussian::validate() const {
  if (exponents.empty() || exponents.size() != coefficients.size())
    throw std::invalid_argument("contraction needs matching, non-empty exponent/coefficient lists");
  for (double a : exponents)
    if (!(a > 0.0)) throw std::invalid_argument(fmt::format("non-positive exponent {}", a));
}

double primitive_norm(double alpha) {
  return std::pow(2.0 * alpha / std::numbers::pi, 0.75);
}

ContractedGaussian normalize(const ContractedGaussian& g) {
  g.validate();
  // <g|g> over normalized primitives: sum c_i c_j (2 sqrt(a_i a_j) / (a_i + a_j))^{3/2}
  double self = 0.0;
  for (std::size_t i = 0; i < g.exponents.size(); ++i) {
    for (std::size_t j = 0; j < g.exponents.size(); ++j) {
      const double ai = g.exponents[i], aj = g.exponents[j];
      self += g.coefficients[i] * g.coefficients[j] *
              std::pow(2.0 * std::sqrt(ai * aj) / (ai + aj), 1.5);
    }
  }
  ContractedGaussian out = g;
  const double scale = 1.0 / std::sqrt(self);
  for (double& c : out.coefficients) c *= scale;
  return out;
}

// ---------------------------------------------------------------------------
// Hydrogen basis data, as distributed by the EMSL/BSE basis set exchange.

ContractedGaussian sto3g_hydrogen(const Vec3& center, SpeciesKind species) {
  return normalize({center,
                    {3.42525091, 0.62391373, 0.16885540},
                    {0.15432897, 0.53532814, 0.44463454},
                    species});
}

std::vector<ContractedGaussian> b631g_hydrogen(const Vec3& center, SpeciesKind species) {
  return {
      normalize({center,
                 {18.7311370, 2.8253937, 0.6401217},
                 {0.03349460, 0.23472695, 0.81375733},
                 species}),
      normalize({center, {0.1612778}, {1.0}, species}),
  };
}

// ---------------------------------------------------------------------------

std::vector<ContractedGaussian> SystemSpec::basis_for(SpeciesKind kind) const {
  std::vector<ContractedGaussian> out;
  for (const auto& g : basis)
    if (g.species == kind) out.push_back(g);
  return out;
}

const ParticleSpecies& SystemSpec::species_of(SpeciesKind kind) const {
  for (const auto& s : species)
    if (s.kind == kind) return s;
  throw std::invalid_argument(fmt::format("system has no {} species", to_string(kind)));
}

bool SystemSpec::has_species(SpeciesKind kind) const {
  for (const auto& s : species)
    if (s.kind == kind) return true;
  return false;
}

int SystemSpec::total_particles() const {
  int n = 0;
  for (const auto& s : species) n += s.count;
  return n;
}

void SystemSpec::validate() const {
  if (species.empty()) throw std::invalid_argument("system declares no species");
  for (std::size_t i = 0; i < species.size(); ++i) {
    species[i].validate();
    for (std::size_t j = 0; j < i; ++j)
      if (species[i].kind == species[j].kind)
        throw std::invalid_argument("species declared twice");
  }
  if (total_particles() < 1) throw std::invalid_argument("system has no quantum particles");
  for (const auto& n : nuclei)
    if (!(n.charge > 0.0)) throw std::invalid_argument("classical nucleus charge must be positive");
  for (const auto& g : basis) {
    g.validate();
    if (!has_species(g.species))
      throw std::invalid_argument(
          fmt::format("basis function for undeclared species {}", to_string(g.species)));
  }
  for (const auto& s : species) {
    const auto n_spatial = static_cast<int>(basis_for(s.kind).size());
    const int capacity = n_spatial * s.spin_orbitals_per_spatial;
    if (s.count > capacity)
      throw std::invalid_argument(
          fmt::format("{} basis too small for {} particles", to_string(s.kind), s.count));
  }
}

bool SystemSpec::operator==(const SystemSpec& o) const {
  return name == o.name && species == o.species && nuclei == o.nuclei && basis == o.basis &&
         quantum_center.has_value() == o.quantum_center.has_value() &&
         (!quantum_center || *quantum_center == *o.quantum_center);
}

BuiltinSystem builtin_from_string(std::string_view name) {
  if (name == "hhq" || name == "HHq") return BuiltinSystem::hhq;
  if (name == "psh" || name == "PsH") return BuiltinSystem::psh;
  throw std::invalid_argument(fmt::format("unknown builtin system '{}'", name));
}

SystemSpec builtin_system(BuiltinSystem which, const GeometryOverrides& overrides) {
  SystemSpec spec;
  const Vec3 origin = Vec3::Zero();
  if (which == BuiltinSystem::psh) {
    spec.name = "PsH";
    spec.species = {ParticleSpecies::electron(2), ParticleSpecies::positron(1)};
    spec.nuclei = {{1.0, origin}};
    // One basis for every quantum particle: the positron reuses hydrogen 6-31G.
    for (auto kind : {SpeciesKind::electron, SpeciesKind::positron})
      for (auto& g : b631g_hydrogen(origin, kind)) spec.basis.push_back(std::move(g));
  } else {
    const double r = overrides.bond_length.value_or(kDefaultHHqBondLength);
    if (!(r > 0.0)) throw std::invalid_argument("bond length must be positive");
    const auto exps = overrides.proton_exponents.value_or(kDefaultProtonExponents);
    for (double a : exps)
      if (!(a > 0.0))
        throw std::invalid_argument(fmt::format("non-positive protonic exponent {}", a));
    const Vec3 qc(0.0, 0.0, r);
    spec.name = "HHq";
    spec.species = {ParticleSpecies::electron(2),
                    ParticleSpecies::proton(1, overrides.proton_mass.value_or(kProtonMass))};
    spec.nuclei = {{1.0, origin}};
    spec.quantum_center = qc;
    spec.basis.push_back(sto3g_hydrogen(origin, SpeciesKind::electron));
    spec.basis.push_back(sto3g_hydrogen(qc, SpeciesKind::electron));
    for (double a : exps)
      spec.basis.push_back(normalize({qc, {a}, {1.0}, SpeciesKind::proton}));
  }
  spec.validate();
  return spec;
}

// ---------------------------------------------------------------------------
// Text format

namespace {

[[noreturn]] void parse_error(int line, const std::string& msg) {
  throw std::runtime_error(fmt::format("system file line {}: {}", line, msg));
}

Vec3 read_vec3(std::istringstream& in, int line) {
  Vec3 v;
  if (!(in >> v.x() >> v.y() >> v.z())) parse_error(line, "expected three coordinates");
  return v;
}

}  // namespace

SystemSpec parse_system(std::string_view text) {
  SystemSpec spec;
  std::istringstream stream{std::string(text)};
  std::string raw;
  int line_no = 0;
  ContractedGaussian* open_basis = nullptr;

  while (std::getline(stream, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream in(raw);
    std::string key;
    if (!(in >> key)) continue;

    if (open_basis) {
      if (key == "end") {
        if (open_basis->exponents.empty()) parse_error(line_no, "empty basis block");
        *open_basis = normalize(*open_basis);
        open_basis = nullptr;
        continue;
      }
      std::istringstream prim(raw);
      double a = 0.0, c = 0.0;
      if (!(prim >> a >> c)) parse_error(line_no, "expected '<exponent> <coefficient>'");
      if (!(a > 0.0)) parse_error(line_no, "non-positive exponent");
      open_basis->exponents.push_back(a);
      open_basis->coefficients.push_back(c);
      continue;
    }

    if (key == "name") {
      in >> spec.name;
    } else if (key == "species") {
      std::string kind;
      int count = 0;
      if (!(in >> kind >> count)) parse_error(line_no, "expected 'species <kind> <count>'");
      ParticleSpecies s;
      try {
        const auto k = species_from_string(kind);
        s = k == SpeciesKind::electron ? ParticleSpecies::electron(count)
            : k == SpeciesKind::proton ? ParticleSpecies::proton(count)
                                       : ParticleSpecies::positron(count);
      } catch (const std::invalid_argument& e) {
        parse_error(line_no, e.what());
      }
      std::string opt;
      while (in >> opt) {
        if (opt.rfind("mass=", 0) == 0)
          s.mass = std::stod(opt.substr(5));
        else
          parse_error(line_no, "unknown species option '" + opt + "'");
      }
      spec.species.push_back(s);
    } else if (key == "nucleus") {
      ClassicalNucleus n;
      if (!(in >> n.charge)) parse_error(line_no, "expected nuclear charge");
      n.position = read_vec3(in, line_no);
      spec.nuclei.push_back(n);
    } else if (key == "quantum_center") {
      spec.quantum_center = read_vec3(in, line_no);
    } else if (key == "basis") {
      std::string kind;
      if (!(in >> kind)) parse_error(line_no, "expected basis species");
      ContractedGaussian g;
      try {
        g.species = species_from_string(kind);
      } catch (const std::invalid_argument& e) {
        parse_error(line_no, e.what());
      }
      g.center = read_vec3(in, line_no);
      spec.basis.push_back(g);
      open_basis = &spec.basis.back();
    } else {
      parse_error(line_no, "unknown keyword '" + key + "'");
    }
  }
  if (open_basis) parse_error(line_no, "unterminated basis block");
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(fmt::format("invalid system: {}", e.what()));
  }
  return spec;
}

SystemSpec load_system(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open system file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_system(buf.str());
}

std::string format_system(const SystemSpec& spec) {
  std::string out;
  out += fmt::format("name {}\n", spec.name.empty() ? "unnamed" : spec.name);
  for (const auto& s : spec.species)
    out += fmt::format("species {} {} mass={:.17g}\n", to_string(s.kind), s.count, s.mass);
  for (const auto& n : spec.nuclei)
    out += fmt::format("nucleus {:.17g} {:.17g} {:.17g} {:.17g}\n", n.charge, n.position.x(),
                       n.position.y(), n.position.z());
  if (spec.quantum_center)
    out += fmt::format("quantum_center {:.17g} {:.17g} {:.17g}\n", spec.quantum_center->x(),
                       spec.quantum_center->y(), spec.quantum_center->z());
  for (const auto& g : spec.basis) {
    out += fmt::format("basis {} {:.17g} {:.17g} {:.17g}\n", to_string(g.species), g.center.x(),
                       g.center.y(), g.center.z());
    for (std::size_t i = 0; i < g.exponents.size(); ++i)
      out += fmt::format("  {:.17g} {:.17g}\n", g.exponents[i], g.coefficients[i]);
    out += "end\n";
  }
  return out;
}

}  // namespace mcvqe
