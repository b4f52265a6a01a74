// Copyright 2026 The mcvqe Authors
// SPDX-License-Identifier: Apache-2.0

#include <mcvqe/integrals.hpp>

#include <fmt/format.h>

#include <cmath>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace mcvqe {

double boys_f0(double t) {
  if (t < kBoysSeriesCutoff) {
    // sum_k (-t)^k / (k! (2k + 1)); eight terms reach 1e-17 below the cutoff
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 8; ++k) {
      term *= -t / k;
      sum += term / (2 * k + 1);
    }
    return sum;
  }
  const double st = std::sqrt(t);
  return 0.5 * std::sqrt(std::numbers::pi / t) * std::erf(st);
}

namespace {

constexpr double kPi = std::numbers::pi;

struct PrimitivePair {
  double p;      // a + b
  double k;      // exp(-ab/p |A-B|^2) * norms * coefficients
  double mu_r2;  // ab/p |A-B|^2
  Vec3 center;   // (aA + bB) / p
};

// Visits every primitive pair of a contraction pair with the prefactor folded in.
template <class F>
void for_each_pair(const ContractedGaussian& a, const ContractedGaussian& b, F&& f) {
  const double r2 = (a.center - b.center).squaredNorm();
  for (std::size_t i = 0; i < a.exponents.size(); ++i) {
    for (std::size_t j = 0; j < b.exponents.size(); ++j) {
      const double ea = a.exponents[i], eb = b.exponents[j];
      const double p = ea + eb;
      const double mu_r2 = ea * eb / p * r2;
      const double norm = a.coefficients[i] * b.coefficients[j] * primitive_norm(ea) *
                          primitive_norm(eb);
      f(PrimitivePair{p, norm * std::exp(-mu_r2), mu_r2,
                      (ea * a.center + eb * b.center) / p});
    }
  }
}

}  // namespace

double overlap_ss(const ContractedGaussian& a, const ContractedGaussian& b) {
  double s = 0.0;
  for_each_pair(a, b, [&](const PrimitivePair& pp) { s += pp.k * std::pow(kPi / pp.p, 1.5); });
  return s;
}

double kinetic_ss(const ContractedGaussian& a, const ContractedGaussian& b, double mass) {
  if (!(mass > 0.0)) throw std::invalid_argument("kinetic_ss: mass must be positive");
  double t = 0.0;
  const double r2 = (a.center - b.center).squaredNorm();
  for (std::size_t i = 0; i < a.exponents.size(); ++i) {
    for (std::size_t j = 0; j < b.exponents.size(); ++j) {
      const double ea = a.exponents[i], eb = b.exponents[j];
      const double p = ea + eb;
      const double mu = ea * eb / p;
      const double s = a.coefficients[i] * b.coefficients[j] * primitive_norm(ea) *
                       primitive_norm(eb) * std::pow(kPi / p, 1.5) * std::exp(-mu * r2);
      t += mu * (3.0 - 2.0 * mu * r2) * s;
    }
  }
  return t / mass;
}

double nuclear_attraction_ss(const ContractedGaussian& a, const ContractedGaussian& b,
                             const ClassicalNucleus& nucleus, int particle_charge) {
  double v = 0.0;
  for_each_pair(a, b, [&](const PrimitivePair& pp) {
    const double t = pp.p * (pp.center - nucleus.position).squaredNorm();
    v += pp.k * 2.0 * kPi / pp.p * boys_f0(t);
  });
  return particle_charge * nucleus.charge * v;
}

double eri_ssss(const ContractedGaussian& a, const ContractedGaussian& b,
                const ContractedGaussian& c, const ContractedGaussian& d, int charge_product) {
  double v = 0.0;
  for_each_pair(a, b, [&](const PrimitivePair& ab) {
    for_each_pair(c, d, [&](const PrimitivePair& cd) {
      const double pq = ab.p + cd.p;
      const double t = ab.p * cd.p / pq * (ab.center - cd.center).squaredNorm();
      v += ab.k * cd.k * 2.0 * std::pow(kPi, 2.5) / (ab.p * cd.p * std::sqrt(pq)) * boys_f0(t);
    });
  });
  return charge_product * v;
}

// ---------------------------------------------------------------------------

std::size_t IntegralSet::index_of(SpeciesKind kind) const {
  for (std::size_t i = 0; i < species.size(); ++i)
    if (species[i].species.kind == kind) return i;
  throw std::invalid_argument(fmt::format("integral set has no {} block", to_string(kind)));
}

const CrossIntegrals* IntegralSet::cross_block(std::size_t a, std::size_t b) const {
  for (const auto& c : cross)
    if ((c.a == a && c.b == b) || (c.a == b && c.b == a)) return &c;
  return nullptr;
}

double nuclear_repulsion(const std::vector<ClassicalNucleus>& nuclei) {
  double e = 0.0;
  for (std::size_t a = 0; a < nuclei.size(); ++a) {
    for (std::size_t b = 0; b < a; ++b) {
      const double r = (nuclei[a].position - nuclei[b].position).norm();
      if (r == 0.0) throw std::invalid_argument("classical nuclei overlap");
      e += nuclei[a].charge * nuclei[b].charge / r;
    }
  }
  return e;
}

namespace {

Tensor4 coulomb_block(const std::vector<ContractedGaussian>& left,
                      const std::vector<ContractedGaussian>& right, int charge_product,
                      bool same_species) {
  const std::size_t n = left.size(), m = right.size();
  Tensor4 t(n, n, m, m);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q <= p; ++q)
      for (std::size_t r = 0; r < m; ++r)
        for (std::size_t s = 0; s <= r; ++s) {
          if (same_species && p * (p + 1) / 2 + q < r * (r + 1) / 2 + s) continue;
          const double v = eri_ssss(left[p], left[q], right[r], right[s], charge_product);
          t(p, q, r, s) = t(q, p, r, s) = t(p, q, s, r) = t(q, p, s, r) = v;
          if (same_species) t(r, s, p, q) = t(s, r, p, q) = t(r, s, q, p) = t(s, r, q, p) = v;
        }
  return t;
}

}  // namespace

IntegralSet build_integral_set(const SystemSpec& spec) {
  spec.validate();
  IntegralSet ints;
  ints.e_nn = nuclear_repulsion(spec.nuclei);

  std::vector<std::vector<ContractedGaussian>> bases;
  for (const auto& sp : spec.species) {
    auto fns = spec.basis_for(sp.kind);
    const auto n = static_cast<Eigen::Index>(fns.size());
    SpeciesIntegrals block{sp, Eigen::MatrixXd(n, n), Eigen::MatrixXd(n, n), {}};
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j <= i; ++j) {
        const auto& a = fns[static_cast<std::size_t>(i)];
        const auto& b = fns[static_cast<std::size_t>(j)];
        double h = kinetic_ss(a, b, sp.mass);
        for (const auto& nuc : spec.nuclei) h += nuclear_attraction_ss(a, b, nuc, sp.charge);
        block.overlap(i, j) = block.overlap(j, i) = overlap_ss(a, b);
        block.h1(i, j) = block.h1(j, i) = h;
      }
    }
    block.eri = coulomb_block(fns, fns, sp.charge * sp.charge, true);
    ints.species.push_back(std::move(block));
    bases.push_back(std::move(fns));
  }
  for (std::size_t a = 0; a < spec.species.size(); ++a)
    for (std::size_t b = a + 1; b < spec.species.size(); ++b)
      ints.cross.push_back({a, b,
                            coulomb_block(bases[a], bases[b],
                                          spec.species[a].charge * spec.species[b].charge,
                                          false)});
  return ints;
}

// ---------------------------------------------------------------------------
// Extended FCIDUMP

namespace {

std::map<std::string, std::string> parse_namelist(const std::string& header) {
  // "&TAG KEY=V,KEY=V &END"
  std::map<std::string, std::string> out;
  std::string body = header;
  if (auto end = body.find("&END"); end != std::string::npos) body.erase(end);
  if (auto sp = body.find_first_of(" \t"); sp != std::string::npos)
    body.erase(0, sp);
  else
    body.clear();
  std::string item;
  std::istringstream in(body);
  while (std::getline(in, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t");
      const auto e = s.find_last_not_of(" \t");
      return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    out[trim(item.substr(0, eq))] = trim(item.substr(eq + 1));
  }
  return out;
}

std::string value_line(double v, std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
  return fmt::format("{:24.16e} {:4d} {:4d} {:4d} {:4d}\n", v, i, j, k, l);
}

}  // namespace

std::string write_fcidump(const IntegralSet& ints, double threshold) {
  std::string out;
  out += fmt::format("&NEO NSPECIES={},NCROSS={},BASIS={} &END\n", ints.species.size(),
                     ints.cross.size(), ints.mo_basis ? "MO" : "AO");
  for (const auto& sp : ints.species) {
    const std::size_t n = sp.dim();
    out += fmt::format("&SPECIES NAME={},NORB={},NPART={},MASS={:.17g},CHARGE={},SPINORB={} &END\n",
                       to_string(sp.species.kind), n, sp.species.count, sp.species.mass,
                       sp.species.charge, sp.species.spin_orbitals_per_spatial);
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = 0; q <= p; ++q)
        for (std::size_t r = 0; r < n; ++r)
          for (std::size_t s = 0; s <= r; ++s) {
            if (p * (p + 1) / 2 + q < r * (r + 1) / 2 + s) continue;
            const double v = sp.eri(p, q, r, s);
            if (std::abs(v) > threshold) out += value_line(v, p + 1, q + 1, r + 1, s + 1);
          }
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = 0; q <= p; ++q) {
        const double v = sp.h1(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q));
        if (std::abs(v) > threshold) out += value_line(v, p + 1, q + 1, 0, 0);
      }
    out += fmt::format("&OVERLAP NAME={} &END\n", to_string(sp.species.kind));
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = 0; q <= p; ++q) {
        const double v = sp.overlap(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q));
        if (std::abs(v) > threshold) out += value_line(v, p + 1, q + 1, 0, 0);
      }
  }
  for (const auto& c : ints.cross) {
    out += fmt::format("&CROSS A={},B={} &END\n", to_string(ints.species[c.a].species.kind),
                       to_string(ints.species[c.b].species.kind));
    const auto& t = c.eri;
    for (std::size_t p = 0; p < t.dim(0); ++p)
      for (std::size_t q = 0; q <= p; ++q)
        for (std::size_t r = 0; r < t.dim(2); ++r)
          for (std::size_t s = 0; s <= r; ++s) {
            const double v = t(p, q, r, s);
            if (std::abs(v) > threshold) out += value_line(v, p + 1, q + 1, r + 1, s + 1);
          }
  }
  out += "&CORE &END\n";
  out += value_line(ints.e_nn, 0, 0, 0, 0);
  return out;
}

IntegralSet read_fcidump(std::string_view text) {
  IntegralSet ints;
  enum class Section { none, species, overlap, cross, core } section = Section::none;
  SpeciesIntegrals* current = nullptr;
  CrossIntegrals* current_cross = nullptr;
  std::istringstream stream{std::string(text)};
  std::string line;
  int line_no = 0;
  bool saw_header = false;

  auto fail = [&](const std::string& msg) -> void {
    throw std::runtime_error(fmt::format("FCIDUMP line {}: {}", line_no, msg));
  };
  auto find_species = [&](const std::string& name) -> std::size_t {
    const auto kind = species_from_string(name);
    for (std::size_t i = 0; i < ints.species.size(); ++i)
      if (ints.species[i].species.kind == kind) return i;
    fail("section refers to undeclared species " + name);
    return 0;
  };

  while (std::getline(stream, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;  // provenance comments
    if (line[first] == '&') {
      const std::string header = line.substr(first);
      auto kv = parse_namelist(header);
      if (header.rfind("&NEO", 0) == 0) {
        saw_header = true;
        ints.mo_basis = kv["BASIS"] == "MO";
        section = Section::none;
      } else if (header.rfind("&SPECIES", 0) == 0) {
        try {
          ParticleSpecies sp;
          sp.kind = species_from_string(kv.at("NAME"));
          sp.count = std::stoi(kv.at("NPART"));
          sp.mass = std::stod(kv.at("MASS"));
          sp.charge = std::stoi(kv.at("CHARGE"));
          sp.spin_orbitals_per_spatial = std::stoi(kv.at("SPINORB"));
          const auto n = static_cast<std::size_t>(std::stoul(kv.at("NORB")));
          const auto ni = static_cast<Eigen::Index>(n);
          ints.species.push_back({sp, Eigen::MatrixXd::Zero(ni, ni), Eigen::MatrixXd::Zero(ni, ni),
                                  Tensor4(n, n, n, n)});
        } catch (const std::out_of_range&) {
          fail("&SPECIES header is missing a field");
        }
        current = &ints.species.back();
        section = Section::species;
      } else if (header.rfind("&OVERLAP", 0) == 0) {
        current = &ints.species[find_species(kv["NAME"])];
        section = Section::overlap;
      } else if (header.rfind("&CROSS", 0) == 0) {
        const auto a = find_species(kv["A"]);
        const auto b = find_species(kv["B"]);
        ints.cross.push_back({a, b,
                              Tensor4(ints.species[a].dim(), ints.species[a].dim(),
                                      ints.species[b].dim(), ints.species[b].dim())});
        current_cross = &ints.cross.back();
        section = Section::cross;
      } else if (header.rfind("&CORE", 0) == 0) {
        section = Section::core;
      } else {
        fail("unknown section " + header);
      }
      continue;
    }

    std::istringstream in(line);
    double v = 0.0;
    long i = 0, j = 0, k = 0, l = 0;
    if (!(in >> v >> i >> j >> k >> l)) fail("expected '<value> i j k l'");
    if (i < 0 || j < 0 || k < 0 || l < 0) fail("negative index");
    const auto p = static_cast<std::size_t>(i), q = static_cast<std::size_t>(j);
    const auto r = static_cast<std::size_t>(k), s = static_cast<std::size_t>(l);
    switch (section) {
      case Section::species: {
        const std::size_t n = current->dim();
        if (p < 1 || q < 1 || p > n || q > n || r > n || s > n) fail("index out of range");
        if (r == 0 && s == 0) {
          current->h1(static_cast<Eigen::Index>(p - 1), static_cast<Eigen::Index>(q - 1)) = v;
          current->h1(static_cast<Eigen::Index>(q - 1), static_cast<Eigen::Index>(p - 1)) = v;
        } else {
          if (r < 1 || s < 1) fail("index out of range");
          auto& t = current->eri;
          const std::size_t a = p - 1, b = q - 1, c = r - 1, d = s - 1;
          t(a, b, c, d) = t(b, a, c, d) = t(a, b, d, c) = t(b, a, d, c) = v;
          t(c, d, a, b) = t(d, c, a, b) = t(c, d, b, a) = t(d, c, b, a) = v;
        }
        break;
      }
      case Section::overlap: {
        const std::size_t n = current->dim();
        if (p < 1 || q < 1 || p > n || q > n) fail("index out of range");
        current->overlap(static_cast<Eigen::Index>(p - 1), static_cast<Eigen::Index>(q - 1)) = v;
        current->overlap(static_cast<Eigen::Index>(q - 1), static_cast<Eigen::Index>(p - 1)) = v;
        break;
      }
      case Section::cross: {
        auto& t = current_cross->eri;
        if (p < 1 || q < 1 || r < 1 || s < 1 || p > t.dim(0) || q > t.dim(1) || r > t.dim(2) ||
            s > t.dim(3))
          fail("index out of range");
        const std::size_t a = p - 1, b = q - 1, c = r - 1, d = s - 1;
        t(a, b, c, d) = t(b, a, c, d) = t(a, b, d, c) = t(b, a, d, c) = v;
        break;
      }
      case Section::core:
        ints.e_nn = v;
        break;
      case Section::none:
        fail("value line outside any section");
    }
  }
  if (!saw_header) throw std::runtime_error("FCIDUMP: missing &NEO header");
  return ints;
}

}  // namespace mcvqe
