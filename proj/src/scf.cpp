// Copyright 2026 The mcvqe Authors
// SPDX-License-Identifier: Apache-2.0

#include <mcvqe/scf.hpp>

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include <cmath>
#include <stdexcept>

namespace mcvqe {

namespace {

using Eigen::Index;
using Eigen::MatrixXd;

// J[P]_{pq} = sum_rs (pq|rs) P_rs
MatrixXd coulomb(const Tensor4& eri, const MatrixXd& density) {
  const Index n = static_cast<Index>(eri.dim(0));
  const Index m = static_cast<Index>(eri.dim(2));
  MatrixXd j = MatrixXd::Zero(n, n);
  for (Index p = 0; p < n; ++p)
    for (Index q = 0; q < n; ++q) {
      double v = 0.0;
      for (Index r = 0; r < m; ++r)
        for (Index s = 0; s < m; ++s)
          v += eri(static_cast<std::size_t>(p), static_cast<std::size_t>(q),
                   static_cast<std::size_t>(r), static_cast<std::size_t>(s)) *
               density(r, s);
      j(p, q) = v;
    }
  return j;
}

// Same as coulomb() but contracting the left index pair of a cross block.
MatrixXd coulomb_left(const Tensor4& eri, const MatrixXd& density) {
  const Index n = static_cast<Index>(eri.dim(0));
  const Index m = static_cast<Index>(eri.dim(2));
  MatrixXd j = MatrixXd::Zero(m, m);
  for (Index r = 0; r < m; ++r)
    for (Index s = 0; s < m; ++s) {
      double v = 0.0;
      for (Index p = 0; p < n; ++p)
        for (Index q = 0; q < n; ++q)
          v += eri(static_cast<std::size_t>(p), static_cast<std::size_t>(q),
                   static_cast<std::size_t>(r), static_cast<std::size_t>(s)) *
               density(p, q);
      j(r, s) = v;
    }
  return j;
}

// K[P]_{pq} = sum_rs (pr|qs) P_rs
MatrixXd exchange(const Tensor4& eri, const MatrixXd& density) {
  const Index n = static_cast<Index>(eri.dim(0));
  MatrixXd k = MatrixXd::Zero(n, n);
  for (Index p = 0; p < n; ++p)
    for (Index q = 0; q < n; ++q) {
      double v = 0.0;
      for (Index r = 0; r < n; ++r)
        for (Index s = 0; s < n; ++s)
          v += eri(static_cast<std::size_t>(p), static_cast<std::size_t>(r),
                   static_cast<std::size_t>(q), static_cast<std::size_t>(s)) *
               density(r, s);
      k(p, q) = v;
    }
  return k;
}

// Two-body mean field of a species acting on itself.
MatrixXd intra_field(const SpeciesIntegrals& sp, const MatrixXd& density) {
  const MatrixXd j = coulomb(sp.eri, density);
  const MatrixXd k = exchange(sp.eri, density);
  // closed shell: density holds both spins; high spin: every pair exchanges
  return sp.species.spin_orbitals_per_spatial == 2 ? MatrixXd(j - 0.5 * k) : MatrixXd(j - k);
}

// Field on species `target` from the densities of every other species.
MatrixXd cross_field(const IntegralSet& ints, std::size_t target,
                     const std::vector<MatrixXd>& densities) {
  const Index n = static_cast<Index>(ints.species[target].dim());
  MatrixXd f = MatrixXd::Zero(n, n);
  for (const auto& c : ints.cross) {
    if (c.a == target) f += coulomb(c.eri, densities[c.b]);
    if (c.b == target) f += coulomb_left(c.eri, densities[c.a]);
  }
  return f;
}

MatrixXd density_from(const MatrixXd& c, int occupied, int spin_orbitals) {
  const MatrixXd occ = c.leftCols(occupied);
  const double factor = spin_orbitals == 2 ? 2.0 : 1.0;
  return factor * occ * occ.transpose();
}

MatrixXd orthogonalizer(const MatrixXd& s) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(s);
  if (es.info() != Eigen::Success || es.eigenvalues().minCoeff() < 1e-10)
    throw std::runtime_error("singular overlap matrix");
  return es.eigenvectors() * es.eigenvalues().cwiseInverse().cwiseSqrt().asDiagonal() *
         es.eigenvectors().transpose();
}

constexpr double kDiisStart = 1e-2;

// Pulay DIIS with error X^T (F P S - S P F) X, shared weights across species.
std::vector<MatrixXd> diis_extrapolate(const IntegralSet& ints, const std::vector<MatrixXd>& focks,
                                       const std::vector<MatrixXd>& densities,
                                       const std::vector<MatrixXd>& x, int depth,
                                       std::vector<std::vector<MatrixXd>>& fock_history,
                                       std::vector<std::vector<MatrixXd>>& error_history) {
  std::vector<MatrixXd> errors(focks.size());
  for (std::size_t a = 0; a < focks.size(); ++a) {
    const MatrixXd& s = ints.species[a].overlap;
    const MatrixXd fps = focks[a] * densities[a] * s;
    errors[a] = x[a].transpose() * (fps - fps.transpose()) * x[a];
  }
  fock_history.push_back(focks);
  error_history.push_back(std::move(errors));
  if (static_cast<int>(fock_history.size()) > depth) {
    fock_history.erase(fock_history.begin());
    error_history.erase(error_history.begin());
  }
  const Index m = static_cast<Index>(fock_history.size());
  double err = 0.0;
  for (const auto& e : error_history.back()) err = std::max(err, e.cwiseAbs().maxCoeff());
  // plain iterations until inside the basin of the aufbau solution
  if (err > kDiisStart) {
    fock_history.erase(fock_history.begin(), fock_history.end() - 1);
    error_history.erase(error_history.begin(), error_history.end() - 1);
    return focks;
  }
  if (m < 2) return focks;
  MatrixXd b = MatrixXd::Zero(m + 1, m + 1);
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j <= i; ++j) {
      double v = 0.0;
      for (std::size_t a = 0; a < focks.size(); ++a)
        v += error_history[static_cast<std::size_t>(i)][a]
                 .cwiseProduct(error_history[static_cast<std::size_t>(j)][a])
                 .sum();
      b(i, j) = b(j, i) = v;
    }
  b.row(m).head(m).setConstant(-1.0);
  b.col(m).head(m).setConstant(-1.0);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m + 1);
  rhs(m) = -1.0;
  const double scale = b.topLeftCorner(m, m).diagonal().maxCoeff();
  if (scale <= 0.0) return focks;
  b.topLeftCorner(m, m) /= scale;
  const Eigen::VectorXd w = b.colPivHouseholderQr().solve(rhs);
  if (!w.allFinite()) return focks;
  std::vector<MatrixXd> out(focks.size());
  for (std::size_t a = 0; a < focks.size(); ++a) {
    out[a] = MatrixXd::Zero(focks[a].rows(), focks[a].cols());
    for (Index i = 0; i < m; ++i) out[a] += w(i) * fock_history[static_cast<std::size_t>(i)][a];
  }
  return out;
}

}  // namespace

int occupied_orbitals(const ParticleSpecies& species) {
  if (species.spin_orbitals_per_spatial == 2) {
    if (species.count % 2 != 0)
      throw std::invalid_argument("restricted treatment needs an even particle count");
    return species.count / 2;
  }
  return species.count;
}

double mean_field_energy(const IntegralSet& ints, const std::vector<MatrixXd>& densities) {
  double e = ints.e_nn;
  for (std::size_t a = 0; a < ints.species.size(); ++a) {
    const auto& sp = ints.species[a];
    const MatrixXd& p = densities[a];
    e += (p.cwiseProduct(sp.h1)).sum() + 0.5 * (p.cwiseProduct(intra_field(sp, p))).sum();
  }
  for (const auto& c : ints.cross)
    e += densities[c.a].cwiseProduct(coulomb(c.eri, densities[c.b])).sum();
  return e;
}

NeoHfSolution solve_neo_hf(const IntegralSet& ints, const ScfOptions& options) {
  const std::size_t ns = ints.species.size();
  std::vector<MatrixXd> x(ns);
  NeoHfSolution sol;
  sol.orbitals.resize(ns);
  std::vector<MatrixXd> densities(ns);

  auto diagonalize = [&](std::size_t a, const MatrixXd& fock) {
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(x[a].transpose() * fock * x[a]);
    auto& orb = sol.orbitals[a];
    orb.coefficients = x[a] * es.eigenvectors();
    orb.energies = es.eigenvalues();
  };

  for (std::size_t a = 0; a < ns; ++a) {
    const auto& sp = ints.species[a];
    x[a] = orthogonalizer(sp.overlap);
    sol.orbitals[a].occupied = occupied_orbitals(sp.species);
    if (sol.orbitals[a].occupied > static_cast<int>(sp.dim()))
      throw std::invalid_argument("basis too small for particle count");
    diagonalize(a, sp.h1);  // core guess
    densities[a] = density_from(sol.orbitals[a].coefficients, sol.orbitals[a].occupied,
                                sp.species.spin_orbitals_per_spatial);
  }

  double energy = mean_field_energy(ints, densities);
  std::vector<std::vector<MatrixXd>> fock_history, error_history;
  for (int iter = 1; iter <= options.max_iter; ++iter) {
    double change2 = 0.0;
    std::size_t count = 0;
    std::vector<MatrixXd> focks(ns);
    for (std::size_t a = 0; a < ns; ++a) {
      const auto& sp = ints.species[a];
      focks[a] = sp.h1 + intra_field(sp, densities[a]) + cross_field(ints, a, densities);
    }
    if (options.diis) focks = diis_extrapolate(ints, focks, densities, x, options.diis_depth,
                                               fock_history, error_history);
    for (std::size_t a = 0; a < ns; ++a) {
      const auto& sp = ints.species[a];
      diagonalize(a, focks[a]);
      MatrixXd next = density_from(sol.orbitals[a].coefficients, sol.orbitals[a].occupied,
                                   sp.species.spin_orbitals_per_spatial);
      if (options.damping > 0.0)
        next = (1.0 - options.damping) * next + options.damping * densities[a];
      change2 += (next - densities[a]).squaredNorm();
      count += static_cast<std::size_t>(next.size());
      densities[a] = std::move(next);
    }
    const double next_energy = mean_field_energy(ints, densities);
    sol.energy_history.push_back(next_energy);
    const double delta_e = std::abs(next_energy - energy);
    energy = next_energy;
    sol.iterations = iter;
    if (std::sqrt(change2 / static_cast<double>(count)) < options.density_tol &&
        delta_e < options.energy_tol) {
      sol.converged = true;
      break;
    }
  }
  for (std::size_t a = 0; a < ns; ++a) sol.orbitals[a].density = densities[a];
  sol.energy = energy;
  return sol;
}

IntegralSet transform_integrals(const IntegralSet& ints, const std::vector<MatrixXd>& coeffs) {
  if (coeffs.size() != ints.species.size())
    throw std::invalid_argument("one coefficient matrix per species required");
  for (std::size_t a = 0; a < coeffs.size(); ++a)
    if (static_cast<std::size_t>(coeffs[a].rows()) != ints.species[a].dim())
      throw std::invalid_argument("coefficient matrix does not match basis dimension");

  // (pq|rs) -> sum C_ip C_jq C_kr C_ls (ij|kl), one index at a time
  auto rotate = [](const Tensor4& t, const MatrixXd& c1, const MatrixXd& c2) {
    const std::size_t n1 = t.dim(0), n2 = t.dim(2);
    const std::size_t m1 = static_cast<std::size_t>(c1.cols());
    const std::size_t m2 = static_cast<std::size_t>(c2.cols());
    auto c = [](const MatrixXd& m, std::size_t i, std::size_t j) {
      return m(static_cast<Index>(i), static_cast<Index>(j));
    };
    Tensor4 a(m1, n1, n2, n2);
    for (std::size_t p = 0; p < m1; ++p)
      for (std::size_t j = 0; j < n1; ++j)
        for (std::size_t k = 0; k < n2; ++k)
          for (std::size_t l = 0; l < n2; ++l) {
            double v = 0.0;
            for (std::size_t i = 0; i < n1; ++i) v += c(c1, i, p) * t(i, j, k, l);
            a(p, j, k, l) = v;
          }
    Tensor4 b(m1, m1, n2, n2);
    for (std::size_t p = 0; p < m1; ++p)
      for (std::size_t q = 0; q < m1; ++q)
        for (std::size_t k = 0; k < n2; ++k)
          for (std::size_t l = 0; l < n2; ++l) {
            double v = 0.0;
            for (std::size_t j = 0; j < n1; ++j) v += c(c1, j, q) * a(p, j, k, l);
            b(p, q, k, l) = v;
          }
    Tensor4 d(m1, m1, m2, n2);
    for (std::size_t p = 0; p < m1; ++p)
      for (std::size_t q = 0; q < m1; ++q)
        for (std::size_t r = 0; r < m2; ++r)
          for (std::size_t l = 0; l < n2; ++l) {
            double v = 0.0;
            for (std::size_t k = 0; k < n2; ++k) v += c(c2, k, r) * b(p, q, k, l);
            d(p, q, r, l) = v;
          }
    Tensor4 e(m1, m1, m2, m2);
    for (std::size_t p = 0; p < m1; ++p)
      for (std::size_t q = 0; q < m1; ++q)
        for (std::size_t r = 0; r < m2; ++r)
          for (std::size_t s = 0; s < m2; ++s) {
            double v = 0.0;
            for (std::size_t l = 0; l < n2; ++l) v += c(c2, l, s) * d(p, q, r, l);
            e(p, q, r, s) = v;
          }
    return e;
  };

  IntegralSet out;
  out.e_nn = ints.e_nn;
  out.mo_basis = true;
  for (std::size_t a = 0; a < ints.species.size(); ++a) {
    const auto& sp = ints.species[a];
    const MatrixXd& c = coeffs[a];
    out.species.push_back({sp.species, c.transpose() * sp.overlap * c, c.transpose() * sp.h1 * c,
                           rotate(sp.eri, c, c)});
  }
  for (const auto& x : ints.cross)
    out.cross.push_back({x.a, x.b, rotate(x.eri, coeffs[x.a], coeffs[x.b])});
  return out;
}

IntegralSet mo_transform(const IntegralSet& ints, const NeoHfSolution& sol) {
  std::vector<MatrixXd> coeffs;
  for (const auto& o : sol.orbitals) coeffs.push_back(o.coefficients);
  return transform_integrals(ints, coeffs);
}

IntegralSet truncate_active_space(const IntegralSet& mo_ints, const ActiveSpace& space) {
  if (!mo_ints.mo_basis) throw std::invalid_argument("active-space truncation needs MO integrals");
  std::vector<MatrixXd> keep;
  for (const auto& sp : mo_ints.species) {
    const int want = sp.species.kind == SpeciesKind::electron ? space.electron_spatial
                                                              : space.nuclear_spatial;
    const auto n = static_cast<Index>(sp.dim());
    if (want < occupied_orbitals(sp.species))
      throw std::invalid_argument("active space excludes occupied orbitals");
    keep.push_back(MatrixXd::Identity(n, std::min<Index>(n, want)));
  }
  // Frozen cores are not supported, so an identity slice is the whole story.
  return transform_integrals(mo_ints, keep);
}

std::string format_solution(const IntegralSet& ints, const NeoHfSolution& sol) {
  std::string out;
  out += fmt::format("energy {:.12f}\nconverged {}\niterations {}\n", sol.energy,
                     sol.converged ? "yes" : "no", sol.iterations);
  for (std::size_t a = 0; a < sol.orbitals.size(); ++a) {
    const auto& o = sol.orbitals[a];
    out += fmt::format("species {} occupied {}\n", to_string(ints.species[a].species.kind),
                       o.occupied);
    out += "  orbital_energies";
    for (Index i = 0; i < o.energies.size(); ++i) out += fmt::format(" {:.12f}", o.energies(i));
    out += "\n  coefficients\n";
    for (Index i = 0; i < o.coefficients.rows(); ++i) {
      out += "   ";
      for (Index j = 0; j < o.coefficients.cols(); ++j)
        out += fmt::format(" {:16.12f}", o.coefficients(i, j));
      out += "\n";
    }
  }
  return out;
}

}  // namespace mcvqe
