// Copyright 2026 The mcvqe Authors
// SPDX-License-Identifier: Apache-2.0

// Independent reference computations shared by the unit and acceptance tests.
// Nothing here calls the library routine it is meant to check.

#pragma once

#include <mcvqe/pipeline.hpp>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

using mcvqe::ContractedGaussian;
using mcvqe::Vec3;
constexpr double kPi = std::numbers::pi;

// Adaptive Gauss-Kronrod on a finite interval.
template <class F>
double integrate(F&& f, double a, double b) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 20, 1e-15);
}

struct Primitive {
  double alpha;
  double weight;  // contraction coefficient times primitive normalization
  Vec3 center;
};

inline std::vector<Primitive> primitives(const ContractedGaussian& g) {
  std::vector<Primitive> out;
  for (std::size_t i = 0; i < g.exponents.size(); ++i) {
    const double a = g.exponents[i];
    out.push_back({a, g.coefficients[i] * std::pow(2.0 * a / kPi, 0.75), g.center});
  }
  return out;
}

// Half-width covering exp(-a x^2) down to double precision.
inline double reach(double a) { return 9.0 / std::sqrt(a); }

// int exp(-a (x - A)^2) exp(-b (x - B)^2) dx by quadrature.
inline double overlap_1d(double a, double ax, double b, double bx) {
  const double lo = std::min(ax - reach(a), bx - reach(b));
  const double hi = std::max(ax + reach(a), bx + reach(b));
  return integrate([&](double x) { return std::exp(-a * (x - ax) * (x - ax) - b * (x - bx) * (x - bx)); },
                   lo, hi);
}

// int d/dx exp(-a (x - A)^2) * d/dx exp(-b (x - B)^2) dx by quadrature.
inline double gradient_1d(double a, double ax, double b, double bx) {
  const double lo = std::min(ax - reach(a), bx - reach(b));
  const double hi = std::max(ax + reach(a), bx + reach(b));
  return integrate(
      [&](double x) {
        const double ga = -2.0 * a * (x - ax) * std::exp(-a * (x - ax) * (x - ax));
        const double gb = -2.0 * b * (x - bx) * std::exp(-b * (x - bx) * (x - bx));
        return ga * gb;
      },
      lo, hi);
}

// <a|b> as a product of three one-dimensional quadratures per primitive pair.
inline double overlap(const ContractedGaussian& ga, const ContractedGaussian& gb) {
  double s = 0.0;
  for (const auto& p : primitives(ga))
    for (const auto& q : primitives(gb)) {
      double t = p.weight * q.weight;
      for (int k = 0; k < 3; ++k) t *= overlap_1d(p.alpha, p.center[k], q.alpha, q.center[k]);
      s += t;
    }
  return s;
}

// (1 / 2m) int grad a . grad b, from one-dimensional quadratures.
inline double kinetic(const ContractedGaussian& ga, const ContractedGaussian& gb, double mass) {
  double s = 0.0;
  for (const auto& p : primitives(ga))
    for (const auto& q : primitives(gb)) {
      double sx[3], dx[3];
      for (int k = 0; k < 3; ++k) {
        sx[k] = overlap_1d(p.alpha, p.center[k], q.alpha, q.center[k]);
        dx[k] = gradient_1d(p.alpha, p.center[k], q.alpha, q.center[k]);
      }
      s += p.weight * q.weight * (dx[0] * sx[1] * sx[2] + sx[0] * dx[1] * sx[2] + sx[0] * sx[1] * dx[2]);
    }
  return 0.5 * s / mass;
}

/**
 * int exp(-p |r - P|^2) g(|r - Q|) d^3r for a radial function g, with the
 * angular integral about Q done in closed form and the radial one by
 * quadrature. `rg(r)` must return r * g(r).
 */
template <class RG>
double radial_convolution(double p, const Vec3& P, const Vec3& Q, RG&& rg) {
  const double d = (P - Q).norm();
  const double hi = d + reach(p);
  if (d < 1e-8)
    return 4.0 * kPi * integrate([&](double r) { return r * rg(r) * std::exp(-p * r * r); }, 0.0, hi);
  const double lo = std::max(0.0, d - reach(p));
  const double near = integrate(
      [&](double r) { return rg(r) * (std::exp(-p * (r - d) * (r - d)) - std::exp(-p * (r + d) * (r + d))); },
      lo, hi);
  // the exp(-p (r + d)^2) tail below `lo` is below double precision for the cases used
  const double below =
      lo > 0.0 ? integrate([&](double r) { return rg(r) * (std::exp(-p * (r - d) * (r - d)) -
                                                            std::exp(-p * (r + d) * (r + d))); },
                           0.0, lo)
               : 0.0;
  return kPi / (p * d) * (near + below);
}

// charge * Z * <a| 1/|r - C| |b>.
inline double attraction(const ContractedGaussian& ga, const ContractedGaussian& gb, const Vec3& c,
                         double z, int charge) {
  double s = 0.0;
  for (const auto& p : primitives(ga))
    for (const auto& q : primitives(gb)) {
      const double e = p.alpha + q.alpha;
      const Vec3 P = (p.alpha * p.center + q.alpha * q.center) / e;
      const double k = std::exp(-p.alpha * q.alpha / e * (p.center - q.center).squaredNorm());
      s += p.weight * q.weight * k * radial_convolution(e, P, c, [](double) { return 1.0; });
    }
  return charge * z * s;
}

/**
 * (ab|cd): the (cd) density's Coulomb potential is (pi/q)^{3/2} erf(sqrt(q) s)/s
 * about its product center, which is then integrated against the (ab) density.
 */
inline double eri(const ContractedGaussian& ga, const ContractedGaussian& gb,
                  const ContractedGaussian& gc, const ContractedGaussian& gd) {
  double s = 0.0;
  for (const auto& a : primitives(ga))
    for (const auto& b : primitives(gb))
      for (const auto& c : primitives(gc))
        for (const auto& d : primitives(gd)) {
          const double p = a.alpha + b.alpha, q = c.alpha + d.alpha;
          const Vec3 P = (a.alpha * a.center + b.alpha * b.center) / p;
          const Vec3 Q = (c.alpha * c.center + d.alpha * d.center) / q;
          const double kab = std::exp(-a.alpha * b.alpha / p * (a.center - b.center).squaredNorm());
          const double kcd = std::exp(-c.alpha * d.alpha / q * (c.center - d.center).squaredNorm());
          const double pref = std::pow(kPi / q, 1.5);
          const double sq = std::sqrt(q);
          s += a.weight * b.weight * c.weight * d.weight * kab * kcd *
               radial_convolution(p, P, Q, [&](double r) { return pref * std::erf(sq * r); });
        }
  return s;
}

inline ContractedGaussian primitive(double alpha, const Vec3& center) {
  return {center, {alpha}, {1.0}, mcvqe::SpeciesKind::electron};
}

// ---------------------------------------------------------------------------
// Fock space

/**
 * Dense occupation-basis matrix of a ladder-operator sum. Operators act
 * right to left; a or a^dagger on mode p picks up (-1)^(occupied modes below p).
 */
inline Eigen::MatrixXcd occupation_matrix(const mcvqe::FermionOp& op) {
  const int n = op.n_modes();
  const std::size_t dim = std::size_t{1} << n;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (const auto& [term, coeff] : op.terms()) {
    for (std::size_t col = 0; col < dim; ++col) {
      std::uint64_t state = col;
      double sign = 1.0;
      bool alive = true;
      for (auto it = term.rbegin(); it != term.rend() && alive; ++it) {
        const std::uint64_t bit = std::uint64_t{1} << it->mode;
        const bool occupied = (state & bit) != 0;
        if (occupied == it->dagger) {
          alive = false;
          break;
        }
        int below = 0;
        for (int q = 0; q < it->mode; ++q) below += static_cast<int>((state >> q) & 1u);
        if (below % 2) sign = -sign;
        state ^= bit;
      }
      if (alive) m(static_cast<Eigen::Index>(state), static_cast<Eigen::Index>(col)) += sign * coeff;
    }
  }
  return m;
}

// ---------------------------------------------------------------------------
// Dense gates (qubit q is bit q of the basis index)

using Mat = Eigen::MatrixXcd;
using cplx = std::complex<double>;

inline Mat kron(const Mat& a, const Mat& b) {
  Mat r(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return r;
}

inline Mat pauli(char c) {
  Mat m(2, 2);
  const cplx i(0, 1);
  switch (c) {
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, -i, i, 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: m << 1, 0, 0, 1; break;
  }
  return m;
}

// Operator acting as `ops[q]` on qubit q; the highest qubit is the leftmost factor.
inline Mat on_qubits(int n, const std::vector<std::pair<int, Mat>>& ops) {
  Mat r = Mat::Identity(1, 1);
  for (int q = n - 1; q >= 0; --q) {
    Mat f = Mat::Identity(2, 2);
    for (const auto& [qq, m] : ops)
      if (qq == q) f = m;
    r = kron(r, f);
  }
  return r;
}

// exp(-i theta/2 P) for P = prod_k sigma_{c_k}(q_k); P^2 = I.
inline Mat rotation(int n, const std::vector<std::pair<int, char>>& p, double theta) {
  std::vector<std::pair<int, Mat>> ops;
  for (const auto& [q, c] : p) ops.emplace_back(q, pauli(c));
  const Mat P = on_qubits(n, ops);
  const Mat I = Mat::Identity(P.rows(), P.cols());
  return std::cos(theta / 2) * I - cplx(0, 1) * std::sin(theta / 2) * P;
}

inline double phase_fidelity(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  return std::norm(a.dot(b));
}

inline Eigen::VectorXcd random_state(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::VectorXcd v(Eigen::Index{1} << n);
  for (auto& x : v) x = cplx(g(rng), g(rng));
  return v.normalized();
}

// Random bound circuit over every simulator gate kind.
inline mcvqe::Circuit random_circuit(int n, int gates, std::mt19937_64& rng) {
  using mcvqe::Gate;
  std::uniform_int_distribution<int> kind(0, 8), qubit(0, n - 1);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  mcvqe::Circuit c(n);
  auto pair = [&] {
    const int a = qubit(rng);
    int b = qubit(rng);
    while (b == a) b = qubit(rng);
    return std::pair{a, b};
  };
  for (int g = 0; g < gates; ++g) {
    switch (kind(rng)) {
      case 0: c.add(Gate::x(qubit(rng))); break;
      case 1: c.add(Gate::sx(qubit(rng))); break;
      case 2: c.add(Gate::sxdg(qubit(rng))); break;
      case 3: c.add(Gate::rz(qubit(rng), {angle(rng)})); break;
      case 4: { auto [a, b] = pair(); c.add(Gate::rxx(a, b, {angle(rng)})); break; }
      case 5: { auto [a, b] = pair(); c.add(Gate::ryy(a, b, {angle(rng)})); break; }
      case 6: { auto [a, b] = pair(); c.add(Gate::rzz(a, b, {angle(rng)})); break; }
      case 7: { auto [a, b] = pair(); c.add(Gate::cnot(a, b)); break; }
      default: {
        mcvqe::PauliString p;
        std::uniform_int_distribution<int> letter(0, 3);
        for (int q = 0; q < n; ++q) {
          const int l = letter(rng);
          if (l == 1 || l == 2) p.x |= std::uint64_t{1} << q;
          if (l == 2 || l == 3) p.z |= std::uint64_t{1} << q;
        }
        if (p.is_identity()) p.z = 1;
        c.add(Gate::pauli_evolution(p, {angle(rng)}));
      }
    }
  }
  return c;
}

// ---------------------------------------------------------------------------
// Shared problems

inline const mcvqe::Problem& problem(const std::string& system) {
  static std::map<std::string, mcvqe::Problem> cache;
  auto it = cache.find(system);
  if (it == cache.end()) {
    mcvqe::RunConfig cfg;
    cfg.system = system;
    it = cache.emplace(system, mcvqe::build_problem(cfg)).first;
  }
  return it->second;
}

}  // namespace oracle
