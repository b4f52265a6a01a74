// Copyright 2026 The mcvqe Authors
// SPDX-License-Identifier: Apache-2.0

#include <mcvqe/sim.hpp>

#include <fmt/format.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <stdexcept>

namespace mcvqe {

namespace {
constexpr cplx kI{0.0, 1.0};
}

std::string_view to_string(GateKind k) {
  switch (k) {
    case GateKind::x: return "x";
    case GateKind::sx: return "sx";
    case GateKind::sxdg: return "sxdg";
    case GateKind::rz: return "rz";
    case GateKind::rxx: return "rxx";
    case GateKind::ryy: return "ryy";
    case GateKind::rzz: return "rzz";
    case GateKind::cnot: return "cnot";
    case GateKind::pauli_evolution: return "pauli_evolution";
  }
  return "?";
}

double Angle::evaluate(std::span<const double> params) const {
  if (slot < 0) return value;
  if (static_cast<std::size_t>(slot) >= params.size())
    throw std::invalid_argument(fmt::format("parameter slot {} is unbound", slot));
  return value + scale * params[static_cast<std::size_t>(slot)];
}

Gate Gate::pauli_evolution(const PauliString& p, Angle a) {
  Gate g{GateKind::pauli_evolution, {}, a, p};
  for (int q = 0; q < 64; ++q)
    if ((p.support() >> q) & 1u) g.qubits.push_back(q);
  return g;
}

bool Gate::is_rotation() const {
  return kind == GateKind::rz || kind == GateKind::rxx || kind == GateKind::ryy ||
         kind == GateKind::rzz || kind == GateKind::pauli_evolution;
}

Gate Gate::inverse() const {
  Gate g = *this;
  if (kind == GateKind::sx) g.kind = GateKind::sxdg;
  else if (kind == GateKind::sxdg) g.kind = GateKind::sx;
  else if (is_rotation()) g.angle = angle.negated();
  return g;
}

PauliString Gate::generator() const {
  auto bit = [](int q) { return std::uint64_t{1} << q; };
  switch (kind) {
    case GateKind::rz: return {0, bit(qubits[0])};
    case GateKind::rxx: return {bit(qubits[0]) | bit(qubits[1]), 0};
    case GateKind::ryy: {
      const auto m = bit(qubits[0]) | bit(qubits[1]);
      return {m, m};
    }
    case GateKind::rzz: return {0, bit(qubits[0]) | bit(qubits[1])};
    case GateKind::pauli_evolution: return pauli;
    default: throw std::logic_error("gate has no Pauli generator");
  }
}

void Circuit::add(Gate g) {
  if (g.kind == GateKind::pauli_evolution) {
    if (g.pauli.is_identity()) throw std::invalid_argument("pauli_evolution needs a non-identity string");
  } else {
    const int expect = (g.kind == GateKind::rxx || g.kind == GateKind::ryy ||
                        g.kind == GateKind::rzz || g.kind == GateKind::cnot)
                           ? 2
                           : 1;
    if (g.arity() != expect) throw std::invalid_argument("wrong operand count for gate");
  }
  for (std::size_t i = 0; i < g.qubits.size(); ++i) {
    if (g.qubits[i] < 0 || g.qubits[i] >= n_qubits_)
      throw std::invalid_argument(fmt::format("qubit {} outside register", g.qubits[i]));
    for (std::size_t j = 0; j < i; ++j)
      if (g.qubits[i] == g.qubits[j]) throw std::invalid_argument("repeated gate operand");
  }
  if (g.angle.slot >= n_params_) n_params_ = g.angle.slot + 1;
  gates_.push_back(std::move(g));
}

void Circuit::append(const Circuit& other) {
  if (other.n_qubits_ != n_qubits_) throw std::invalid_argument("register size mismatch");
  n_params_ = std::max(n_params_, other.n_params_);
  gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
}

Circuit Circuit::bind(std::span<const double> params) const {
  if (params.size() != static_cast<std::size_t>(n_params_))
    throw std::invalid_argument(
        fmt::format("circuit expects {} parameters, got {}", n_params_, params.size()));
  Circuit out(n_qubits_, 0);
  out.gates_.reserve(gates_.size());
  for (const auto& g : gates_) {
    Gate b = g;
    b.angle = {g.angle.evaluate(params), -1, 1.0};
    out.gates_.push_back(std::move(b));
  }
  return out;
}

bool Circuit::is_bound() const {
  return std::all_of(gates_.begin(), gates_.end(), [](const Gate& g) { return g.angle.bound(); });
}

Circuit Circuit::inverse() const {
  Circuit out(n_qubits_, n_params_);
  for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) out.gates_.push_back(it->inverse());
  return out;
}

// ---------------------------------------------------------------------------

std::string format_bitstring(std::uint64_t bits, int n) {
  std::string s(static_cast<std::size_t>(n), '0');
  for (int q = 0; q < n; ++q)
    if ((bits >> q) & 1u) s[static_cast<std::size_t>(q)] = '1';
  return s;
}

std::uint64_t parse_bitstring(std::string_view s) {
  std::uint64_t b = 0;
  for (std::size_t q = 0; q < s.size(); ++q) {
    if (s[q] == '1') b |= std::uint64_t{1} << q;
    else if (s[q] != '0') throw std::invalid_argument("bitstring must contain only 0/1");
  }
  return b;
}

StateVector basis_state(int n, std::uint64_t bits) {
  const auto dim = Eigen::Index{1} << n;
  if (n < 64 && (bits >> n) != 0) throw std::invalid_argument("initial bitstring wider than register");
  StateVector s = StateVector::Zero(dim);
  s(static_cast<Eigen::Index>(bits)) = 1.0;
  return s;
}

namespace {

// Kernels over a raw amplitude array, shared by statevector and density columns.
void kernel_pauli(cplx* a, std::size_t dim, const PauliString& p) {
  const cplx base = std::pow(kI, std::popcount(p.x & p.z));
  auto phase = [&](std::uint64_t b) {
    return (std::popcount(b & p.z) & 1) ? -base : base;
  };
  if (p.x == 0) {
    for (std::size_t b = 0; b < dim; ++b) a[b] *= phase(b);
    return;
  }
  for (std::size_t b = 0; b < dim; ++b) {
    const std::size_t f = b ^ p.x;
    if (f < b) continue;
    const cplx ab = a[b], af = a[f];
    a[f] = phase(b) * ab;
    a[b] = phase(f) * af;
  }
}

void kernel_rotation(cplx* a, std::size_t dim, const PauliString& p, double theta) {
  // exp(-i theta/2 P) = cos - i sin P
  const double c = std::cos(0.5 * theta), s = std::sin(0.5 * theta);
  const cplx base = std::pow(kI, std::popcount(p.x & p.z));
  auto phase = [&](std::uint64_t b) {
    return (std::popcount(b & p.z) & 1) ? -base : base;
  };
  if (p.x == 0) {
    for (std::size_t b = 0; b < dim; ++b) a[b] *= c - kI * s * phase(b);
    return;
  }
  for (std::size_t b = 0; b < dim; ++b) {
    const std::size_t f = b ^ p.x;
    if (f < b) continue;
    const cplx ab = a[b], af = a[f];
    a[f] = c * af - kI * s * phase(b) * ab;
    a[b] = c * ab - kI * s * phase(f) * af;
  }
}

void kernel_1q(cplx* a, std::size_t dim, int q, const cplx m[2][2]) {
  const std::size_t bit = std::size_t{1} << q;
  for (std::size_t b = 0; b < dim; ++b) {
    if (b & bit) continue;
    const cplx a0 = a[b], a1 = a[b | bit];
    a[b] = m[0][0] * a0 + m[0][1] * a1;
    a[b | bit] = m[1][0] * a0 + m[1][1] * a1;
  }
}

void kernel_gate(cplx* a, std::size_t dim, const Gate& g) {
  if (!g.angle.bound()) throw std::invalid_argument("gate parameter is unbound");
  switch (g.kind) {
    case GateKind::x:
      kernel_pauli(a, dim, {std::uint64_t{1} << g.qubits[0], 0});
      return;
    case GateKind::sx: {
      static const cplx m[2][2] = {{{0.5, 0.5}, {0.5, -0.5}}, {{0.5, -0.5}, {0.5, 0.5}}};
      kernel_1q(a, dim, g.qubits[0], m);
      return;
    }
    case GateKind::sxdg: {
      static const cplx m[2][2] = {{{0.5, -0.5}, {0.5, 0.5}}, {{0.5, 0.5}, {0.5, -0.5}}};
      kernel_1q(a, dim, g.qubits[0], m);
      return;
    }
    case GateKind::cnot: {
      const std::size_t cb = std::size_t{1} << g.qubits[0];
      const std::size_t tb = std::size_t{1} << g.qubits[1];
      for (std::size_t b = 0; b < dim; ++b)
        if ((b & cb) && !(b & tb)) std::swap(a[b], a[b | tb]);
      return;
    }
    default:
      kernel_rotation(a, dim, g.generator(), g.angle.value);
  }
}

}  // namespace

void apply_gate(StateVector& state, const Gate& g) {
  kernel_gate(state.data(), static_cast<std::size_t>(state.size()), g);
}

void apply_pauli(StateVector& state, const PauliString& p) {
  kernel_pauli(state.data(), static_cast<std::size_t>(state.size()), p);
}

StateVector run_statevector(const Circuit& c, std::uint64_t initial) {
  if (!c.is_bound()) throw std::invalid_argument("circuit has unbound parameters");
  StateVector s = basis_state(c.n_qubits(), initial);
  for (const auto& g : c.gates()) apply_gate(s, g);
  return s;
}

double expectation(const StateVector& state, const PauliSum& h) {
  if (state.size() != (Eigen::Index{1} << h.n_qubits()))
    throw std::invalid_argument("state and operator dimensions differ");
  if (!h.is_hermitian(1e-10)) throw std::invalid_argument("expectation needs a Hermitian operator");
  double e = 0.0;
  StateVector tmp;
  for (const auto& [p, c] : h.terms()) {
    if (p.is_identity()) {
      e += c.real() * state.squaredNorm();
      continue;
    }
    tmp = state;
    apply_pauli(tmp, p);
    e += c.real() * state.dot(tmp).real();
  }
  return e;
}

double expectation(const DensityMatrix& rho, const PauliSum& h) {
  if (rho.rows() != (Eigen::Index{1} << h.n_qubits()))
    throw std::invalid_argument("density matrix and operator dimensions differ");
  if (!h.is_hermitian(1e-10)) throw std::invalid_argument("expectation needs a Hermitian operator");
  // tr(rho P) = sum_b <b|rho P|b> = sum_b rho(b ^ x, b) phase(b)
  double e = 0.0;
  const auto dim = static_cast<std::uint64_t>(rho.rows());
  for (const auto& [p, c] : h.terms()) {
    const cplx base = std::pow(kI, std::popcount(p.x & p.z));
    cplx tr = 0.0;
    for (std::uint64_t b = 0; b < dim; ++b) {
      const cplx ph = (std::popcount(b & p.z) & 1) ? -base : base;
      tr += rho(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(b ^ p.x)) * ph;
    }
    e += (c * tr).real();
  }
  return e;
}

double fidelity(const StateVector& a, const StateVector& b) {
  return std::norm(a.dot(b)) / (a.squaredNorm() * b.squaredNorm());
}

// ---------------------------------------------------------------------------

void NoiseSpec::validate() const {
  for (double p : {p1, p2, p_readout})
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("noise probabilities must lie in [0, 1]");
  if (!(scale >= 0.0)) throw std::invalid_argument("noise scale must be non-negative");
}

DensityMatrix to_density(const StateVector& psi) { return psi * psi.adjoint(); }

void depolarize(DensityMatrix& rho, std::span<const int> qubits, double q) {
  if (q <= 0.0) return;
  std::uint64_t mask = 0;
  for (int b : qubits) mask |= std::uint64_t{1} << b;
  const auto dim = static_cast<std::uint64_t>(rho.rows());
  const int k = static_cast<int>(qubits.size());
  const double inv = 1.0 / static_cast<double>(std::uint64_t{1} << k);
  DensityMatrix traced = DensityMatrix::Zero(rho.rows(), rho.cols());
  // enumerate sub-patterns of mask
  std::vector<std::uint64_t> patterns;
  for (std::uint64_t s = mask;; s = (s - 1) & mask) {
    patterns.push_back(s);
    if (s == 0) break;
  }
  for (std::uint64_t i = 0; i < dim; ++i) {
    for (std::uint64_t j = 0; j < dim; ++j) {
      if ((i & mask) != (j & mask)) continue;
      cplx sum = 0.0;
      for (auto s : patterns)
        sum += rho(static_cast<Eigen::Index>((i & ~mask) | s), static_cast<Eigen::Index>((j & ~mask) | s));
      traced(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = sum * inv;
    }
  }
  rho = (1.0 - q) * rho + q * traced;
}

void apply_gate(DensityMatrix& rho, const Gate& g) {
  const auto dim = static_cast<std::size_t>(rho.rows());
  for (Eigen::Index j = 0; j < rho.cols(); ++j) kernel_gate(rho.col(j).data(), dim, g);
  DensityMatrix t = rho.adjoint();
  for (Eigen::Index j = 0; j < t.cols(); ++j) kernel_gate(t.col(j).data(), dim, g);
  rho = std::move(t);
}

DensityMatrix apply_noise_scaled(const Circuit& c, const NoiseSpec& noise, std::uint64_t initial) {
  noise.validate();
  if (c.n_qubits() > kMaxDensityQubits)
    throw std::invalid_argument(
        fmt::format("density-matrix mode supports at most {} qubits", kMaxDensityQubits));
  if (!c.is_bound()) throw std::invalid_argument("circuit has unbound parameters");
  DensityMatrix rho = to_density(basis_state(c.n_qubits(), initial));
  const double q1 = std::min(1.0, noise.scale * noise.p1);
  const double q2 = std::min(1.0, noise.scale * noise.p2);
  for (const auto& g : c.gates()) {
    apply_gate(rho, g);
    depolarize(rho, g.qubits, g.arity() >= 2 ? q2 : q1);
  }
  return rho;
}

// ---------------------------------------------------------------------------

std::vector<MeasurementGroup> group_qubitwise(const PauliSum& h) {
  std::vector<std::pair<PauliString, double>> terms;
  for (const auto& [p, c] : h.sorted_terms())
    if (!p.is_identity()) terms.emplace_back(p, c.real());
  // largest coefficients first, stable so ties keep lexicographic order
  std::stable_sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    return std::abs(a.second) > std::abs(b.second);
  });
  std::vector<MeasurementGroup> groups;
  for (const auto& t : terms) {
    bool placed = false;
    for (auto& g : groups) {
      if (g.basis.qubitwise_commutes_with(t.first)) {
        g.basis.x |= t.first.x;
        g.basis.z |= t.first.z;
        g.terms.push_back(t);
        placed = true;
        break;
      }
    }
    if (!placed) groups.push_back({t.first, {t}});
  }
  return groups;
}

namespace {

// Rotates measured qubits so the group's basis becomes Z.
void rotate_to_z(StateVector& s, const PauliString& basis, int n) {
  static const double r = 1.0 / std::sqrt(2.0);
  static const cplx h[2][2] = {{r, r}, {r, -r}};
  // H S^dagger maps Y to Z
  static const cplx hsdg[2][2] = {{r, -kI * r}, {r, kI * r}};
  for (int q = 0; q < n; ++q) {
    const char c = basis.at(q);
    if (c == 'X') kernel_1q(s.data(), static_cast<std::size_t>(s.size()), q, h);
    else if (c == 'Y') kernel_1q(s.data(), static_cast<std::size_t>(s.size()), q, hsdg);
  }
}

void rotate_to_z(DensityMatrix& rho, const PauliString& basis, int n) {
  for (Eigen::Index j = 0; j < rho.cols(); ++j) {
    StateVector col = rho.col(j);
    rotate_to_z(col, basis, n);
    rho.col(j) = col;
  }
  DensityMatrix t = rho.adjoint();
  for (Eigen::Index j = 0; j < t.cols(); ++j) {
    StateVector col = t.col(j);
    rotate_to_z(col, basis, n);
    t.col(j) = col;
  }
  rho = std::move(t);
}

std::vector<double> apply_readout(std::vector<double> probs, int n, double flip) {
  if (flip <= 0.0) return probs;
  for (int q = 0; q < n; ++q) {
    const std::size_t bit = std::size_t{1} << q;
    for (std::size_t b = 0; b < probs.size(); ++b) {
      if (b & bit) continue;
      const double p0 = probs[b], p1 = probs[b | bit];
      probs[b] = (1.0 - flip) * p0 + flip * p1;
      probs[b | bit] = (1.0 - flip) * p1 + flip * p0;
    }
  }
  return probs;
}

double outcome_value(const MeasurementGroup& g, std::uint64_t b) {
  double v = 0.0;
  for (const auto& [p, c] : g.terms) v += (std::popcount(b & p.support()) & 1) ? -c : c;
  return v;
}

// Outcome distribution of every group, shared by sampling and its exact limit.
std::vector<std::vector<double>> group_distributions(const Circuit& c,
                                                     const std::vector<MeasurementGroup>& groups,
                                                     const std::optional<NoiseSpec>& noise,
                                                     std::uint64_t initial) {
  const int n = c.n_qubits();
  std::vector<std::vector<double>> out;
  const bool noisy = noise && !noise->is_noiseless();
  if (noisy) {
    const DensityMatrix rho = apply_noise_scaled(c, *noise, initial);
    for (const auto& g : groups) {
      DensityMatrix r = rho;
      rotate_to_z(r, g.basis, n);
      std::vector<double> probs(static_cast<std::size_t>(r.rows()));
      for (Eigen::Index b = 0; b < r.rows(); ++b)
        probs[static_cast<std::size_t>(b)] = std::max(0.0, r(b, b).real());
      // readout error is a measurement property: unscaled by the noise factor
      out.push_back(apply_readout(std::move(probs), n, noise->p_readout));
    }
  } else {
    const StateVector psi = run_statevector(c, initial);
    for (const auto& g : groups) {
      StateVector s = psi;
      rotate_to_z(s, g.basis, n);
      std::vector<double> probs(static_cast<std::size_t>(s.size()));
      for (Eigen::Index b = 0; b < s.size(); ++b) probs[static_cast<std::size_t>(b)] = std::norm(s(b));
      out.push_back(std::move(probs));
    }
  }
  return out;
}

}  // namespace

EnergyEstimate sample_energy(const Circuit& c, const PauliSum& h, int shots,
                             const std::optional<NoiseSpec>& noise, std::uint64_t seed,
                             std::uint64_t initial) {
  if (shots < 1) throw std::invalid_argument("shots must be at least 1");
  if (h.n_qubits() != c.n_qubits()) throw std::invalid_argument("operator and circuit widths differ");
  if (!h.is_hermitian(1e-10)) throw std::invalid_argument("energy estimation needs a Hermitian operator");
  const auto groups = group_qubitwise(h);
  const auto dists = group_distributions(c, groups, noise, initial);

  EnergyEstimate est;
  est.shots = shots;
  est.mean = h.coefficient({}).real();
  double variance = 0.0;
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(gi)};
    std::mt19937_64 rng(seq);
    std::discrete_distribution<std::size_t> dist(dists[gi].begin(), dists[gi].end());
    GroupCounts gc{groups[gi].basis, std::vector<std::uint64_t>(dists[gi].size(), 0)};
    for (int s = 0; s < shots; ++s) ++gc.counts[dist(rng)];
    double sum = 0.0, sum2 = 0.0;
    for (std::size_t b = 0; b < gc.counts.size(); ++b) {
      if (gc.counts[b] == 0) continue;
      const double v = outcome_value(groups[gi], b);
      const auto k = static_cast<double>(gc.counts[b]);
      sum += k * v;
      sum2 += k * v * v;
    }
    const double mean = sum / shots;
    est.mean += mean;
    if (shots > 1) variance += std::max(0.0, (sum2 - shots * mean * mean) / (shots - 1)) / shots;
    est.groups.push_back(std::move(gc));
  }
  est.standard_error = std::sqrt(variance);
  return est;
}

double noisy_expectation(const Circuit& c, const PauliSum& h, const std::optional<NoiseSpec>& noise,
                         std::uint64_t initial) {
  const auto groups = group_qubitwise(h);
  const auto dists = group_distributions(c, groups, noise, initial);
  double e = h.coefficient({}).real();
  for (std::size_t gi = 0; gi < groups.size(); ++gi)
    for (std::size_t b = 0; b < dists[gi].size(); ++b)
      e += dists[gi][b] * outcome_value(groups[gi], b);
  return e;
}

std::string counts_csv(const EnergyEstimate& e, int n_qubits) {
  std::string out = "group,basis,bitstring,count\n";
  for (std::size_t g = 0; g < e.groups.size(); ++g)
    for (std::size_t b = 0; b < e.groups[g].counts.size(); ++b)
      if (e.groups[g].counts[b] > 0)
        out += fmt::format("{},{},{},{}\n", g, e.groups[g].basis.to_string(n_qubits),
                           format_bitstring(b, n_qubits), e.groups[g].counts[b]);
  return out;
}

}  // namespace mcvqe
