// Copyright 2026 The mcvqe Authors
// SPDX-License-Identifier: Apache-2.0

#include <mcvqe/ansatz.hpp>

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mcvqe {

namespace {

constexpr cplx kI{0.0, 1.0};

void require_minimal(const ModeLayout& layout) {
  if (layout.electron_spatial != 2 || layout.nuclear_spatial != 2 || layout.electrons != 2 ||
      layout.nuclear_particles != 1)
    throw std::invalid_argument(
        "this ansatz needs 2 electronic and 2 nuclear spatial orbitals with 2 electrons and 1 "
        "nuclear particle");
}

// T - T^dagger for a_{to...}^dagger a_{from...} (creators ascending, annihilators descending).
FermionOp excitation(int n, const std::vector<int>& from, const std::vector<int>& to) {
  FermionTerm t;
  for (int p : to) t.push_back({p, true});
  for (auto it = from.rbegin(); it != from.rend(); ++it) t.push_back({*it, false});
  FermionOp op = FermionOp::term(n, t);
  return op - op.adjoint();
}

}  // namespace

std::string_view to_string(PoolLabel l) {
  switch (l) {
    case PoolLabel::t1e: return "t1e";
    case PoolLabel::t1p: return "t1p";
    case PoolLabel::t2ee: return "t2ee";
    case PoolLabel::t2ep: return "t2ep";
    case PoolLabel::t3eep: return "t3eep";
  }
  return "?";
}

PoolLabel pool_label_from_string(std::string_view s) {
  for (auto l : {PoolLabel::t1e, PoolLabel::t1p, PoolLabel::t2ee, PoolLabel::t2ep, PoolLabel::t3eep})
    if (s == to_string(l)) return l;
  throw std::invalid_argument(fmt::format("unknown pool label '{}'", s));
}

std::vector<PoolLabel> parse_pool_labels(std::string_view s) {
  std::vector<PoolLabel> out;
  std::size_t start = 0;
  while (start < s.size()) {
    auto end = s.find(',', start);
    if (end == std::string_view::npos) end = s.size();
    auto tok = s.substr(start, end - start);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    if (tok.empty()) {
      if (s.find_first_not_of(' ') == std::string_view::npos) break;
      throw std::invalid_argument("empty pool label");
    }
    const auto l = pool_label_from_string(tok);
    for (auto o : out)
      if (o == l) throw std::invalid_argument(fmt::format("duplicate pool label '{}'", tok));
    out.push_back(l);
    start = end + 1;
  }
  return out;
}

std::string format_pool_labels(const std::vector<PoolLabel>& labels) {
  std::string s;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i) s += ',';
    s += to_string(labels[i]);
  }
  return s;
}

ExcitationPool build_pool(const std::vector<PoolLabel>& labels, const ModeLayout& layout) {
  require_minimal(layout);
  const int n = layout.n_modes();
  ExcitationPool pool{layout, {}};
  auto has = [&](PoolLabel l) {
    for (auto x : labels)
      if (x == l) return true;
    return false;
  };
  auto add = [&](PoolLabel l, std::vector<int> from, std::vector<int> to) {
    std::string name = fmt::format("{}:", to_string(l));
    for (int p : from) name += std::to_string(p);
    name += "->";
    for (int p : to) name += std::to_string(p);
    pool.generators.push_back({l, name, excitation(n, from, to)});
  };
  if (has(PoolLabel::t1e)) {
    add(PoolLabel::t1e, {0}, {2});
    add(PoolLabel::t1e, {1}, {3});
  }
  if (has(PoolLabel::t1p)) add(PoolLabel::t1p, {4}, {5});
  if (has(PoolLabel::t2ee)) add(PoolLabel::t2ee, {0, 1}, {2, 3});
  if (has(PoolLabel::t2ep)) {
    add(PoolLabel::t2ep, {0, 4}, {2, 5});
    add(PoolLabel::t2ep, {1, 4}, {3, 5});
  }
  if (has(PoolLabel::t3eep)) add(PoolLabel::t3eep, {0, 1, 4}, {2, 3, 5});
  return pool;
}

Circuit reference_circuit(const ModeLayout& layout, Mapping mapping) {
  const int n = layout.n_modes();
  Circuit c(n);
  const std::uint64_t bits = encode_occupation(layout.reference_occupation(), n, mapping);
  for (int q = 0; q < n; ++q)
    if ((bits >> q) & 1u) c.add(Gate::x(q));
  return c;
}

Circuit trotter_circuit(const ExcitationPool& pool, Mapping mapping) {
  Circuit c = reference_circuit(pool.layout, mapping);
  c.set_n_params(pool.n_params());
  for (int j = 0; j < pool.n_params(); ++j) {
    const PauliSum g = map_to_qubits(pool.generators[static_cast<std::size_t>(j)].generator, mapping);
    // e^{theta G} with G = sum i b P: exp(-i (-2 b theta) P / 2) per term
    for (const auto& [p, coeff] : g.sorted_terms()) {
      if (std::abs(coeff.real()) > 1e-12)
        throw std::logic_error("mapped generator is not anti-Hermitian");
      c.add(Gate::pauli_evolution(p, {0.0, j, -2.0 * coeff.imag()}));
    }
  }
  return c;
}

// ---------------------------------------------------------------------------
// LUCJ

std::vector<int> lucj_qubit_of_mode(const ModeLayout& layout) {
  require_minimal(layout);
  // modes 0..5 = 0a 0b 1a 1b n0 n1 -> line [1a, 0a, 0b, 1b, n0, n1]
  return {1, 2, 0, 3, 4, 5};
}

std::vector<std::pair<int, int>> lucj_adjacency(const ModeLayout& layout) {
  require_minimal(layout);
  return {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}};
}

PauliSum lucj_hamiltonian(const FermionOp& h, const ModeLayout& layout) {
  return jordan_wigner(h.permuted(lucj_qubit_of_mode(layout)));
}

std::uint64_t lucj_reference(const ModeLayout& layout) {
  const auto perm = lucj_qubit_of_mode(layout);
  const std::uint64_t occ = layout.reference_occupation();
  std::uint64_t out = 0;
  for (int m = 0; m < layout.n_modes(); ++m)
    if ((occ >> m) & 1u) out |= std::uint64_t{1} << perm[static_cast<std::size_t>(m)];
  return out;
}

namespace {

// Spin-orbital qubit pairs (orbital 0, orbital 1) rotated by each species' K.
struct RotationPair {
  int q0, q1;
  double b;  // mapped generator = i b (X_q0 Y_q1 - Y_q0 X_q1)
};

std::vector<RotationPair> rotation_pairs(const ModeLayout& layout, bool electrons) {
  const auto perm = lucj_qubit_of_mode(layout);
  std::vector<std::pair<int, int>> modes;
  if (electrons) {
    for (int spin = 0; spin < 2; ++spin)
      modes.emplace_back(layout.electron_mode(0, spin), layout.electron_mode(1, spin));
  } else {
    modes.emplace_back(layout.nuclear_mode(0), layout.nuclear_mode(1));
  }
  std::vector<RotationPair> out;
  for (auto [m0, m1] : modes) {
    const int q0 = perm[static_cast<std::size_t>(m0)], q1 = perm[static_cast<std::size_t>(m1)];
    if (std::abs(q0 - q1) != 1) throw std::logic_error("rotation pair is not adjacent");
    const int n = layout.n_modes();
    // a1^dagger a0 - a0^dagger a1 in qubit labels
    const FermionOp g = FermionOp::hop(n, q1, q0) - FermionOp::hop(n, q0, q1);
    const PauliSum pg = jordan_wigner(g);
    const std::uint64_t b0 = std::uint64_t{1} << q0, b1 = std::uint64_t{1} << q1;
    const PauliString xy{b0 | b1, b1}, yx{b0 | b1, b0};
    const cplx cxy = pg.coefficient(xy), cyx = pg.coefficient(yx);
    if (pg.size() != 2 || std::abs(cxy + cyx) > 1e-12 || std::abs(cxy.real()) > 1e-12)
      throw std::logic_error("unexpected Givens generator structure");
    out.push_back({q0, q1, cxy.imag()});
  }
  return out;
}

// exp(theta (a1^dagger a0 - h.c.)) = S_q1 rxx(phi) ryy(phi) S_q1^dagger with phi = -2 b theta.
void add_givens(Circuit& c, const RotationPair& r, Angle theta) {
  const Angle phi{-2.0 * r.b * theta.value, theta.slot, -2.0 * r.b * theta.scale};
  c.add(Gate::rz(r.q1, {-std::numbers::pi / 2.0}));
  c.add(Gate::rxx(r.q0, r.q1, phi));
  c.add(Gate::ryy(r.q0, r.q1, phi));
  c.add(Gate::rz(r.q1, {std::numbers::pi / 2.0}));
}

struct BlockSlots {
  int alpha = -1, theta = -1, gamma = -1;
};

// e^{K} when forward, e^{-K} otherwise; U = D(alpha) R(theta) D(gamma).
void add_rotation(Circuit& c, const std::vector<RotationPair>& pairs, const BlockSlots& s,
                  bool forward) {
  const double sign = forward ? 1.0 : -1.0;
  auto phase = [&](int slot) {
    if (slot < 0) return;
    for (const auto& p : pairs) c.add(Gate::rz(p.q0, {0.0, slot, sign}));
  };
  auto givens = [&]() {
    if (s.theta < 0) return;
    for (const auto& p : pairs) add_givens(c, p, {0.0, s.theta, sign});
  };
  if (forward) {
    phase(s.gamma);
    givens();
    phase(s.alpha);
  } else {
    phase(s.alpha);
    givens();
    phase(s.gamma);
  }
}

}  // namespace

int lucj_params_per_layer(const ModeLayout& layout, const LucjOptions& options) {
  const int k = options.diagonal_k ? 1 : 3;
  return 2 * k + static_cast<int>(lucj_adjacency(layout).size()) + layout.n_modes();
}

Circuit lucj_template(const ModeLayout& layout, const LucjOptions& options) {
  if (options.layers < 1) throw std::invalid_argument("LUCJ needs at least one layer");
  const int n = layout.n_modes();
  const auto edges = lucj_adjacency(layout);
  const auto epairs = rotation_pairs(layout, true);
  const auto npairs = rotation_pairs(layout, false);
  const int per = lucj_params_per_layer(layout, options);
  Circuit c(n, per * options.layers);
  const std::uint64_t ref = lucj_reference(layout);
  for (int q = 0; q < n; ++q)
    if ((ref >> q) & 1u) c.add(Gate::x(q));
  for (int l = 0; l < options.layers; ++l) {
    int slot = l * per;
    BlockSlots es, ns;
    if (options.diagonal_k) {
      es.alpha = slot++;
      ns.alpha = slot++;
    } else {
      es = {slot, slot + 1, slot + 2};
      ns = {slot + 3, slot + 4, slot + 5};
      slot += 6;
    }
    add_rotation(c, epairs, es, false);
    add_rotation(c, npairs, ns, false);
    // e^{i J n_p n_q} = rz_p(J/2) rz_q(J/2) rzz(-J/2) up to phase
    for (auto [p, q] : edges) {
      c.add(Gate::rz(p, {0.0, slot, 0.5}));
      c.add(Gate::rz(q, {0.0, slot, 0.5}));
      c.add(Gate::rzz(p, q, {0.0, slot, -0.5}));
      ++slot;
    }
    // e^{i J n_p} = rz_p(J) up to phase
    for (int q = 0; q < n; ++q) c.add(Gate::rz(q, {0.0, slot++, 1.0}));
    add_rotation(c, epairs, es, true);
    add_rotation(c, npairs, ns, true);
  }
  return c;
}

std::array<double, 3> givens_angles(const Eigen::Matrix2cd& u) {
  // u = e^{i phi} [[e^{i(a+g)} c, -e^{i a} s], [e^{i g} s, c]]
  const double c = std::min(1.0, std::abs(u(1, 1)));
  const double s = std::min(1.0, std::abs(u(1, 0)));
  const double theta = std::atan2(s, c);
  double phi, alpha, gamma;
  if (c > 1e-12) {
    phi = std::arg(u(1, 1));
    gamma = s > 1e-12 ? std::arg(u(1, 0)) - phi : 0.0;
    alpha = std::arg(u(0, 0)) - phi - gamma;
  } else {
    phi = std::arg(u(1, 0));
    gamma = 0.0;
    alpha = std::arg(-u(0, 1)) - phi;
  }
  return {std::remainder(alpha, 2.0 * std::numbers::pi), theta,
          std::remainder(gamma, 2.0 * std::numbers::pi)};
}

Eigen::Matrix2cd givens_unitary(const std::array<double, 3>& a) {
  const double c = std::cos(a[1]), s = std::sin(a[1]);
  Eigen::Matrix2cd r;
  r << c, -s, s, c;
  Eigen::Matrix2cd da = Eigen::Matrix2cd::Identity(), dg = Eigen::Matrix2cd::Identity();
  da(0, 0) = std::exp(kI * a[0]);
  dg(0, 0) = std::exp(kI * a[2]);
  return da * r * dg;
}

namespace {

Eigen::Matrix2cd expm_anti_hermitian(const Eigen::Matrix2cd& k) {
  // K = i H with H Hermitian
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(-kI * k);
  Eigen::Vector2cd ph;
  for (int i = 0; i < 2; ++i) ph(i) = std::exp(kI * es.eigenvalues()(i));
  return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

Eigen::Matrix2cd logm_unitary(const Eigen::Matrix2cd& u) {
  Eigen::ComplexEigenSolver<Eigen::Matrix2cd> es(u);
  Eigen::Matrix2cd v = es.eigenvectors();
  Eigen::Vector2cd l;
  for (int i = 0; i < 2; ++i) l(i) = kI * std::arg(es.eigenvalues()(i));
  Eigen::Matrix2cd k = v * l.asDiagonal() * v.inverse();
  return 0.5 * (k - k.adjoint());
}

void check_anti_hermitian(const Eigen::Matrix2cd& k) {
  if ((k + k.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("LUCJ K must be anti-Hermitian");
}

}  // namespace

std::vector<double> lucj_vector(const LucjParams& params, const ModeLayout& layout) {
  const auto edges = lucj_adjacency(layout);
  const int n = layout.n_modes();
  std::vector<double> flat;
  for (const auto& layer : params.layers) {
    for (const auto* k : {&layer.k_electron, &layer.k_nuclear}) {
      check_anti_hermitian(*k);
      const auto a = givens_angles(expm_anti_hermitian(*k));
      flat.insert(flat.end(), a.begin(), a.end());
    }
    for (const auto& [key, v] : layer.j) {
      const auto [p, q] = key;
      if (p < 0 || q >= n || p > q)
        throw std::invalid_argument(fmt::format("J coupling ({}, {}) is not a valid pair", p, q));
      if (p != q) {
        bool ok = false;
        for (auto e : edges) ok |= (e.first == p && e.second == q);
        if (!ok)
          throw std::invalid_argument(fmt::format("J coupling ({}, {}) is outside the adjacency", p, q));
      }
    }
    auto get = [&](int p, int q) {
      auto it = layer.j.find({p, q});
      return it == layer.j.end() ? 0.0 : it->second;
    };
    for (auto [p, q] : edges) flat.push_back(get(p, q));
    for (int q = 0; q < n; ++q) flat.push_back(get(q, q));
  }
  return flat;
}

LucjParams lucj_params(std::span<const double> flat, const ModeLayout& layout,
                       const LucjOptions& options) {
  const int per = lucj_params_per_layer(layout, options);
  if (flat.size() != static_cast<std::size_t>(per * options.layers))
    throw std::invalid_argument("LUCJ parameter vector has the wrong length");
  const auto edges = lucj_adjacency(layout);
  LucjParams out;
  for (int l = 0; l < options.layers; ++l) {
    std::size_t i = static_cast<std::size_t>(l * per);
    LucjLayer layer;
    for (auto* k : {&layer.k_electron, &layer.k_nuclear}) {
      std::array<double, 3> a{};
      if (options.diagonal_k) a[0] = flat[i++];
      else {
        a = {flat[i], flat[i + 1], flat[i + 2]};
        i += 3;
      }
      *k = logm_unitary(givens_unitary(a));
    }
    for (auto e : edges) layer.j[e] = flat[i++];
    for (int q = 0; q < layout.n_modes(); ++q) layer.j[{q, q}] = flat[i++];
    out.layers.push_back(std::move(layer));
  }
  return out;
}

Circuit build_lucj_circuit(const LucjParams& params, const ModeLayout& layout) {
  const auto flat = lucj_vector(params, layout);
  LucjOptions opt;
  opt.layers = static_cast<int>(params.layers.size());
  return lucj_template(layout, opt).bind(flat);
}

// ---------------------------------------------------------------------------
// ADAPT

double adapt_gradient(const StateVector& state, const PauliSum& h, const PauliSum& generator) {
  return expectation(state, commutator(h, generator).pruned(1e-14));
}

AdaptSelection adapt_step(const StateVector& state, const ExcitationPool& pool, const PauliSum& h,
                          Mapping mapping) {
  if (pool.generators.empty()) throw std::invalid_argument("ADAPT needs a non-empty pool");
  AdaptSelection sel;
  for (std::size_t i = 0; i < pool.generators.size(); ++i) {
    const double g = adapt_gradient(state, h, map_to_qubits(pool.generators[i].generator, mapping));
    sel.gradients.push_back(g);
    if (sel.index < 0 || std::abs(g) > std::abs(sel.gradient) + 1e-12) {
      sel.index = static_cast<int>(i);
      sel.gradient = g;
    }
  }
  return sel;
}

}  // namespace mcvqe
