// Copyright 2026 The mcvqe Authors
// SPDX-License-Identifier: Apache-2.0

#include <mcvqe/resources.hpp>

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mcvqe {

namespace {

constexpr double kPi = std::numbers::pi;

void add_h(Circuit& out, int q) {
  // H = rz(pi/2) sx rz(pi/2) up to phase
  out.add(Gate::rz(q, {kPi / 2.0}));
  out.add(Gate::sx(q));
  out.add(Gate::rz(q, {kPi / 2.0}));
}

void add_sxdg(Circuit& out, int q) {
  // Z sx Z = sxdg up to phase
  out.add(Gate::rz(q, {kPi}));
  out.add(Gate::sx(q));
  out.add(Gate::rz(q, {kPi}));
}

// exp(-i theta P / 2) = B^dagger ladder rz ladder^dagger B
void add_pauli_rotation(Circuit& out, const PauliString& p, const Angle& theta) {
  std::vector<int> qs;
  for (int q = 0; q < 64; ++q)
    if ((p.support() >> q) & 1u) qs.push_back(q);
  for (int q : qs) {
    const char c = p.at(q);
    if (c == 'X') add_h(out, q);
    else if (c == 'Y') out.add(Gate::sx(q));  // sx Y sxdg = Z
  }
  for (std::size_t i = 0; i + 1 < qs.size(); ++i) out.add(Gate::cnot(qs[i], qs[i + 1]));
  out.add(Gate::rz(qs.back(), theta));
  for (std::size_t i = qs.size() - 1; i > 0; --i) out.add(Gate::cnot(qs[i - 1], qs[i]));
  for (int q : qs) {
    const char c = p.at(q);
    if (c == 'X') add_h(out, q);
    else if (c == 'Y') add_sxdg(out, q);
  }
}

bool is_zero_angle(const Angle& a) {
  if (!a.bound()) return false;
  const double r = std::remainder(a.value, 2.0 * kPi);
  return std::abs(r) < 1e-12;
}

// One pass; returns true when anything changed.
bool peephole(std::vector<Gate>& gates, int n_qubits) {
  bool changed = false;
  std::vector<Gate> out;
  out.reserve(gates.size());
  // index into `out` of the last gate touching each qubit
  std::vector<long> last(static_cast<std::size_t>(n_qubits), -1);
  std::vector<bool> alive;
  auto touch = [&](const Gate& g, long idx) {
    for (int q : g.qubits) last[static_cast<std::size_t>(q)] = idx;
  };
  auto recompute_last = [&](const Gate& g) {
    for (int q : g.qubits) {
      long idx = -1;
      for (long i = static_cast<long>(out.size()) - 1; i >= 0; --i) {
        if (!alive[static_cast<std::size_t>(i)]) continue;
        const auto& o = out[static_cast<std::size_t>(i)].qubits;
        if (std::find(o.begin(), o.end(), q) != o.end()) {
          idx = i;
          break;
        }
      }
      last[static_cast<std::size_t>(q)] = idx;
    }
  };
  for (const Gate& g : gates) {
    if (g.kind == GateKind::rz && is_zero_angle(g.angle)) {
      changed = true;
      continue;
    }
    // previous gate on the same operands, with nothing in between on any operand
    long prev = last[static_cast<std::size_t>(g.qubits[0])];
    for (int q : g.qubits)
      if (last[static_cast<std::size_t>(q)] != prev) prev = -2;
    if (prev >= 0) {
      Gate& p = out[static_cast<std::size_t>(prev)];
      if (p.kind == g.kind && p.qubits == g.qubits) {
        if (g.kind == GateKind::rz && (p.angle.slot == g.angle.slot)) {
          p.angle.value += g.angle.value;
          if (!p.angle.bound()) p.angle.scale += g.angle.scale;
          changed = true;
          if (is_zero_angle(p.angle) || (!p.angle.bound() && p.angle.scale == 0.0 &&
                                         std::abs(std::remainder(p.angle.value, 2 * kPi)) < 1e-12)) {
            alive[static_cast<std::size_t>(prev)] = false;
            recompute_last(p);
          }
          continue;
        }
        if (g.kind == GateKind::cnot || g.kind == GateKind::x) {
          alive[static_cast<std::size_t>(prev)] = false;
          recompute_last(p);
          changed = true;
          continue;
        }
      }
    }
    out.push_back(g);
    alive.push_back(true);
    touch(g, static_cast<long>(out.size()) - 1);
  }
  gates.clear();
  for (std::size_t i = 0; i < out.size(); ++i)
    if (alive[i]) gates.push_back(std::move(out[i]));
  return changed;
}

}  // namespace

Circuit simplify(const Circuit& c) {
  std::vector<Gate> gates = c.gates();
  while (peephole(gates, c.n_qubits())) {
  }
  Circuit out(c.n_qubits(), c.n_params());
  for (auto& g : gates) out.add(std::move(g));
  return out;
}

Circuit transpile_basis(const Circuit& c) {
  Circuit out(c.n_qubits(), c.n_params());
  for (const Gate& g : c.gates()) {
    switch (g.kind) {
      case GateKind::x:
      case GateKind::sx:
      case GateKind::rz:
      case GateKind::cnot:
        out.add(g);
        break;
      case GateKind::sxdg:
        add_sxdg(out, g.qubits[0]);
        break;
      case GateKind::rxx:
      case GateKind::ryy:
      case GateKind::rzz:
      case GateKind::pauli_evolution:
        add_pauli_rotation(out, g.generator(), g.angle);
        break;
      default:
        throw std::invalid_argument(fmt::format("cannot transpile gate '{}'", to_string(g.kind)));
    }
  }
  return simplify(out);
}

int circuit_depth(const Circuit& c) {
  std::vector<int> level(static_cast<std::size_t>(c.n_qubits()), 0);
  int depth = 0;
  for (const auto& g : c.gates()) {
    int l = 0;
    for (int q : g.qubits) l = std::max(l, level[static_cast<std::size_t>(q)]);
    ++l;
    for (int q : g.qubits) level[static_cast<std::size_t>(q)] = l;
    depth = std::max(depth, l);
  }
  return depth;
}

ResourceReport report(const Circuit& c, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must lie in (0, 1)");
  ResourceReport r;
  for (const auto& g : c.gates()) {
    ++r.counts[std::string(to_string(g.kind))];
    if (g.arity() == 2 && std::abs(g.qubits[0] - g.qubits[1]) != 1) ++r.non_adjacent_two_qubit;
    if (g.arity() > 2) ++r.non_adjacent_two_qubit;
  }
  r.total = static_cast<int>(c.size());
  r.depth = circuit_depth(c);
  r.width = c.n_qubits();
  r.epsilon = epsilon;
  r.dw = static_cast<double>(r.depth) * r.width;
  r.feasibility = r.dw * epsilon;
  r.feasible = r.feasibility < 1.0;
  return r;
}

namespace {
int count_of(const ResourceReport& r, const char* k) {
  auto it = r.counts.find(k);
  return it == r.counts.end() ? 0 : it->second;
}
}  // namespace

std::string report_table(const std::vector<std::pair<std::string, ResourceReport>>& rows) {
  std::size_t w = 8;
  for (const auto& [name, r] : rows) w = std::max(w, name.size());
  std::string s = fmt::format("{:<{}}  {:>6} {:>6} {:>6} {:>6} {:>7} {:>6} {:>6} {:>10}  {}\n",
                              "circuit", w, "RZ", "SX", "CNOT", "X", "Total", "Depth", "Width",
                              "d*w*eps", "feasible");
  for (const auto& [name, r] : rows)
    s += fmt::format("{:<{}}  {:>6} {:>6} {:>6} {:>6} {:>7} {:>6} {:>6} {:>10.4f}  {}\n", name, w,
                     count_of(r, "rz"), count_of(r, "sx"), count_of(r, "cnot"), count_of(r, "x"),
                     r.total, r.depth, r.width, r.feasibility, r.feasible ? "yes" : "no");
  return s;
}

std::string report_csv(const std::vector<std::pair<std::string, ResourceReport>>& rows) {
  std::string s = "circuit,rz,sx,cnot,x,total,depth,width,dw,epsilon,feasibility,feasible,non_adjacent\n";
  for (const auto& [name, r] : rows)
    s += fmt::format("{},{},{},{},{},{},{},{},{},{},{:.6f},{},{}\n", name, count_of(r, "rz"),
                     count_of(r, "sx"), count_of(r, "cnot"), count_of(r, "x"), r.total, r.depth,
                     r.width, r.dw, r.epsilon, r.feasibility, r.feasible ? 1 : 0,
                     r.non_adjacent_two_qubit);
  return s;
}

}  // namespace mcvqe
