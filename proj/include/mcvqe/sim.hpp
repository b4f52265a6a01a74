// Copyright 2026 The mcvqe Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file sim.hpp
 * @brief Gate-level circuits, a statevector engine, a density-matrix engine
 *        with gate-wise depolarizing noise, and shot-based energy estimation.
 *
 * Conventions: basis index bit q is qubit q; bitstrings print qubit 0 first.
 * Rotations are exp(-i theta P / 2) for rz, rxx, ryy, rzz and
 * pauli_evolution.
 */

#pragma once

#include <mcvqe/qubitops.hpp>

#include <Eigen/Core>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mcvqe {

enum class GateKind { x, sx, sxdg, rz, rxx, ryy, rzz, cnot, pauli_evolution };

[[nodiscard]] std::string_view to_string(GateKind k);

/// theta = value + scale * params[slot] when slot >= 0, else value.
struct Angle {
  double value = 0.0;
  int slot = -1;
  double scale = 1.0;

  [[nodiscard]] bool bound() const { return slot < 0; }
  [[nodiscard]] double evaluate(std::span<const double> params) const;
  [[nodiscard]] Angle negated() const { return {-value, slot, -scale}; }
};

struct Gate {
  GateKind kind = GateKind::x;
  std::vector<int> qubits;  // cnot: {control, target}
  Angle angle;
  PauliString pauli;  // pauli_evolution only

  [[nodiscard]] static Gate x(int q) { return {GateKind::x, {q}, {}, {}}; }
  [[nodiscard]] static Gate sx(int q) { return {GateKind::sx, {q}, {}, {}}; }
  [[nodiscard]] static Gate sxdg(int q) { return {GateKind::sxdg, {q}, {}, {}}; }
  [[nodiscard]] static Gate rz(int q, Angle a) { return {GateKind::rz, {q}, a, {}}; }
  [[nodiscard]] static Gate rxx(int a, int b, Angle t) { return {GateKind::rxx, {a, b}, t, {}}; }
  [[nodiscard]] static Gate ryy(int a, int b, Angle t) { return {GateKind::ryy, {a, b}, t, {}}; }
  [[nodiscard]] static Gate rzz(int a, int b, Angle t) { return {GateKind::rzz, {a, b}, t, {}}; }
  [[nodiscard]] static Gate cnot(int c, int t) { return {GateKind::cnot, {c, t}, {}, {}}; }
  [[nodiscard]] static Gate pauli_evolution(const PauliString& p, Angle a);

  [[nodiscard]] bool is_rotation() const;
  [[nodiscard]] int arity() const { return static_cast<int>(qubits.size()); }
  [[nodiscard]] Gate inverse() const;
  /// The Pauli generator of a rotation gate.
  [[nodiscard]] PauliString generator() const;
};

class Circuit {
 public:
  explicit Circuit(int n_qubits = 0, int n_params = 0) : n_qubits_(n_qubits), n_params_(n_params) {}

  /// Validates operands and parameter slots.
  void add(Gate g);
  void append(const Circuit& other);

  [[nodiscard]] Circuit bind(std::span<const double> params) const;
  [[nodiscard]] bool is_bound() const;
  [[nodiscard]] Circuit inverse() const;

  [[nodiscard]] int n_qubits() const { return n_qubits_; }
  [[nodiscard]] int n_params() const { return n_params_; }
  void set_n_params(int n) { n_params_ = n; }
  [[nodiscard]] const std::vector<Gate>& gates() const { return gates_; }
  [[nodiscard]] std::size_t size() const { return gates_.size(); }

 private:
  int n_qubits_ = 0;
  int n_params_ = 0;
  std::vector<Gate> gates_;
};

using StateVector = Eigen::VectorXcd;
using DensityMatrix = Eigen::MatrixXcd;

[[nodiscard]] std::string format_bitstring(std::uint64_t bits, int n_qubits);
[[nodiscard]] std::uint64_t parse_bitstring(std::string_view bits);

/// Computational basis state |bits>.
[[nodiscard]] StateVector basis_state(int n_qubits, std::uint64_t bits);

/// Applies a bound gate in place.
void apply_gate(StateVector& state, const Gate& g);
void apply_pauli(StateVector& state, const PauliString& p);

/// Throws std::invalid_argument for unbound parameters.
[[nodiscard]] StateVector run_statevector(const Circuit& c, std::uint64_t initial = 0);

/// <psi|H|psi>; throws for non-Hermitian H or a dimension mismatch.
[[nodiscard]] double expectation(const StateVector& state, const PauliSum& h);
[[nodiscard]] double expectation(const DensityMatrix& rho, const PauliSum& h);

[[nodiscard]] double fidelity(const StateVector& a, const StateVector& b);

// ---------------------------------------------------------------------------
// Noise

struct NoiseSpec {
  double p1 = 2e-4;
  double p2 = 3e-3;
  double p_readout = 1e-2;
  double scale = 1.0;

  [[nodiscard]] static NoiseSpec none() { return {0.0, 0.0, 0.0, 1.0}; }
  void validate() const;
  [[nodiscard]] bool is_noiseless() const {
    return scale == 0.0 || (p1 == 0.0 && p2 == 0.0 && p_readout == 0.0);
  }
};

inline constexpr int kMaxDensityQubits = 8;

[[nodiscard]] DensityMatrix to_density(const StateVector& psi);

/// rho -> (1 - q) rho + q (I / 2^k) (x) Tr_Q rho on the listed qubits.
void depolarize(DensityMatrix& rho, std::span<const int> qubits, double q);
void apply_gate(DensityMatrix& rho, const Gate& g);

/**
 * Density-matrix evolution with a depolarizing channel of strength
 * min(1, scale * p_k) after every gate of arity k (p2 for k >= 2).
 * Readout error is not applied here; see sample_energy().
 */
[[nodiscard]] DensityMatrix apply_noise_scaled(const Circuit& c, const NoiseSpec& noise,
                                               std::uint64_t initial = 0);

// ---------------------------------------------------------------------------
// Measurement

/// Qubit-wise commuting group measured in one basis.
struct MeasurementGroup {
  PauliString basis;  // per-qubit measurement basis (X, Y or Z; I = unmeasured)
  std::vector<std::pair<PauliString, double>> terms;
};

/// Greedy qubit-wise commuting partition of the non-identity terms.
[[nodiscard]] std::vector<MeasurementGroup> group_qubitwise(const PauliSum& h);

struct GroupCounts {
  PauliString basis;
  std::vector<std::uint64_t> counts;  // indexed by outcome bitstring
};

struct EnergyEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
  int shots = 0;
  std::vector<GroupCounts> groups;
};

/**
 * Shot-based energy estimate: each measurement group is one circuit
 * executed `shots` times. Noiseless runs sample the statevector; noisy runs
 * sample the exact noisy distribution (density matrix, then readout flips).
 * Deterministic for a fixed seed. Throws std::invalid_argument for shots < 1.
 */
[[nodiscard]] EnergyEstimate sample_energy(const Circuit& c, const PauliSum& h, int shots,
                                           const std::optional<NoiseSpec>& noise,
                                           std::uint64_t seed, std::uint64_t initial = 0);

/// Exact expectation under the same noise model (infinite-shot limit).
[[nodiscard]] double noisy_expectation(const Circuit& c, const PauliSum& h,
                                       const std::optional<NoiseSpec>& noise,
                                       std::uint64_t initial = 0);

/// "group,basis,bitstring,count" rows for nonzero counts.
[[nodiscard]] std::string counts_csv(const EnergyEstimate& e, int n_qubits);

}  // namespace mcvqe
