// Copyright 2026 The mcvqe Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file ansatz.hpp
 * @brief Variational circuits: Trotterized multicomponent UCC pools, LUCJ
 *        layers and ADAPT operator selection.
 *
 * Mode layout (six modes): 0/1 occupied electron alpha/beta, 2/3 virtual
 * electron alpha/beta, 4/5 nuclear (or positronic) spatial orbitals.
 */

#pragma once

#include <mcvqe/qubitops.hpp>
#include <mcvqe/sim.hpp>

#include <Eigen/Core>

#include <array>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mcvqe {

enum class PoolLabel { t1e, t1p, t2ee, t2ep, t3eep };

[[nodiscard]] std::string_view to_string(PoolLabel l);
[[nodiscard]] PoolLabel pool_label_from_string(std::string_view s);
/// Comma-separated labels; an empty string gives an empty list.
[[nodiscard]] std::vector<PoolLabel> parse_pool_labels(std::string_view s);
[[nodiscard]] std::string format_pool_labels(const std::vector<PoolLabel>& labels);

struct PoolGenerator {
  PoolLabel label;
  std::string name;     // e.g. "t2ep:04->25"
  FermionOp generator;  // T - T^dagger, anti-Hermitian
};

struct ExcitationPool {
  ModeLayout layout;
  std::vector<PoolGenerator> generators;  // parameter slot = position

  [[nodiscard]] int n_params() const { return static_cast<int>(generators.size()); }
};

/// Generators for the selected labels, in label order t1e, t1p, t2ee, t2ep, t3eep.
/// Requires the six-mode layout with two electrons and one nuclear particle.
[[nodiscard]] ExcitationPool build_pool(const std::vector<PoolLabel>& labels,
                                        const ModeLayout& layout);

/// Reference preparation plus one pauli_evolution per mapped Pauli term of
/// every generator (lexicographic term order); slot j drives generator j.
[[nodiscard]] Circuit trotter_circuit(const ExcitationPool& pool, Mapping mapping);

/// X gates preparing the encoded reference occupation.
[[nodiscard]] Circuit reference_circuit(const ModeLayout& layout, Mapping mapping);

// ---------------------------------------------------------------------------
// LUCJ

/**
 * Qubit position of every mode for LUCJ circuits. Same-spin pairs of each
 * species and the occupied alpha/beta pair sit on neighbouring qubits:
 * line = [1a, 0a, 0b, 1b, n0, n1].
 */
[[nodiscard]] std::vector<int> lucj_qubit_of_mode(const ModeLayout& layout);

/// Line edges carrying number-number couplings.
[[nodiscard]] std::vector<std::pair<int, int>> lucj_adjacency(const ModeLayout& layout);

/// Jordan-Wigner Hamiltonian in the LUCJ qubit order.
[[nodiscard]] PauliSum lucj_hamiltonian(const FermionOp& h, const ModeLayout& layout);

/// Reference occupation in the LUCJ qubit order.
[[nodiscard]] std::uint64_t lucj_reference(const ModeLayout& layout);

struct LucjLayer {
  Eigen::Matrix2cd k_electron = Eigen::Matrix2cd::Zero();  // shared by both spins
  Eigen::Matrix2cd k_nuclear = Eigen::Matrix2cd::Zero();
  std::map<std::pair<int, int>, double> j;  // qubit pair (i <= j); i == j is a local term
};

struct LucjParams {
  std::vector<LucjLayer> layers;
};

struct LucjOptions {
  int layers = 1;
  /// Keep only orbital phases in K (no Givens mixing).
  bool diagonal_k = false;
};

/**
 * Parametric LUCJ circuit in the {x, rz, rxx, ryy, rzz} basis. Per layer,
 * e^{-K}, then e^{iJ}, then e^{K}. Parameters per layer: three orbital-rotation
 * angles per species (one when diagonal_k), then one J per adjacency edge,
 * then one local J per qubit.
 */
[[nodiscard]] Circuit lucj_template(const ModeLayout& layout, const LucjOptions& options = {});

[[nodiscard]] int lucj_params_per_layer(const ModeLayout& layout, const LucjOptions& options = {});

/// Bound circuit for explicit K and J. Throws for non-anti-Hermitian K or
/// couplings outside the adjacency.
[[nodiscard]] Circuit build_lucj_circuit(const LucjParams& params, const ModeLayout& layout);

/// Flat template parameters for explicit K and J (inverse of lucj_params()).
[[nodiscard]] std::vector<double> lucj_vector(const LucjParams& params, const ModeLayout& layout);
[[nodiscard]] LucjParams lucj_params(std::span<const double> flat, const ModeLayout& layout,
                                     const LucjOptions& options = {});

/// Angles (alpha, theta, gamma) with U = e^{i phi} diag(e^{i alpha}, 1) R(theta) diag(e^{i gamma}, 1).
[[nodiscard]] std::array<double, 3> givens_angles(const Eigen::Matrix2cd& u);
[[nodiscard]] Eigen::Matrix2cd givens_unitary(const std::array<double, 3>& angles);

// ---------------------------------------------------------------------------
// ADAPT

struct AdaptSelection {
  int index = -1;
  double gradient = 0.0;
  std::vector<double> gradients;  // one per pool generator
};

/// dE/dtheta at theta = 0 for appending e^{theta G} after the current state.
[[nodiscard]] double adapt_gradient(const StateVector& state, const PauliSum& h,
                                    const PauliSum& generator);

/// Largest |gradient| over the pool; ties go to the lowest index.
[[nodiscard]] AdaptSelection adapt_step(const StateVector& state, const ExcitationPool& pool,
                                        const PauliSum& h, Mapping mapping);

}  // namespace mcvqe
