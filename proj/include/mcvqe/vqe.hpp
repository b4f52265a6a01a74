// Copyright 2026 The mcvqe Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file vqe.hpp
 * @brief Derivative-free optimizers and the variational loop.
 */

#pragma once

#include <mcvqe/ansatz.hpp>
#include <mcvqe/sim.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mcvqe {

enum class Optimizer { nelder_mead, spsa };

[[nodiscard]] std::string_view to_string(Optimizer o);
[[nodiscard]] Optimizer optimizer_from_string(std::string_view s);

using Objective = std::function<double(std::span<const double>)>;

struct OptimizerOptions {
  int max_evaluations = 200000;
  double tolerance = 1e-8;  // simplex size for Nelder-Mead
  double initial_step = 0.1;
  // SPSA schedule: a_k = a / (k + 1 + A)^alpha, c_k = c / (k + 1)^gamma
  int spsa_iterations = 300;
  double spsa_a = 0.1;
  double spsa_c = 0.05;
  double spsa_alpha = 0.602;
  double spsa_gamma = 0.101;
  double spsa_stability = 10.0;
  std::uint64_t seed = 7;
};

struct OptimizeResult {
  std::vector<double> x;
  double value = 0.0;
  std::vector<double> trace;  // best value after each iteration
  std::vector<double> trace_norm;  // parameter norm of that iterate
  int evaluations = 0;
  bool converged = false;
};

/// Nelder-Mead (1, 2, 0.5, 0.5); restarts from the best vertex until a
/// restart no longer improves. Throws std::runtime_error on a NaN value.
[[nodiscard]] OptimizeResult nelder_mead(const Objective& f, std::vector<double> x0,
                                         const OptimizerOptions& options = {});

/// SPSA with Rademacher perturbations; reports the last iterate's value.
[[nodiscard]] OptimizeResult spsa(const Objective& f, std::vector<double> x0,
                                  const OptimizerOptions& options = {});

enum class EvalMode { analytic, shots };

struct VqeOptions {
  Optimizer optimizer = Optimizer::nelder_mead;
  EvalMode mode = EvalMode::analytic;
  OptimizerOptions optimizer_options;
  int restarts = 5;
  double restart_scale = 0.05;
  int shots = 4096;
  std::optional<NoiseSpec> noise;
  std::uint64_t seed = 7;
};

struct VqeResult {
  std::vector<double> parameters;
  double energy = 0.0;
  std::vector<double> trace;       // best energy so far, per iteration
  std::vector<double> trace_norm;  // parameter norm per iteration
  int evaluations = 0;
  std::string optimizer;
  bool converged = false;
  int shots = 0;
  std::optional<NoiseSpec> noise;
  std::uint64_t seed = 0;
};

/**
 * Minimizes <H> over a parametric circuit. Analytic mode evaluates exact
 * statevector energies; shots mode samples with the given noise. The first
 * start is `init` (zeros when empty), followed by seeded random restarts.
 */
[[nodiscard]] VqeResult minimize(const Circuit& ansatz, const PauliSum& h,
                                 const VqeOptions& options = {},
                                 std::vector<double> init = {});

/// Exact energy of a bound or bindable circuit.
[[nodiscard]] double circuit_energy(const Circuit& ansatz, const PauliSum& h,
                                    std::span<const double> params);

struct AdaptStep {
  int generator = -1;
  std::string name;
  double gradient = 0.0;
  double energy = 0.0;
};

struct AdaptResult {
  VqeResult vqe;
  std::vector<AdaptStep> history;
  std::vector<int> selected;  // pool indices in ansatz order
};

struct AdaptOptions {
  double gradient_threshold = 1e-4;
  int max_steps = 20;
  Mapping mapping = Mapping::jordan_wigner;
  VqeOptions vqe;
};

/// Alternates adapt_step() and minimize() until every pool gradient falls
/// below the threshold; new operators go last, parameters warm-start.
[[nodiscard]] AdaptResult run_adapt(const ExcitationPool& pool, const PauliSum& h,
                                    const AdaptOptions& options = {});

/// "iteration,energy,parameter_norm" rows.
[[nodiscard]] std::string trace_csv(const VqeResult& r);

}  // namespace mcvqe
