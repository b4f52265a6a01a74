// Copyright 2026 The mcvqe Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file mitigation.hpp
 * @brief Gate folding and log-linear zero-noise extrapolation.
 *
 * The fit model is ln(-E) = a + b * lambda with E(0) = -exp(a). Raw
 * execution sits at lambda = 1; k full folds give lambda = 2k + 1.
 */

#pragma once

#include <mcvqe/sim.hpp>

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace mcvqe {

enum class FoldStyle { full, partial };

[[nodiscard]] std::string_view to_string(FoldStyle s);
[[nodiscard]] FoldStyle fold_style_from_string(std::string_view s);

/**
 * Unitarily equivalent circuit with about lambda times the gates. Full
 * folding needs an odd integer lambda and maps g -> g (g^dagger g)^k. Partial
 * folding applies floor((lambda - 1) / 2) full folds and one extra fold to a
 * gate prefix so the count is within one gate of lambda * size.
 * Throws std::invalid_argument for lambda < 1.
 */
[[nodiscard]] Circuit fold_circuit(const Circuit& c, double lambda, FoldStyle style);

struct FoldingSchedule {
  std::vector<double> lambdas{1.0, 3.0, 5.0};
  FoldStyle style = FoldStyle::full;

  void validate() const;
};

struct PiePoint {
  double lambda = 0.0;
  double energy = 0.0;
  double standard_error = 0.0;
};

struct PieFit {
  std::vector<PiePoint> points;    // used in the fit
  std::vector<PiePoint> excluded;  // E >= 0, outside the fit domain
  double a = 0.0;
  double b = 0.0;
  double a_stderr = 0.0;
  double energy = 0.0;  // E(0)
  double standard_error = 0.0;

  [[nodiscard]] double predict(double lambda) const { return -std::exp(a + b * lambda); }
};

/**
 * Weighted least squares on (lambda, ln(-E)) with sigma = stderr / |E|;
 * unweighted when any stderr is zero. Points with E >= 0 are moved to
 * `excluded`. Throws std::invalid_argument with fewer than two usable points.
 */
[[nodiscard]] PieFit pie_extrapolate(const std::vector<PiePoint>& points);

struct MitigatedRun {
  PieFit fit;
  std::vector<PiePoint> raw;  // every executed point, in schedule order
  std::vector<std::size_t> gate_counts;
};

/**
 * Executes each folded circuit with `shots` per measurement group under the
 * given base noise (folding is the amplification) and fits the result.
 */
[[nodiscard]] MitigatedRun run_mitigated(const Circuit& c, const PauliSum& h,
                                         const FoldingSchedule& schedule, int shots,
                                         const std::optional<NoiseSpec>& noise, std::uint64_t seed);

/// "lambda,energy,stderr,log_neg_energy,fit" rows, ending with the lambda = 0 estimate.
[[nodiscard]] std::string plot_csv(const MitigatedRun& run);

}  // namespace mcvqe
