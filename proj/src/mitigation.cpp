// Copyright 2026 The mcvqe Authors
// SPDX-License-Identifier: Apache-2.0

#include <mcvqe/mitigation.hpp>

#include <Eigen/Dense>
#include <fmt/format.h>

#include <cmath>
#include <stdexcept>

namespace mcvqe {

std::string_view to_string(FoldStyle s) { return s == FoldStyle::full ? "full" : "partial"; }

FoldStyle fold_style_from_string(std::string_view s) {
  if (s == "full") return FoldStyle::full;
  if (s == "partial") return FoldStyle::partial;
  throw std::invalid_argument(fmt::format("unknown folding style '{}'", s));
}

Circuit fold_circuit(const Circuit& c, double lambda, FoldStyle style) {
  if (!(lambda >= 1.0)) throw std::invalid_argument("noise factor must be at least 1");
  const std::size_t n = c.size();
  int k = 0;
  std::size_t extra = 0;  // gates receiving one more fold
  if (style == FoldStyle::full) {
    const double kk = (lambda - 1.0) / 2.0;
    if (std::abs(kk - std::round(kk)) > 1e-9)
      throw std::invalid_argument("full folding needs an odd integer noise factor");
    k = static_cast<int>(std::round(kk));
  } else {
    k = static_cast<int>(std::floor((lambda - 1.0) / 2.0 + 1e-12));
    const double remaining = lambda * static_cast<double>(n) - (2.0 * k + 1.0) * static_cast<double>(n);
    extra = std::min(n, static_cast<std::size_t>(std::llround(std::max(0.0, remaining) / 2.0)));
  }
  Circuit out(c.n_qubits(), c.n_params());
  for (std::size_t i = 0; i < n; ++i) {
    const Gate& g = c.gates()[i];
    const Gate inv = g.inverse();
    out.add(g);
    const int folds = k + (i < extra ? 1 : 0);
    for (int f = 0; f < folds; ++f) {
      out.add(inv);
      out.add(g);
    }
  }
  return out;
}

void FoldingSchedule::validate() const {
  if (lambdas.size() < 2) throw std::invalid_argument("schedule needs at least two noise factors");
  for (double l : lambdas) {
    if (!(l >= 1.0)) throw std::invalid_argument("noise factors must be at least 1");
    if (style == FoldStyle::full && std::abs((l - 1.0) / 2.0 - std::round((l - 1.0) / 2.0)) > 1e-9)
      throw std::invalid_argument("full folding needs odd integer noise factors");
  }
}

PieFit pie_extrapolate(const std::vector<PiePoint>& points) {
  PieFit fit;
  for (const auto& p : points) (p.energy < 0.0 ? fit.points : fit.excluded).push_back(p);
  const auto m = static_cast<Eigen::Index>(fit.points.size());
  if (m < 2)
    throw std::invalid_argument(fmt::format(
        "PIE needs at least two points with negative energy ({} excluded)", fit.excluded.size()));
  bool weighted = true;
  for (const auto& p : fit.points) weighted &= p.standard_error > 0.0;

  Eigen::MatrixXd x(m, 2);
  Eigen::VectorXd y(m), w(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto& p = fit.points[static_cast<std::size_t>(i)];
    x(i, 0) = 1.0;
    x(i, 1) = p.lambda;
    y(i) = std::log(-p.energy);
    const double sigma = p.standard_error / std::abs(p.energy);
    w(i) = weighted ? 1.0 / (sigma * sigma) : 1.0;
  }
  const Eigen::Matrix2d normal = x.transpose() * w.asDiagonal() * x;
  const Eigen::Vector2d rhs = x.transpose() * w.asDiagonal() * y;
  const Eigen::Vector2d coef = normal.ldlt().solve(rhs);
  Eigen::Matrix2d cov = normal.inverse();
  if (!weighted) {
    // unweighted: scale by the residual variance when it can be estimated
    const double rss = (y - x * coef).squaredNorm();
    cov *= m > 2 ? rss / static_cast<double>(m - 2) : 0.0;
  }
  fit.a = coef(0);
  fit.b = coef(1);
  fit.a_stderr = std::sqrt(std::max(0.0, cov(0, 0)));
  fit.energy = -std::exp(fit.a);
  fit.standard_error = std::abs(fit.energy) * fit.a_stderr;
  return fit;
}

MitigatedRun run_mitigated(const Circuit& c, const PauliSum& h, const FoldingSchedule& schedule,
                           int shots, const std::optional<NoiseSpec>& noise, std::uint64_t seed) {
  schedule.validate();
  MitigatedRun run;
  for (std::size_t i = 0; i < schedule.lambdas.size(); ++i) {
    const Circuit folded = fold_circuit(c, schedule.lambdas[i], schedule.style);
    const auto est = sample_energy(folded, h, shots, noise, seed + 1000003ULL * i);
    run.raw.push_back({schedule.lambdas[i], est.mean, est.standard_error});
    run.gate_counts.push_back(folded.size());
  }
  run.fit = pie_extrapolate(run.raw);
  return run;
}

std::string plot_csv(const MitigatedRun& run) {
  std::string s = "lambda,energy,stderr,log_neg_energy,fit\n";
  for (const auto& p : run.raw) {
    const std::string ln = p.energy < 0.0 ? fmt::format("{:.12f}", std::log(-p.energy)) : "nan";
    s += fmt::format("{},{:.12f},{:.12f},{},{:.12f}\n", p.lambda, p.energy, p.standard_error, ln,
                     run.fit.a + run.fit.b * p.lambda);
  }
  s += fmt::format("0,{:.12f},{:.12f},{:.12f},{:.12f}\n", run.fit.energy, run.fit.standard_error,
                   run.fit.a, run.fit.a);
  return s;
}

}  // namespace mcvqe
