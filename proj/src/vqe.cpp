// Copyright 2026 The mcvqe Authors
// SPDX-License-Identifier: Apache-2.0

#include <mcvqe/vqe.hpp>

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace mcvqe {

std::string_view to_string(Optimizer o) {
  return o == Optimizer::nelder_mead ? "nelder_mead" : "spsa";
}

Optimizer optimizer_from_string(std::string_view s) {
  if (s == "nelder_mead" || s == "nm") return Optimizer::nelder_mead;
  if (s == "spsa") return Optimizer::spsa;
  throw std::invalid_argument(fmt::format("unknown optimizer '{}'", s));
}

namespace {

double norm(const std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

double checked(const Objective& f, std::span<const double> x, int& evals) {
  ++evals;
  const double v = f(x);
  if (std::isnan(v))
    throw std::runtime_error(fmt::format("objective returned NaN at evaluation {}", evals));
  return v;
}

// One Nelder-Mead run from an axis-aligned simplex around x0.
OptimizeResult nelder_mead_once(const Objective& f, const std::vector<double>& x0,
                                const OptimizerOptions& o, int budget) {
  const std::size_t n = x0.size();
  OptimizeResult r;
  std::vector<std::vector<double>> pts(n + 1, x0);
  std::vector<double> val(n + 1);
  for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += o.initial_step;
  for (std::size_t i = 0; i <= n; ++i) val[i] = checked(f, pts[i], r.evaluations);

  std::vector<std::size_t> order(n + 1);
  std::vector<double> centroid(n), trial(n), trial2(n);
  auto point = [&](double t, std::vector<double>& out) {
    const auto& worst = pts[order[n]];
    for (std::size_t k = 0; k < n; ++k) out[k] = centroid[k] + t * (worst[k] - centroid[k]);
  };
  while (true) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return val[a] < val[b]; });
    r.trace.push_back(val[order[0]]);
    r.trace_norm.push_back(norm(pts[order[0]]));
    double size = 0.0;
    for (std::size_t i = 1; i <= n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        size = std::max(size, std::abs(pts[order[i]][k] - pts[order[0]][k]));
    if (size < o.tolerance) {
      r.converged = true;
      break;
    }
    if (r.evaluations >= budget) break;

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) centroid[k] += pts[order[i]][k] / static_cast<double>(n);
    const std::size_t w = order[n];
    point(-1.0, trial);
    const double fr = checked(f, trial, r.evaluations);
    if (fr < val[order[0]]) {
      point(-2.0, trial2);
      const double fe = checked(f, trial2, r.evaluations);
      if (fe < fr) {
        pts[w] = trial2;
        val[w] = fe;
      } else {
        pts[w] = trial;
        val[w] = fr;
      }
    } else if (fr < val[order[n - 1]]) {
      pts[w] = trial;
      val[w] = fr;
    } else {
      const bool outside = fr < val[w];
      point(outside ? -0.5 : 0.5, trial2);
      const double fc = checked(f, trial2, r.evaluations);
      if (fc < (outside ? fr : val[w])) {
        pts[w] = trial2;
        val[w] = fc;
      } else {
        const auto best = pts[order[0]];
        for (std::size_t i = 1; i <= n; ++i) {
          auto& p = pts[order[i]];
          for (std::size_t k = 0; k < n; ++k) p[k] = best[k] + 0.5 * (p[k] - best[k]);
          val[order[i]] = checked(f, p, r.evaluations);
        }
      }
    }
  }
  r.x = pts[order[0]];
  r.value = val[order[0]];
  return r;
}

}  // namespace

OptimizeResult nelder_mead(const Objective& f, std::vector<double> x0, const OptimizerOptions& o) {
  OptimizeResult best;
  if (x0.empty()) {
    best.x = x0;
    best.value = checked(f, x0, best.evaluations);
    best.trace.push_back(best.value);
    best.trace_norm.push_back(0.0);
    best.converged = true;
    return best;
  }
  best.x = std::move(x0);
  best.value = std::numeric_limits<double>::infinity();
  // restart from the best vertex until the restart stops improving
  for (int round = 0; round < 20; ++round) {
    auto r = nelder_mead_once(f, best.x, o, o.max_evaluations - best.evaluations);
    best.evaluations += r.evaluations;
    best.trace.insert(best.trace.end(), r.trace.begin(), r.trace.end());
    best.trace_norm.insert(best.trace_norm.end(), r.trace_norm.begin(), r.trace_norm.end());
    const bool improved = r.value < best.value - 1e-14;
    if (r.value < best.value) {
      best.value = r.value;
      best.x = r.x;
    }
    best.converged = r.converged;
    if (!improved || !r.converged || best.evaluations >= o.max_evaluations) break;
  }
  std::partial_sum(best.trace.begin(), best.trace.end(), best.trace.begin(),
                   [](double a, double b) { return std::min(a, b); });
  return best;
}

OptimizeResult spsa(const Objective& f, std::vector<double> x, const OptimizerOptions& o) {
  OptimizeResult r;
  std::mt19937_64 rng(o.seed);
  std::bernoulli_distribution coin(0.5);
  const std::size_t n = x.size();
  std::vector<double> delta(n), xp(n), xm(n);
  r.x = x;
  r.value = checked(f, x, r.evaluations);
  r.trace.push_back(r.value);
  r.trace_norm.push_back(norm(r.x));
  for (int k = 0; k < o.spsa_iterations && r.evaluations + 3 <= o.max_evaluations; ++k) {
    const double ak = o.spsa_a / std::pow(k + 1 + o.spsa_stability, o.spsa_alpha);
    const double ck = o.spsa_c / std::pow(k + 1, o.spsa_gamma);
    for (std::size_t i = 0; i < n; ++i) {
      delta[i] = coin(rng) ? 1.0 : -1.0;
      xp[i] = x[i] + ck * delta[i];
      xm[i] = x[i] - ck * delta[i];
    }
    const double diff = checked(f, xp, r.evaluations) - checked(f, xm, r.evaluations);
    for (std::size_t i = 0; i < n; ++i) x[i] -= ak * diff / (2.0 * ck * delta[i]);
    const double v = checked(f, x, r.evaluations);
    if (v < r.value) {
      r.value = v;
      r.x = x;
    }
    r.trace.push_back(r.value);
    r.trace_norm.push_back(norm(r.x));
  }
  r.converged = true;
  return r;
}

double circuit_energy(const Circuit& ansatz, const PauliSum& h, std::span<const double> params) {
  const Circuit bound = ansatz.is_bound() && params.empty() ? ansatz : ansatz.bind(params);
  return expectation(run_statevector(bound), h);
}

VqeResult minimize(const Circuit& ansatz, const PauliSum& h, const VqeOptions& options,
                   std::vector<double> init) {
  const auto np = static_cast<std::size_t>(ansatz.n_params());
  if (init.empty()) init.assign(np, 0.0);
  if (init.size() != np)
    throw std::invalid_argument(
        fmt::format("initial point has {} entries, circuit has {} parameters", init.size(), np));
  if (h.n_qubits() != ansatz.n_qubits())
    throw std::invalid_argument("Hamiltonian and circuit widths differ");
  if (options.optimizer_options.max_evaluations < 1) throw std::invalid_argument("budget must be >= 1");

  Objective f;
  std::uint64_t sample_seed = options.seed;
  if (options.mode == EvalMode::analytic) {
    const Eigen::MatrixXcd hm = pauli_matrix(h);
    f = [&ansatz, hm](std::span<const double> x) {
      const StateVector psi = run_statevector(ansatz.bind(x));
      return psi.dot(hm * psi).real();
    };
  } else {
    f = [&](std::span<const double> x) {
      return sample_energy(ansatz.bind(x), h, options.shots, options.noise, sample_seed++).mean;
    };
  }

  VqeResult res;
  res.optimizer = std::string(to_string(options.optimizer));
  res.shots = options.mode == EvalMode::shots ? options.shots : 0;
  res.noise = options.noise;
  res.seed = options.seed;
  res.energy = std::numeric_limits<double>::infinity();

  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> u(-options.restart_scale, options.restart_scale);
  const int starts = np == 0 ? 1 : 1 + std::max(0, options.restarts);
  for (int s = 0; s < starts; ++s) {
    std::vector<double> x0 = init;
    if (s > 0)
      for (auto& v : x0) v += u(rng);
    OptimizerOptions oo = options.optimizer_options;
    oo.seed = options.seed + static_cast<std::uint64_t>(s);
    auto r = options.optimizer == Optimizer::nelder_mead ? nelder_mead(f, x0, oo) : spsa(f, x0, oo);
    res.evaluations += r.evaluations;
    for (double t : r.trace) res.trace.push_back(std::min(t, res.energy));
    res.trace_norm.insert(res.trace_norm.end(), r.trace_norm.begin(), r.trace_norm.end());
    if (r.value < res.energy) {
      res.energy = r.value;
      res.parameters = r.x;
      res.converged = r.converged;
    }
  }
  return res;
}

AdaptResult run_adapt(const ExcitationPool& pool, const PauliSum& h, const AdaptOptions& options) {
  if (!(options.gradient_threshold > 0.0)) throw std::invalid_argument("gradient threshold must be positive");
  AdaptResult out;
  ExcitationPool current{pool.layout, {}};
  std::vector<double> params;
  Circuit circ = trotter_circuit(current, options.mapping);
  out.vqe = minimize(circ, h, options.vqe);
  for (int step = 0; step < options.max_steps; ++step) {
    const StateVector psi = run_statevector(circ.bind(params));
    const AdaptSelection sel = adapt_step(psi, pool, h, options.mapping);
    if (std::abs(sel.gradient) < options.gradient_threshold) break;
    current.generators.push_back(pool.generators[static_cast<std::size_t>(sel.index)]);
    out.selected.push_back(sel.index);
    circ = trotter_circuit(current, options.mapping);
    params.push_back(0.0);
    VqeResult r = minimize(circ, h, options.vqe, params);
    out.vqe.trace.insert(out.vqe.trace.end(), r.trace.begin(), r.trace.end());
    out.vqe.trace_norm.insert(out.vqe.trace_norm.end(), r.trace_norm.begin(), r.trace_norm.end());
    r.trace = std::move(out.vqe.trace);
    r.trace_norm = std::move(out.vqe.trace_norm);
    r.evaluations += out.vqe.evaluations;
    out.vqe = std::move(r);
    params = out.vqe.parameters;
    out.history.push_back({sel.index, pool.generators[static_cast<std::size_t>(sel.index)].name,
                           sel.gradient, out.vqe.energy});
  }
  auto& t = out.vqe.trace;
  std::partial_sum(t.begin(), t.end(), t.begin(), [](double a, double b) { return std::min(a, b); });
  return out;
}

std::string trace_csv(const VqeResult& r) {
  std::string s = "iteration,energy,parameter_norm\n";
  for (std::size_t i = 0; i < r.trace.size(); ++i)
    s += fmt::format("{},{:.12f},{:.12f}\n", i, r.trace[i],
                     i < r.trace_norm.size() ? r.trace_norm[i] : 0.0);
  return s;
}

}  // namespace mcvqe
