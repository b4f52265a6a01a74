// Copyright 2026 The mcvqe Authors
// SPDX-License-Identifier: Apache-2.0

#include <mcvqe/vqe.hpp>

#include <catch_amalgamated.hpp>

#include "oracles.hpp"

#include <cmath>

using namespace mcvqe;
using Catch::Matchers::WithinAbs;

namespace {

double rosenbrock(std::span<const double> x) {
  return 100.0 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1.0 - x[0], 2);
}

double quadratic(std::span<const double> x) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += static_cast<double>(i + 1) * std::pow(x[i] - 0.5, 2);
  return s;
}

Circuit pool_circuit(const Problem& p, const char* labels) {
  return trotter_circuit(build_pool(parse_pool_labels(labels), p.layout), Mapping::jordan_wigner);
}

}  // namespace

TEST_CASE("Nelder-Mead") {
  const auto r = nelder_mead(rosenbrock, {-1.2, 1.0});
  CHECK(r.converged);
  CHECK_THAT(r.x[0], WithinAbs(1.0, 1e-5));
  CHECK_THAT(r.x[1], WithinAbs(1.0, 1e-5));
  CHECK(r.value < 1e-10);
  CHECK(std::is_sorted(r.trace.rbegin(), r.trace.rend()));

  const auto q = nelder_mead(quadratic, std::vector<double>(4, 0.0));
  for (double v : q.x) CHECK_THAT(v, WithinAbs(0.5, 1e-5));

  const auto again = nelder_mead(quadratic, std::vector<double>(4, 0.0));
  CHECK(again.x == q.x);
  CHECK(again.evaluations == q.evaluations);

  CHECK_THROWS_AS(nelder_mead([](std::span<const double>) { return std::nan(""); }, {0.0}),
                  std::runtime_error);
  OptimizerOptions few;
  few.max_evaluations = 10;
  const auto capped = nelder_mead(rosenbrock, {-1.2, 1.0}, few);
  CHECK(capped.evaluations <= 10 + 3);
  CHECK_FALSE(capped.converged);
}

TEST_CASE("SPSA") {
  OptimizerOptions o;
  o.spsa_iterations = 2000;
  o.seed = 3;
  const auto r = spsa(quadratic, {0.0, 0.0}, o);
  for (double v : r.x) CHECK_THAT(v, WithinAbs(0.5, 2e-2));
  const auto same = spsa(quadratic, {0.0, 0.0}, o);
  CHECK(same.x == r.x);
  o.seed = 4;
  CHECK(spsa(quadratic, {0.0, 0.0}, o).x != r.x);
  CHECK(r.trace.size() == 2001);  // starting point plus one entry per iteration
}

TEST_CASE("VQE energies") {
  const auto& hhq = oracle::problem("hhq");
  const auto h = jordan_wigner(hhq.fermion);

  // single excitations alone cannot leave the mean-field state
  const auto singles = minimize(pool_circuit(hhq, "t1e,t1p"), h);
  CHECK_THAT(singles.energy, WithinAbs(hhq.hf.energy, 1e-6));

  const auto full = minimize(pool_circuit(hhq, "t1e,t1p,t2ee,t2ep,t3eep"), h);
  const double fci = fci_ground_state(hhq.fermion, hhq.layout, reference_sector(hhq.layout)).energy;
  CHECK(full.energy >= fci - 1e-10);
  CHECK(full.energy < hhq.hf.energy - 1e-3);
  CHECK_THAT(circuit_energy(pool_circuit(hhq, "t1e,t1p,t2ee,t2ep,t3eep"), h, full.parameters),
             WithinAbs(full.energy, 1e-12));

  // nested pools order their optima
  double previous = hhq.hf.energy + 1e-9;
  for (const auto* labels : {"t1e,t1p", "t1e,t1p,t2ee", "t1e,t1p,t2ee,t2ep", "t1e,t1p,t2ee,t2ep,t3eep"}) {
    const double e = minimize(pool_circuit(hhq, labels), h).energy;
    CHECK(e <= previous + 1e-8);
    previous = e;
  }

  const auto& psh = oracle::problem("psh");
  const auto r = minimize(pool_circuit(psh, "t2ee,t2ep"), jordan_wigner(psh.fermion));
  CHECK_THAT(r.energy, WithinAbs(-0.572710, 1e-5));

  const auto csv = trace_csv(r);
  CHECK(csv.rfind("iteration,energy,parameter_norm\n", 0) == 0);
  CHECK(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')) == r.trace.size() + 1);
}

TEST_CASE("shot-mode VQE") {
  const auto& hhq = oracle::problem("hhq");
  const auto h = jordan_wigner(hhq.fermion);
  VqeOptions o;
  o.mode = EvalMode::shots;
  o.optimizer = Optimizer::spsa;
  o.shots = 2000;
  o.restarts = 0;
  o.optimizer_options.spsa_iterations = 60;
  const auto c = pool_circuit(hhq, "t2ee");
  const auto a = minimize(c, h, o);
  const auto b = minimize(c, h, o);
  CHECK(a.energy == b.energy);
  CHECK(a.parameters == b.parameters);
  CHECK(a.shots == 2000);
  // the estimate scatters around the exact energy of the returned parameters
  CHECK(std::abs(a.energy - circuit_energy(c, h, a.parameters)) < 0.05);
  CHECK_THROWS(minimize(c, h, o, {0.0, 0.0}));
}

TEST_CASE("ADAPT loop") {
  const auto& hhq = oracle::problem("hhq");
  const auto h = jordan_wigner(hhq.fermion);
  const auto pool = build_pool(parse_pool_labels("t1e,t1p,t2ee,t2ep,t3eep"), hhq.layout);

  AdaptOptions huge;
  huge.gradient_threshold = 1e6;
  const auto none = run_adapt(pool, h, huge);
  CHECK(none.history.empty());
  CHECK_THAT(none.vqe.energy, WithinAbs(hhq.hf.energy, 1e-12));

  const auto r = run_adapt(pool, h);
  REQUIRE_FALSE(r.history.empty());
  CHECK(r.history.front().name == "t2ee:01->23");
  CHECK(r.selected.size() == r.history.size());
  for (std::size_t i = 1; i < r.history.size(); ++i)
    CHECK(r.history[i].energy <= r.history[i - 1].energy + 1e-10);
  const double fci = fci_ground_state(hhq.fermion, hhq.layout, reference_sector(hhq.layout)).energy;
  CHECK(r.vqe.energy >= fci - 1e-10);
  CHECK(r.vqe.energy < hhq.hf.energy - 1e-3);
}
