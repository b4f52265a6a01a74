// Copyright 2026 The mcvqe Authors
// SPDX-License-Identifier: Apache-2.0

#include <mcvqe/mitigation.hpp>

#include <catch_amalgamated.hpp>

#include "oracles.hpp"

#include <cmath>

using namespace mcvqe;
using Catch::Matchers::WithinAbs;

namespace {

Circuit hhq_circuit() {
  const auto& p = oracle::problem("hhq");
  const auto pool = build_pool(parse_pool_labels("t1e,t1p,t2ee,t2ep"), p.layout);
  const std::vector<double> x{0.02, -0.03, 0.01, -0.12, 0.05, 0.04};
  return trotter_circuit(pool, Mapping::jordan_wigner).bind(x);
}

}  // namespace

TEST_CASE("full folding") {
  std::mt19937_64 rng(12);
  const Circuit c = oracle::random_circuit(4, 20, rng);
  const auto psi = run_statevector(c);

  const auto one = fold_circuit(c, 1.0, FoldStyle::full);
  REQUIRE(one.size() == c.size());
  for (std::size_t i = 0; i < c.size(); ++i) CHECK(one.gates()[i].kind == c.gates()[i].kind);

  for (double lambda : {3.0, 5.0, 7.0}) {
    const auto f = fold_circuit(c, lambda, FoldStyle::full);
    CHECK(f.size() == static_cast<std::size_t>(lambda) * c.size());
    CHECK(oracle::phase_fidelity(run_statevector(f), psi) > 1 - 1e-12);
  }
  CHECK_THROWS_AS(fold_circuit(c, 2.0, FoldStyle::full), std::invalid_argument);
  CHECK_THROWS_AS(fold_circuit(c, 0.5, FoldStyle::full), std::invalid_argument);
  CHECK_THROWS_AS(fold_circuit(c, 0.5, FoldStyle::partial), std::invalid_argument);
  CHECK(fold_style_from_string("partial") == FoldStyle::partial);
  CHECK_THROWS(fold_style_from_string("half"));
}

TEST_CASE("partial folding") {
  std::mt19937_64 rng(13);
  const Circuit c = oracle::random_circuit(3, 17, rng);
  const auto psi = run_statevector(c);
  for (double lambda : {1.0, 1.5, 2.0, 2.7, 3.0, 4.2}) {
    const auto f = fold_circuit(c, lambda, FoldStyle::partial);
    const double target = lambda * static_cast<double>(c.size());
    CHECK(std::abs(static_cast<double>(f.size()) - target) <= 1.0 + 1e-12);
    CHECK(oracle::phase_fidelity(run_statevector(f), psi) > 1 - 1e-12);
  }
}

TEST_CASE("folding leaves noiseless energies unchanged") {
  const auto& p = oracle::problem("hhq");
  const auto h = jordan_wigner(p.fermion);
  const Circuit c = hhq_circuit();
  const double e = expectation(run_statevector(c), h);
  for (double lambda : {3.0, 5.0})
    CHECK_THAT(expectation(run_statevector(fold_circuit(c, lambda, FoldStyle::full)), h), WithinAbs(e, 1e-10));
}

TEST_CASE("PIE fit recovers synthetic exponentials") {
  const double a = std::log(1.3), b = 0.07;
  std::vector<PiePoint> pts;
  for (double l : {1.0, 3.0, 5.0}) pts.push_back({l, -std::exp(a + b * l), 1e-3});
  const auto fit = pie_extrapolate(pts);
  CHECK_THAT(fit.a, WithinAbs(a, 1e-10));
  CHECK_THAT(fit.b, WithinAbs(b, 1e-10));
  CHECK_THAT(fit.energy, WithinAbs(-1.3, 1e-10));
  CHECK_THAT(fit.predict(3.0), WithinAbs(pts[1].energy, 1e-10));
  CHECK(fit.standard_error >= 0.0);

  // unweighted path
  for (auto& pt : pts) pt.standard_error = 0.0;
  CHECK_THAT(pie_extrapolate(pts).energy, WithinAbs(-1.3, 1e-10));

  // flat data has zero slope
  const auto flat = pie_extrapolate({{1.0, -0.9, 0.0}, {3.0, -0.9, 0.0}, {5.0, -0.9, 0.0}});
  CHECK(std::abs(flat.b) < 1e-14);
  CHECK_THAT(flat.energy, WithinAbs(-0.9, 1e-14));

  // non-negative energies leave the fit domain
  const auto ex = pie_extrapolate({{1.0, -0.9, 0.0}, {3.0, -0.8, 0.0}, {5.0, 0.1, 0.0}});
  CHECK(ex.points.size() == 2);
  REQUIRE(ex.excluded.size() == 1);
  CHECK(ex.excluded.front().lambda == 5.0);
  CHECK_THROWS_AS(pie_extrapolate({{1.0, -0.9, 0.0}, {3.0, 0.2, 0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(pie_extrapolate({{1.0, -0.9, 0.0}}), std::invalid_argument);
}

TEST_CASE("amplified noise raises the energy") {
  const auto& p = oracle::problem("hhq");
  const auto h = jordan_wigner(p.fermion);
  const Circuit c = hhq_circuit();
  const NoiseSpec noise{1e-3, 1e-2, 0.0, 1.0};
  const double mixed = h.coefficient(PauliString{}).real();  // tr(H) / dim
  double previous = expectation(run_statevector(c), h);
  for (double lambda : {1.0, 3.0, 5.0}) {
    const double e = noisy_expectation(fold_circuit(c, lambda, FoldStyle::full), h, noise);
    CHECK(e > previous);
    CHECK(e < mixed);
    previous = e;
  }
}

TEST_CASE("mitigated runs") {
  const auto& p = oracle::problem("hhq");
  const auto h = jordan_wigner(p.fermion);
  const Circuit c = hhq_circuit();
  const NoiseSpec noise{2e-4, 2e-3, 1e-2, 1.0};
  const FoldingSchedule schedule;
  const auto run = run_mitigated(c, h, schedule, 20000, noise, 5);
  REQUIRE(run.raw.size() == 3);
  CHECK(run.gate_counts == std::vector<std::size_t>{c.size(), 3 * c.size(), 5 * c.size()});
  CHECK(run.fit.points.size() == 3);
  CHECK(std::isfinite(run.fit.energy));
  CHECK(run.fit.energy < run.raw.front().energy);

  const auto again = run_mitigated(c, h, schedule, 20000, noise, 5);
  CHECK(again.fit.energy == run.fit.energy);

  // strong noise pushes the most folded point above zero, out of the fit
  const auto strong = run_mitigated(c, h, schedule, 20000, NoiseSpec{1e-3, 1e-2, 1e-2, 1.0}, 5);
  CHECK(strong.raw.size() == 3);
  REQUIRE(strong.fit.excluded.size() == 1);
  CHECK(strong.fit.excluded.front().lambda == 5.0);

  const auto csv = plot_csv(run);
  CHECK(csv.rfind("lambda,energy,stderr,log_neg_energy,fit\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);

  FoldingSchedule bad;
  bad.lambdas = {1.0};
  CHECK_THROWS(bad.validate());
  bad.lambdas = {1.0, 2.0};
  CHECK_THROWS(bad.validate());
  bad.style = FoldStyle::partial;
  CHECK_NOTHROW(bad.validate());
}
