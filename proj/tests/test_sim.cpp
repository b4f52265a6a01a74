// Copyright 2026 The mcvqe Authors
// SPDX-License-Identifier: Apache-2.0

#include <mcvqe/sim.hpp>

#include <catch_amalgamated.hpp>

#include "oracles.hpp"

#include <Eigen/Eigenvalues>

using namespace mcvqe;
using Catch::Matchers::WithinAbs;
using oracle::cplx;
using oracle::Mat;

namespace {

constexpr double kPi = std::numbers::pi;

Mat sx_matrix() {
  Mat m(2, 2);
  m << cplx(0.5, 0.5), cplx(0.5, -0.5), cplx(0.5, -0.5), cplx(0.5, 0.5);
  return m;
}

// CNOT as a permutation of basis indices.
Mat cnot_matrix(int n, int c, int t) {
  const Eigen::Index dim = Eigen::Index{1} << n;
  Mat m = Mat::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const Eigen::Index j = ((i >> c) & 1) ? (i ^ (Eigen::Index{1} << t)) : i;
    m(j, i) = 1.0;
  }
  return m;
}

Mat gate_matrix(int n, const Gate& g) {
  const auto& q = g.qubits;
  const double th = g.angle.value;
  switch (g.kind) {
    case GateKind::x: return oracle::on_qubits(n, {{q[0], oracle::pauli('X')}});
    case GateKind::sx: return oracle::on_qubits(n, {{q[0], sx_matrix()}});
    case GateKind::sxdg: return oracle::on_qubits(n, {{q[0], sx_matrix().adjoint()}});
    case GateKind::rz: return oracle::rotation(n, {{q[0], 'Z'}}, th);
    case GateKind::rxx: return oracle::rotation(n, {{q[0], 'X'}, {q[1], 'X'}}, th);
    case GateKind::ryy: return oracle::rotation(n, {{q[0], 'Y'}, {q[1], 'Y'}}, th);
    case GateKind::rzz: return oracle::rotation(n, {{q[0], 'Z'}, {q[1], 'Z'}}, th);
    case GateKind::cnot: return cnot_matrix(n, q[0], q[1]);
    case GateKind::pauli_evolution: {
      std::vector<std::pair<int, char>> p;
      for (int k = 0; k < n; ++k)
        if (g.pauli.at(k) != 'I') p.emplace_back(k, g.pauli.at(k));
      return oracle::rotation(n, p, th);
    }
  }
  return {};
}

Eigen::VectorXcd dense_run(const Circuit& c, const Eigen::VectorXcd& psi) {
  Eigen::VectorXcd v = psi;
  for (const auto& g : c.gates()) v = gate_matrix(c.n_qubits(), g) * v;
  return v;
}

PauliSum random_hamiltonian(int n, std::mt19937_64& rng, int terms) {
  std::uniform_int_distribution<int> letter(0, 3);
  std::normal_distribution<double> coef;
  PauliSum h(n);
  for (int t = 0; t < terms; ++t) {
    PauliString p;
    for (int q = 0; q < n; ++q) {
      const int l = letter(rng);
      if (l == 1 || l == 2) p.x |= std::uint64_t{1} << q;
      if (l == 2 || l == 3) p.z |= std::uint64_t{1} << q;
    }
    h.add(p, coef(rng));
  }
  return h;
}

}  // namespace

TEST_CASE("basic statevector runs") {
  Circuit c(6);
  auto psi = run_statevector(c);
  CHECK(std::abs(psi(0) - 1.0) < 1e-15);
  c.add(Gate::x(0));
  psi = run_statevector(c);
  CHECK(std::abs(psi(1) - 1.0) < 1e-15);
  CHECK(format_bitstring(1, 6) == "100000");
  CHECK(parse_bitstring("100000") == 1);

  Circuit r(1);
  r.add(Gate::rz(0, {0.7}));
  r.add(Gate::rz(0, {-0.7}));
  const auto v = run_statevector(r, 1);
  CHECK(std::abs(v(1) - 1.0) < 1e-14);
  CHECK(std::abs(v(0)) < 1e-14);
}

TEST_CASE("circuit validation") {
  Circuit c(2, 1);
  CHECK_THROWS_AS(c.add(Gate::x(2)), std::invalid_argument);
  CHECK_THROWS_AS(c.add(Gate::cnot(1, 1)), std::invalid_argument);
  c.add(Gate::rz(0, {0.1, 0, 2.0}));
  CHECK(c.n_params() == 1);
  CHECK_FALSE(c.is_bound());
  CHECK_THROWS_AS(run_statevector(c), std::invalid_argument);
  const std::vector<double> params{0.3};
  const auto b = c.bind(params);
  CHECK(b.is_bound());
  CHECK_THAT(b.gates().front().angle.value, WithinAbs(0.7, 1e-15));
  CHECK_THROWS(run_statevector(Circuit(2), 4));
}

TEST_CASE("every gate kind against dense matrices") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 4;
    const Circuit c = oracle::random_circuit(n, 30, rng);
    const auto psi0 = oracle::random_state(n, rng);
    StateVector psi = psi0;
    for (const auto& g : c.gates()) apply_gate(psi, g);
    CHECK((psi - dense_run(c, psi0)).norm() < 1e-12);
    CHECK(std::abs(psi.norm() - 1.0) < 1e-12);

    StateVector back = psi;
    const Circuit inv = c.inverse();
    for (const auto& g : inv.gates()) apply_gate(back, g);
    CHECK((back - psi0).norm() < 1e-12);
  }
}

TEST_CASE("expectation values") {
  const auto z = PauliSum::single(1, PauliString::from_string("Z"));
  CHECK(expectation(basis_state(1, 0), z) == 1.0);
  CHECK(expectation(basis_state(1, 1), z) == -1.0);

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const auto h = random_hamiltonian(5, rng, 20);
    const auto psi = oracle::random_state(5, rng);
    const double dense = psi.dot(pauli_matrix(h) * psi).real();
    CHECK_THAT(expectation(psi, h), WithinAbs(dense, 1e-10));
    CHECK_THAT(expectation(to_density(psi), h), WithinAbs(dense, 1e-10));
  }
  PauliSum bad(1);
  bad.add(PauliString::from_string("X"), cplx(0, 1));
  CHECK_THROWS(expectation(basis_state(1, 0), bad));
  CHECK_THROWS(expectation(basis_state(2, 0), z));
}

TEST_CASE("density-matrix noise") {
  std::mt19937_64 rng(3);
  const Circuit c = oracle::random_circuit(4, 25, rng);
  const auto h = random_hamiltonian(4, rng, 15);

  NoiseSpec off;
  off.scale = 0.0;
  const auto rho0 = apply_noise_scaled(c, off);
  const auto psi = run_statevector(c);
  CHECK((rho0 - to_density(psi)).cwiseAbs().maxCoeff() < 1e-12);

  NoiseSpec strong{0.05, 0.1, 0.0, 1.0};
  const auto rho = apply_noise_scaled(c, strong);
  CHECK(std::abs(rho.trace() - 1.0) < 1e-12);
  CHECK((rho - rho.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(Eigen::SelfAdjointEigenSolver<Mat>(rho).eigenvalues().minCoeff() > -1e-10);

  // full single-qubit depolarization
  Circuit one(1);
  one.add(Gate::x(0));
  const auto mixed = apply_noise_scaled(one, NoiseSpec{1.0, 0.0, 0.0, 1.0});
  CHECK(std::abs(expectation(mixed, PauliSum::single(1, PauliString::from_string("Z")))) < 1e-15);
  CHECK((mixed - 0.5 * Mat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-15);

  CHECK_THROWS(apply_noise_scaled(Circuit(kMaxDensityQubits + 1), strong));
  CHECK_THROWS(NoiseSpec{1.5, 0.0, 0.0, 1.0}.validate());
  CHECK_THROWS(NoiseSpec{0.1, 0.0, 0.0, -1.0}.validate());
}

TEST_CASE("first-order noise response matches the Pauli-twirl expansion") {
  std::mt19937_64 rng(17);
  Circuit c(3);
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  for (int i = 0; i < 6; ++i) {
    c.add(Gate::sx(i % 3));
    c.add(Gate::rz((i + 1) % 3, {ang(rng)}));
    c.add(Gate::cnot(i % 3, (i + 2) % 3));
    c.add(Gate::ryy((i + 1) % 3, (i + 2) % 3, {ang(rng)}));
  }
  const auto h = random_hamiltonian(3, rng, 10);
  const NoiseSpec base{2e-4, 3e-3, 0.0, 1.0};
  const double e0 = expectation(run_statevector(c), h);

  // slope = sum_g p_g (E with a uniformly random Pauli after g - E0)
  double slope = 0.0;
  for (std::size_t g = 0; g < c.size(); ++g) {
    const auto& qs = c.gates()[g].qubits;
    const int k = static_cast<int>(qs.size());
    const double p = k == 1 ? base.p1 : base.p2;
    double avg = 0.0;
    const int patterns = 1 << (2 * k);
    for (int pat = 0; pat < patterns; ++pat) {
      StateVector psi = basis_state(3, 0);
      for (std::size_t i = 0; i <= g; ++i) apply_gate(psi, c.gates()[i]);
      PauliString ps;
      for (int j = 0; j < k; ++j) {
        const int l = (pat >> (2 * j)) & 3;  // I, X, Y, Z
        const auto bit = std::uint64_t{1} << qs[static_cast<std::size_t>(j)];
        if (l == 1 || l == 2) ps.x |= bit;
        if (l == 2 || l == 3) ps.z |= bit;
      }
      apply_pauli(psi, ps);
      for (std::size_t i = g + 1; i < c.size(); ++i) apply_gate(psi, c.gates()[i]);
      avg += expectation(psi, h) / patterns;
    }
    slope += p * (avg - e0);
  }

  auto energy_at = [&](double lambda) {
    NoiseSpec s = base;
    s.scale = lambda;
    return expectation(apply_noise_scaled(c, s), h);
  };
  const double step = 1e-2;
  const double f1 = (energy_at(step) - e0) / step;
  const double f2 = (energy_at(2 * step) - e0) / (2 * step);
  CHECK_THAT(2 * f1 - f2, WithinAbs(slope, 1e-6));
}

TEST_CASE("qubit-wise grouping") {
  std::mt19937_64 rng(8);
  const auto h = random_hamiltonian(4, rng, 30);
  const auto groups = group_qubitwise(h);
  std::size_t covered = 0;
  for (const auto& g : groups) {
    for (const auto& [p, c] : g.terms) {
      CHECK(p.qubitwise_commutes_with(g.basis));
      CHECK((p.support() & ~g.basis.support()) == 0);
      CHECK_THAT(c, WithinAbs(h.coefficient(p).real(), 1e-15));
      ++covered;
    }
    for (const auto& [p, c] : g.terms)
      for (const auto& [q, d] : g.terms) CHECK(p.qubitwise_commutes_with(q));
  }
  std::size_t non_identity = 0;
  for (const auto& [p, c] : h.terms()) non_identity += p.is_identity() ? 0 : 1;
  CHECK(covered == non_identity);
}

TEST_CASE("shot sampling") {
  std::mt19937_64 rng(21);
  const Circuit c = oracle::random_circuit(4, 20, rng);
  const auto h = random_hamiltonian(4, rng, 12);
  const double exact = expectation(run_statevector(c), h);

  const auto a = sample_energy(c, h, 4096, std::nullopt, 99);
  const auto b = sample_energy(c, h, 4096, std::nullopt, 99);
  CHECK(a.mean == b.mean);
  REQUIRE(a.groups.size() == b.groups.size());
  for (std::size_t g = 0; g < a.groups.size(); ++g) CHECK(a.groups[g].counts == b.groups[g].counts);
  CHECK(std::abs(a.mean - exact) < 5 * a.standard_error);
  CHECK(a.standard_error > 0.0);
  CHECK(sample_energy(c, h, 4096, std::nullopt, 100).mean != a.mean);

  const auto big = sample_energy(c, h, 4'000'000, std::nullopt, 1);
  CHECK(std::abs(big.mean - exact) < 5 * big.standard_error);
  CHECK(big.standard_error < 5e-3);
  CHECK_THROWS_AS(sample_energy(c, h, 0, std::nullopt, 1), std::invalid_argument);

  // noisy sampling centres on the exact noisy value
  const NoiseSpec noise{2e-3, 1e-2, 2e-2, 1.0};
  const double noisy = noisy_expectation(c, h, noise);
  const auto s = sample_energy(c, h, 200000, noise, 4);
  CHECK(std::abs(s.mean - noisy) < 5 * s.standard_error);

  // readout flips alone: <Z> on |0> is 1 - 2 p
  const auto z = PauliSum::single(1, PauliString::from_string("Z"));
  CHECK_THAT(noisy_expectation(Circuit(1), z, NoiseSpec{0.0, 0.0, 0.1, 1.0}), WithinAbs(0.8, 1e-14));

  const auto csv = counts_csv(a, 4);
  CHECK(csv.rfind("group,basis,bitstring,count\n", 0) == 0);
}
