// Copyright 2026 The mcvqe Authors
// SPDX-License-Identifier: Apache-2.0

#include <mcvqe/exact.hpp>

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include <bit>
#include <stdexcept>

namespace mcvqe {

namespace {

constexpr cplx kI{0.0, 1.0};

FciResult lowest(const Eigen::MatrixXcd& m, std::vector<std::uint64_t> occupations) {
  if (m.rows() == 0) throw std::invalid_argument("empty sector");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");
  FciResult r;
  r.energy = es.eigenvalues()(0);
  r.vector = es.eigenvectors().col(0);
  r.dimension = static_cast<std::size_t>(m.rows());
  r.residual = (m * r.vector - r.energy * r.vector).norm();
  r.occupations = std::move(occupations);
  return r;
}

// Applies one ladder string (rightmost first) to |occ>; false when annihilated.
bool apply_ladders(const FermionTerm& term, std::uint64_t& occ, double& sign) {
  for (auto it = term.rbegin(); it != term.rend(); ++it) {
    const std::uint64_t bit = std::uint64_t{1} << it->mode;
    const bool occupied = occ & bit;
    if (occupied == it->dagger) return false;
    if (std::popcount(occ & (bit - 1)) & 1) sign = -sign;
    occ ^= bit;
  }
  return true;
}

}  // namespace

std::vector<std::uint64_t> sector_occupations(const ModeLayout& layout, const Sector& sector) {
  std::vector<std::uint64_t> out;
  const int n = layout.n_modes();
  if (n > 20) throw std::invalid_argument("sector enumeration limited to 20 modes");
  const std::uint64_t em = layout.electron_mask(), nm = layout.nuclear_mask();
  for (std::uint64_t occ = 0; occ < (std::uint64_t{1} << n); ++occ)
    if (std::popcount(occ & em) == sector.electrons && std::popcount(occ & nm) == sector.nuclear)
      out.push_back(occ);
  return out;
}

FciResult fci_ground_state(const PauliSum& h, const ModeLayout& layout, const Sector& sector,
                           Mapping mapping) {
  const int n = layout.n_modes();
  if (h.n_qubits() != n) throw std::invalid_argument("Hamiltonian width differs from the layout");
  if (n > 12) throw std::invalid_argument("dense FCI limited to 12 qubits");
  auto occs = sector_occupations(layout, sector);
  std::vector<std::uint64_t> enc(occs.size());
  std::vector<long> index(std::size_t{1} << n, -1);
  for (std::size_t i = 0; i < occs.size(); ++i) {
    enc[i] = encode_occupation(occs[i], n, mapping);
    index[enc[i]] = static_cast<long>(i);
  }
  const auto dim = static_cast<Eigen::Index>(occs.size());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& [p, c] : h.terms()) {
    const cplx base = std::pow(kI, std::popcount(p.x & p.z));
    for (Eigen::Index col = 0; col < dim; ++col) {
      const std::uint64_t b = enc[static_cast<std::size_t>(col)];
      const long row = index[b ^ p.x];
      if (row < 0) continue;  // leaves the sector; zero for number-conserving H
      const double sign = (std::popcount(b & p.z) & 1) ? -1.0 : 1.0;
      m(row, col) += c * base * sign;
    }
  }
  return lowest(m, std::move(occs));
}

FciResult fci_ground_state(const FermionOp& h, const ModeLayout& layout, const Sector& sector) {
  auto occs = sector_occupations(layout, sector);
  std::vector<long> index(std::size_t{1} << layout.n_modes(), -1);
  for (std::size_t i = 0; i < occs.size(); ++i) index[occs[i]] = static_cast<long>(i);
  const auto dim = static_cast<Eigen::Index>(occs.size());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& [term, c] : h.terms())
    for (Eigen::Index col = 0; col < dim; ++col) {
      std::uint64_t occ = occs[static_cast<std::size_t>(col)];
      double sign = 1.0;
      if (!apply_ladders(term, occ, sign)) continue;
      const long row = index[occ];
      if (row >= 0) m(row, col) += sign * c;
    }
  return lowest(m, std::move(occs));
}

FciResult fci_ground_state(const PauliSum& h) {
  std::vector<std::uint64_t> occs(std::size_t{1} << h.n_qubits());
  for (std::size_t i = 0; i < occs.size(); ++i) occs[i] = i;
  return lowest(pauli_matrix(h), std::move(occs));
}

Eigen::MatrixXcd fock_matrix(const FermionOp& op) {
  const int n = op.n_modes();
  if (n > 12) throw std::invalid_argument("fock_matrix limited to 12 modes");
  const auto dim = Eigen::Index{1} << n;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& [term, c] : op.terms())
    for (Eigen::Index col = 0; col < dim; ++col) {
      auto occ = static_cast<std::uint64_t>(col);
      double sign = 1.0;
      if (apply_ladders(term, occ, sign)) m(static_cast<Eigen::Index>(occ), col) += sign * c;
    }
  return m;
}

}  // namespace mcvqe
