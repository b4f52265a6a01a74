// Copyright 2026 The mcvqe Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file exact.hpp
 * @brief Dense diagonalization in a fixed species-number sector.
 */

#pragma once

#include <mcvqe/qubitops.hpp>

#include <Eigen/Core>

#include <cstdint>
#include <optional>
#include <vector>

namespace mcvqe {

/// Particle numbers per species block of a ModeLayout.
struct Sector {
  int electrons = 0;
  int nuclear = 0;
};

struct FciResult {
  double energy = 0.0;
  Eigen::VectorXcd vector;             // amplitudes over `occupations`
  std::vector<std::uint64_t> occupations;  // mode occupations spanning the sector
  std::size_t dimension = 0;
  double residual = 0.0;
};

/// Occupation bitstrings with the sector's particle counts, ascending.
[[nodiscard]] std::vector<std::uint64_t> sector_occupations(const ModeLayout& layout,
                                                            const Sector& sector);

/// Ground state of a qubit Hamiltonian restricted to a sector under `mapping`.
[[nodiscard]] FciResult fci_ground_state(const PauliSum& h, const ModeLayout& layout,
                                         const Sector& sector, Mapping mapping);

/// Ground state of a fermionic Hamiltonian restricted to a sector.
[[nodiscard]] FciResult fci_ground_state(const FermionOp& h, const ModeLayout& layout,
                                         const Sector& sector);

/// Unrestricted ground state over the whole register (n <= 12).
[[nodiscard]] FciResult fci_ground_state(const PauliSum& h);

/**
 * Dense matrix of a FermionOp in the occupation basis, built by applying
 * ladder operators to bitstrings. Row/column index = occupation bitstring.
 */
[[nodiscard]] Eigen::MatrixXcd fock_matrix(const FermionOp& op);

/// Sector for a layout's reference occupation.
[[nodiscard]] inline Sector reference_sector(const ModeLayout& layout) {
  return {layout.electrons, layout.nuclear_particles};
}

}  // namespace mcvqe
