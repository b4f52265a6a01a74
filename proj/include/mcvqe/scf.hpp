// Copyright 2026 The mcvqe Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file scf.hpp
 * @brief Coupled mean-field (NEO-HF) solver for electrons and light nuclei,
 *        and the congruence transformation of integrals into the MO basis.
 */

#pragma once

#include <mcvqe/integrals.hpp>

#include <Eigen/Core>

#include <string>
#include <vector>

namespace mcvqe {

struct ScfOptions {
  double density_tol = 1e-10;  // RMS density change
  double energy_tol = 1e-12;
  int max_iter = 200;
  /// Fraction of the previous density kept when mixing; 0 disables damping.
  double damping = 0.0;
  /// Pulay extrapolation over the stacked Fock matrices of all species.
  bool diis = true;
  int diis_depth = 8;
};

struct SpeciesOrbitals {
  Eigen::MatrixXd coefficients;  // AO x MO
  Eigen::VectorXd energies;
  Eigen::MatrixXd density;  // total density in the AO basis
  int occupied = 0;         // occupied spatial orbitals
};

struct NeoHfSolution {
  std::vector<SpeciesOrbitals> orbitals;  // ordered like IntegralSet::species
  double energy = 0.0;
  bool converged = false;
  int iterations = 0;
  std::vector<double> energy_history;
};

/// Occupied spatial orbitals for a species (closed-shell electrons).
[[nodiscard]] int occupied_orbitals(const ParticleSpecies& species);

/**
 * Alternating Roothaan iterations over all species. Electrons are treated
 * spin-restricted closed-shell; a species with one spin orbital per spatial
 * orbital gets J - K, so a lone proton or positron sees no self-interaction.
 *
 * Throws std::runtime_error for a singular overlap. Non-convergence is
 * reported through `converged` with the last iterate.
 */
[[nodiscard]] NeoHfSolution solve_neo_hf(const IntegralSet& ints, const ScfOptions& options = {});

/// Total mean-field energy of the given AO densities.
[[nodiscard]] double mean_field_energy(const IntegralSet& ints,
                                       const std::vector<Eigen::MatrixXd>& densities);

/// Rotates every tensor by per-species coefficient matrices (AO x new).
[[nodiscard]] IntegralSet transform_integrals(const IntegralSet& ints,
                                              const std::vector<Eigen::MatrixXd>& coefficients);

/// MO-basis integrals for a solved reference.
[[nodiscard]] IntegralSet mo_transform(const IntegralSet& ints, const NeoHfSolution& sol);

struct ActiveSpace {
  int electron_spatial = 2;
  int nuclear_spatial = 2;
};

/// Keeps the lowest MOs of each species. Requires MO-basis integrals.
[[nodiscard]] IntegralSet truncate_active_space(const IntegralSet& mo_ints,
                                                const ActiveSpace& space = {});

/// Plain-text dump of orbital energies and coefficients.
[[nodiscard]] std::string format_solution(const IntegralSet& ints, const NeoHfSolution& sol);

}  // namespace mcvqe
