// Copyright 2026 The mcvqe Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file basis.hpp
 * @brief Particle species, classical nuclei and contracted s-type Gaussian
 *        basis sets for multicomponent (electron + light nucleus) systems.
 */

#pragma once

#include <Eigen/Core>

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mcvqe {

using Vec3 = Eigen::Vector3d;

/// Proton mass in atomic units (CODATA 2018).
inline constexpr double kProtonMass = 1836.15267343;

enum class SpeciesKind { electron, proton, positron };

[[nodiscard]] std::string_view to_string(SpeciesKind kind);
[[nodiscard]] SpeciesKind species_from_string(std::string_view name);

/**
 * One quantum particle type. Electrons carry two spin orbitals per spatial
 * orbital; a single proton or positron is held in one spin state.
 */
struct ParticleSpecies {
  SpeciesKind kind = SpeciesKind::electron;
  double mass = 1.0;  // atomic units, m_e = 1
  int charge = -1;    // elementary charges
  int count = 0;
  int spin_orbitals_per_spatial = 2;

  [[nodiscard]] static ParticleSpecies electron(int count);
  [[nodiscard]] static ParticleSpecies proton(int count, double mass = kProtonMass);
  [[nodiscard]] static ParticleSpecies positron(int count);

  void validate() const;
  bool operator==(const ParticleSpecies&) const = default;
};

struct ClassicalNucleus {
  double charge = 1.0;
  Vec3 position = Vec3::Zero();

  bool operator==(const ClassicalNucleus& o) const {
    return charge == o.charge && position == o.position;
  }
};

/**
 * Contracted s-type Gaussian. Coefficients multiply *normalized* primitives
 * (2a/pi)^{3/4} exp(-a |r - center|^2).
 */
struct ContractedGaussian {
  Vec3 center = Vec3::Zero();
  std::vector<double> exponents;
  std::vector<double> coefficients;
  SpeciesKind species = SpeciesKind::electron;

  void validate() const;
  bool operator==(const ContractedGaussian& o) const {
    return center == o.center && exponents == o.exponents &&
           coefficients == o.coefficients && species == o.species;
  }
};

/// Normalization constant of a primitive s Gaussian with exponent `alpha`.
[[nodiscard]] double primitive_norm(double alpha);

/// Rescales the contraction to unit self-overlap.
[[nodiscard]] ContractedGaussian normalize(const ContractedGaussian& g);

struct SystemSpec {
  std::string name;
  std::vector<ParticleSpecies> species;
  std::vector<ClassicalNucleus> nuclei;
  std::vector<ContractedGaussian> basis;
  /// Expansion center of the quantum-proton basis, when one exists.
  std::optional<Vec3> quantum_center;

  [[nodiscard]] std::vector<ContractedGaussian> basis_for(SpeciesKind kind) const;
  [[nodiscard]] const ParticleSpecies& species_of(SpeciesKind kind) const;
  [[nodiscard]] bool has_species(SpeciesKind kind) const;
  [[nodiscard]] int total_particles() const;

  /// Throws std::invalid_argument when an invariant is broken.
  void validate() const;
  bool operator==(const SystemSpec& o) const;
};

enum class BuiltinSystem { hhq, psh };

[[nodiscard]] BuiltinSystem builtin_from_string(std::string_view name);

/**
 * Overrides for the builtin systems. The HHq geometry and protonic exponents
 * are not tied to any published reference; the defaults below are
 * placeholders that produce a physically sensible protonic density.
 */
struct GeometryOverrides {
  /// Classical H at the origin, quantum-proton basis at (0, 0, bond_length).
  std::optional<double> bond_length;
  std::optional<std::array<double, 2>> proton_exponents;
  std::optional<double> proton_mass;
};

inline constexpr double kDefaultHHqBondLength = 1.4;
inline constexpr std::array<double, 2> kDefaultProtonExponents = {4.0, 16.0};

[[nodiscard]] SystemSpec builtin_system(BuiltinSystem which,
                                        const GeometryOverrides& overrides = {});

/// Literal basis data for hydrogen (normalized-primitive coefficients).
[[nodiscard]] ContractedGaussian sto3g_hydrogen(const Vec3& center, SpeciesKind species);
[[nodiscard]] std::vector<ContractedGaussian> b631g_hydrogen(const Vec3& center,
                                                            SpeciesKind species);

/**
 * Reads a system from the line-oriented text format documented in
 * docs/formats.md. Throws std::runtime_error with a line number on error.
 */
[[nodiscard]] SystemSpec parse_system(std::string_view text);
[[nodiscard]] SystemSpec load_system(const std::string& path);
[[nodiscard]] std::string format_system(const SystemSpec& spec);

}  // namespace mcvqe
