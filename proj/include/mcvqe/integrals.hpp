// Copyright 2026 The mcvqe Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file integrals.hpp
 * @brief Closed-form integrals over s-type Gaussians and the multicomponent
 *        integral set (one-body per species, signed Coulomb tensors per
 *        species pair, classical nuclear repulsion).
 */

#pragma once

#include <mcvqe/basis.hpp>

#include <Eigen/Core>

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace mcvqe {

/// Dense rank-4 tensor, row-major, indexed (p, q, r, s).
class Tensor4 {
 public:
  Tensor4() = default;
  Tensor4(std::size_t n0, std::size_t n1, std::size_t n2, std::size_t n3)
      : dims_{n0, n1, n2, n3}, data_(n0 * n1 * n2 * n3, 0.0) {}

  double& operator()(std::size_t p, std::size_t q, std::size_t r, std::size_t s) {
    return data_[index(p, q, r, s)];
  }
  double operator()(std::size_t p, std::size_t q, std::size_t r, std::size_t s) const {
    return data_[index(p, q, r, s)];
  }

  [[nodiscard]] std::size_t dim(int k) const { return dims_[static_cast<std::size_t>(k)]; }
  [[nodiscard]] const std::array<std::size_t, 4>& dims() const { return dims_; }
  [[nodiscard]] const std::vector<double>& data() const { return data_; }

  bool operator==(const Tensor4&) const = default;

 private:
  [[nodiscard]] std::size_t index(std::size_t p, std::size_t q, std::size_t r,
                                  std::size_t s) const {
    return ((p * dims_[1] + q) * dims_[2] + r) * dims_[3] + s;
  }

  std::array<std::size_t, 4> dims_{0, 0, 0, 0};
  std::vector<double> data_;
};

/// Zeroth-order Boys function F0(t) = int_0^1 exp(-t u^2) du.
[[nodiscard]] double boys_f0(double t);

/// Crossover argument between the series and erf branches of boys_f0.
inline constexpr double kBoysSeriesCutoff = 1e-3;

[[nodiscard]] double overlap_ss(const ContractedGaussian& a, const ContractedGaussian& b);

/// <a| -nabla^2 / (2 mass) |b>. Throws std::invalid_argument for mass <= 0.
[[nodiscard]] double kinetic_ss(const ContractedGaussian& a, const ContractedGaussian& b,
                                double mass);

/// particle_charge * Z * <a| 1/|r - R| |b>; negative for electrons.
[[nodiscard]] double nuclear_attraction_ss(const ContractedGaussian& a,
                                           const ContractedGaussian& b,
                                           const ClassicalNucleus& nucleus, int particle_charge);

/// charge_product * (ab|cd), chemists' notation.
[[nodiscard]] double eri_ssss(const ContractedGaussian& a, const ContractedGaussian& b,
                              const ContractedGaussian& c, const ContractedGaussian& d,
                              int charge_product);

struct SpeciesIntegrals {
  ParticleSpecies species;
  Eigen::MatrixXd overlap;
  Eigen::MatrixXd h1;  // kinetic + classical-nuclear potential
  Tensor4 eri;         // same-species (pq|rs)

  [[nodiscard]] std::size_t dim() const { return static_cast<std::size_t>(h1.rows()); }
};

/// Cross-species Coulomb block: (pq|PQ) with pq on species `a`, PQ on `b`,
/// already multiplied by the charge product.
struct CrossIntegrals {
  std::size_t a = 0;
  std::size_t b = 0;
  Tensor4 eri;
};

struct IntegralSet {
  std::vector<SpeciesIntegrals> species;
  std::vector<CrossIntegrals> cross;
  double e_nn = 0.0;
  bool mo_basis = false;

  [[nodiscard]] std::size_t index_of(SpeciesKind kind) const;
  [[nodiscard]] const SpeciesIntegrals& of(SpeciesKind kind) const { return species[index_of(kind)]; }
  /// Cross block between species indices a and b (either order); nullptr if absent.
  [[nodiscard]] const CrossIntegrals* cross_block(std::size_t a, std::size_t b) const;
};

[[nodiscard]] double nuclear_repulsion(const std::vector<ClassicalNucleus>& nuclei);

[[nodiscard]] IntegralSet build_integral_set(const SystemSpec& spec);

/**
 * Extended FCIDUMP text format (see docs/formats.md): one `&SPECIES` section
 * per species in the usual FCIDUMP value/index layout, one `&CROSS` section
 * per species pair, and the constant energy as a trailing `0 0 0 0` line.
 */
[[nodiscard]] std::string write_fcidump(const IntegralSet& ints, double threshold = 0.0);
[[nodiscard]] IntegralSet read_fcidump(std::string_view text);

}  // namespace mcvqe
