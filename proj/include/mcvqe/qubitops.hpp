// Copyright 2026 The mcvqe Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file qubitops.hpp
 * @brief Fermionic ladder-operator algebra, Pauli-string algebra, the
 *        Jordan-Wigner and Bravyi-Kitaev encodings, and second quantization
 *        of multicomponent MO integrals.
 *
 * Mode layout (fixed everywhere): electronic spin orbitals first, spatial
 * orbital s and spin sigma at mode 2s + sigma (alpha = 0); nuclear or
 * positronic spatial orbitals follow. For the minimal six-mode systems:
 * 0/1 = occupied electron alpha/beta, 2/3 = virtual electron alpha/beta,
 * 4/5 = occupied/virtual proton or positron.
 */

#pragma once

#include <mcvqe/integrals.hpp>

#include <Eigen/Core>

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mcvqe {

using cplx = std::complex<double>;

// ---------------------------------------------------------------------------
// Fermions

struct Ladder {
  int mode = 0;
  bool dagger = false;
  auto operator<=>(const Ladder&) const = default;
};

using FermionTerm = std::vector<Ladder>;

/// Sum of normal-ordered ladder products. Creation operators sit left of
/// annihilation operators, each group in descending mode order.
class FermionOp {
 public:
  explicit FermionOp(int n_modes = 0) : n_modes_(n_modes) {}

  [[nodiscard]] static FermionOp identity(int n_modes, cplx coefficient = 1.0);
  [[nodiscard]] static FermionOp term(int n_modes, const FermionTerm& ops, cplx coefficient = 1.0);
  /// a_p^dagger a_q
  [[nodiscard]] static FermionOp hop(int n_modes, int p, int q, cplx coefficient = 1.0);
  [[nodiscard]] static FermionOp number(int n_modes, int p) { return hop(n_modes, p, p); }

  /// Adds coeff * ops after normal ordering.
  void add(const FermionTerm& ops, cplx coefficient);

  FermionOp& operator+=(const FermionOp& o);
  FermionOp& operator-=(const FermionOp& o);
  FermionOp& operator*=(cplx s);
  [[nodiscard]] FermionOp operator+(const FermionOp& o) const;
  [[nodiscard]] FermionOp operator-(const FermionOp& o) const;
  [[nodiscard]] FermionOp operator*(const FermionOp& o) const;
  [[nodiscard]] FermionOp operator*(cplx s) const;

  [[nodiscard]] FermionOp adjoint() const;
  [[nodiscard]] bool is_hermitian(double tol = 1e-12) const;
  [[nodiscard]] bool is_anti_hermitian(double tol = 1e-12) const;
  [[nodiscard]] FermionOp pruned(double tol = 1e-14) const;
  /// Relabels mode m as perm[m].
  [[nodiscard]] FermionOp permuted(const std::vector<int>& perm) const;

  [[nodiscard]] int n_modes() const { return n_modes_; }
  [[nodiscard]] const std::map<FermionTerm, cplx>& terms() const { return terms_; }
  [[nodiscard]] std::size_t size() const { return terms_.size(); }

 private:
  int n_modes_ = 0;
  std::map<FermionTerm, cplx> terms_;
};

/// Normal-ordered expansion of one ladder product.
[[nodiscard]] std::map<FermionTerm, cplx> normal_order(const FermionTerm& ops, cplx coefficient);

// ---------------------------------------------------------------------------
// Pauli strings

/// Tensor product of single-qubit Paulis; qubit q is I, X, Z or Y as
/// (x_q, z_q) = (0,0), (1,0), (0,1), (1,1).
struct PauliString {
  std::uint64_t x = 0;
  std::uint64_t z = 0;

  [[nodiscard]] static PauliString from_string(std::string_view s);
  [[nodiscard]] std::string to_string(int n_qubits) const;
  [[nodiscard]] char at(int q) const;
  [[nodiscard]] bool is_identity() const { return x == 0 && z == 0; }
  [[nodiscard]] std::uint64_t support() const { return x | z; }
  [[nodiscard]] int weight() const;
  [[nodiscard]] bool commutes_with(const PauliString& o) const;
  [[nodiscard]] bool qubitwise_commutes_with(const PauliString& o) const;

  auto operator<=>(const PauliString&) const = default;
};

/// a * b = phase * result.
[[nodiscard]] std::pair<cplx, PauliString> multiply(const PauliString& a, const PauliString& b);

class PauliSum {
 public:
  explicit PauliSum(int n_qubits = 0) : n_qubits_(n_qubits) {}

  [[nodiscard]] static PauliSum identity(int n_qubits, cplx coefficient = 1.0);
  [[nodiscard]] static PauliSum single(int n_qubits, const PauliString& p, cplx coefficient = 1.0);
  /// Parses whitespace-separated "coef STRING" lines.
  [[nodiscard]] static PauliSum parse(std::string_view text);

  void add(const PauliString& p, cplx coefficient);

  PauliSum& operator+=(const PauliSum& o);
  PauliSum& operator-=(const PauliSum& o);
  PauliSum& operator*=(cplx s);
  [[nodiscard]] PauliSum operator+(const PauliSum& o) const;
  [[nodiscard]] PauliSum operator-(const PauliSum& o) const;
  [[nodiscard]] PauliSum operator*(const PauliSum& o) const;
  [[nodiscard]] PauliSum operator*(cplx s) const;

  [[nodiscard]] PauliSum adjoint() const;
  /// Drops coefficients with magnitude <= tol.
  [[nodiscard]] PauliSum pruned(double tol = 1e-14) const;
  [[nodiscard]] bool is_hermitian(double tol = 1e-12) const;
  [[nodiscard]] cplx coefficient(const PauliString& p) const;
  [[nodiscard]] double one_norm() const;

  /// Terms sorted lexicographically by their "IXYZ" text, qubit 0 first.
  [[nodiscard]] std::vector<std::pair<PauliString, cplx>> sorted_terms() const;

  /// One "+c.ccccccccc  IXYZ" line per term (complex parts as "+re+imj").
  [[nodiscard]] std::string to_text() const;

  [[nodiscard]] int n_qubits() const { return n_qubits_; }
  [[nodiscard]] const std::map<PauliString, cplx>& terms() const { return terms_; }
  [[nodiscard]] std::size_t size() const { return terms_.size(); }

 private:
  int n_qubits_ = 0;
  std::map<PauliString, cplx> terms_;
};

[[nodiscard]] PauliSum commutator(const PauliSum& a, const PauliSum& b);

/// Dense 2^n x 2^n matrix; basis index bit q is qubit q. n <= 12.
[[nodiscard]] Eigen::MatrixXcd pauli_matrix(const PauliSum& op);

// ---------------------------------------------------------------------------
// Encodings

enum class Mapping { jordan_wigner, bravyi_kitaev };

[[nodiscard]] std::string_view to_string(Mapping m);
[[nodiscard]] Mapping mapping_from_string(std::string_view s);

[[nodiscard]] PauliSum jordan_wigner(const FermionOp& op);
[[nodiscard]] PauliSum bravyi_kitaev(const FermionOp& op);
[[nodiscard]] PauliSum map_to_qubits(const FermionOp& op, Mapping mapping);

/// Qubit basis state encoding an occupation bitstring (bit m = mode m).
[[nodiscard]] std::uint64_t encode_occupation(std::uint64_t occupation, int n_modes,
                                              Mapping mapping);

/// Bravyi-Kitaev (Fenwick tree) index sets for mode j of n.
struct BkSets {
  std::vector<int> update;
  std::vector<int> parity;
  std::vector<int> flip;
  std::vector<int> remainder;
};
[[nodiscard]] BkSets bravyi_kitaev_sets(int j, int n_modes);

// ---------------------------------------------------------------------------
// Second quantization

struct ModeLayout {
  int electron_spatial = 2;
  int nuclear_spatial = 2;
  int electrons = 2;
  int nuclear_particles = 1;

  [[nodiscard]] int n_modes() const { return 2 * electron_spatial + nuclear_spatial; }
  [[nodiscard]] int electron_mode(int spatial, int spin) const { return 2 * spatial + spin; }
  [[nodiscard]] int nuclear_mode(int spatial) const { return 2 * electron_spatial + spatial; }
  /// Occupation bitstring of the mean-field reference.
  [[nodiscard]] std::uint64_t reference_occupation() const;
  [[nodiscard]] std::uint64_t electron_mask() const;
  [[nodiscard]] std::uint64_t nuclear_mask() const;

  bool operator==(const ModeLayout&) const = default;
};

/// Layout for MO integrals with an electron block and at most one
/// single-spin nuclear/positronic block.
[[nodiscard]] ModeLayout layout_for(const IntegralSet& mo_ints);

[[nodiscard]] FermionOp second_quantize(const IntegralSet& mo_ints, const ModeLayout& layout);

/// Number operator summed over the given modes.
[[nodiscard]] FermionOp number_operator(int n_modes, std::uint64_t mode_mask);

}  // namespace mcvqe
