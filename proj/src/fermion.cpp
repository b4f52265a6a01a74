// Copyright 2026 The mcvqe Authors
// SPDX-License-Identifier: Apache-2.0

#include <mcvqe/qubitops.hpp>

#include <fmt/format.h>

#include <stdexcept>

namespace mcvqe {

namespace {

void accumulate(std::map<FermionTerm, cplx>& into, const FermionTerm& t, cplx c) {
  auto [it, inserted] = into.try_emplace(t, c);
  if (!inserted) it->second += c;
}

void normal_order_into(FermionTerm ops, cplx coeff, std::map<FermionTerm, cplx>& out) {
  // Insertion sort with anticommutation; a contraction spawns a shorter term.
  for (std::size_t i = 1; i < ops.size(); ++i) {
    for (std::size_t j = i; j > 0; --j) {
      const Ladder left = ops[j - 1];
      const Ladder right = ops[j];
      if (right.dagger && !left.dagger) {
        ops[j - 1] = right;
        ops[j] = left;
        if (right.mode == left.mode) {
          FermionTerm shorter;
          shorter.reserve(ops.size() - 2);
          for (std::size_t k = 0; k < ops.size(); ++k)
            if (k != j - 1 && k != j) shorter.push_back(ops[k]);
          normal_order_into(std::move(shorter), coeff, out);
        }
        coeff = -coeff;
      } else if (right.dagger == left.dagger) {
        if (right.mode == left.mode) return;  // a a = 0
        if (right.mode > left.mode) {
          ops[j - 1] = right;
          ops[j] = left;
          coeff = -coeff;
        }
      }
    }
  }
  accumulate(out, ops, coeff);
}

}  // namespace

std::map<FermionTerm, cplx> normal_order(const FermionTerm& ops, cplx coefficient) {
  std::map<FermionTerm, cplx> out;
  normal_order_into(ops, coefficient, out);
  return out;
}

FermionOp FermionOp::identity(int n_modes, cplx coefficient) {
  FermionOp op(n_modes);
  op.add({}, coefficient);
  return op;
}

FermionOp FermionOp::term(int n_modes, const FermionTerm& ops, cplx coefficient) {
  FermionOp op(n_modes);
  op.add(ops, coefficient);
  return op;
}

FermionOp FermionOp::hop(int n_modes, int p, int q, cplx coefficient) {
  return term(n_modes, {{p, true}, {q, false}}, coefficient);
}

void FermionOp::add(const FermionTerm& ops, cplx coefficient) {
  for (const auto& l : ops)
    if (l.mode < 0 || l.mode >= n_modes_)
      throw std::out_of_range(fmt::format("mode {} outside 0..{}", l.mode, n_modes_ - 1));
  normal_order_into(ops, coefficient, terms_);
}

FermionOp& FermionOp::operator+=(const FermionOp& o) {
  if (o.n_modes_ > n_modes_) n_modes_ = o.n_modes_;
  for (const auto& [t, c] : o.terms_) accumulate(terms_, t, c);
  return *this;
}

FermionOp& FermionOp::operator-=(const FermionOp& o) {
  if (o.n_modes_ > n_modes_) n_modes_ = o.n_modes_;
  for (const auto& [t, c] : o.terms_) accumulate(terms_, t, -c);
  return *this;
}

FermionOp& FermionOp::operator*=(cplx s) {
  for (auto& [t, c] : terms_) c *= s;
  return *this;
}

FermionOp FermionOp::operator+(const FermionOp& o) const {
  FermionOp r = *this;
  r += o;
  return r;
}

FermionOp FermionOp::operator-(const FermionOp& o) const {
  FermionOp r = *this;
  r -= o;
  return r;
}

FermionOp FermionOp::operator*(cplx s) const {
  FermionOp r = *this;
  r *= s;
  return r;
}

FermionOp FermionOp::operator*(const FermionOp& o) const {
  FermionOp r(std::max(n_modes_, o.n_modes_));
  for (const auto& [ta, ca] : terms_) {
    for (const auto& [tb, cb] : o.terms_) {
      FermionTerm t = ta;
      t.insert(t.end(), tb.begin(), tb.end());
      normal_order_into(std::move(t), ca * cb, r.terms_);
    }
  }
  return r;
}

FermionOp FermionOp::adjoint() const {
  FermionOp r(n_modes_);
  for (const auto& [t, c] : terms_) {
    FermionTerm rev(t.rbegin(), t.rend());
    for (auto& l : rev) l.dagger = !l.dagger;
    normal_order_into(std::move(rev), std::conj(c), r.terms_);
  }
  return r;
}

FermionOp FermionOp::pruned(double tol) const {
  FermionOp r(n_modes_);
  for (const auto& [t, c] : terms_)
    if (std::abs(c) > tol) r.terms_.emplace(t, c);
  return r;
}

bool FermionOp::is_hermitian(double tol) const {
  return (*this - adjoint()).pruned(tol).size() == 0;
}

bool FermionOp::is_anti_hermitian(double tol) const {
  return (*this + adjoint()).pruned(tol).size() == 0;
}

FermionOp FermionOp::permuted(const std::vector<int>& perm) const {
  if (static_cast<int>(perm.size()) != n_modes_)
    throw std::invalid_argument("permutation length must equal the mode count");
  FermionOp r(n_modes_);
  for (const auto& [t, c] : terms_) {
    FermionTerm m = t;
    for (auto& l : m) l.mode = perm[static_cast<std::size_t>(l.mode)];
    normal_order_into(std::move(m), c, r.terms_);
  }
  return r;
}

FermionOp number_operator(int n_modes, std::uint64_t mode_mask) {
  FermionOp op(n_modes);
  for (int p = 0; p < n_modes; ++p)
    if ((mode_mask >> p) & 1u) op += FermionOp::number(n_modes, p);
  return op;
}

}  // namespace mcvqe
