// Copyright 2026 The mcvqe Authors
// SPDX-License-Identifier: Apache-2.0

#include <mcvqe/qubitops.hpp>

#include <fmt/format.h>

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

namespace mcvqe {

PauliString PauliString::from_string(std::string_view s) {
  if (s.size() > 64) throw std::invalid_argument("Pauli string longer than 64 qubits");
  PauliString p;
  for (std::size_t q = 0; q < s.size(); ++q) {
    const std::uint64_t bit = std::uint64_t{1} << q;
    switch (s[q]) {
      case 'I': break;
      case 'X': p.x |= bit; break;
      case 'Y': p.x |= bit; p.z |= bit; break;
      case 'Z': p.z |= bit; break;
      default: throw std::invalid_argument(fmt::format("bad Pauli character '{}'", s[q]));
    }
  }
  return p;
}

char PauliString::at(int q) const {
  const bool xb = (x >> q) & 1u, zb = (z >> q) & 1u;
  return xb ? (zb ? 'Y' : 'X') : (zb ? 'Z' : 'I');
}

std::string PauliString::to_string(int n_qubits) const {
  std::string s(static_cast<std::size_t>(n_qubits), 'I');
  for (int q = 0; q < n_qubits; ++q) s[static_cast<std::size_t>(q)] = at(q);
  return s;
}

int PauliString::weight() const { return std::popcount(support()); }

bool PauliString::commutes_with(const PauliString& o) const {
  return ((std::popcount(x & o.z) + std::popcount(z & o.x)) & 1) == 0;
}

bool PauliString::qubitwise_commutes_with(const PauliString& o) const {
  const std::uint64_t both = support() & o.support();
  return ((x ^ o.x) & both) == 0 && ((z ^ o.z) & both) == 0;
}

std::pair<cplx, PauliString> multiply(const PauliString& a, const PauliString& b) {
  // P(x,z) = i^{x.z} X^x Z^z
  const PauliString r{a.x ^ b.x, a.z ^ b.z};
  int k = std::popcount(a.x & a.z) + std::popcount(b.x & b.z) - std::popcount(r.x & r.z) +
          2 * std::popcount(a.z & b.x);
  k = ((k % 4) + 4) % 4;
  static constexpr cplx kPhase[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return {kPhase[k], r};
}

PauliSum PauliSum::identity(int n_qubits, cplx coefficient) {
  PauliSum s(n_qubits);
  s.add({}, coefficient);
  return s;
}

PauliSum PauliSum::single(int n_qubits, const PauliString& p, cplx coefficient) {
  PauliSum s(n_qubits);
  s.add(p, coefficient);
  return s;
}

void PauliSum::add(const PauliString& p, cplx coefficient) {
  if (n_qubits_ < 64 && (p.support() >> n_qubits_) != 0)
    throw std::out_of_range("Pauli string acts outside the register");
  auto [it, inserted] = terms_.try_emplace(p, coefficient);
  if (!inserted) it->second += coefficient;
}

PauliSum& PauliSum::operator+=(const PauliSum& o) {
  n_qubits_ = std::max(n_qubits_, o.n_qubits_);
  for (const auto& [p, c] : o.terms_) add(p, c);
  return *this;
}

PauliSum& PauliSum::operator-=(const PauliSum& o) {
  n_qubits_ = std::max(n_qubits_, o.n_qubits_);
  for (const auto& [p, c] : o.terms_) add(p, -c);
  return *this;
}

PauliSum& PauliSum::operator*=(cplx s) {
  for (auto& [p, c] : terms_) c *= s;
  return *this;
}

PauliSum PauliSum::operator+(const PauliSum& o) const {
  PauliSum r = *this;
  r += o;
  return r;
}

PauliSum PauliSum::operator-(const PauliSum& o) const {
  PauliSum r = *this;
  r -= o;
  return r;
}

PauliSum PauliSum::operator*(cplx s) const {
  PauliSum r = *this;
  r *= s;
  return r;
}

PauliSum PauliSum::operator*(const PauliSum& o) const {
  PauliSum r(std::max(n_qubits_, o.n_qubits_));
  for (const auto& [pa, ca] : terms_)
    for (const auto& [pb, cb] : o.terms_) {
      auto [phase, p] = multiply(pa, pb);
      r.add(p, phase * ca * cb);
    }
  return r;
}

PauliSum PauliSum::adjoint() const {
  PauliSum r(n_qubits_);
  for (const auto& [p, c] : terms_) r.terms_.emplace(p, std::conj(c));
  return r;
}

PauliSum PauliSum::pruned(double tol) const {
  PauliSum r(n_qubits_);
  for (const auto& [p, c] : terms_)
    if (std::abs(c) > tol) r.terms_.emplace(p, c);
  return r;
}

bool PauliSum::is_hermitian(double tol) const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [tol](const auto& t) { return std::abs(t.second.imag()) <= tol; });
}

cplx PauliSum::coefficient(const PauliString& p) const {
  auto it = terms_.find(p);
  return it == terms_.end() ? cplx{} : it->second;
}

double PauliSum::one_norm() const {
  double s = 0.0;
  for (const auto& [p, c] : terms_) s += std::abs(c);
  return s;
}

std::vector<std::pair<PauliString, cplx>> PauliSum::sorted_terms() const {
  std::vector<std::pair<PauliString, cplx>> out(terms_.begin(), terms_.end());
  std::sort(out.begin(), out.end(), [this](const auto& a, const auto& b) {
    return a.first.to_string(n_qubits_) < b.first.to_string(n_qubits_);
  });
  return out;
}

std::string PauliSum::to_text() const {
  std::string out;
  for (const auto& [p, c] : sorted_terms()) {
    if (std::abs(c.imag()) > 1e-14)
      out += fmt::format("{:+.9f}{:+.9f}j  {}\n", c.real(), c.imag(), p.to_string(n_qubits_));
    else
      out += fmt::format("{:+.9f}  {}\n", c.real(), p.to_string(n_qubits_));
  }
  return out;
}

PauliSum PauliSum::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<std::pair<PauliString, cplx>> terms;
  int n = -1;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string coef, str;
    if (!(ls >> coef)) continue;
    if (coef[0] == '#') continue;
    if (!(ls >> str))
      throw std::runtime_error(fmt::format("Pauli text line {}: missing string", line_no));
    cplx c;
    try {
      if (coef.back() == 'j') {
        const auto split = coef.find_first_of("+-", 1);
        if (split == std::string::npos) throw std::invalid_argument("bad complex");
        c = {std::stod(coef.substr(0, split)),
             std::stod(coef.substr(split, coef.size() - split - 1))};
      } else {
        c = std::stod(coef);
      }
    } catch (const std::exception&) {
      throw std::runtime_error(fmt::format("Pauli text line {}: bad coefficient", line_no));
    }
    if (n >= 0 && static_cast<int>(str.size()) != n)
      throw std::runtime_error(fmt::format("Pauli text line {}: inconsistent width", line_no));
    n = static_cast<int>(str.size());
    terms.emplace_back(PauliString::from_string(str), c);
  }
  PauliSum s(std::max(n, 0));
  for (const auto& [p, c] : terms) s.add(p, c);
  return s;
}

PauliSum commutator(const PauliSum& a, const PauliSum& b) { return a * b - b * a; }

Eigen::MatrixXcd pauli_matrix(const PauliSum& op) {
  const int n = op.n_qubits();
  if (n > 12) throw std::invalid_argument("pauli_matrix limited to 12 qubits");
  const auto dim = static_cast<Eigen::Index>(1) << n;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& [p, c] : op.terms()) {
    const cplx base = std::pow(cplx(0, 1), std::popcount(p.x & p.z));
    for (Eigen::Index b = 0; b < dim; ++b) {
      const auto ub = static_cast<std::uint64_t>(b);
      const double sign = (std::popcount(ub & p.z) & 1) ? -1.0 : 1.0;
      m(static_cast<Eigen::Index>(ub ^ p.x), b) += c * base * sign;
    }
  }
  return m;
}

}  // namespace mcvqe
