// Copyright 2026 The mcvqe Authors
// SPDX-License-Identifier: Apache-2.0

#include <mcvqe/qubitops.hpp>

#include <fmt/format.h>

#include <stdexcept>

namespace mcvqe {

std::string_view to_string(Mapping m) {
  return m == Mapping::jordan_wigner ? "jw" : "bk";
}

Mapping mapping_from_string(std::string_view s) {
  if (s == "jw" || s == "jordan_wigner") return Mapping::jordan_wigner;
  if (s == "bk" || s == "bravyi_kitaev") return Mapping::bravyi_kitaev;
  throw std::invalid_argument(fmt::format("unknown mapping '{}'", s));
}

namespace {

constexpr cplx kI{0.0, 1.0};

std::uint64_t mask_of(const std::vector<int>& qubits) {
  std::uint64_t m = 0;
  for (int q : qubits) m |= std::uint64_t{1} << q;
  return m;
}

// a_j^dagger or a_j as (c -/+ i d) / 2 with Majorana strings c, d.
PauliSum ladder_image(const Ladder& l, const PauliString& c, const PauliString& d, int n) {
  PauliSum s(n);
  s.add(c, 0.5);
  s.add(d, l.dagger ? -0.5 * kI : 0.5 * kI);
  return s;
}

template <class MajoranaFn>
PauliSum map_with(const FermionOp& op, MajoranaFn&& majoranas) {
  const int n = op.n_modes();
  PauliSum out(n);
  for (const auto& [term, coeff] : op.terms()) {
    PauliSum prod = PauliSum::identity(n, coeff);
    for (const auto& l : term) {
      auto [c, d] = majoranas(l.mode, n);
      prod = prod * ladder_image(l, c, d, n);
    }
    out += prod;
  }
  return out.pruned(1e-14);
}

}  // namespace

PauliSum jordan_wigner(const FermionOp& op) {
  return map_with(op, [](int j, int) {
    const std::uint64_t bit = std::uint64_t{1} << j;
    const std::uint64_t tail = bit - 1;  // Z on every lower qubit
    return std::pair{PauliString{bit, tail}, PauliString{bit, tail | bit}};
  });
}

BkSets bravyi_kitaev_sets(int j, int n) {
  BkSets s;
  for (int k = j | (j + 1); k < n; k = k | (k + 1)) s.update.push_back(k);
  for (int k = j - 1; k >= 0; k = (k & (k + 1)) - 1) s.parity.push_back(k);
  // children of j: the Fenwick range [j & (j + 1), j - 1]
  for (int k = j - 1; k >= (j & (j + 1)); k = (k & (k + 1)) - 1) s.flip.push_back(k);
  for (int k : s.parity) {
    bool in_flip = false;
    for (int f : s.flip) in_flip |= (f == k);
    if (!in_flip) s.remainder.push_back(k);
  }
  return s;
}

PauliSum bravyi_kitaev(const FermionOp& op) {
  return map_with(op, [](int j, int n) {
    const BkSets sets = bravyi_kitaev_sets(j, n);
    const std::uint64_t bit = std::uint64_t{1} << j;
    const std::uint64_t upd = mask_of(sets.update);
    return std::pair{PauliString{upd | bit, mask_of(sets.parity)},
                     PauliString{upd | bit, mask_of(sets.remainder) | bit}};
  });
}

PauliSum map_to_qubits(const FermionOp& op, Mapping mapping) {
  return mapping == Mapping::jordan_wigner ? jordan_wigner(op) : bravyi_kitaev(op);
}

std::uint64_t encode_occupation(std::uint64_t occupation, int n_modes, Mapping mapping) {
  if (mapping == Mapping::jordan_wigner) return occupation;
  std::uint64_t out = 0;
  for (int k = 0; k < n_modes; ++k) {
    int parity = 0;
    for (int m = k & (k + 1); m <= k; ++m) parity ^= static_cast<int>((occupation >> m) & 1u);
    if (parity) out |= std::uint64_t{1} << k;
  }
  return out;
}

// ---------------------------------------------------------------------------

std::uint64_t ModeLayout::reference_occupation() const {
  std::uint64_t occ = 0;
  for (int m = 0; m < electrons; ++m) occ |= std::uint64_t{1} << m;
  for (int s = 0; s < nuclear_particles; ++s) occ |= std::uint64_t{1} << nuclear_mode(s);
  return occ;
}

std::uint64_t ModeLayout::electron_mask() const {
  return (std::uint64_t{1} << (2 * electron_spatial)) - 1;
}

std::uint64_t ModeLayout::nuclear_mask() const {
  return ((std::uint64_t{1} << nuclear_spatial) - 1) << (2 * electron_spatial);
}

ModeLayout layout_for(const IntegralSet& ints) {
  ModeLayout layout{0, 0, 0, 0};
  int nuclear_blocks = 0;
  for (const auto& sp : ints.species) {
    if (sp.species.kind == SpeciesKind::electron) {
      layout.electron_spatial = static_cast<int>(sp.dim());
      layout.electrons = sp.species.count;
    } else {
      if (sp.species.spin_orbitals_per_spatial != 1)
        throw std::invalid_argument("nuclear species must be single-spin");
      ++nuclear_blocks;
      layout.nuclear_spatial = static_cast<int>(sp.dim());
      layout.nuclear_particles = sp.species.count;
    }
  }
  if (nuclear_blocks > 1) throw std::invalid_argument("at most one nuclear species supported");
  if (layout.n_modes() > 64) throw std::invalid_argument("too many modes");
  return layout;
}

FermionOp second_quantize(const IntegralSet& mo, const ModeLayout& layout) {
  if (!mo.mo_basis) throw std::invalid_argument("second_quantize expects MO-basis integrals");
  if (layout_for(mo) != layout)
    throw std::invalid_argument("mode layout does not match the integral set");
  const int n = layout.n_modes();
  FermionOp h = FermionOp::identity(n, mo.e_nn);

  // spin orbitals (mode, spatial) per species block
  auto modes_of = [&](const SpeciesIntegrals& sp) {
    std::vector<std::pair<int, int>> modes;  // (mode, spatial)
    const int dim = static_cast<int>(sp.dim());
    if (sp.species.kind == SpeciesKind::electron) {
      for (int s = 0; s < dim; ++s)
        for (int sigma = 0; sigma < 2; ++sigma) modes.emplace_back(layout.electron_mode(s, sigma), s);
    } else {
      for (int s = 0; s < dim; ++s) modes.emplace_back(layout.nuclear_mode(s), s);
    }
    return modes;
  };
  auto spin_of = [&](const SpeciesIntegrals& sp, int mode) {
    return sp.species.kind == SpeciesKind::electron ? mode % 2 : 0;
  };

  std::vector<std::vector<std::pair<int, int>>> all_modes;
  for (const auto& sp : mo.species) {
    const auto modes = modes_of(sp);
    all_modes.push_back(modes);
    for (const auto& [p, sp_p] : modes)
      for (const auto& [q, sp_q] : modes) {
        if (spin_of(sp, p) != spin_of(sp, q)) continue;
        const double v = sp.h1(sp_p, sp_q);
        if (v != 0.0) h.add({{p, true}, {q, false}}, v);
      }
    // 1/2 sum (pr|qs) a+_p a+_q a_s a_r with spin(p)=spin(r), spin(q)=spin(s)
    for (const auto& [p, sp_p] : modes)
      for (const auto& [q, sp_q] : modes)
        for (const auto& [r, sp_r] : modes)
          for (const auto& [s, sp_s] : modes) {
            if (spin_of(sp, p) != spin_of(sp, r) || spin_of(sp, q) != spin_of(sp, s)) continue;
            if (p == q || r == s) continue;
            const double v = sp.eri(static_cast<std::size_t>(sp_p), static_cast<std::size_t>(sp_r),
                                    static_cast<std::size_t>(sp_q), static_cast<std::size_t>(sp_s));
            if (v != 0.0) h.add({{p, true}, {q, true}, {s, false}, {r, false}}, 0.5 * v);
          }
  }
  for (const auto& c : mo.cross) {
    const auto& a = mo.species[c.a];
    const auto& b = mo.species[c.b];
    for (const auto& [p, sp_p] : all_modes[c.a])
      for (const auto& [q, sp_q] : all_modes[c.a]) {
        if (spin_of(a, p) != spin_of(a, q)) continue;
        for (const auto& [r, sp_r] : all_modes[c.b])
          for (const auto& [s, sp_s] : all_modes[c.b]) {
            if (spin_of(b, r) != spin_of(b, s)) continue;
            const double v = c.eri(static_cast<std::size_t>(sp_p), static_cast<std::size_t>(sp_q),
                                   static_cast<std::size_t>(sp_r), static_cast<std::size_t>(sp_s));
            if (v != 0.0) h.add({{p, true}, {q, false}, {r, true}, {s, false}}, v);
          }
      }
  }
  return h.pruned(1e-14);
}

}  // namespace mcvqe
