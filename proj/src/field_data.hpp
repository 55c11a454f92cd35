#pragma once

#include <vector>

#include "lfc/field.hpp"

namespace lfc::detail {

u128 mulmod(u128 a, u128 b, u128 m) noexcept;
u128 addmod(u128 a, u128 b, u128 m) noexcept;
u128 submod(u128 a, u128 b, u128 m) noexcept;
/// Inverse of a unit modulo m (gcd(a, m) = 1).
u128 invmod(u128 a, u128 m);
unsigned vp(u128 value, unsigned p, unsigned cap) noexcept;

struct FieldData {
  using Coords = Element::Coords;

  Characteristic ch = Characteristic::zero;
  unsigned p = 2;
  unsigned f = 1;
  unsigned e = 1;
  unsigned rank = 1;
  int N = 1;
  u128 modulus = 2;
  std::vector<u128> pw;  // p^0 .. p^N

  // Characteristic zero: structure constants, table[u * rank + w] holds the
  // coordinates of basis_u * basis_w.
  std::vector<Coords> table;
  // Finite characteristic: F_q multiplication in the basis g^0..g^(f-1);
  // fq_table[a * f + b] holds g^a * g^b.
  std::vector<std::array<unsigned, kMaxRank>> fq_table;

  FieldParams params;
  std::vector<unsigned> generator_minpoly;
  Coords t1{};
  Coords t2{};

  Element wrap(const Coords& c) const { return Element(this, c); }

  unsigned digit(const Coords& c, unsigned index, unsigned j) const {
    return static_cast<unsigned>((c[index] / pw[j]) % p);
  }

  Coords add(const Coords& a, const Coords& b) const;
  Coords sub(const Coords& a, const Coords& b) const;
  Coords neg(const Coords& a) const;
  Coords mul(const Coords& a, const Coords& b) const;
  Coords from_int(long long value) const;
  std::optional<int> valuation(const Coords& a) const;
  Coords reduce(const Coords& a, int lambda) const;
  bool is_zero(const Coords& a) const {
    for (unsigned i = 0; i < rank; ++i)
      if (a[i] != 0) return false;
    return true;
  }
};

}  // namespace lfc::detail
