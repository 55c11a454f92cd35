#include "lfc/height.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "field_data.hpp"

namespace lfc {

int raw_height(const Element& x) {
  const auto& fd = *x.field();
  int best = 0;
  for (unsigned u = 0; u < fd.rank; ++u) {
    u128 c = x.coords()[u];
    int j = -1;
    while (c != 0) {
      c /= fd.p;
      ++j;
    }
    best = std::max(best, j);
  }
  return best;
}

std::optional<int> height(const Element& x, int cutoff) {
  int h = raw_height(x);
  if (h > cutoff) return std::nullopt;
  return h;
}

std::vector<Element> enumerate_height_leq(const Field& field, int h) {
  if (h < 0) fail(ErrorKind::invalid_argument, "negative height");
  if (h + 1 > field.precision())
    fail(ErrorKind::precision_exhausted, "height bound exceeds precision");
  const auto& fd = *field.data();
  const u128 per = fd.pw[h + 1];
  u128 total = 1;
  for (unsigned u = 0; u < fd.rank; ++u) {
    if (total > (static_cast<u128>(1) << 26) / per)
      fail(ErrorKind::infeasible, "too many elements to enumerate");
    total *= per;
  }
  std::vector<Element> out;
  out.reserve(static_cast<std::size_t>(total));
  for (u128 idx = 0; idx < total; ++idx) {
    Element::Coords c{};
    u128 t = idx;
    for (unsigned u = fd.rank; u-- > 0;) {
      c[u] = t % per;
      t /= per;
    }
    out.push_back(field.from_coords(c));
  }
  return out;
}

std::vector<Element> neg_representatives(const Field& field) {
  if (field.characteristic() != Characteristic::zero)
    fail(ErrorKind::invalid_argument,
         "negation representatives are only needed in characteristic zero");
  const unsigned rank = field.rank();
  std::vector<Element> out;
  for (unsigned mask = 0; mask < (1u << rank); ++mask) {
    Element x = field.zero();
    for (unsigned u = 0; u < rank; ++u)
      if (mask & (1u << u)) x -= field.basis(u / field.e(), u % field.e());
    out.push_back(x);
  }
  return out;
}

bool differs_only_in_lsd(const Element& x, const Element& y, int d) {
  const auto& fd = *x.field();
  if (d < 0 || d > fd.N)
    fail(ErrorKind::precision_exhausted, "digit count beyond precision");
  for (unsigned u = 0; u < fd.rank; ++u)
    if (x.coords()[u] / fd.pw[d] != y.coords()[u] / fd.pw[d]) return false;
  return true;
}

bool perturbation_holds(const Element& x, const Element& y,
                        const Element& delta) {
  auto vd = valuation(delta);
  if (!vd) fail(ErrorKind::invalid_argument, "delta vanishes at precision");
  auto va = valuation((-x + delta) - y);
  return va && *va <= *vd;
}

HeightProfile measure_height_profile(const Field& field) {
  HeightProfile prof;
  prof.c_add = field.characteristic() == Characteristic::zero ? 1 : 0;
  const int cutoff = field.precision() - 1;
  int h = 2;
  while (h > 0) {
    long double count = 1;
    for (unsigned u = 0; u < field.rank(); ++u) count *= std::pow(
        static_cast<long double>(field.p()), h + 1);
    if (count <= 512 && 2 * h + 2 <= cutoff) break;
    --h;
  }
  prof.sampled_height = h;
  auto elems = enumerate_height_leq(field, h);
  std::vector<int> hs;
  for (const auto& x : elems) hs.push_back(raw_height(x));
  int excess = 0;
  auto account = [&](const Element& x, int hx, const Element& y, int hy) {
    auto hp = height(x * y, cutoff);
    if (!hp) return false;
    excess = std::max(excess, *hp - hx - hy);
    return true;
  };
  for (std::size_t a = 0; a < elems.size(); ++a)
    for (std::size_t b = a; b < elems.size(); ++b)
      if (!account(elems[a], hs[a], elems[b], hs[b])) return prof;
  // A random sample of slightly larger heights guards against growth the
  // exhaustive range cannot see.
  const int h2 = std::min(cutoff / 2 - 1, h + 2);
  if (h2 > h) {
    std::mt19937_64 rng(0x5eed);
    const auto& fd = *field.data();
    for (int trial = 0; trial < 2000; ++trial) {
      Element::Coords cx{}, cy{};
      for (unsigned u = 0; u < fd.rank; ++u) {
        cx[u] = static_cast<u128>(rng()) % fd.pw[h2 + 1];
        cy[u] = static_cast<u128>(rng()) % fd.pw[h2 + 1];
      }
      Element x = field.from_coords(cx), y = field.from_coords(cy);
      if (!account(x, raw_height(x), y, raw_height(y))) return prof;
    }
  }
  prof.c_mul = excess;
  return prof;
}

}  // namespace lfc
