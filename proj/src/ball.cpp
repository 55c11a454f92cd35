#include "lfc/ball.hpp"

#include "field_data.hpp"

namespace lfc {

namespace {

void check_precision(const Field& field, int lambda) {
  if (lambda < 0)
    fail(ErrorKind::invalid_argument, "negative radius exponent");
  if (lambda > field.uniformizer_precision())
    fail(ErrorKind::precision_exhausted,
         "radius exponent " + std::to_string(lambda) + " exceeds precision");
}

// Add digit d at (coordinate i, k1, pos) to a center built from scratch.
void put_digit(const detail::FieldData& fd, Element::Coords& c, unsigned k1,
               int pos, unsigned d) {
  unsigned k2 = static_cast<unsigned>(pos) % fd.e;
  unsigned j = static_cast<unsigned>(pos) / fd.e;
  c[k1 * fd.e + k2] += static_cast<u128>(d) * fd.pw[j];
}

}  // namespace

unsigned position_digit(const Element& x, unsigned k1, int pos) {
  const auto& fd = *x.field();
  unsigned k2 = static_cast<unsigned>(pos) % fd.e;
  unsigned j = static_cast<unsigned>(pos) / fd.e;
  if (static_cast<int>(j) >= fd.N) return 0;
  return fd.digit(x.coords(), k1 * fd.e + k2, j);
}

Ball ball_of(const Field& field, std::vector<Element> x, int lambda) {
  check_precision(field, lambda);
  for (auto& c : x) c = field.reduce(c, lambda);
  return Ball{std::move(x), lambda};
}

Ball unit_ball(const Field& field, std::size_t n) {
  return Ball{std::vector<Element>(n, field.zero()), 0};
}

bool ball_contains(const Field& field, const Ball& ball,
                   std::span<const Element> x) {
  if (x.size() != ball.dim())
    fail(ErrorKind::invalid_argument, "point dimension differs from ball");
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!(field.reduce(x[i], ball.lambda) == ball.center[i])) return false;
  return true;
}

bool ball_contains(const Field& field, const Ball& outer, const Ball& inner) {
  if (inner.lambda < outer.lambda) return false;
  return ball_contains(field, outer, inner.center);
}

std::uint64_t child_count(const Field& field, std::size_t n, int lambda,
                          int lambda2) {
  if (lambda2 < lambda)
    fail(ErrorKind::invalid_argument, "child radius exponent below parent");
  std::uint64_t count = 1;
  const std::uint64_t q = field.q();
  for (long long i = 0; i < static_cast<long long>(n) * (lambda2 - lambda); ++i) {
    if (count > (std::uint64_t{1} << 62) / q)
      fail(ErrorKind::infeasible, "ball count exceeds 2^62");
    count *= q;
  }
  return count;
}

Ball child_at(const Field& field, const Ball& ball, int lambda2,
              std::uint64_t index) {
  check_precision(field, lambda2);
  const auto& fd = *field.data();
  const std::size_t n = ball.dim();
  std::vector<Element::Coords> coords;
  for (const auto& c : ball.center) coords.push_back(c.coords());
  // Slots ordered (pos, i, k1); the last slot varies fastest.
  for (int pos = lambda2 - 1; pos >= ball.lambda; --pos)
    for (std::size_t i = n; i-- > 0;)
      for (unsigned k1 = fd.f; k1-- > 0;) {
        unsigned d = static_cast<unsigned>(index % fd.p);
        index /= fd.p;
        if (d != 0) put_digit(fd, coords[i], k1, pos, d);
      }
  if (index != 0) fail(ErrorKind::invalid_argument, "child index out of range");
  Ball out;
  out.lambda = lambda2;
  for (const auto& c : coords) out.center.push_back(field.from_coords(c));
  return out;
}

std::uint64_t child_index(const Field& field, const Ball& outer,
                          const Ball& inner) {
  const auto& fd = *field.data();
  std::uint64_t index = 0;
  for (int pos = outer.lambda; pos < inner.lambda; ++pos)
    for (std::size_t i = 0; i < inner.dim(); ++i)
      for (unsigned k1 = 0; k1 < fd.f; ++k1)
        index = index * fd.p + position_digit(inner.center[i], k1, pos);
  return index;
}

BallFamily subdivide(const Field& field, const Ball& ball, int lambda2) {
  check_precision(field, lambda2);
  const std::uint64_t count = child_count(field, ball.dim(), ball.lambda, lambda2);
  if (count > (std::uint64_t{1} << 26))
    fail(ErrorKind::infeasible, "subdivision too large to materialize");
  BallFamily out;
  out.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i)
    out.push_back(child_at(field, ball, lambda2, i));
  return out;
}

bool tree_less(const Field& field, const Ball& a, const Ball& b) {
  const auto& fd = *field.data();
  const int common = std::min(a.lambda, b.lambda);
  for (int pos = 0; pos < common; ++pos)
    for (std::size_t i = 0; i < a.dim(); ++i)
      for (unsigned k1 = 0; k1 < fd.f; ++k1) {
        unsigned da = position_digit(a.center[i], k1, pos);
        unsigned db = position_digit(b.center[i], k1, pos);
        if (da != db) return da < db;
      }
  return a.lambda < b.lambda;
}

}  // namespace lfc
