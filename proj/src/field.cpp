#include "lfc/field.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "field_data.hpp"

namespace lfc {

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

std::string to_string(u128 value) {
  if (value == 0) return "0";
  std::string out;
  while (value != 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(value % 10)));
    value /= 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

bool is_prime(unsigned n) noexcept {
  if (n < 2) return false;
  for (unsigned d = 2; static_cast<unsigned long long>(d) * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace detail {

u128 addmod(u128 a, u128 b, u128 m) noexcept {
  u128 s = a + b;
  return s >= m ? s - m : s;
}

u128 submod(u128 a, u128 b, u128 m) noexcept {
  return a >= b ? a - b : a + (m - b);
}

u128 mulmod(u128 a, u128 b, u128 m) noexcept {
  constexpr u128 k64 = static_cast<u128>(1) << 64;
  if (a < k64 && b < k64) return (a * b) % m;
  a %= m;
  b %= m;
  u128 r = 0;
  int top = 127;
  while (top >= 0 && ((b >> top) & 1) == 0) --top;
  for (int i = top; i >= 0; --i) {
    r = addmod(r, r, m);
    if ((b >> i) & 1) r = addmod(r, a, m);
  }
  return r;
}

u128 invmod(u128 a, u128 m) {
  using i128 = __int128;
  i128 old_r = static_cast<i128>(a % m), r = static_cast<i128>(m);
  i128 old_s = 1, s = 0;
  while (r != 0) {
    i128 quotient = old_r / r;
    i128 tmp = old_r - quotient * r;
    old_r = r;
    r = tmp;
    tmp = old_s - quotient * s;
    old_s = s;
    s = tmp;
  }
  if (old_r != 1) fail(ErrorKind::invalid_argument, "inverse of a non-unit");
  i128 mm = static_cast<i128>(m);
  i128 res = old_s % mm;
  if (res < 0) res += mm;
  return static_cast<u128>(res);
}

unsigned vp(u128 value, unsigned p, unsigned cap) noexcept {
  if (value == 0) return cap;
  unsigned count = 0;
  if (p == 2) {
    while ((value & 1) == 0 && count < cap) {
      value >>= 1;
      ++count;
    }
    return count;
  }
  while (value % p == 0 && count < cap) {
    value /= p;
    ++count;
  }
  return count;
}

namespace {

// Digitwise (carry-free) combination used in finite characteristic.
template <typename Op>
u128 digitwise(const FieldData& fd, u128 a, u128 b, Op op) {
  u128 r = 0;
  for (int j = 0; j < fd.N && (a != 0 || b != 0); ++j) {
    unsigned da = static_cast<unsigned>(a % fd.p);
    unsigned db = static_cast<unsigned>(b % fd.p);
    a /= fd.p;
    b /= fd.p;
    r += static_cast<u128>(op(da, db) % fd.p) * fd.pw[j];
  }
  return r;
}

}  // namespace

FieldData::Coords FieldData::add(const Coords& a, const Coords& b) const {
  Coords r{};
  if (ch == Characteristic::zero) {
    for (unsigned i = 0; i < rank; ++i) r[i] = addmod(a[i], b[i], modulus);
  } else if (p == 2) {
    for (unsigned i = 0; i < rank; ++i) r[i] = a[i] ^ b[i];
  } else {
    for (unsigned i = 0; i < rank; ++i)
      r[i] = digitwise(*this, a[i], b[i],
                       [](unsigned x, unsigned y) { return x + y; });
  }
  return r;
}

FieldData::Coords FieldData::neg(const Coords& a) const {
  Coords r{};
  if (ch == Characteristic::zero) {
    for (unsigned i = 0; i < rank; ++i)
      r[i] = a[i] == 0 ? 0 : modulus - a[i];
  } else if (p == 2) {
    r = a;
  } else {
    const unsigned pp = p;
    for (unsigned i = 0; i < rank; ++i)
      r[i] = digitwise(*this, a[i], 0,
                       [pp](unsigned x, unsigned) { return pp - x; });
  }
  return r;
}

FieldData::Coords FieldData::sub(const Coords& a, const Coords& b) const {
  if (ch == Characteristic::zero) {
    Coords r{};
    for (unsigned i = 0; i < rank; ++i) r[i] = submod(a[i], b[i], modulus);
    return r;
  }
  return add(a, neg(b));
}

FieldData::Coords FieldData::mul(const Coords& a, const Coords& b) const {
  Coords r{};
  if (ch == Characteristic::zero) {
    if (rank == 1) {
      r[0] = mulmod(a[0], b[0], modulus);
      return r;
    }
    for (unsigned u = 0; u < rank; ++u) {
      if (a[u] == 0) continue;
      for (unsigned w = 0; w < rank; ++w) {
        if (b[w] == 0) continue;
        u128 prod = mulmod(a[u], b[w], modulus);
        const Coords& t = table[u * rank + w];
        for (unsigned z = 0; z < rank; ++z)
          if (t[z] != 0) r[z] = addmod(r[z], mulmod(prod, t[z], modulus), modulus);
      }
    }
    return r;
  }
  // F_q[[t]]: convolution of F_q-valued digit sequences.
  const int n = N;
  std::vector<unsigned> da(static_cast<std::size_t>(f) * n), db(da.size());
  std::vector<unsigned> dc(da.size(), 0);
  for (unsigned k = 0; k < f; ++k) {
    u128 x = a[k], y = b[k];
    for (int j = 0; j < n; ++j) {
      da[k * n + j] = static_cast<unsigned>(x % p);
      db[k * n + j] = static_cast<unsigned>(y % p);
      x /= p;
      y /= p;
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int l = 0; i + l < n; ++l) {
      for (unsigned ka = 0; ka < f; ++ka) {
        unsigned xa = da[ka * n + i];
        if (xa == 0) continue;
        for (unsigned kb = 0; kb < f; ++kb) {
          unsigned yb = db[kb * n + l];
          if (yb == 0) continue;
          const auto& t = fq_table[ka * f + kb];
          for (unsigned z = 0; z < f; ++z)
            dc[z * n + i + l] = (dc[z * n + i + l] + xa * yb * t[z]) % p;
        }
      }
    }
  }
  for (unsigned k = 0; k < f; ++k)
    for (int j = 0; j < n; ++j) r[k] += static_cast<u128>(dc[k * n + j]) * pw[j];
  return r;
}

FieldData::Coords FieldData::from_int(long long value) const {
  Coords r{};
  if (ch == Characteristic::zero) {
    u128 mag = value < 0 ? static_cast<u128>(-(value + 1)) + 1
                         : static_cast<u128>(value);
    mag %= modulus;
    r[0] = value < 0 && mag != 0 ? modulus - mag : mag;
  } else {
    long long m = value % static_cast<long long>(p);
    if (m < 0) m += p;
    r[0] = static_cast<u128>(m);
  }
  return r;
}

std::optional<int> FieldData::valuation(const Coords& a) const {
  std::optional<int> best;
  for (unsigned u = 0; u < rank; ++u) {
    if (a[u] == 0) continue;
    int pos = static_cast<int>(vp(a[u], p, N)) * static_cast<int>(e) +
              static_cast<int>(u % e);
    if (!best || pos < *best) best = pos;
  }
  return best;
}

FieldData::Coords FieldData::reduce(const Coords& a, int lambda) const {
  Coords r{};
  for (unsigned u = 0; u < rank; ++u) {
    int k2 = static_cast<int>(u % e);
    int jmax = lambda <= k2 ? 0 : (lambda - k2 + static_cast<int>(e) - 1) /
                                      static_cast<int>(e);
    jmax = std::min(jmax, N);
    r[u] = a[u] % pw[jmax];
  }
  return r;
}

}  // namespace detail

using detail::FieldData;

// ---------------------------------------------------------------- Element

namespace {

const FieldData& same_field(const Element& a, const Element& b) {
  if (a.field() == nullptr || a.field() != b.field())
    fail(ErrorKind::invalid_argument, "elements belong to different fields");
  return *a.field();
}

}  // namespace

unsigned Element::digit(unsigned k1, unsigned k2, unsigned j) const {
  const FieldData& fd = *field_;
  if (k1 >= fd.f || k2 >= fd.e || static_cast<int>(j) >= fd.N)
    fail(ErrorKind::invalid_argument, "digit index out of range");
  return fd.digit(coords_, k1 * fd.e + k2, j);
}

std::vector<unsigned> Element::digits() const {
  const FieldData& fd = *field_;
  std::vector<unsigned> out;
  out.reserve(static_cast<std::size_t>(fd.rank) * fd.N);
  for (unsigned u = 0; u < fd.rank; ++u) {
    u128 c = coords_[u];
    for (int j = 0; j < fd.N; ++j) {
      out.push_back(static_cast<unsigned>(c % fd.p));
      c /= fd.p;
    }
  }
  return out;
}

bool Element::is_zero() const noexcept {
  for (const u128 c : coords_)
    if (c != 0) return false;
  return true;
}

Element Element::integer(long long k) const {
  return Element(field_, field_->from_int(k));
}

Element operator+(const Element& a, const Element& b) {
  const FieldData& fd = same_field(a, b);
  return Element(&fd, fd.add(a.coords_, b.coords_));
}

Element operator-(const Element& a, const Element& b) {
  const FieldData& fd = same_field(a, b);
  return Element(&fd, fd.sub(a.coords_, b.coords_));
}

Element operator*(const Element& a, const Element& b) {
  const FieldData& fd = same_field(a, b);
  return Element(&fd, fd.mul(a.coords_, b.coords_));
}

Element operator-(const Element& a) {
  return Element(a.field_, a.field_->neg(a.coords_));
}

std::optional<int> valuation(const Element& x) {
  return x.field()->valuation(x.coords());
}

bool coord_less(const Element& a, const Element& b) noexcept {
  return a.coords() < b.coords();
}

std::size_t ElementHash::operator()(const Element& x) const noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ULL;
  for (const u128 c : x.coords()) {
    auto lo = static_cast<std::uint64_t>(c);
    auto hi = static_cast<std::uint64_t>(c >> 64);
    h ^= std::hash<std::uint64_t>{}(lo) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= std::hash<std::uint64_t>{}(hi) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

// ---------------------------------------------------- polynomials over F_p

namespace {

using FpPoly = std::vector<unsigned>;  // low degree first

void trim(FpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

unsigned inv_p(unsigned a, unsigned p) {
  return static_cast<unsigned>(detail::invmod(a % p, p));
}

FpPoly fp_mod(FpPoly a, const FpPoly& m, unsigned p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const unsigned lead_inv = inv_p(m.back(), p);
  while (a.size() > dm) {
    unsigned coef = static_cast<unsigned>(
        static_cast<unsigned long long>(a.back()) * lead_inv % p);
    std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i)
      a[shift + i] = static_cast<unsigned>(
          (a[shift + i] + static_cast<unsigned long long>(p - coef) * m[i]) % p);
    trim(a);
  }
  return a;
}

FpPoly fp_mul(const FpPoly& a, const FpPoly& b, unsigned p) {
  if (a.empty() || b.empty()) return {};
  FpPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = static_cast<unsigned>(
          (r[i + j] + static_cast<unsigned long long>(a[i]) * b[j]) % p);
  trim(r);
  return r;
}

bool fp_irreducible(const FpPoly& m, unsigned p) {
  const std::size_t deg = m.size() - 1;
  for (std::size_t d = 1; 2 * d <= deg; ++d) {
    std::size_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::size_t idx = 0; idx < count; ++idx) {
      FpPoly cand(d + 1, 0);
      std::size_t t = idx;
      for (std::size_t i = 0; i < d; ++i) {
        cand[i] = static_cast<unsigned>(t % p);
        t /= p;
      }
      cand[d] = 1;
      if (fp_mod(m, cand, p).empty()) return false;
    }
  }
  return true;
}

// F_q = F_p[x]/(m) elements as length-f coefficient vectors.
struct ResidueField {
  unsigned p;
  unsigned f;
  FpPoly modulus;

  FpPoly mul(const FpPoly& a, const FpPoly& b) const {
    FpPoly r = fp_mod(fp_mul(a, b, p), modulus, p);
    r.resize(f, 0);
    return r;
  }
  FpPoly one() const {
    FpPoly r(f, 0);
    r[0] = 1 % p;
    return r;
  }
  FpPoly pow(FpPoly a, unsigned long long k) const {
    FpPoly r = one();
    while (k != 0) {
      if (k & 1) r = mul(r, a);
      a = mul(a, a);
      k >>= 1;
    }
    return r;
  }
};

std::vector<unsigned long long> prime_factors(unsigned long long n) {
  std::vector<unsigned long long> out;
  for (unsigned long long d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Solve A x = b over F_p where A is square and invertible; columns of A are
// given as vectors.
std::vector<unsigned> fp_solve(std::vector<std::vector<unsigned>> cols,
                               std::vector<unsigned> b, unsigned p) {
  const std::size_t n = b.size();
  std::vector<std::vector<unsigned long long>> a(n, std::vector<unsigned long long>(n + 1));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) a[r][c] = cols[c][r] % p;
    a[r][n] = b[r] % p;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n)
      fail(ErrorKind::invalid_argument, "singular system over the residue field");
    std::swap(a[piv], a[c]);
    unsigned long long inv = inv_p(static_cast<unsigned>(a[c][c]), p);
    for (auto& v : a[c]) v = v * inv % p;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      unsigned long long factor = a[r][c];
      for (std::size_t k = 0; k <= n; ++k)
        a[r][k] = (a[r][k] + (p - factor) * a[c][k]) % p;
    }
  }
  std::vector<unsigned> x(n);
  for (std::size_t r = 0; r < n; ++r) x[r] = static_cast<unsigned>(a[r][n]);
  return x;
}

// ------------------------------------------- linear algebra over Z/p^N

// Solves M z = b (mod p^N) with M square, columns given. Returns nullopt if
// no solution exists. Full pivoting on minimal p-adic valuation.
std::optional<std::vector<u128>> solve_prime_power(
    std::vector<std::vector<u128>> cols, std::vector<u128> b, unsigned p,
    int N, u128 modulus, const std::vector<u128>& pw) {
  const std::size_t n = b.size();
  std::vector<std::vector<u128>> a(n, std::vector<u128>(n));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) a[r][c] = cols[c][r];
  std::vector<std::size_t> col_perm(n);
  for (std::size_t i = 0; i < n; ++i) col_perm[i] = i;
  std::vector<unsigned> piv_val(n, static_cast<unsigned>(N));

  for (std::size_t k = 0; k < n; ++k) {
    unsigned best = static_cast<unsigned>(N) + 1;
    std::size_t br = k, bc = k;
    for (std::size_t r = k; r < n; ++r)
      for (std::size_t c = k; c < n; ++c) {
        unsigned v = detail::vp(a[r][c], p, static_cast<unsigned>(N));
        if (v < best) {
          best = v;
          br = r;
          bc = c;
        }
      }
    std::swap(a[br], a[k]);
    std::swap(b[br], b[k]);
    if (bc != k) {
      for (auto& row : a) std::swap(row[bc], row[k]);
      std::swap(col_perm[bc], col_perm[k]);
    }
    piv_val[k] = best;
    if (best >= static_cast<unsigned>(N)) continue;  // remaining block is zero
    const u128 unit = a[k][k] / pw[best];
    const u128 unit_inv = detail::invmod(unit, modulus);
    for (std::size_t r = k + 1; r < n; ++r) {
      if (a[r][k] == 0) continue;
      u128 factor = detail::mulmod(a[r][k] / pw[best], unit_inv, modulus);
      for (std::size_t c = k; c < n; ++c)
        a[r][c] = detail::submod(a[r][c], detail::mulmod(factor, a[k][c], modulus), modulus);
      b[r] = detail::submod(b[r], detail::mulmod(factor, b[k], modulus), modulus);
    }
  }
  std::vector<u128> z(n, 0);
  for (std::size_t ki = n; ki-- > 0;) {
    u128 rhs = b[ki];
    for (std::size_t c = ki + 1; c < n; ++c)
      rhs = detail::submod(rhs, detail::mulmod(a[ki][c], z[c], modulus), modulus);
    unsigned v = piv_val[ki];
    if (v >= static_cast<unsigned>(N)) {
      if (rhs != 0) return std::nullopt;
      z[ki] = 0;
      continue;
    }
    if (detail::vp(rhs, p, static_cast<unsigned>(N)) < v) return std::nullopt;
    const u128 unit = a[ki][ki] / pw[v];
    z[ki] = detail::mulmod(rhs / pw[v], detail::invmod(unit, modulus), modulus) % pw[N - v];
  }
  std::vector<u128> out(n);
  for (std::size_t i = 0; i < n; ++i) out[col_perm[i]] = z[i];
  return out;
}

// Structure constants of (Z/p^N)[x]/(x^f - sum rel[k] x^k) in the basis x^k.
std::vector<std::vector<u128>> power_reductions(const std::vector<u128>& rel,
                                                std::size_t count,
                                                u128 modulus) {
  const std::size_t f = rel.size();
  std::vector<std::vector<u128>> powers;
  std::vector<u128> cur(f, 0);
  cur[0] = 1 % modulus;
  for (std::size_t m = 0; m < count; ++m) {
    powers.push_back(cur);
    // multiply by x
    u128 carry = cur[f - 1];
    for (std::size_t k = f - 1; k > 0; --k) cur[k] = cur[k - 1];
    cur[0] = 0;
    if (carry != 0)
      for (std::size_t k = 0; k < f; ++k)
        cur[k] = detail::addmod(cur[k], detail::mulmod(carry, rel[k], modulus), modulus);
  }
  return powers;
}

std::shared_ptr<FieldData> base_data(const FieldParams& params) {
  auto fd = std::make_shared<FieldData>();
  fd->ch = params.characteristic;
  fd->p = params.p;
  fd->f = params.f;
  fd->e = params.e;
  fd->rank = params.f * params.e;
  fd->N = params.precision;
  fd->params = params;
  fd->pw.assign(static_cast<std::size_t>(params.precision) + 1, 1);
  const u128 limit = static_cast<u128>(1) << 126;
  for (int j = 1; j <= params.precision; ++j) {
    if (fd->pw[j - 1] > limit / params.p)
      fail(ErrorKind::invalid_argument,
           "precision too large: p^N must stay below 2^126");
    fd->pw[j] = fd->pw[j - 1] * params.p;
  }
  fd->modulus = fd->pw[params.precision];
  return fd;
}

FieldData::Coords coords_from_literal(const FieldData& fd,
                                      const DigitLiteral& lit,
                                      unsigned width) {
  if (lit.components.size() > width)
    fail(ErrorKind::invalid_argument, "literal has more components than the basis");
  FieldData::Coords c{};
  for (std::size_t u = 0; u < lit.components.size(); ++u) {
    const auto& digs = lit.components[u];
    for (std::size_t j = 0; j < digs.size(); ++j) {
      if (digs[j] >= fd.p)
        fail(ErrorKind::invalid_argument, "digit out of range for p");
      if (static_cast<int>(j) < fd.N) c[u] += static_cast<u128>(digs[j]) * fd.pw[j];
    }
  }
  return c;
}

}  // namespace

// ------------------------------------------------------------------ Field

namespace detail {

// Exact division helper used by Field::divide and hensel_lift.
FieldData::Coords divide_coords(const FieldData& fd, const FieldData::Coords& w,
                                const FieldData::Coords& y) {
  auto vy = fd.valuation(y);
  auto vw = fd.valuation(w);
  if (!vw) return FieldData::Coords{};
  if (!vy || *vy > *vw)
    fail(ErrorKind::invalid_argument, "division requires v(divisor) <= v(dividend)");
  if (fd.ch == Characteristic::zero) {
    std::vector<std::vector<u128>> cols;
    for (unsigned u = 0; u < fd.rank; ++u) {
      FieldData::Coords basis{};
      basis[u] = 1;
      auto prod = fd.mul(y, basis);
      cols.emplace_back(prod.begin(), prod.begin() + fd.rank);
    }
    std::vector<u128> rhs(w.begin(), w.begin() + fd.rank);
    auto sol = solve_prime_power(cols, rhs, fd.p, fd.N, fd.modulus, fd.pw);
    if (!sol) fail(ErrorKind::precision_exhausted, "division not certifiable at precision");
    FieldData::Coords z{};
    for (unsigned u = 0; u < fd.rank; ++u) z[u] = (*sol)[u];
    return z;
  }
  // F_q[[t]] long division.
  const int n = fd.N;
  const int shift = *vy;
  auto unpack = [&](const FieldData::Coords& c) {
    std::vector<std::vector<unsigned>> d(n, std::vector<unsigned>(fd.f, 0));
    for (unsigned k = 0; k < fd.f; ++k) {
      u128 x = c[k];
      for (int j = 0; j < n; ++j) {
        d[j][k] = static_cast<unsigned>(x % fd.p);
        x /= fd.p;
      }
    }
    return d;
  };
  auto fq_mul = [&](const std::vector<unsigned>& a, const std::vector<unsigned>& b) {
    std::vector<unsigned> r(fd.f, 0);
    for (unsigned i = 0; i < fd.f; ++i)
      for (unsigned j = 0; j < fd.f; ++j) {
        if (a[i] == 0 || b[j] == 0) continue;
        for (unsigned z = 0; z < fd.f; ++z)
          r[z] = (r[z] + a[i] * b[j] * fd.fq_table[i * fd.f + j][z]) % fd.p;
      }
    return r;
  };
  auto yd = unpack(y);
  auto wd = unpack(w);
  std::vector<std::vector<unsigned>> ys(n, std::vector<unsigned>(fd.f, 0));
  std::vector<std::vector<unsigned>> ws(n, std::vector<unsigned>(fd.f, 0));
  for (int j = shift; j < n; ++j) {
    ys[j - shift] = yd[j];
    ws[j - shift] = wd[j];
  }
  // inverse of ys[0] in F_q by exhaustive search (q is desk-scale).
  std::vector<unsigned> inv(fd.f, 0);
  {
    unsigned long long q = 1;
    for (unsigned i = 0; i < fd.f; ++i) q *= fd.p;
    bool found = false;
    for (unsigned long long idx = 1; idx < q && !found; ++idx) {
      std::vector<unsigned> cand(fd.f);
      unsigned long long t = idx;
      for (unsigned i = 0; i < fd.f; ++i) {
        cand[i] = static_cast<unsigned>(t % fd.p);
        t /= fd.p;
      }
      auto prod = fq_mul(cand, ys[0]);
      bool is_one = prod[0] == 1 % fd.p;
      for (unsigned i = 1; i < fd.f; ++i) is_one = is_one && prod[i] == 0;
      if (is_one) {
        inv = cand;
        found = true;
      }
    }
    if (!found) fail(ErrorKind::invalid_argument, "leading digit is not invertible");
  }
  const int len = n - shift;
  std::vector<std::vector<unsigned>> z(n, std::vector<unsigned>(fd.f, 0));
  for (int j = 0; j < len; ++j) {
    z[j] = fq_mul(ws[j], inv);
    for (int l = 0; j + l < len; ++l) {
      auto prod = fq_mul(z[j], ys[l]);
      for (unsigned k = 0; k < fd.f; ++k)
        ws[j + l][k] = (ws[j + l][k] + fd.p - prod[k]) % fd.p;
    }
  }
  FieldData::Coords out{};
  for (unsigned k = 0; k < fd.f; ++k)
    for (int j = 0; j < len; ++j) out[k] += static_cast<u128>(z[j][k]) * fd.pw[j];
  return out;
}

}  // namespace detail

Field Field::make(const FieldParams& params) {
  if (!is_prime(params.p) || params.p > (1u << 20))
    fail(ErrorKind::invalid_argument, "p must be a prime below 2^20");
  if (params.precision < 1) fail(ErrorKind::invalid_argument, "precision N must be >= 1");
  if (params.f < 1 || params.e < 1)
    fail(ErrorKind::invalid_argument, "f and e must be >= 1");
  if (params.f * params.e > kMaxRank)
    fail(ErrorKind::invalid_argument, "f*e exceeds the supported basis size");
  if (params.characteristic == Characteristic::finite &&
      (params.e != 1 || !params.eisenstein_coeffs.empty()))
    fail(ErrorKind::invalid_argument, "finite characteristic requires e = 1 and no Eisenstein data");
  if (params.characteristic == Characteristic::zero &&
      params.eisenstein_coeffs.size() != (params.e > 1 ? params.e : 0))
    fail(ErrorKind::invalid_argument, "expected exactly e Eisenstein coefficients");

  const unsigned p = params.p;
  const unsigned f = params.f;
  FpPoly residue;
  for (unsigned c : params.residue_poly) residue.push_back(c % p);
  trim(residue);
  if (residue.size() != f + 1)
    fail(ErrorKind::invalid_argument, "residue polynomial must have degree f");
  {
    unsigned lead_inv = inv_p(residue.back(), p);
    for (auto& c : residue)
      c = static_cast<unsigned>(static_cast<unsigned long long>(c) * lead_inv % p);
  }
  if (!fp_irreducible(residue, p))
    fail(ErrorKind::invalid_argument, "residue polynomial is reducible over F_p");

  // Multiplicative generator g of F_q and its minimal polynomial.
  ResidueField rf{p, f, residue};
  unsigned long long q = 1;
  for (unsigned i = 0; i < f; ++i) q *= p;
  const auto factors = prime_factors(q - 1);
  FpPoly g;
  for (unsigned long long idx = 1; idx < q; ++idx) {
    FpPoly cand(f);
    unsigned long long t = idx;
    for (unsigned i = 0; i < f; ++i) {
      cand[i] = static_cast<unsigned>(t % p);
      t /= p;
    }
    bool generator = true;
    for (auto l : factors)
      if (rf.pow(cand, (q - 1) / l) == rf.one()) generator = false;
    if (q == 2) generator = cand == rf.one();
    if (generator) {
      g = cand;
      break;
    }
  }
  std::vector<std::vector<unsigned>> gpows;
  for (unsigned k = 0; k <= f; ++k) gpows.push_back(rf.pow(g, k));
  std::vector<unsigned> minpoly_rel =
      fp_solve({gpows.begin(), gpows.begin() + f}, gpows[f], p);
  FpPoly minpoly(f + 1);
  for (unsigned k = 0; k < f; ++k) minpoly[k] = (p - minpoly_rel[k]) % p;
  minpoly[f] = 1;

  auto fd = base_data(params);
  fd->generator_minpoly = minpoly;

  if (params.characteristic == Characteristic::finite) {
    fd->fq_table.assign(static_cast<std::size_t>(f) * f, {});
    std::vector<u128> rel(minpoly_rel.begin(), minpoly_rel.end());
    auto powers = power_reductions(rel, 2 * f - 1, p);
    for (unsigned a = 0; a < f; ++a)
      for (unsigned b = 0; b < f; ++b)
        for (unsigned z = 0; z < f; ++z)
          fd->fq_table[a * f + b][z] = static_cast<unsigned>(powers[a + b][z]);
    Element::Coords t1{};
    if (f > 1)
      t1[1] = 1;
    else
      t1[0] = g[0];
    fd->t1 = t1;
    Element::Coords t2{};
    if (fd->N > 1) t2[0] = p;
    fd->t2 = t2;
    // t1 is a root of x^(q-1) - 1 already; the lift is certified exactly.
    std::vector<Element> poly(q, fd->wrap({}));
    poly[0] = fd->wrap(fd->from_int(-1));
    poly[q - 1] = fd->wrap(fd->from_int(1));
    Element root = hensel_lift(poly, fd->wrap(fd->t1), 0);
    fd->t1 = root.coords();
    return Field(fd);
  }

  // Characteristic zero. Unramified ring in the basis y^k, y a lift of g.
  std::vector<u128> rel_y(f);
  for (unsigned k = 0; k < f; ++k) rel_y[k] = minpoly_rel[k];
  std::vector<u128> rel_t1 = rel_y;
  u128 teich_scalar = 0;
  {
    FieldParams unram = params;
    unram.e = 1;
    unram.eisenstein_coeffs.clear();
    auto ly = base_data(unram);
    auto powers = power_reductions(rel_y, 2 * f - 1, ly->modulus);
    ly->table.assign(static_cast<std::size_t>(f) * f, {});
    for (unsigned a = 0; a < f; ++a)
      for (unsigned b = 0; b < f; ++b)
        for (unsigned z = 0; z < f; ++z) ly->table[a * f + b][z] = powers[a + b][z];
    Element::Coords y{};
    if (f > 1)
      y[1] = 1;
    else
      y[0] = g[0];
    std::vector<Element> poly(q, ly->wrap({}));
    poly[0] = ly->wrap(ly->from_int(-1));
    poly[q - 1] = ly->wrap(ly->from_int(1));
    Element t1y = hensel_lift(poly, ly->wrap(y), 0);
    if (f == 1) {
      teich_scalar = t1y.coords()[0];
    } else {
      std::vector<std::vector<u128>> cols;
      Element cur = ly->wrap(ly->from_int(1));
      for (unsigned k = 0; k < f; ++k) {
        cols.emplace_back(cur.coords().begin(), cur.coords().begin() + f);
        cur = cur * t1y;
      }
      std::vector<u128> rhs(cur.coords().begin(), cur.coords().begin() + f);
      auto sol = solve_prime_power(cols, rhs, p, ly->N, ly->modulus, ly->pw);
      if (!sol) fail(ErrorKind::precision_exhausted, "cannot express t1^f in the t1 basis");
      rel_t1 = *sol;
    }
  }

  const unsigned e = params.e;
  const u128 mod = fd->modulus;
  auto l_powers = power_reductions(rel_t1, 2 * f - 1, mod);
  using LVec = std::vector<u128>;
  auto lmul = [&](const LVec& a, const LVec& b) {
    LVec r(f, 0);
    for (unsigned i = 0; i < f; ++i) {
      if (a[i] == 0) continue;
      for (unsigned j = 0; j < f; ++j) {
        if (b[j] == 0) continue;
        u128 prod = detail::mulmod(a[i], b[j], mod);
        for (unsigned z = 0; z < f; ++z)
          r[z] = detail::addmod(r[z], detail::mulmod(prod, l_powers[i + j][z], mod), mod);
      }
    }
    return r;
  };

  // Eisenstein coefficients in the unramified ring.
  std::vector<LVec> eis;
  for (const auto& lit : params.eisenstein_coeffs) {
    auto c = coords_from_literal(*fd, DigitLiteral{lit.components, false}, f);
    LVec v(c.begin(), c.begin() + f);
    if (lit.negative)
      for (auto& x : v) x = x == 0 ? 0 : mod - x;
    eis.push_back(v);
  }
  if (e > 1) {
    auto v_l = [&](const LVec& a) {
      unsigned best = static_cast<unsigned>(fd->N);
      for (u128 x : a) best = std::min(best, detail::vp(x, p, static_cast<unsigned>(fd->N)));
      return best;
    };
    for (unsigned i = 0; i < e; ++i)
      if (v_l(eis[i]) < 1)
        fail(ErrorKind::invalid_argument, "Eisenstein coefficient not divisible by p");
    if (v_l(eis[0]) != 1)
      fail(ErrorKind::invalid_argument, "Eisenstein constant term must have valuation exactly 1");
  }

  // s^m for m < 2e - 1, each a vector of e unramified coefficients.
  std::vector<std::vector<LVec>> s_powers;
  {
    std::vector<LVec> cur(e, LVec(f, 0));
    cur[0][0] = 1;
    for (unsigned m = 0; m + 1 < 2 * e; ++m) {
      s_powers.push_back(cur);
      LVec carry = cur[e - 1];
      for (unsigned k = e - 1; k > 0; --k) cur[k] = cur[k - 1];
      cur[0] = LVec(f, 0);
      if (e > 1) {
        for (unsigned k = 0; k < e; ++k) {
          LVec term = lmul(carry, eis[k]);
          for (unsigned z = 0; z < f; ++z) cur[k][z] = detail::submod(cur[k][z], term[z], mod);
        }
      } else {
        cur[0] = carry;  // e == 1: no ramified variable
      }
    }
  }

  const unsigned rank = f * e;
  fd->table.assign(static_cast<std::size_t>(rank) * rank, {});
  for (unsigned a = 0; a < f; ++a)
    for (unsigned k = 0; k < e; ++k)
      for (unsigned b = 0; b < f; ++b)
        for (unsigned l = 0; l < e; ++l) {
          const LVec& lpart = l_powers[a + b];
          auto& out = fd->table[(a * e + k) * rank + (b * e + l)];
          for (unsigned i = 0; i < e; ++i) {
            LVec c = lmul(lpart, s_powers[k + l][i]);
            for (unsigned z = 0; z < f; ++z) out[z * e + i] = c[z];
          }
        }

  Element::Coords t1{};
  if (f > 1)
    t1[1 * e] = 1;
  else
    t1[0] = teich_scalar;
  fd->t1 = t1;
  Element::Coords t2{};
  if (e > 1)
    t2[1] = 1;
  else
    t2[0] = fd->N > 1 ? p : 0;
  fd->t2 = t2;

  if (e > 1) {
    // Certify the uniformizer as a Hensel root of the Eisenstein polynomial.
    std::vector<Element> poly;
    for (unsigned i = 0; i < e; ++i) {
      Element::Coords c{};
      for (unsigned z = 0; z < f; ++z) c[z * e] = eis[i][z];
      poly.push_back(fd->wrap(c));
    }
    poly.push_back(fd->wrap(fd->from_int(1)));
    std::vector<Element> deriv;
    for (std::size_t i = 1; i < poly.size(); ++i)
      deriv.push_back(poly[i] * poly[i].integer(static_cast<long long>(i)));
    Element s = fd->wrap(fd->t2);
    auto alpha = valuation(eval_univariate(deriv, s));
    if (!alpha || 2 * *alpha + 1 > static_cast<int>(e) * fd->N)
      fail(ErrorKind::precision_exhausted,
           "precision too small to certify |a'(t2)| for Hensel's lemma");
    Element root = hensel_lift(poly, s, *alpha);
    fd->t2 = root.coords();
  }
  return Field(fd);
}

Field Field::padic(unsigned p, int precision) {
  FieldParams params;
  params.characteristic = Characteristic::zero;
  params.p = p;
  params.residue_poly = {0, 1};
  params.precision = precision;
  return make(params);
}

Field Field::power_series(unsigned p, int precision) {
  FieldParams params;
  params.characteristic = Characteristic::finite;
  params.p = p;
  params.residue_poly = {0, 1};
  params.precision = precision;
  return make(params);
}

Characteristic Field::characteristic() const noexcept { return data_->ch; }
unsigned Field::p() const noexcept { return data_->p; }
unsigned Field::f() const noexcept { return data_->f; }
unsigned Field::e() const noexcept { return data_->e; }
int Field::precision() const noexcept { return data_->N; }
int Field::uniformizer_precision() const noexcept {
  return data_->N * static_cast<int>(data_->e);
}
unsigned Field::rank() const noexcept { return data_->rank; }
unsigned Field::q() const noexcept {
  unsigned q = 1;
  for (unsigned i = 0; i < data_->f; ++i) q *= data_->p;
  return q;
}
u128 Field::modulus() const noexcept { return data_->modulus; }
const FieldParams& Field::params() const noexcept { return data_->params; }

std::string Field::describe() const {
  std::ostringstream os;
  const auto& fd = *data_;
  if (fd.ch == Characteristic::finite) {
    os << "F_" << q() << "[[t]]";
  } else if (fd.f == 1 && fd.e == 1) {
    os << "Z_" << fd.p;
  } else {
    os << "O_K, K/Q_" << fd.p << " (f=" << fd.f << ", e=" << fd.e << ")";
  }
  os << " at N=" << fd.N;
  return os.str();
}

Element Field::zero() const { return data_->wrap({}); }
Element Field::one() const { return data_->wrap(data_->from_int(1)); }
Element Field::from_int(long long value) const {
  return data_->wrap(data_->from_int(value));
}

Element Field::from_literal(const DigitLiteral& literal) const {
  Element x = data_->wrap(
      coords_from_literal(*data_, DigitLiteral{literal.components, false}, data_->rank));
  return literal.negative ? -x : x;
}

Element Field::from_digits(std::span<const unsigned> digits) const {
  const auto& fd = *data_;
  if (digits.size() > static_cast<std::size_t>(fd.rank) * fd.N)
    fail(ErrorKind::invalid_argument, "digit tensor larger than rank*N");
  Element::Coords c{};
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (digits[i] >= fd.p) fail(ErrorKind::invalid_argument, "digit out of range for p");
    c[i / fd.N] += static_cast<u128>(digits[i]) * fd.pw[i % fd.N];
  }
  return fd.wrap(c);
}

Element Field::from_coords(const Element::Coords& coords) const {
  Element::Coords c{};
  for (unsigned u = 0; u < data_->rank; ++u) c[u] = coords[u] % data_->modulus;
  return data_->wrap(c);
}

Element Field::basis(unsigned k1, unsigned k2) const {
  if (k1 >= data_->f || k2 >= data_->e)
    fail(ErrorKind::invalid_argument, "basis index out of range");
  Element::Coords c{};
  c[k1 * data_->e + k2] = 1;
  return data_->wrap(c);
}

Element Field::uniformizer_power(int w) const {
  if (w < 0) fail(ErrorKind::invalid_argument, "negative uniformizer exponent");
  const int e = static_cast<int>(data_->e);
  if (w >= uniformizer_precision())
    fail(ErrorKind::precision_exhausted,
         "uniformizer power " + std::to_string(w) + " beyond precision");
  Element::Coords c{};
  c[w % e] = data_->pw[w / e];
  return data_->wrap(c);
}

Element Field::t1() const { return data_->wrap(data_->t1); }

Element Field::t2() const { return data_->wrap(data_->t2); }

Element Field::basis_product(unsigned k1a, unsigned k2a, unsigned k1b,
                             unsigned k2b) const {
  return basis(k1a, k2a) * basis(k1b, k2b);
}

const std::vector<unsigned>& Field::generator_minpoly() const noexcept {
  return data_->generator_minpoly;
}

Element Field::reduce(const Element& x, int lambda) const {
  return data_->wrap(data_->reduce(x.coords(), lambda));
}

Element Field::divide(const Element& w, const Element& y) const {
  return data_->wrap(detail::divide_coords(*data_, w.coords(), y.coords()));
}

Element Field::power(const Element& x, unsigned k) const {
  Element r = one();
  Element b = x;
  while (k != 0) {
    if (k & 1) r = r * b;
    b = b * b;
    k >>= 1;
  }
  return r;
}

Element eval_univariate(std::span<const Element> poly, const Element& x) {
  if (poly.empty()) return x.integer(0);
  Element acc = poly.back();
  for (std::size_t i = poly.size() - 1; i-- > 0;) acc = acc * x + poly[i];
  return acc;
}

Element hensel_lift(std::span<const Element> poly, const Element& x0, int alpha) {
  if (poly.empty()) fail(ErrorKind::invalid_argument, "empty polynomial");
  const FieldData& fd = *x0.field();
  std::vector<Element> deriv;
  for (std::size_t i = 1; i < poly.size(); ++i)
    deriv.push_back(poly[i] * x0.integer(static_cast<long long>(i)));

  Element x = x0;
  Element fx = eval_univariate(poly, x);
  Element dfx = eval_univariate(deriv, x);
  auto vd = valuation(dfx);
  if (!vd || *vd != alpha)
    fail(ErrorKind::invalid_argument,
         "Hensel hypothesis not certified: |poly'(x0)| != q^-alpha at precision");
  auto vf = valuation(fx);
  if (!vf) return x;
  if (*vf <= 2 * alpha)
    fail(ErrorKind::invalid_argument,
         "Hensel hypothesis fails: |poly(x0)| >= |poly'(x0)|^2");
  for (int iter = 0; iter < 256; ++iter) {
    Element z = fd.wrap(detail::divide_coords(fd, fx.coords(), dfx.coords()));
    x = x - z;
    fx = eval_univariate(poly, x);
    auto next = valuation(fx);
    if (!next) return x;
    if (*next <= *vf)
      fail(ErrorKind::precision_exhausted, "Newton iteration stalled before reaching precision");
    vf = next;
    dfx = eval_univariate(deriv, x);
  }
  fail(ErrorKind::precision_exhausted, "Newton iteration did not converge");
}

}  // namespace lfc
