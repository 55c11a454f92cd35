#pragma once

// Exact truncated arithmetic in the ring of integers R of a nonarchimedean
// local field: F_q[[t]], Z_p, or a finite extension of Q_p with inertia
// degree f and ramification index e.
//
// Every element is stored as its coordinate vector in the basis
// {t1^k1 * t2^k2 : k1 < f, k2 < e} with coordinates in Z/p^N (characteristic
// zero) or as packed base-p digit strings of length N (finite characteristic).
// Digit j of coordinate (k1, k2) sits at uniformizer position j*e + k2.

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace lfc {

using u128 = unsigned __int128;

/// Maximum f*e supported by the fixed-width element storage.
inline constexpr unsigned kMaxRank = 4;

enum class ErrorKind {
  invalid_argument,
  precision_exhausted,
  infeasible,
  verification_failed,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

std::string to_string(u128 value);

enum class Characteristic { zero, finite };

/// An element written out as base-p digit lists, one per basis coordinate
/// (row-major in (k1, k2)), low digit first. `negative` negates the result.
struct DigitLiteral {
  std::vector<std::vector<unsigned>> components;
  bool negative = false;
};

struct FieldParams {
  Characteristic characteristic = Characteristic::zero;
  unsigned p = 2;
  unsigned f = 1;
  unsigned e = 1;
  /// Irreducible polynomial over F_p of degree f, low degree first.
  std::vector<unsigned> residue_poly{0, 1};
  /// a_0 .. a_{e-1} of the Eisenstein polynomial x^e + a_{e-1} x^{e-1} + ...,
  /// written in the t1 basis of the unramified subring.
  std::vector<DigitLiteral> eisenstein_coeffs;
  int precision = 8;
};

namespace detail {
struct FieldData;
}

class Element {
 public:
  using Coords = std::array<u128, kMaxRank>;

  Element() = default;

  const detail::FieldData* field() const noexcept { return field_; }
  const Coords& coords() const noexcept { return coords_; }
  u128 coord(unsigned index) const { return coords_.at(index); }

  unsigned digit(unsigned k1, unsigned k2, unsigned j) const;
  /// Digit tensor in row-major (k1, k2, j) order.
  std::vector<unsigned> digits() const;
  bool is_zero() const noexcept;

  /// The integer k embedded in this element's ring.
  Element integer(long long k) const;

  friend bool operator==(const Element& a, const Element& b) noexcept {
    return a.field_ == b.field_ && a.coords_ == b.coords_;
  }
  friend Element operator+(const Element& a, const Element& b);
  friend Element operator-(const Element& a, const Element& b);
  friend Element operator*(const Element& a, const Element& b);
  friend Element operator-(const Element& a);
  Element& operator+=(const Element& other) { return *this = *this + other; }
  Element& operator-=(const Element& other) { return *this = *this - other; }
  Element& operator*=(const Element& other) { return *this = *this * other; }

 private:
  friend class Field;
  friend struct detail::FieldData;
  Element(const detail::FieldData* field, const Coords& coords)
      : field_(field), coords_(coords) {}

  const detail::FieldData* field_ = nullptr;
  Coords coords_{};
};

/// Index of the first nonzero uniformizer digit; nullopt when every carried
/// digit vanishes (valuation >= e*N).
std::optional<int> valuation(const Element& x);

/// Numeric order on coordinate tuples; used for deterministic enumeration.
bool coord_less(const Element& a, const Element& b) noexcept;

struct ElementHash {
  std::size_t operator()(const Element& x) const noexcept;
};

class Field {
 public:
  /// Validates the parameters and builds the basis product table. The
  /// unramified generator t1 is the Hensel lift of a multiplicative generator
  /// of F_q to a root of x^(q-1) - 1; t2 is the Hensel-certified root of the
  /// Eisenstein polynomial.
  static Field make(const FieldParams& params);

  /// Convenience constructors for the three desk-scale families.
  static Field padic(unsigned p, int precision);
  static Field power_series(unsigned p, int precision);

  Characteristic characteristic() const noexcept;
  unsigned p() const noexcept;
  unsigned f() const noexcept;
  unsigned e() const noexcept;
  /// N: number of base-p digits carried per coordinate.
  int precision() const noexcept;
  /// e*N: number of uniformizer digits carried.
  int uniformizer_precision() const noexcept;
  unsigned rank() const noexcept;
  unsigned q() const noexcept;
  u128 modulus() const noexcept;
  const FieldParams& params() const noexcept;
  std::string describe() const;

  Element zero() const;
  Element one() const;
  Element from_int(long long value) const;
  Element from_literal(const DigitLiteral& literal) const;
  /// Digit tensor in row-major (k1, k2, j) order; missing digits are zero.
  Element from_digits(std::span<const unsigned> digits) const;
  Element from_coords(const Element::Coords& coords) const;
  Element basis(unsigned k1, unsigned k2) const;
  /// The element p^(w div e) * t2^(w mod e); valuation exactly w.
  Element uniformizer_power(int w) const;

  Element t1() const;
  Element t2() const;
  /// Product of basis monomials (k1a, k2a) and (k1b, k2b).
  Element basis_product(unsigned k1a, unsigned k2a, unsigned k1b,
                        unsigned k2b) const;
  /// Minimal polynomial over F_p of t1 mod the uniformizer, low degree first.
  const std::vector<unsigned>& generator_minpoly() const noexcept;

  /// x mod uniformizer^lambda, canonical representative.
  Element reduce(const Element& x, int lambda) const;
  /// Some z with y*z = w at precision; requires v(y) <= v(w).
  Element divide(const Element& w, const Element& y) const;
  Element power(const Element& x, unsigned k) const;

  const detail::FieldData* data() const noexcept { return data_.get(); }
  bool operator==(const Field& other) const noexcept {
    return data_ == other.data_;
  }

 private:
  explicit Field(std::shared_ptr<const detail::FieldData> data)
      : data_(std::move(data)) {}
  std::shared_ptr<const detail::FieldData> data_;
};

/// Evaluate a polynomial given by coefficients (low degree first) at x.
Element eval_univariate(std::span<const Element> poly, const Element& x);

/// Newton iteration for a root of `poly` near x0. Requires
/// |poly(x0)| < |poly'(x0)|^2 and |poly'(x0)| = q^-alpha, both certified at
/// the working precision. The result r satisfies poly(r) = 0 through
/// precision and |r - x0| <= |poly(x0)| / |poly'(x0)|.
Element hensel_lift(std::span<const Element> poly, const Element& x0,
                    int alpha);

bool is_prime(unsigned n) noexcept;

}  // namespace lfc
