#pragma once

// Polynomials in v*n variables over R. Variable index i*n + c is coordinate c
// of the i-th argument.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lfc/field.hpp"

namespace lfc {

struct Term {
  std::vector<unsigned> exps;  // one exponent per variable
  Element coef;
};

class Polynomial {
 public:
  Polynomial(const Field& field, std::size_t n, std::size_t v,
             std::vector<Term> terms);

  const Field& field() const noexcept { return field_; }
  std::size_t n() const noexcept { return n_; }
  std::size_t v() const noexcept { return v_; }
  std::size_t nvars() const noexcept { return n_ * v_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  unsigned degree() const noexcept;
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;
  bool depends_on(std::size_t var) const noexcept;
  /// Blocks (argument indices) the polynomial depends on.
  std::vector<std::size_t> blocks() const;

  Element eval(std::span<const Element> point) const;
  Polynomial derivative(std::size_t var) const;

  /// Largest height of |coefficient| (a coefficient or its negation must
  /// have finite height at precision).
  int coeff_height_bound() const;
  /// binom(d + nv, nv).
  std::uint64_t monomial_count_bound() const;

  /// Sum of terms with finite-height coefficients and the (negated) sum of
  /// the rest, evaluated at the point: p(x) = first - second.
  std::pair<Element, Element> signed_parts(std::span<const Element> point) const;

  std::string to_string() const;

 private:
  Field field_;
  std::size_t n_;
  std::size_t v_;
  std::vector<Term> terms_;  // sorted by exponent tuple, nonzero coefficients
};

Polynomial operator+(const Polynomial& a, const Polynomial& b);
Polynomial operator-(const Polynomial& a, const Polynomial& b);
Polynomial operator*(const Polynomial& a, const Polynomial& b);
/// The constant polynomial c in the same variables as shape.
Polynomial constant_like(const Polynomial& shape, const Element& c);
/// The polynomial x_var.
Polynomial variable_like(const Polynomial& shape, std::size_t var);

/// Height of c if finite below cutoff, else height of -c; nullopt if both
/// are infinite.
std::optional<int> magnitude_height(const Element& c, int cutoff);

}  // namespace lfc
