#include "lfc/polynomial.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "lfc/height.hpp"

namespace lfc {

std::optional<int> magnitude_height(const Element& c, int cutoff) {
  auto a = height(c, cutoff);
  auto b = height(-c, cutoff);
  if (a && b) return std::min(*a, *b);
  return a ? a : b;
}

Polynomial::Polynomial(const Field& field, std::size_t n, std::size_t v,
                       std::vector<Term> terms)
    : field_(field), n_(n), v_(v) {
  if (n == 0 || v == 0) fail(ErrorKind::invalid_argument, "n and v must be positive");
  std::map<std::vector<unsigned>, Element> merged;
  for (auto& t : terms) {
    if (t.exps.size() != n * v)
      fail(ErrorKind::invalid_argument, "exponent tuple has wrong length");
    if (t.coef.field() != field.data())
      fail(ErrorKind::invalid_argument, "coefficient from a different field");
    auto it = merged.find(t.exps);
    if (it == merged.end())
      merged.emplace(t.exps, t.coef);
    else
      it->second += t.coef;
  }
  for (auto& [exps, coef] : merged)
    if (!coef.is_zero()) terms_.push_back(Term{exps, coef});
}

unsigned Polynomial::degree() const noexcept {
  unsigned d = 0;
  for (const auto& t : terms_) {
    unsigned s = 0;
    for (unsigned x : t.exps) s += x;
    d = std::max(d, s);
  }
  return d;
}

bool Polynomial::is_constant() const noexcept { return degree() == 0; }

bool Polynomial::depends_on(std::size_t var) const noexcept {
  for (const auto& t : terms_)
    if (t.exps[var] != 0) return true;
  return false;
}

std::vector<std::size_t> Polynomial::blocks() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < v_; ++i)
    for (std::size_t c = 0; c < n_; ++c)
      if (depends_on(i * n_ + c)) {
        out.push_back(i);
        break;
      }
  return out;
}

namespace {

Element monomial(const Term& t, std::span<const Element> point) {
  Element acc = t.coef;
  for (std::size_t k = 0; k < t.exps.size(); ++k)
    for (unsigned r = 0; r < t.exps[k]; ++r) acc *= point[k];
  return acc;
}

}  // namespace

Element Polynomial::eval(std::span<const Element> point) const {
  if (point.size() != nvars())
    fail(ErrorKind::invalid_argument, "evaluation point has wrong dimension");
  Element acc = field_.zero();
  for (const auto& t : terms_) acc += monomial(t, point);
  return acc;
}

std::pair<Element, Element> Polynomial::signed_parts(
    std::span<const Element> point) const {
  const int cutoff = field_.precision() - 1;
  Element pos = field_.zero(), negsum = field_.zero();
  for (const auto& t : terms_) {
    if (height(t.coef, cutoff)) {
      pos += monomial(t, point);
    } else {
      Term flipped{t.exps, -t.coef};
      negsum += monomial(flipped, point);
    }
  }
  return {pos, negsum};
}

Polynomial Polynomial::derivative(std::size_t var) const {
  if (var >= nvars()) fail(ErrorKind::invalid_argument, "variable index out of range");
  std::vector<Term> out;
  for (const auto& t : terms_) {
    if (t.exps[var] == 0) continue;
    Term d = t;
    d.coef = t.coef * t.coef.integer(t.exps[var]);
    d.exps[var] -= 1;
    out.push_back(std::move(d));
  }
  return Polynomial(field_, n_, v_, std::move(out));
}

int Polynomial::coeff_height_bound() const {
  const int cutoff = field_.precision() - 1;
  int b = 0;
  for (const auto& t : terms_) {
    auto h = magnitude_height(t.coef, cutoff);
    if (!h)
      fail(ErrorKind::invalid_argument,
           "coefficient has infinite height at precision");
    b = std::max(b, *h);
  }
  return b;
}

std::uint64_t Polynomial::monomial_count_bound() const {
  const std::uint64_t k = nvars();
  const std::uint64_t d = degree();
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (d + i) / i;
  return r;
}

namespace {

void same_shape(const Polynomial& a, const Polynomial& b) {
  if (!(a.field() == b.field()) || a.n() != b.n() || a.v() != b.v())
    fail(ErrorKind::invalid_argument, "polynomials in different variables");
}

}  // namespace

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  same_shape(a, b);
  std::vector<Term> terms = a.terms();
  terms.insert(terms.end(), b.terms().begin(), b.terms().end());
  return Polynomial(a.field(), a.n(), a.v(), std::move(terms));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  same_shape(a, b);
  std::vector<Term> terms = a.terms();
  for (const auto& t : b.terms()) terms.push_back(Term{t.exps, -t.coef});
  return Polynomial(a.field(), a.n(), a.v(), std::move(terms));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  same_shape(a, b);
  std::vector<Term> terms;
  for (const auto& x : a.terms())
    for (const auto& y : b.terms()) {
      Term t{x.exps, x.coef * y.coef};
      for (std::size_t k = 0; k < t.exps.size(); ++k) t.exps[k] += y.exps[k];
      terms.push_back(std::move(t));
    }
  return Polynomial(a.field(), a.n(), a.v(), std::move(terms));
}

Polynomial constant_like(const Polynomial& shape, const Element& c) {
  return Polynomial(shape.field(), shape.n(), shape.v(),
                    {Term{std::vector<unsigned>(shape.nvars(), 0), c}});
}

Polynomial variable_like(const Polynomial& shape, std::size_t var) {
  std::vector<unsigned> exps(shape.nvars(), 0);
  exps.at(var) = 1;
  return Polynomial(shape.field(), shape.n(), shape.v(),
                    {Term{exps, shape.field().one()}});
}

std::string Polynomial::to_string() const {
  std::ostringstream os;
  if (terms_.empty()) return "0";
  bool first = true;
  for (const auto& t : terms_) {
    if (!first) os << " + ";
    first = false;
    const bool neg = raw_height(-t.coef) < raw_height(t.coef);
    const Element c = neg ? -t.coef : t.coef;
    if (neg) os << "-";
    if (field_.rank() == 1) {
      os << lfc::to_string(c.coord(0));
    } else {
      os << "(";
      for (unsigned u = 0; u < field_.rank(); ++u) os << (u ? "|" : "") << lfc::to_string(c.coord(u));
      os << ")";
    }
    for (std::size_t k = 0; k < t.exps.size(); ++k) {
      if (t.exps[k] == 0) continue;
      os << "*x" << k / n_ + 1;
      if (n_ > 1) os << "_" << k % n_ + 1;
      if (t.exps[k] > 1) os << "^" << t.exps[k];
    }
  }
  return os.str();
}

}  // namespace lfc
