#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "hconv/multi_index.hpp"
#include "hconv/rational.hpp"

namespace hconv {

// Sparse multivariate polynomial with exact rational coefficients.
//
// Invariants: no stored coefficient is zero, every key has length dim().
// Terms iterate in ascending graded-lex order.
class Polynomial {
 public:
  using Terms = std::map<MultiIndex, Rational>;

  explicit Polynomial(std::size_t dim);

  static Polynomial constant(std::size_t dim, const Rational& c);
  // x_{axis+1}; axis is 0-based.
  static Polynomial variable(std::size_t dim, std::size_t axis);
  static Polynomial monomial(const MultiIndex& alpha, const Rational& c = 1);
  // Drops zero coefficients; throws DimensionMismatch on a key of the wrong length.
  static Polynomial from_terms(std::size_t dim, Terms terms);

  std::size_t dim() const noexcept { return dim_; }
  const Terms& terms() const noexcept { return terms_; }
  std::size_t term_count() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  // Total degree; std::nullopt stands for the -infinity degree of the zero polynomial.
  std::optional<unsigned> degree() const;

  Rational coefficient(const MultiIndex& alpha) const;
  Rational constant_term() const;
  // Leading (graded-lex greatest) term; requires a nonzero polynomial.
  const std::pair<const MultiIndex, Rational>& leading_term() const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Rational& c);

  friend Polynomial operator+(Polynomial p, const Polynomial& q) { return p += q; }
  friend Polynomial operator-(Polynomial p, const Polynomial& q) { return p -= q; }
  friend Polynomial operator*(const Polynomial& p, const Polynomial& q);
  friend Polynomial operator*(Polynomial p, const Rational& c) { return p *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial p) { return p *= c; }
  Polynomial operator-() const;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  // Adds c * x^alpha in place, erasing the term if it cancels.
  void add_term(const MultiIndex& alpha, const Rational& c);

 private:
  std::size_t dim_;
  Terms terms_;
};

Polynomial add(const Polynomial& p, const Polynomial& q);
Polynomial mul(const Polynomial& p, const Polynomial& q);
Polynomial pow(const Polynomial& p, unsigned exponent);

// Exact value via nested Horner evaluation (x1 outermost).
Rational evaluate(const Polynomial& p, std::span<const Rational> point);

// Homogeneous parts in strictly increasing degree; zero parts omitted.
std::vector<std::pair<unsigned, Polynomial>> homogeneous_components(const Polynomial& p);

// Degree-m homogeneous part (possibly zero).
Polynomial homogeneous_component(const Polynomial& p, unsigned m);

// True iff every term has degree l. The zero polynomial is homogeneous of every degree.
bool is_homogeneous(const Polynomial& p, unsigned l);

// u -> p(center + scale * u).
Polynomial compose_affine(const Polynomial& p, std::span<const Rational> center,
                          const Rational& scale);

// p(x - y) as a polynomial in 2n variables (x_1..x_n, y_1..y_n).
Polynomial shift_reflect(const Polynomial& p);

// Sum of |coefficients|.
Rational l1_norm(const Polynomial& p);

}  // namespace hconv
