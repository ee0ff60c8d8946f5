#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hconv/moments.hpp"
#include "hconv/multi_index.hpp"
#include "hconv/polynomial.hpp"
#include "hconv/rational.hpp"

namespace hconv {

// Schwartz test function psi(x) = q(x) exp(-a |x - b|^2) with a > 0.
// The class is closed under differentiation, translation-reflection and
// multiplication by polynomials.
class GaussPoly {
 public:
  GaussPoly(Polynomial q, Rational rate, std::vector<Rational> center);

  // exp(-rate |x|^2).
  static GaussPoly gaussian(std::size_t dim, const Rational& rate);

  std::size_t dim() const noexcept { return q_.dim(); }
  const Polynomial& q() const noexcept { return q_; }
  const Rational& rate() const noexcept { return rate_; }
  const std::vector<Rational>& center() const noexcept { return center_; }

  // q is a nonzero constant.
  bool is_pure_gaussian() const;

  GaussPoly scaled(const Rational& c) const;
  GaussPoly times(const Polynomial& m) const;

  friend bool operator==(const GaussPoly&, const GaussPoly&) = default;

 private:
  Polynomial q_;
  Rational rate_;
  std::vector<Rational> center_;
};

// Value at a rational point: q and the exponent are evaluated exactly, then
// one exponential is taken in double precision.
double eval_gp(const GaussPoly& psi, std::span<const Rational> x);

// Value at a double point; the point is converted exactly to rationals first.
double eval_gp(const GaussPoly& psi, std::span<const double> x);

// phi_x(y) = phi(x - y): polynomial part q(x - y), same rate, center x - b.
GaussPoly translate_reflect(const GaussPoly& phi, std::span<const Rational> x);

// Exact d^beta psi; each d_j maps q to d_j q - 2a (x_j - b_j) q.
GaussPoly derivative_gp(const GaussPoly& psi, const MultiIndex& beta);

struct SeminormValue {
  MultiIndex alpha;
  MultiIndex beta;
  double value = 0.0;
  std::vector<double> argmax_point;
  // Golden-section bracket half-width reached by the refinement.
  double refinement_step = 0.0;
};

// sup_x |x^alpha d^beta psi(x)| over the box b +- R, where
// R = max|b_i| + sqrt((d(alpha) + deg q_beta + 2 ln(1e15)) / a); beyond it the
// Gaussian tail is below machine level. Coarse 64-point grid per axis, then
// coordinate-wise golden-section refinement around the best grid point.
SeminormValue seminorm(const GaussPoly& psi, const MultiIndex& alpha, const MultiIndex& beta);

// (pi / a)^(n/2) = integral of exp(-a |x|^2).
double gaussian_mass(const Rational& rate, std::size_t dim);

// Integral of phi; requires a pure Gaussian.
double gaussian_integral(const GaussPoly& phi);

// Normalized moments of a pure Gaussian (any center). Throws UnsupportedShape
// when q is not constant.
MomentProvider moments_gp(const GaussPoly& phi, unsigned max_degree);

namespace detail {

// Double-precision copy of a polynomial for inner loops.
class DoublePolynomial {
 public:
  explicit DoublePolynomial(const Polynomial& p);
  double operator()(std::span<const double> x) const;
  unsigned degree() const noexcept { return degree_; }

 private:
  std::size_t dim_;
  unsigned degree_ = 0;
  std::vector<double> coefficients_;
  std::vector<unsigned> exponents_;  // row-major, dim_ per term
};

}  // namespace detail

}  // namespace hconv
