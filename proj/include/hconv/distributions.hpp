#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "hconv/multi_index.hpp"
#include "hconv/polynomial.hpp"
#include "hconv/quadrature.hpp"
#include "hconv/rational.hpp"
#include "hconv/schwartz.hpp"

namespace hconv {

// c * delta_a^(beta), acting as psi -> c (-1)^d(beta) (d^beta psi)(a).
struct PointMass {
  Rational coefficient;
  std::vector<Rational> location;
  MultiIndex derivative;
};

struct PointMasses {
  std::vector<PointMass> masses;
};

// psi -> integral of p psi.
struct PolynomialKernel {
  Polynomial p;
};

// psi -> integral of g psi.
struct GaussPolyKernel {
  GaussPoly g;
};

enum class DistributionFamily { point_masses, polynomial_kernel, gauss_poly_kernel };

std::string_view family_name(DistributionFamily family);

class TemperedDistribution {
 public:
  using Variant = std::variant<PointMasses, PolynomialKernel, GaussPolyKernel>;

  // Nonempty, distinct (location, derivative) pairs, consistent dimensions.
  static TemperedDistribution point_masses(std::vector<PointMass> masses);
  static TemperedDistribution delta(std::vector<Rational> location);
  static TemperedDistribution polynomial_kernel(Polynomial p);
  static TemperedDistribution gauss_poly_kernel(GaussPoly g);

  std::size_t dim() const noexcept { return dim_; }
  DistributionFamily family() const noexcept;
  const Variant& value() const noexcept { return value_; }

 private:
  TemperedDistribution(std::size_t dim, Variant value) : dim_(dim), value_(std::move(value)) {}

  std::size_t dim_;
  Variant value_;
};

struct ApplyResult {
  double value = 0.0;
  double error_estimate = 0.0;
  // Set when the value is rational (point masses whose Gaussian factors are all 1).
  std::optional<Rational> exact;
};

// lambda(psi).
//   point masses: sum c_i (-1)^d(beta_i) (d^beta_i psi)(a_i), exact up to the final exponentials;
//   polynomial kernel: exact Gaussian moments of p*q around the center of psi;
//   Gauss-polynomial kernel: product Gauss-Legendre quadrature over a tail-bounded box.
// Throws QuadratureError when the quadrature misses tol.
ApplyResult apply(const TemperedDistribution& lambda, const GaussPoly& psi,
                  double tol = quad::default_tolerance());

// lambda(psi) by quadrature for the two kernel families (point masses are
// evaluated as in apply). Independent of the moment tables.
ApplyResult apply_by_quadrature(const TemperedDistribution& lambda, const GaussPoly& psi,
                                double tol = quad::default_tolerance());

// (lambda * phi)(x) = lambda(phi_x).
double convolve_pointwise(const TemperedDistribution& lambda, const GaussPoly& phi,
                          std::span<const Rational> x, double tol = quad::default_tolerance());

// The same value from each family's own formula:
//   point masses: sum c_i (d^beta_i phi)(x - a_i);
//   polynomial kernel: (integral phi) * convolve_poly(p, moments of phi)(x), phi a pure Gaussian;
//   Gauss-polynomial kernel: closed-form integral of the Gaussian product g(y) phi(x - y).
double convolve_direct(const TemperedDistribution& lambda, const GaussPoly& phi,
                       std::span<const Rational> x);

// |lambda(psi)| <= C * sum_j ||psi||_{alpha_j, beta_j}.
struct ContinuityCertificate {
  Rational C;
  std::vector<std::pair<MultiIndex, MultiIndex>> pairs;
};

// point masses: C = sum |c_i|, pairs (0, beta_i);
// polynomial kernel of degree d: pairs (0,0) and (k e_i, 0) with k = d + n + 1,
//   C = ||p||_1 * 2^(k-1) * n^ceil(k/2) * V_n where V_n >= integral (1+|x|)^(-n-1)
//   is the unit ball volume with pi bounded above by 22/7;
// Gauss-polynomial kernel: C = integral |g| (rounded up by its quadrature error), pairs (0,0).
ContinuityCertificate continuity_certificate(const TemperedDistribution& lambda);

struct ContinuityCheck {
  double lhs = 0.0;  // |lambda(psi)|
  double rhs = 0.0;  // C * sum of seminorms
  bool holds = false;
};

// Evaluates both sides; holds iff lhs <= rhs * (1 + rel_slack).
ContinuityCheck verify_continuity(const ContinuityCertificate& cert,
                                  const TemperedDistribution& lambda, const GaussPoly& psi,
                                  double rel_slack = 1e-9);

struct GrowthCertificate {
  double C1 = 0.0;
  unsigned l = 0;
  std::vector<std::vector<double>> witness_points;
  // min over holdout points of 1 - |f(x)| / (C1 (1+|x|)^l); nonnegative on acceptance.
  double holdout_margin = 0.0;
  double sample_max = 0.0;   // max |f| over the witness points
  double holdout_max = 0.0;  // max |f| over the holdout shell
};

// Exponent l predicted by the family: 0 for point masses and Gauss-polynomial
// kernels, deg p for polynomial kernels.
unsigned predicted_growth_degree(const TemperedDistribution& lambda);

// Fits |(lambda * phi)(x)| <= C1 (1 + |x|)^l on samples with |x| <= sample_radius
// and validates on a holdout shell sample_radius < |x| <= 2 sample_radius.
//
// l is the log2 of max |f| on the shell |x| = sample_radius over max |f| on
// |x| = sample_radius/2, rounded and clamped at 0, so sample_radius should lie
// well outside the bulk of lambda * phi. C1 is twice the largest sampled
// |f|/(1+|x|)^l. Throws CertificateRejected if l disagrees with the family
// prediction or the holdout shell violates the bound.
GrowthCertificate growth_certificate(const TemperedDistribution& lambda, const GaussPoly& phi,
                                     double sample_radius);

namespace detail {

// Exact integral of the product of two Gauss-polynomials:
//   exp(-exponent_offset) * (pi / combined_rate)^(n/2) * normalized.
struct GaussProductIntegral {
  std::size_t dim;
  Rational normalized;
  Rational combined_rate;
  Rational exponent_offset;
  double value() const;
};

GaussProductIntegral gauss_product_integral(const GaussPoly& f, const GaussPoly& g);

}  // namespace detail

}  // namespace hconv
