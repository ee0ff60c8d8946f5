#pragma once

#include <optional>
#include <span>
#include <string>

#include "hconv/moments.hpp"
#include "hconv/polynomial.hpp"
#include "hconv/quadrature.hpp"
#include "hconv/schwartz.hpp"

namespace hconv {

// Normalized convolution (p * phi) / (integral phi) from the moments of phi:
// p(x - y) is expanded binomially into monomials x^mu y^gamma and each y^gamma
// is integrated to M_gamma. Requires M.max_degree() >= deg p.
Polynomial convolve_poly(const Polynomial& p, const MomentProvider& moments);

struct EigenReport {
  Polynomial polynomial;
  bool harmonic = false;
  // integral of phi when the provider carries it.
  std::optional<double> eigenvalue;
  std::string eigenvalue_note = "integral of phi";
  // convolve_poly(p, M) - p; zero iff p is an eigenfunction.
  Polynomial residual;
};

// Throws NonRadialProvider unless M passes the structural radiality test up to deg p.
EigenReport eigen_check(const Polynomial& p, const MomentProvider& moments);

// Integral of p(x - y) phi(y) dy by product Gauss-Legendre over a box where the
// Gaussian tail is negligible. Both factors split into per-axis products, so
// the integral reduces to 1D quadratures. Throws QuadratureError on failure.
double numeric_convolution_oracle(const Polynomial& p, const GaussPoly& phi,
                                  std::span<const double> x, double tol = 1e-13);

// Average of p over the sphere of radius r around x, as a polynomial in
// (x_1, ..., x_n, r):  sum over even gamma of mean(u^gamma) r^|gamma| d^gamma p(x) / gamma!.
Polynomial sphere_average_polynomial(const Polynomial& p);

// Normalized convolution with a radial phi, routed through spherical means:
// sum_k A_k(x) E|y|^{2k}, with A_k the r^{2k} coefficient of the sphere
// average. Throws NonRadialProvider.
Polynomial spherical_mean_convolution(const Polynomial& p, const MomentProvider& moments);

// For harmonic p (throws NotHarmonic otherwise): the sphere average collapses
// to p(x) for every radius, the spherical-mean convolution therefore returns p,
// and eigen_check reports a zero residual. True iff all three agree.
bool spherical_mean_route_check(const Polynomial& p, const MomentProvider& moments);

}  // namespace hconv
