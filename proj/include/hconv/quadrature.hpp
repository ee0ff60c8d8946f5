#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace hconv::quad {

struct QuadResult {
  double value = 0.0;
  // |I_fine - I_coarse| between the last two refinement levels.
  double error = 0.0;
  // Integral of |f| (for separable integrands, sum over terms of |c| times the
  // product of the 1D integrals of |F_i|); the scale against which error is judged.
  double magnitude = 0.0;
  bool converged = false;
};

// Gauss-Legendre nodes and weights on [-1, 1].
struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Computed once per order by Newton iteration on P_order.
const Rule& gauss_legendre(unsigned order);

// Quadrature target: HCONV_QUAD_TOL if set and parseable, else 1e-10.
double default_tolerance();

// Half-width of a box around a Gaussian exp(-rate |x - c|^2) times a
// polynomial of the given degree outside of which the integrand is below
// eps relative to its scale: sqrt((degree + 2 ln(1/eps)) / rate).
double gaussian_tail_radius(double rate, unsigned poly_degree, double eps = 1e-15);

double pairwise_sum(std::span<const double> values);

// Composite 16-point Gauss-Legendre with panel doubling. Converged when two
// consecutive levels agree to rel_tol relative to the integral of |f|.
QuadResult integrate_1d(const std::function<double(double)>& f, double lo, double hi,
                        double rel_tol, unsigned max_level = 12);

// Tensor-product version of integrate_1d over [lo, hi] (per axis). Gives up
// once the next level would exceed max_points evaluations.
QuadResult integrate_box(const std::function<double(std::span<const double>)>& f,
                         std::span<const double> lo, std::span<const double> hi, double rel_tol,
                         std::size_t max_points = std::size_t{1} << 22);

// One term of a separable integrand: coefficient * prod_i F_i[factor[i]](y_i).
struct SeparableTerm {
  double coefficient;
  std::vector<unsigned> factor;
};

// Integral over the box of sum_t c_t prod_i F_i[t.factor[i]](y_i), computed by
// Fubini as products of 1D integrals; each distinct (axis, factor) pair is
// integrated once.
QuadResult integrate_separable(std::span<const SeparableTerm> terms,
                               const std::vector<std::vector<std::function<double(double)>>>& axis_factors,
                               std::span<const double> lo, std::span<const double> hi,
                               double rel_tol);

}  // namespace hconv::quad
