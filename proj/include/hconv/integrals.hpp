#pragma once

#include <cstddef>
#include <vector>

#include "hconv/multi_index.hpp"
#include "hconv/polynomial.hpp"
#include "hconv/rational.hpp"

namespace hconv {

// Sphere {x : |x - center| = radius} in R^n.
class SphereSpec {
 public:
  SphereSpec(std::vector<Rational> center, Rational radius);
  static SphereSpec unit(std::size_t dim);

  std::size_t dim() const noexcept { return center_.size(); }
  const std::vector<Rational>& center() const noexcept { return center_; }
  const Rational& radius() const noexcept { return radius_; }

 private:
  std::vector<Rational> center_;
  Rational radius_;
};

// Normalized average (integral / surface measure).
struct SphereAverage {
  Rational value;
};

// Average of x^alpha over the unit sphere S^{n-1}, n = alpha.size():
// zero if any entry is odd, else prod (alpha_i - 1)!! / (n (n+2) ... (n + d - 2)).
Rational monomial_sphere_mean(const MultiIndex& alpha);

// Integral of x^alpha over the unit ball in units of the unit-sphere surface
// measure omega_{n-1}. Integrating r^{n-1+d} over [0, 1] gives the radial
// factor 1/(n + d), so the value is monomial_sphere_mean(alpha) / (n + d).
Rational monomial_ball_integral(const MultiIndex& alpha);

// Integral of p over the unit sphere, in units of omega_{n-1}.
Rational unit_sphere_integral(const Polynomial& p);

// Integral of p over the unit ball, in units of omega_{n-1}.
Rational unit_ball_integral(const Polynomial& p);

// Average of p over `sphere`, by substituting x = center + radius * u and
// averaging over the unit sphere in u.
SphereAverage sphere_average(const Polynomial& p, const SphereSpec& sphere);

// Integrated form of the divergence theorem on the unit ball: the normal
// derivative of p on the unit sphere is euler(p), so
//   integral_{S} euler(p) == integral_{B} laplacian(p).
bool divergence_identity_check(const Polynomial& p);

// Requires a harmonic p (throws NotHarmonic). True iff the sphere average
// equals the value at the center.
bool mean_value_check(const Polynomial& p, const SphereSpec& sphere);

}  // namespace hconv
