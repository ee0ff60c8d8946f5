#include "hconv/integrals.hpp"

#include "hconv/diffops.hpp"
#include "hconv/errors.hpp"

namespace hconv {

SphereSpec::SphereSpec(std::vector<Rational> center, Rational radius)
    : center_(std::move(center)), radius_(std::move(radius)) {
  if (center_.empty()) throw DomainError("sphere dimension must be at least 1");
  if (radius_ <= 0) throw DomainError("sphere radius must be positive");
}

SphereSpec SphereSpec::unit(std::size_t dim) {
  return SphereSpec(std::vector<Rational>(dim, Rational(0)), Rational(1));
}

Rational monomial_sphere_mean(const MultiIndex& alpha) {
  if (alpha.has_odd_entry()) return 0;
  const auto n = static_cast<long>(alpha.size());
  Integer num = 1;
  for (unsigned e : alpha.exponents()) num *= double_factorial(static_cast<int>(e) - 1);
  Integer den = 1;
  const long d = alpha.degree();
  for (long k = 0; k < d; k += 2) den *= n + k;
  Rational mean(num, den);
  mean.canonicalize();
  return mean;
}

Rational monomial_ball_integral(const MultiIndex& alpha) {
  return monomial_sphere_mean(alpha) / Rational(alpha.size() + alpha.degree());
}

Rational unit_sphere_integral(const Polynomial& p) {
  Rational sum = 0;
  for (const auto& [alpha, c] : p.terms()) sum += c * monomial_sphere_mean(alpha);
  return sum;
}

Rational unit_ball_integral(const Polynomial& p) {
  Rational sum = 0;
  for (const auto& [alpha, c] : p.terms()) sum += c * monomial_ball_integral(alpha);
  return sum;
}

SphereAverage sphere_average(const Polynomial& p, const SphereSpec& sphere) {
  if (p.dim() != sphere.dim()) throw DimensionMismatch(p.dim(), sphere.dim());
  return {unit_sphere_integral(compose_affine(p, sphere.center(), sphere.radius()))};
}

bool divergence_identity_check(const Polynomial& p) {
  return unit_sphere_integral(euler(p)) == unit_ball_integral(laplacian(p));
}

bool mean_value_check(const Polynomial& p, const SphereSpec& sphere) {
  if (p.dim() != sphere.dim()) throw DimensionMismatch(p.dim(), sphere.dim());
  if (!is_harmonic(p)) throw NotHarmonic();
  return sphere_average(p, sphere).value == evaluate(p, sphere.center());
}

}  // namespace hconv
