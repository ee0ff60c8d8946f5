#include "hconv/convolution.hpp"

#include <cmath>
#include <map>
#include <utility>

#include "hconv/diffops.hpp"
#include "hconv/errors.hpp"
#include "hconv/integrals.hpp"

namespace hconv {

namespace {

void require_radial(const Polynomial& p, const MomentProvider& moments) {
  const unsigned degree = p.degree().value_or(0);
  if (!moments.is_radial(degree)) {
    throw NonRadialProvider("moment provider is not radial up to degree " +
                            std::to_string(degree));
  }
}

}  // namespace

Polynomial convolve_poly(const Polynomial& p, const MomentProvider& moments) {
  const std::size_t n = p.dim();
  if (moments.dim() != n) throw DimensionMismatch(n, moments.dim());
  const unsigned degree = p.degree().value_or(0);
  if (degree > moments.max_degree()) throw InsufficientMoments(moments.max_degree(), degree);

  Polynomial out(n);
  const Polynomial shifted = shift_reflect(p);
  for (const auto& [xy, c] : shifted.terms()) {
    const auto e = xy.exponents();
    MultiIndex mu(std::vector<unsigned>(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(n)));
    MultiIndex gamma(std::vector<unsigned>(e.begin() + static_cast<std::ptrdiff_t>(n), e.end()));
    out.add_term(mu, c * moments.moment(gamma));
  }
  return out;
}

EigenReport eigen_check(const Polynomial& p, const MomentProvider& moments) {
  if (moments.dim() != p.dim()) throw DimensionMismatch(p.dim(), moments.dim());
  require_radial(p, moments);
  EigenReport report{p, is_harmonic(p), moments.normalization(), "integral of phi",
                     convolve_poly(p, moments) - p};
  return report;
}

double numeric_convolution_oracle(const Polynomial& p, const GaussPoly& phi,
                                  std::span<const double> x, double tol) {
  const std::size_t n = p.dim();
  if (phi.dim() != n) throw DimensionMismatch(n, phi.dim());
  if (x.size() != n) throw DimensionMismatch(n, x.size());

  const double a = to_double(phi.rate());
  std::vector<double> b(n);
  for (std::size_t i = 0; i < n; ++i) b[i] = to_double(phi.center()[i]);

  // Per axis, factor (x_i - y)^j y^k exp(-a (y - b_i)^2), keyed by (j, k).
  std::vector<std::map<std::pair<unsigned, unsigned>, unsigned>> ids(n);
  std::vector<std::vector<std::function<double(double)>>> factors(n);
  auto factor_id = [&](std::size_t i, unsigned j, unsigned k) {
    auto [it, inserted] = ids[i].try_emplace({j, k}, static_cast<unsigned>(factors[i].size()));
    if (inserted) {
      factors[i].push_back([xi = x[i], bi = b[i], a, j, k](double y) {
        return std::pow(xi - y, j) * std::pow(y, k) * std::exp(-a * (y - bi) * (y - bi));
      });
    }
    return it->second;
  };

  std::vector<quad::SeparableTerm> terms;
  for (const auto& [alpha, c] : p.terms()) {
    for (const auto& [gamma, d] : phi.q().terms()) {
      quad::SeparableTerm t{to_double(c * d), std::vector<unsigned>(n)};
      for (std::size_t i = 0; i < n; ++i) t.factor[i] = factor_id(i, alpha[i], gamma[i]);
      terms.push_back(std::move(t));
    }
  }

  const unsigned degree = p.degree().value_or(0) + phi.q().degree().value_or(0);
  const double radius = quad::gaussian_tail_radius(a, degree);
  std::vector<double> lo(n);
  std::vector<double> hi(n);
  for (std::size_t i = 0; i < n; ++i) {
    lo[i] = b[i] - radius;
    hi[i] = b[i] + radius;
  }
  const auto result = quad::integrate_separable(terms, factors, lo, hi, tol);
  if (!result.converged) {
    throw QuadratureError("convolution quadrature did not converge", result.error);
  }
  return result.value;
}

Polynomial sphere_average_polynomial(const Polynomial& p) {
  const std::size_t n = p.dim();
  Polynomial out(n + 1);
  const unsigned degree = p.degree().value_or(0);
  for (const auto& gamma : multi_indices_up_to(n, degree)) {
    if (gamma.has_odd_entry()) continue;
    const Polynomial d = derivative_multi(p, gamma);
    if (d.is_zero()) continue;
    Rational factor = monomial_sphere_mean(gamma);
    for (unsigned e : gamma.exponents()) {
      Integer fact;
      mpz_fac_ui(fact.get_mpz_t(), e);
      factor /= Rational(fact);
    }
    for (const auto& [mu, c] : d.terms()) {
      std::vector<unsigned> e(mu.exponents().begin(), mu.exponents().end());
      e.push_back(gamma.degree());
      out.add_term(MultiIndex(std::move(e)), c * factor);
    }
  }
  return out;
}

Polynomial spherical_mean_convolution(const Polynomial& p, const MomentProvider& moments) {
  const std::size_t n = p.dim();
  if (moments.dim() != n) throw DimensionMismatch(n, moments.dim());
  require_radial(p, moments);

  // E|y|^{2k} from the Cartesian moments of |y|^{2k}.
  Polynomial norm_sq(n);
  for (std::size_t i = 0; i < n; ++i) norm_sq.add_term(MultiIndex::unit(n, i, 2), 1);
  std::vector<Rational> radial_moment;
  Polynomial power = Polynomial::constant(n, 1);
  const unsigned degree = p.degree().value_or(0);
  for (unsigned k = 0; 2 * k <= degree; ++k) {
    radial_moment.push_back(moments.integrate(power));
    power = power * norm_sq;
  }

  Polynomial out(n);
  const Polynomial averaged = sphere_average_polynomial(p);
  for (const auto& [xr, c] : averaged.terms()) {
    const auto e = xr.exponents();
    const unsigned r_power = e[n];  // always even
    MultiIndex mu(std::vector<unsigned>(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(n)));
    out.add_term(mu, c * radial_moment.at(r_power / 2));
  }
  return out;
}

bool spherical_mean_route_check(const Polynomial& p, const MomentProvider& moments) {
  if (!is_harmonic(p)) throw NotHarmonic();
  const std::size_t n = p.dim();

  Polynomial p_lifted(n + 1);
  for (const auto& [mu, c] : p.terms()) {
    std::vector<unsigned> e(mu.exponents().begin(), mu.exponents().end());
    e.push_back(0);
    p_lifted.add_term(MultiIndex(std::move(e)), c);
  }
  const bool collapses = sphere_average_polynomial(p) == p_lifted;
  const bool route_reproduces = spherical_mean_convolution(p, moments) == p;
  const bool eigen_zero = eigen_check(p, moments).residual.is_zero();
  return collapses && route_reproduces && eigen_zero;
}

}  // namespace hconv
