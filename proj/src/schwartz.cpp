#include "hconv/schwartz.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hconv/diffops.hpp"
#include "hconv/errors.hpp"

namespace hconv {

GaussPoly::GaussPoly(Polynomial q, Rational rate, std::vector<Rational> center)
    : q_(std::move(q)), rate_(std::move(rate)), center_(std::move(center)) {
  if (rate_ <= 0) throw DomainError("Gaussian rate must be positive");
  if (center_.size() != q_.dim()) throw DimensionMismatch(q_.dim(), center_.size());
}

GaussPoly GaussPoly::gaussian(std::size_t dim, const Rational& rate) {
  return GaussPoly(Polynomial::constant(dim, 1), rate, std::vector<Rational>(dim, Rational(0)));
}

bool GaussPoly::is_pure_gaussian() const {
  return !q_.is_zero() && q_.degree() == 0u;
}

GaussPoly GaussPoly::scaled(const Rational& c) const { return GaussPoly(q_ * c, rate_, center_); }

GaussPoly GaussPoly::times(const Polynomial& m) const { return GaussPoly(q_ * m, rate_, center_); }

double eval_gp(const GaussPoly& psi, std::span<const Rational> x) {
  if (x.size() != psi.dim()) throw DimensionMismatch(psi.dim(), x.size());
  const Rational qx = evaluate(psi.q(), x);
  if (qx == 0) return 0.0;
  const Rational exponent = -psi.rate() * squared_distance(x, psi.center());
  return to_double(qx) * std::exp(to_double(exponent));
}

double eval_gp(const GaussPoly& psi, std::span<const double> x) {
  if (x.size() != psi.dim()) throw DimensionMismatch(psi.dim(), x.size());
  std::vector<Rational> exact;
  exact.reserve(x.size());
  for (double v : x) exact.push_back(from_double(v));
  return eval_gp(psi, exact);
}

GaussPoly translate_reflect(const GaussPoly& phi, std::span<const Rational> x) {
  if (x.size() != phi.dim()) throw DimensionMismatch(phi.dim(), x.size());
  std::vector<Rational> center(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) center[i] = x[i] - phi.center()[i];
  return GaussPoly(compose_affine(phi.q(), x, Rational(-1)), phi.rate(), std::move(center));
}

GaussPoly derivative_gp(const GaussPoly& psi, const MultiIndex& beta) {
  if (beta.size() != psi.dim()) throw DimensionMismatch(psi.dim(), beta.size());
  const std::size_t n = psi.dim();
  Polynomial q = psi.q();
  for (std::size_t j = 0; j < n; ++j) {
    if (beta[j] == 0) continue;
    // -2a (x_j - b_j)
    Polynomial factor = Polynomial::variable(n, j) * (-2 * psi.rate());
    factor.add_term(MultiIndex(n), 2 * psi.rate() * psi.center()[j]);
    for (unsigned k = 0; k < beta[j]; ++k) q = partial(q, j) + factor * q;
  }
  return GaussPoly(std::move(q), psi.rate(), psi.center());
}

namespace detail {

DoublePolynomial::DoublePolynomial(const Polynomial& p) : dim_(p.dim()) {
  coefficients_.reserve(p.term_count());
  exponents_.reserve(p.term_count() * dim_);
  for (const auto& [alpha, c] : p.terms()) {
    coefficients_.push_back(to_double(c));
    exponents_.insert(exponents_.end(), alpha.exponents().begin(), alpha.exponents().end());
    degree_ = std::max(degree_, alpha.degree());
  }
}

double DoublePolynomial::operator()(std::span<const double> x) const {
  double sum = 0.0;
  const unsigned* e = exponents_.data();
  for (double c : coefficients_) {
    double term = c;
    for (std::size_t i = 0; i < dim_; ++i, ++e) {
      for (unsigned k = 0; k < *e; ++k) term *= x[i];
    }
    sum += term;
  }
  return sum;
}

}  // namespace detail

namespace {

constexpr unsigned kGridPoints = 64;
constexpr double kTailEps = 1e-15;
const double kInvPhi = (std::sqrt(5.0) - 1.0) / 2.0;

}  // namespace

SeminormValue seminorm(const GaussPoly& psi, const MultiIndex& alpha, const MultiIndex& beta) {
  const std::size_t n = psi.dim();
  if (alpha.size() != n) throw DimensionMismatch(n, alpha.size());
  const GaussPoly dpsi = derivative_gp(psi, beta);

  SeminormValue out{alpha, beta, 0.0, std::vector<double>(n, 0.0), 0.0};
  if (dpsi.q().is_zero()) return out;

  const detail::DoublePolynomial weighted(Polynomial::monomial(alpha) * dpsi.q());
  const double a = to_double(psi.rate());
  std::vector<double> b(n);
  double b_max = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    b[i] = to_double(psi.center()[i]);
    b_max = std::max(b_max, std::abs(b[i]));
  }
  const unsigned q_degree = *dpsi.q().degree();
  const double radius =
      b_max + std::sqrt((alpha.degree() + q_degree + 2.0 * std::log(1.0 / kTailEps)) / a);

  auto f = [&](std::span<const double> x) {
    double r2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) r2 += (x[i] - b[i]) * (x[i] - b[i]);
    return std::abs(weighted(x)) * std::exp(-a * r2);
  };

  // Coarse grid.
  const double h = 2.0 * radius / (kGridPoints - 1);
  std::vector<unsigned> idx(n, 0);
  std::vector<double> x(n);
  double best = -1.0;
  std::vector<double> best_x(n);
  while (true) {
    for (std::size_t i = 0; i < n; ++i) x[i] = b[i] - radius + h * idx[i];
    const double v = f(x);
    if (v > best) {
      best = v;
      best_x = x;
    }
    std::size_t i = 0;
    while (i < n && ++idx[i] == kGridPoints) idx[i++] = 0;
    if (i == n) break;
  }

  // Coordinate-wise golden-section refinement with a shrinking bracket.
  double step = h;
  x = best_x;
  for (int sweep = 0; sweep < 80 && step > 1e-12 * (1.0 + radius); ++sweep) {
    for (std::size_t i = 0; i < n; ++i) {
      auto slice = [&](double t) {
        const double saved = x[i];
        x[i] = t;
        const double v = f(x);
        x[i] = saved;
        return v;
      };
      double lo = x[i] - step;
      double hi = x[i] + step;
      double c = hi - kInvPhi * (hi - lo);
      double d = lo + kInvPhi * (hi - lo);
      double fc = slice(c);
      double fd = slice(d);
      while (hi - lo > 1e-3 * step) {
        if (fc > fd) {
          hi = d;
          d = c;
          fd = fc;
          c = hi - kInvPhi * (hi - lo);
          fc = slice(c);
        } else {
          lo = c;
          c = d;
          fc = fd;
          d = lo + kInvPhi * (hi - lo);
          fd = slice(d);
        }
      }
      const double t = 0.5 * (lo + hi);
      const double ft = slice(t);
      if (ft > best) {
        best = ft;
        x[i] = t;
      }
    }
    step *= 0.5;
  }
  out.value = best;
  out.argmax_point = x;
  out.refinement_step = step;
  return out;
}

double gaussian_mass(const Rational& rate, std::size_t dim) {
  return std::pow(std::numbers::pi / to_double(rate), 0.5 * static_cast<double>(dim));
}

double gaussian_integral(const GaussPoly& phi) {
  if (!phi.is_pure_gaussian()) throw UnsupportedShape("integral requires a pure Gaussian");
  return to_double(phi.q().constant_term()) * gaussian_mass(phi.rate(), phi.dim());
}

MomentProvider moments_gp(const GaussPoly& phi, unsigned max_degree) {
  if (!phi.is_pure_gaussian()) {
    throw UnsupportedShape("exact moments require a pure Gaussian (constant polynomial part)");
  }
  return MomentProvider(
      phi.dim(), max_degree,
      [rate = phi.rate(), center = phi.center()](const MultiIndex& alpha) {
        return gaussian_moment(rate, center, alpha);
      },
      gaussian_integral(phi));
}

}  // namespace hconv
