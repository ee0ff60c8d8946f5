#include "hconv/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <random>

#include "hconv/convolution.hpp"
#include "hconv/errors.hpp"

namespace hconv {

std::string_view family_name(DistributionFamily family) {
  switch (family) {
    case DistributionFamily::point_masses:
      return "point_masses";
    case DistributionFamily::polynomial_kernel:
      return "polynomial_kernel";
    case DistributionFamily::gauss_poly_kernel:
      return "gauss_poly_kernel";
  }
  return "unknown";
}

TemperedDistribution TemperedDistribution::point_masses(std::vector<PointMass> masses) {
  if (masses.empty()) throw DomainError("point-mass distribution needs at least one mass");
  const std::size_t n = masses.front().location.size();
  if (n == 0) throw DomainError("point-mass dimension must be at least 1");
  for (std::size_t i = 0; i < masses.size(); ++i) {
    const auto& m = masses[i];
    if (m.location.size() != n) throw DimensionMismatch(n, m.location.size());
    if (m.derivative.size() != n) throw DimensionMismatch(n, m.derivative.size());
    for (std::size_t j = 0; j < i; ++j) {
      if (masses[j].derivative == m.derivative && masses[j].location == m.location) {
        throw DomainError("duplicate (location, derivative) pair in point-mass distribution");
      }
    }
  }
  return TemperedDistribution(n, PointMasses{std::move(masses)});
}

TemperedDistribution TemperedDistribution::delta(std::vector<Rational> location) {
  const std::size_t n = location.size();
  return point_masses({PointMass{Rational(1), std::move(location), MultiIndex(n)}});
}

TemperedDistribution TemperedDistribution::polynomial_kernel(Polynomial p) {
  const std::size_t n = p.dim();
  return TemperedDistribution(n, PolynomialKernel{std::move(p)});
}

TemperedDistribution TemperedDistribution::gauss_poly_kernel(GaussPoly g) {
  const std::size_t n = g.dim();
  return TemperedDistribution(n, GaussPolyKernel{std::move(g)});
}

DistributionFamily TemperedDistribution::family() const noexcept {
  return static_cast<DistributionFamily>(value_.index());
}

namespace detail {

double GaussProductIntegral::value() const {
  return std::exp(-to_double(exponent_offset)) * gaussian_mass(combined_rate, dim) *
         to_double(normalized);
}

GaussProductIntegral gauss_product_integral(const GaussPoly& f, const GaussPoly& g) {
  const std::size_t n = f.dim();
  if (g.dim() != n) throw DimensionMismatch(n, g.dim());
  // a|y-b|^2 + c|y-d|^2 = (a+c)|y-m|^2 + (ac/(a+c))|b-d|^2, m = (ab + cd)/(a+c).
  const Rational combined = f.rate() + g.rate();
  std::vector<Rational> mean(n);
  for (std::size_t i = 0; i < n; ++i) {
    mean[i] = (f.rate() * f.center()[i] + g.rate() * g.center()[i]) / combined;
  }
  const Rational offset = f.rate() * g.rate() / combined * squared_distance(f.center(), g.center());
  Rational normalized = 0;
  const Polynomial product = f.q() * g.q();
  for (const auto& [alpha, c] : product.terms()) {
    normalized += c * gaussian_moment(combined, mean, alpha);
  }
  return {n, normalized, combined, offset};
}

}  // namespace detail

namespace {

void require_dim(const TemperedDistribution& lambda, std::size_t n) {
  if (lambda.dim() != n) throw DimensionMismatch(lambda.dim(), n);
}

ApplyResult apply_point_masses(const PointMasses& pm, const GaussPoly& psi) {
  std::map<MultiIndex, GaussPoly> derivatives;
  std::vector<double> parts;
  Rational exact_sum = 0;
  bool all_exact = true;
  for (const auto& m : pm.masses) {
    auto it = derivatives.find(m.derivative);
    if (it == derivatives.end()) {
      it = derivatives.emplace(m.derivative, derivative_gp(psi, m.derivative)).first;
    }
    const GaussPoly& d = it->second;
    Rational poly_part = m.coefficient * evaluate(d.q(), m.location);
    if (m.derivative.degree() % 2) poly_part = -poly_part;
    const Rational exponent = -d.rate() * squared_distance(m.location, d.center());
    if (exponent == 0) {
      exact_sum += poly_part;
    } else if (poly_part != 0) {
      all_exact = false;
    }
    parts.push_back(poly_part == 0 ? 0.0 : to_double(poly_part) * std::exp(to_double(exponent)));
  }
  ApplyResult out;
  out.value = quad::pairwise_sum(parts);
  if (all_exact) out.exact = exact_sum;
  return out;
}

// Integral of Q(y) prod_k exp(-rate_k |y - center_k|^2) by 1D Gauss-Legendre
// factors along each axis. Per axis the exponents combine into
// R (y - m)^2 + K; exp(-sum K) is applied after integration so the 1D
// integrands stay well scaled far from the bulk.
ApplyResult integrate_gauss_poly_product(const Polynomial& q,
                                         const std::vector<const GaussPoly*>& weights,
                                         double tol) {
  const std::size_t n = q.dim();
  double total_rate = 0.0;
  for (const GaussPoly* w : weights) total_rate += to_double(w->rate());
  std::vector<double> mean(n, 0.0);
  double offset = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double second = 0.0;
    for (const GaussPoly* w : weights) {
      const double r = to_double(w->rate());
      const double b = to_double(w->center()[i]);
      mean[i] += r * b;
      second += r * b * b;
    }
    mean[i] /= total_rate;
    offset += std::max(0.0, second - total_rate * mean[i] * mean[i]);
  }

  std::vector<std::map<unsigned, unsigned>> ids(n);
  std::vector<std::vector<std::function<double(double)>>> factors(n);
  std::vector<quad::SeparableTerm> terms;
  for (const auto& [alpha, c] : q.terms()) {
    quad::SeparableTerm t{to_double(c), std::vector<unsigned>(n)};
    for (std::size_t i = 0; i < n; ++i) {
      const unsigned k = alpha[i];
      auto [it, inserted] = ids[i].try_emplace(k, static_cast<unsigned>(factors[i].size()));
      if (inserted) {
        factors[i].push_back([rate = total_rate, m = mean[i], k](double y) {
          return std::pow(y, k) * std::exp(-rate * (y - m) * (y - m));
        });
      }
      t.factor[i] = it->second;
    }
    terms.push_back(std::move(t));
  }
  const double radius = quad::gaussian_tail_radius(total_rate, q.degree().value_or(0)) + 1.0;
  std::vector<double> lo(n);
  std::vector<double> hi(n);
  for (std::size_t i = 0; i < n; ++i) {
    lo[i] = mean[i] - radius;
    hi[i] = mean[i] + radius;
  }
  // 1D factors are integrated well below the requested tolerance so the
  // product error stays under it.
  const auto r = quad::integrate_separable(terms, factors, lo, hi, std::min(tol, 1e-6) * 1e-2);
  if (!r.converged || r.error > tol * r.magnitude) {
    throw QuadratureError("Gauss-polynomial quadrature did not converge", r.error);
  }
  const double scale = std::exp(-offset);
  return ApplyResult{r.value * scale, r.error * scale, std::nullopt};
}

}  // namespace

ApplyResult apply(const TemperedDistribution& lambda, const GaussPoly& psi, double tol) {
  require_dim(lambda, psi.dim());
  return std::visit(
      [&](const auto& family) -> ApplyResult {
        using T = std::decay_t<decltype(family)>;
        if constexpr (std::is_same_v<T, PointMasses>) {
          return apply_point_masses(family, psi);
        } else if constexpr (std::is_same_v<T, PolynomialKernel>) {
          Rational normalized = 0;
          const Polynomial product = family.p * psi.q();
          for (const auto& [alpha, c] : product.terms()) {
            normalized += c * gaussian_moment(psi.rate(), psi.center(), alpha);
          }
          return ApplyResult{to_double(normalized) * gaussian_mass(psi.rate(), psi.dim()), 0.0,
                             std::nullopt};
        } else {
          return integrate_gauss_poly_product(family.g.q() * psi.q(), {&family.g, &psi}, tol);
        }
      },
      lambda.value());
}

ApplyResult apply_by_quadrature(const TemperedDistribution& lambda, const GaussPoly& psi,
                                double tol) {
  require_dim(lambda, psi.dim());
  return std::visit(
      [&](const auto& family) -> ApplyResult {
        using T = std::decay_t<decltype(family)>;
        if constexpr (std::is_same_v<T, PointMasses>) {
          return apply_point_masses(family, psi);
        } else if constexpr (std::is_same_v<T, PolynomialKernel>) {
          return integrate_gauss_poly_product(family.p * psi.q(), {&psi}, tol);
        } else {
          return integrate_gauss_poly_product(family.g.q() * psi.q(), {&family.g, &psi}, tol);
        }
      },
      lambda.value());
}

double convolve_pointwise(const TemperedDistribution& lambda, const GaussPoly& phi,
                          std::span<const Rational> x, double tol) {
  return apply(lambda, translate_reflect(phi, x), tol).value;
}

double convolve_direct(const TemperedDistribution& lambda, const GaussPoly& phi,
                       std::span<const Rational> x) {
  require_dim(lambda, phi.dim());
  if (x.size() != phi.dim()) throw DimensionMismatch(phi.dim(), x.size());
  return std::visit(
      [&](const auto& family) -> double {
        using T = std::decay_t<decltype(family)>;
        if constexpr (std::is_same_v<T, PointMasses>) {
          std::vector<double> parts;
          for (const auto& m : family.masses) {
            std::vector<Rational> shifted(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) shifted[i] = x[i] - m.location[i];
            parts.push_back(to_double(m.coefficient) *
                            eval_gp(derivative_gp(phi, m.derivative), shifted));
          }
          return quad::pairwise_sum(parts);
        } else if constexpr (std::is_same_v<T, PolynomialKernel>) {
          const auto moments = moments_gp(phi, family.p.degree().value_or(0));
          return *moments.normalization() * to_double(evaluate(convolve_poly(family.p, moments), x));
        } else {
          return detail::gauss_product_integral(family.g, translate_reflect(phi, x)).value();
        }
      },
      lambda.value());
}

namespace {

// Unit ball volume V_n with pi replaced by 22/7 > pi; V_n = 2 pi V_{n-2} / n.
Rational ball_volume_upper_bound(std::size_t n) {
  const Rational pi_upper(22, 7);
  Rational v = n % 2 ? Rational(2) : Rational(1);
  for (std::size_t k = n % 2 ? 3 : 2; k <= n; k += 2) v *= 2 * pi_upper / Rational(k);
  return v;
}

}  // namespace

ContinuityCertificate continuity_certificate(const TemperedDistribution& lambda) {
  const std::size_t n = lambda.dim();
  return std::visit(
      [&](const auto& family) -> ContinuityCertificate {
        using T = std::decay_t<decltype(family)>;
        ContinuityCertificate cert;
        if constexpr (std::is_same_v<T, PointMasses>) {
          cert.C = 0;
          for (const auto& m : family.masses) {
            cert.C += abs(m.coefficient);
            auto pair = std::make_pair(MultiIndex(n), m.derivative);
            if (std::find(cert.pairs.begin(), cert.pairs.end(), pair) == cert.pairs.end()) {
              cert.pairs.push_back(std::move(pair));
            }
          }
        } else if constexpr (std::is_same_v<T, PolynomialKernel>) {
          // |p(x)| <= ||p||_1 (1+|x|)^d, (1+|x|)^k <= 2^(k-1) (1 + |x|^k),
          // |x|^k <= n^(k/2) sum_i |x_i|^k, and the remaining factor
          // (1+|x|)^(-n-1) integrates to the unit ball volume.
          const unsigned d = family.p.degree().value_or(0);
          const unsigned k = d + static_cast<unsigned>(n) + 1;
          Rational c = l1_norm(family.p) * ball_volume_upper_bound(n);
          c *= pow(Rational(2), k - 1) * pow(Rational(static_cast<unsigned long>(n)), (k + 1) / 2);
          cert.C = c;
          cert.pairs.emplace_back(MultiIndex(n), MultiIndex(n));
          for (std::size_t i = 0; i < n; ++i) {
            cert.pairs.emplace_back(MultiIndex::unit(n, i, k), MultiIndex(n));
          }
        } else {
          const GaussPoly& g = family.g;
          const detail::DoublePolynomial q(g.q());
          const double a = to_double(g.rate());
          std::vector<double> b(n);
          for (std::size_t i = 0; i < n; ++i) b[i] = to_double(g.center()[i]);
          const double radius = quad::gaussian_tail_radius(a, q.degree()) + 1.0;
          std::vector<double> lo(n);
          std::vector<double> hi(n);
          for (std::size_t i = 0; i < n; ++i) {
            lo[i] = b[i] - radius;
            hi[i] = b[i] + radius;
          }
          const auto r = quad::integrate_box(
              [&](std::span<const double> y) {
                double r2 = 0.0;
                for (std::size_t i = 0; i < n; ++i) r2 += (y[i] - b[i]) * (y[i] - b[i]);
                return std::abs(q(y)) * std::exp(-a * r2);
              },
              lo, hi, 1e-10);
          cert.C = from_double(r.value * (1.0 + 1e-12) + r.error);
          cert.pairs.emplace_back(MultiIndex(n), MultiIndex(n));
        }
        return cert;
      },
      lambda.value());
}

ContinuityCheck verify_continuity(const ContinuityCertificate& cert,
                                  const TemperedDistribution& lambda, const GaussPoly& psi,
                                  double rel_slack) {
  ContinuityCheck check;
  check.lhs = std::abs(apply(lambda, psi).value);
  double seminorms = 0.0;
  for (const auto& [alpha, beta] : cert.pairs) seminorms += seminorm(psi, alpha, beta).value;
  check.rhs = to_double(cert.C) * seminorms;
  check.holds = check.lhs <= check.rhs * (1.0 + rel_slack);
  return check;
}

unsigned predicted_growth_degree(const TemperedDistribution& lambda) {
  if (const auto* k = std::get_if<PolynomialKernel>(&lambda.value())) {
    return k->p.degree().value_or(0);
  }
  return 0;
}

namespace {

// Deterministic unit directions: +-e_i plus pseudo-random ones.
std::vector<std::vector<double>> sample_directions(std::size_t n) {
  std::vector<std::vector<double>> dirs;
  for (std::size_t i = 0; i < n; ++i) {
    for (double s : {1.0, -1.0}) {
      std::vector<double> d(n, 0.0);
      d[i] = s;
      dirs.push_back(std::move(d));
    }
  }
  if (n == 1) return dirs;
  std::mt19937_64 rng(0x5eedULL + n);
  auto uniform = [&rng] { return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53; };
  for (int k = 0; k < 16; ++k) {
    std::vector<double> d(n);
    double norm = 0.0;
    for (auto& v : d) {
      // Box-Muller
      v = std::sqrt(-2.0 * std::log(uniform())) * std::cos(2.0 * std::numbers::pi * uniform());
      norm += v * v;
    }
    norm = std::sqrt(norm);
    for (auto& v : d) v /= norm;
    dirs.push_back(std::move(d));
  }
  return dirs;
}

struct Sample {
  std::vector<double> point;
  double norm;
  double value;  // |f(point)|
};

}  // namespace

GrowthCertificate growth_certificate(const TemperedDistribution& lambda, const GaussPoly& phi,
                                     double sample_radius) {
  if (!(sample_radius > 0.0)) throw DomainError("sample radius must be positive");
  const std::size_t n = lambda.dim();
  if (phi.dim() != n) throw DimensionMismatch(n, phi.dim());

  auto evaluate_at = [&](std::vector<double> point) {
    std::vector<Rational> exact;
    double norm = 0.0;
    for (double v : point) {
      exact.push_back(from_double(v));
      norm += v * v;
    }
    const double value = std::abs(convolve_pointwise(lambda, phi, exact));
    return Sample{std::move(point), std::sqrt(norm), value};
  };

  const auto dirs = sample_directions(n);
  constexpr int kSampleLevels = 48;
  constexpr int kHoldoutLevels = 24;
  std::vector<Sample> samples;
  samples.push_back(evaluate_at(std::vector<double>(n, 0.0)));
  for (int k = 1; k <= kSampleLevels; ++k) {
    const double r = sample_radius * k / kSampleLevels;
    for (const auto& d : dirs) {
      std::vector<double> p(n);
      for (std::size_t i = 0; i < n; ++i) p[i] = r * d[i];
      samples.push_back(evaluate_at(std::move(p)));
    }
  }
  std::vector<Sample> holdout;
  for (int k = 1; k <= kHoldoutLevels; ++k) {
    const double r = sample_radius * (1.0 + static_cast<double>(k) / kHoldoutLevels);
    for (const auto& d : dirs) {
      std::vector<double> p(n);
      for (std::size_t i = 0; i < n; ++i) p[i] = r * d[i];
      holdout.push_back(evaluate_at(std::move(p)));
    }
  }

  auto ratio = [](const Sample& s, unsigned l) {
    return s.value / std::pow(1.0 + s.norm, static_cast<double>(l));
  };

  // Largest |f| on the sample shells |x| = R/2 and |x| = R.
  double half_shell = 0.0;
  double outer_shell = 0.0;
  for (std::size_t k = 0; k < dirs.size(); ++k) {
    half_shell = std::max(half_shell, samples[1 + (kSampleLevels / 2 - 1) * dirs.size() + k].value);
    outer_shell = std::max(outer_shell, samples[1 + (kSampleLevels - 1) * dirs.size() + k].value);
  }
  unsigned fitted = 0;
  if (outer_shell > 0.0) {
    if (half_shell == 0.0) throw CertificateRejected("no growth exponent fits the sampled values");
    const double slope = std::log2(outer_shell / half_shell);
    if (slope > 0.0) fitted = static_cast<unsigned>(std::lround(slope));
  }
  const unsigned predicted = predicted_growth_degree(lambda);
  if (fitted != predicted) {
    throw CertificateRejected("fitted growth exponent " + std::to_string(fitted) +
                              " disagrees with the family prediction " +
                              std::to_string(predicted));
  }

  GrowthCertificate cert;
  cert.l = fitted;
  double best = 0.0;
  for (const auto& s : samples) {
    best = std::max(best, ratio(s, cert.l));
    cert.sample_max = std::max(cert.sample_max, s.value);
    cert.witness_points.push_back(s.point);
  }
  cert.C1 = 2.0 * best;
  cert.holdout_margin = 1.0;
  for (const auto& s : holdout) {
    cert.holdout_max = std::max(cert.holdout_max, s.value);
    const double bound = cert.C1 * std::pow(1.0 + s.norm, static_cast<double>(cert.l));
    const double margin = bound > 0.0 ? 1.0 - s.value / bound : (s.value == 0.0 ? 1.0 : -1.0);
    cert.holdout_margin = std::min(cert.holdout_margin, margin);
  }
  if (cert.holdout_margin < 0.0) {
    throw CertificateRejected("growth bound violated on the holdout shell");
  }
  return cert;
}

}  // namespace hconv
