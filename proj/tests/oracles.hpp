#pragma once

#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/sinh_sinh.hpp>
#include <boost/multiprecision/cpp_dec_float.hpp>

#include "hconv/multi_index.hpp"
#include "hconv/polynomial.hpp"
#include "hconv/schwartz.hpp"

namespace testing {

using Dec50 = boost::multiprecision::cpp_dec_float_50;

inline double ipow(double x, unsigned k) {
  double r = 1.0;
  for (unsigned i = 0; i < k; ++i) r *= x;
  return r;
}

inline double adaptive(const auto& f, double lo, double hi) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, lo, hi, 15, 1e-14);
}

// Average of u^alpha over S^{n-1} for n <= 3 by polar / spherical coordinates.
inline double sphere_mean_by_quadrature(const hconv::MultiIndex& alpha) {
  const double pi = std::numbers::pi;
  switch (alpha.size()) {
    case 1:
      return 0.5 * (1.0 + ipow(-1.0, alpha[0]));
    case 2:
      return adaptive([&](double t) { return ipow(std::cos(t), alpha[0]) * ipow(std::sin(t), alpha[1]); },
                      0.0, 2.0 * pi) /
             (2.0 * pi);
    case 3: {
      auto inner = [&](double theta) {
        const double s = std::sin(theta);
        const double radial = ipow(s, alpha[0] + alpha[1]) * ipow(std::cos(theta), alpha[2]) * s;
        return radial * adaptive([&](double phi) {
                          return ipow(std::cos(phi), alpha[0]) * ipow(std::sin(phi), alpha[1]);
                        },
                                 0.0, 2.0 * pi);
      };
      return adaptive(inner, 0.0, pi) / (4.0 * pi);
    }
    default:
      return std::nan("");
  }
}

// Monte Carlo averages over S^{n-1} of every monomial in `alphas`, sharing
// one stream of uniformly distributed directions.
inline std::vector<double> sphere_means_monte_carlo(const std::vector<hconv::MultiIndex>& alphas,
                                                    std::size_t n, std::size_t samples,
                                                    std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  std::normal_distribution<double> normal;
  std::vector<double> sums(alphas.size(), 0.0);
  std::vector<double> u(n);
  std::vector<std::vector<double>> powers(n, std::vector<double>(17));
  for (std::size_t s = 0; s < samples; ++s) {
    double norm = 0.0;
    for (auto& v : u) {
      v = normal(engine);
      norm += v * v;
    }
    norm = std::sqrt(norm);
    for (std::size_t i = 0; i < n; ++i) {
      const double x = u[i] / norm;
      powers[i][0] = 1.0;
      for (std::size_t k = 1; k < powers[i].size(); ++k) powers[i][k] = powers[i][k - 1] * x;
    }
    for (std::size_t a = 0; a < alphas.size(); ++a) {
      double term = 1.0;
      for (std::size_t i = 0; i < n; ++i) term *= powers[i][alphas[a][i]];
      sums[a] += term;
    }
  }
  for (auto& v : sums) v /= static_cast<double>(samples);
  return sums;
}

// q(x) exp(-rate |x - center|^2) in 50 significant digits.
inline double eval_gp_dec50(const hconv::GaussPoly& psi, const std::vector<hconv::Rational>& x) {
  auto dec = [](const hconv::Rational& r) {
    return Dec50(r.get_num().get_str()) / Dec50(r.get_den().get_str());
  };
  Dec50 q = 0;
  for (const auto& [alpha, c] : psi.q().terms()) {
    Dec50 term = dec(c);
    for (std::size_t i = 0; i < x.size(); ++i) term *= boost::multiprecision::pow(dec(x[i]), alpha[i]);
    q += term;
  }
  Dec50 r2 = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const Dec50 d = dec(x[i]) - dec(psi.center()[i]);
    r2 += d * d;
  }
  return static_cast<double>(q * boost::multiprecision::exp(-dec(psi.rate()) * r2));
}

// Integral over R of f by the sinh-sinh rule.
inline double integrate_line(const auto& f) {
  static boost::math::quadrature::sinh_sinh<double> rule;
  // Polynomial times Gaussian overflows to inf * 0 far out; the true value is 0 there.
  auto guarded = [&](double y) {
    const double v = f(y);
    return std::isfinite(v) ? v : 0.0;
  };
  return rule.integrate(guarded, 1e-13);
}

// Double coefficient table of a polynomial for fast oracle evaluation.
inline double eval_double(const hconv::Polynomial& p, const std::vector<double>& x) {
  double s = 0.0;
  for (const auto& [alpha, c] : p.terms()) {
    double t = hconv::to_double(c);
    for (std::size_t i = 0; i < x.size(); ++i) t *= ipow(x[i], alpha[i]);
    s += t;
  }
  return s;
}

}  // namespace testing
