#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "hconv/diffops.hpp"
#include "hconv/multi_index.hpp"
#include "hconv/polynomial.hpp"
#include "hconv/rational.hpp"
#include "hconv/schwartz.hpp"

namespace testing {

using hconv::GaussPoly;
using hconv::Integer;
using hconv::MultiIndex;
using hconv::Polynomial;
using hconv::Rational;

// Hand-rolled generators over a fixed-seed engine.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : engine_(seed) {}

  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(engine_);
  }

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }

  bool coin() { return integer(0, 1) == 1; }

  // num/den with |num| <= max_num, 1 <= den <= max_den.
  Rational rational(std::int64_t max_num = 9, std::int64_t max_den = 5) {
    Rational r(Integer(std::to_string(integer(-max_num, max_num))),
               Integer(std::to_string(integer(1, max_den))));
    r.canonicalize();
    return r;
  }

  Rational nonzero_rational(std::int64_t max_num = 9, std::int64_t max_den = 5) {
    Rational r = 0;
    while (r == 0) r = rational(max_num, max_den);
    return r;
  }

  Rational positive_rational(std::int64_t max_num = 9, std::int64_t max_den = 5) {
    return abs(nonzero_rational(max_num, max_den));
  }

  std::vector<Rational> point(std::size_t n, std::int64_t max_num = 9, std::int64_t max_den = 5) {
    std::vector<Rational> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(rational(max_num, max_den));
    return out;
  }

  MultiIndex index_of_degree(std::size_t n, unsigned degree) {
    std::vector<unsigned> e(n, 0);
    for (unsigned k = 0; k < degree; ++k) ++e[static_cast<std::size_t>(integer(0, static_cast<std::int64_t>(n) - 1))];
    return MultiIndex(std::move(e));
  }

  MultiIndex index_up_to(std::size_t n, unsigned max_degree) {
    return index_of_degree(n, static_cast<unsigned>(integer(0, max_degree)));
  }

  Polynomial polynomial(std::size_t n, unsigned max_degree, int max_terms = 8,
                        std::int64_t max_num = 9, std::int64_t max_den = 5) {
    Polynomial p(n);
    const int terms = static_cast<int>(integer(0, max_terms));
    for (int t = 0; t < terms; ++t) {
      p.add_term(index_up_to(n, max_degree), nonzero_rational(max_num, max_den));
    }
    return p;
  }

  // Nonzero polynomial of exactly the given degree.
  Polynomial polynomial_of_degree(std::size_t n, unsigned degree, int max_terms = 6) {
    while (true) {
      Polynomial p = polynomial(n, degree, max_terms);
      p.add_term(index_of_degree(n, degree), nonzero_rational());
      if (p.degree() == degree) return p;
    }
  }

  Polynomial homogeneous(std::size_t n, unsigned degree, int max_terms = 8) {
    Polynomial p(n);
    const int terms = static_cast<int>(integer(1, max_terms));
    for (int t = 0; t < terms; ++t) p.add_term(index_of_degree(n, degree), nonzero_rational());
    return p;
  }

  // Random rational combination of harmonic basis elements across degrees.
  Polynomial harmonic(std::size_t n, unsigned max_degree) {
    Polynomial p(n);
    for (unsigned l = 0; l <= max_degree; ++l) {
      if (coin()) continue;
      for (const auto& b : basis(n, l)) {
        if (coin()) p += b * rational();
      }
    }
    return p;
  }

  GaussPoly gauss_poly(std::size_t n, unsigned max_degree = 3, int max_terms = 4) {
    Polynomial q = polynomial(n, max_degree, max_terms, 5, 3);
    if (q.is_zero()) q = Polynomial::constant(n, nonzero_rational(5, 3));
    Rational rate(Integer(std::to_string(integer(1, 8))), Integer(std::to_string(integer(1, 4))));
    rate.canonicalize();
    return GaussPoly(std::move(q), rate, point(n, 3, 2));
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  const std::vector<Polynomial>& basis(std::size_t n, unsigned l) {
    auto key = std::make_pair(n, l);
    auto it = cache_.find(key);
    if (it == cache_.end()) it = cache_.emplace(key, hconv::harmonic_basis(n, l).basis).first;
    return it->second;
  }

  std::mt19937_64 engine_;
  std::map<std::pair<std::size_t, unsigned>, std::vector<Polynomial>> cache_;
};

// Term-by-term evaluation with repeated multiplication; shares nothing with
// the library's Horner scheme.
inline Rational naive_evaluate(const Polynomial& p, const std::vector<Rational>& x) {
  Rational sum = 0;
  for (const auto& [alpha, c] : p.terms()) {
    Rational term = c;
    for (std::size_t i = 0; i < x.size(); ++i) {
      for (unsigned k = 0; k < alpha[i]; ++k) term *= x[i];
    }
    sum += term;
  }
  return sum;
}

// Laplacian assembled directly from the exponent map.
inline Polynomial naive_laplacian(const Polynomial& p) {
  Polynomial out(p.dim());
  for (const auto& [alpha, c] : p.terms()) {
    for (std::size_t i = 0; i < p.dim(); ++i) {
      const unsigned e = alpha[i];
      if (e < 2) continue;
      std::vector<unsigned> v(alpha.exponents().begin(), alpha.exponents().end());
      v[i] -= 2;
      out.add_term(MultiIndex(std::move(v)), c * e * (e - 1));
    }
  }
  return out;
}

inline double rel_err(double got, double want) {
  const double scale = std::max(std::abs(want), 1e-300);
  return std::abs(got - want) / scale;
}

// |got - want| <= tol * max(|want|, floor).
inline bool close(double got, double want, double tol, double floor = 0.0) {
  return std::abs(got - want) <= tol * std::max(std::abs(want), floor);
}

// Dimension of homogeneous harmonic polynomials of degree l in n variables.
inline long harmonic_dimension(long n, long l) {
  auto binom = [](long a, long b) -> long {
    if (b < 0 || a < b) return 0;
    return static_cast<long>(hconv::binomial(static_cast<unsigned>(a), static_cast<unsigned>(b)).get_si());
  };
  return binom(n + l - 1, l) - binom(n + l - 3, l - 2);
}

// Rank of a rational matrix by plain Gauss-Jordan elimination.
inline std::size_t rational_rank(std::vector<std::vector<Rational>> m) {
  std::size_t rank = 0;
  const std::size_t cols = m.empty() ? 0 : m.front().size();
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < m.size() && m[pivot][c] == 0) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[pivot], m[rank]);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == rank || m[r][c] == 0) continue;
      const Rational f = m[r][c] / m[rank][c];
      for (std::size_t k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

// Real part of (x1 + i x2)^k, expanded binomially.
inline Polynomial real_power(std::size_t n, unsigned k) {
  Polynomial p(n);
  for (unsigned j = 0; j <= k; j += 2) {
    std::vector<unsigned> e(n, 0);
    e[0] = k - j;
    e[1] = j;
    Rational c(hconv::binomial(k, j));
    if ((j / 2) % 2) c = -c;
    p.add_term(MultiIndex(std::move(e)), c);
  }
  return p;
}

}  // namespace testing
