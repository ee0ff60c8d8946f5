#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>

#include "hconv/multi_index.hpp"
#include "hconv/polynomial.hpp"
#include "hconv/rational.hpp"

namespace hconv {

// Normalized moments M_alpha = (integral y^alpha phi) / (integral phi) of a
// test function phi, tabulated exactly for every d(alpha) <= max_degree.
class MomentProvider {
 public:
  using Generator = std::function<Rational(const MultiIndex&)>;

  // normalization = integral of phi; std::nullopt means "unit" (normalized
  // moments only). The generator must return 1 for alpha = 0.
  MomentProvider(std::size_t dim, unsigned max_degree, Generator generator,
                 std::optional<double> normalization = std::nullopt);

  // M_alpha = 0 for alpha != 0: the provider of a point mass at the origin.
  static MomentProvider delta(std::size_t dim, unsigned max_degree);

  // Explicit table; missing entries are zero and M_0 is forced to 1.
  static MomentProvider from_table(std::size_t dim, unsigned max_degree,
                                   std::map<MultiIndex, Rational> table,
                                   std::optional<double> normalization = std::nullopt);

  std::size_t dim() const noexcept { return dim_; }
  unsigned max_degree() const noexcept { return max_degree_; }
  const std::optional<double>& normalization() const noexcept { return normalization_; }

  // Throws InsufficientMoments when d(alpha) > max_degree.
  const Rational& moment(const MultiIndex& alpha) const;

  // Same source, tabulated to a higher degree.
  MomentProvider extended(unsigned max_degree) const;

  // Normalized integral of p against phi: sum_alpha c_alpha M_alpha.
  Rational integrate(const Polynomial& p) const;

  // Structural radiality up to `degree`: odd moments vanish and M_alpha is
  // invariant under permutations of alpha.
  bool is_radial(unsigned degree) const;

 private:
  std::size_t dim_;
  unsigned max_degree_;
  Generator generator_;
  std::optional<double> normalization_;
  std::map<MultiIndex, Rational> table_;
};

// E[u^k] for u with density proportional to exp(-rate u^2):
// (k-1)!! / (2 rate)^(k/2) for even k, 0 for odd k.
Rational centered_gaussian_moment_1d(const Rational& rate, unsigned k);

// Normalized moment of exp(-rate |y - center|^2): the Gaussian factorizes over
// axes and E[(c + u)^k] expands binomially.
Rational gaussian_moment(const Rational& rate, std::span<const Rational> center,
                         const MultiIndex& alpha);

}  // namespace hconv
