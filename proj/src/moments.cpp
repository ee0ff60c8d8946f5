#include "hconv/moments.hpp"

#include <memory>

#include "hconv/errors.hpp"

namespace hconv {

MomentProvider::MomentProvider(std::size_t dim, unsigned max_degree, Generator generator,
                               std::optional<double> normalization)
    : dim_(dim),
      max_degree_(max_degree),
      generator_(std::move(generator)),
      normalization_(normalization) {
  if (dim == 0) throw DomainError("moment provider dimension must be at least 1");
  for (const auto& alpha : multi_indices_up_to(dim, max_degree)) {
    table_.emplace_hint(table_.end(), alpha, generator_(alpha));
  }
  if (table_.at(MultiIndex(dim)) != 1) throw DomainError("normalized moment M_0 must equal 1");
}

MomentProvider MomentProvider::delta(std::size_t dim, unsigned max_degree) {
  return MomentProvider(dim, max_degree,
                        [](const MultiIndex& a) { return Rational(a.is_zero() ? 1 : 0); });
}

MomentProvider MomentProvider::from_table(std::size_t dim, unsigned max_degree,
                                          std::map<MultiIndex, Rational> table,
                                          std::optional<double> normalization) {
  auto shared = std::make_shared<const std::map<MultiIndex, Rational>>(std::move(table));
  return MomentProvider(
      dim, max_degree,
      [shared](const MultiIndex& a) -> Rational {
        if (a.is_zero()) return 1;
        auto it = shared->find(a);
        return it == shared->end() ? Rational(0) : it->second;
      },
      normalization);
}

const Rational& MomentProvider::moment(const MultiIndex& alpha) const {
  if (alpha.size() != dim_) throw DimensionMismatch(dim_, alpha.size());
  if (alpha.degree() > max_degree_) throw InsufficientMoments(max_degree_, alpha.degree());
  return table_.at(alpha);
}

MomentProvider MomentProvider::extended(unsigned max_degree) const {
  return MomentProvider(dim_, max_degree, generator_, normalization_);
}

Rational MomentProvider::integrate(const Polynomial& p) const {
  if (p.dim() != dim_) throw DimensionMismatch(dim_, p.dim());
  Rational sum = 0;
  for (const auto& [alpha, c] : p.terms()) sum += c * moment(alpha);
  return sum;
}

bool MomentProvider::is_radial(unsigned degree) const {
  if (degree > max_degree_) throw InsufficientMoments(max_degree_, degree);
  for (const auto& [alpha, m] : table_) {
    if (alpha.degree() > degree) break;
    if (alpha.has_odd_entry()) {
      if (m != 0) return false;
    } else if (m != table_.at(alpha.sorted())) {
      return false;
    }
  }
  return true;
}

Rational centered_gaussian_moment_1d(const Rational& rate, unsigned k) {
  if (k % 2) return 0;
  return Rational(double_factorial(static_cast<int>(k) - 1)) / pow(2 * rate, k / 2);
}

Rational gaussian_moment(const Rational& rate, std::span<const Rational> center,
                         const MultiIndex& alpha) {
  if (center.size() != alpha.size()) throw DimensionMismatch(alpha.size(), center.size());
  Rational out = 1;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    const unsigned k = alpha[i];
    Rational axis = 0;
    for (unsigned j = 0; j <= k; j += 2) {
      axis += Rational(binomial(k, j)) * pow(center[i], k - j) * centered_gaussian_moment_1d(rate, j);
    }
    out *= axis;
  }
  return out;
}

}  // namespace hconv
