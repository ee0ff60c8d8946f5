#include "hconv/polynomial.hpp"

#include <algorithm>

#include "hconv/errors.hpp"

namespace hconv {

namespace {

void require_same_dim(const Polynomial& p, const Polynomial& q) {
  if (p.dim() != q.dim()) throw DimensionMismatch(p.dim(), q.dim());
}

// Per-axis power tables of (c + s*u)^k, k = 0..max_power, as coefficient
// vectors in u.
std::vector<std::vector<Rational>> affine_power_table(const Rational& c, const Rational& s,
                                                      unsigned max_power) {
  std::vector<std::vector<Rational>> table(max_power + 1);
  for (unsigned k = 0; k <= max_power; ++k) {
    auto& row = table[k];
    row.resize(k + 1);
    for (unsigned j = 0; j <= k; ++j) {
      row[j] = Rational(binomial(k, j)) * pow(c, k - j) * pow(s, j);
    }
  }
  return table;
}

}  // namespace

Polynomial::Polynomial(std::size_t dim) : dim_(dim) {
  if (dim == 0) throw DomainError("polynomial dimension must be at least 1");
}

Polynomial Polynomial::constant(std::size_t dim, const Rational& c) {
  Polynomial p(dim);
  p.add_term(MultiIndex(dim), c);
  return p;
}

Polynomial Polynomial::variable(std::size_t dim, std::size_t axis) {
  return monomial(MultiIndex::unit(dim, axis));
}

Polynomial Polynomial::monomial(const MultiIndex& alpha, const Rational& c) {
  Polynomial p(alpha.size());
  p.add_term(alpha, c);
  return p;
}

Polynomial Polynomial::from_terms(std::size_t dim, Terms terms) {
  Polynomial p(dim);
  for (auto it = terms.begin(); it != terms.end();) {
    if (it->first.size() != dim) throw DimensionMismatch(dim, it->first.size());
    it = it->second == 0 ? terms.erase(it) : std::next(it);
  }
  p.terms_ = std::move(terms);
  return p;
}

std::optional<unsigned> Polynomial::degree() const {
  if (terms_.empty()) return std::nullopt;
  // Graded-lex order puts the highest total degree last.
  return terms_.rbegin()->first.degree();
}

Rational Polynomial::coefficient(const MultiIndex& alpha) const {
  auto it = terms_.find(alpha);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational Polynomial::constant_term() const { return coefficient(MultiIndex(dim_)); }

const std::pair<const MultiIndex, Rational>& Polynomial::leading_term() const {
  if (terms_.empty()) throw DomainError("zero polynomial has no leading term");
  return *terms_.rbegin();
}

void Polynomial::add_term(const MultiIndex& alpha, const Rational& c) {
  if (alpha.size() != dim_) throw DimensionMismatch(dim_, alpha.size());
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(alpha, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  require_same_dim(*this, other);
  for (const auto& [alpha, c] : other.terms_) add_term(alpha, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  require_same_dim(*this, other);
  for (const auto& [alpha, c] : other.terms_) add_term(alpha, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [alpha, coef] : terms_) coef *= c;
  return *this;
}

Polynomial operator*(const Polynomial& p, const Polynomial& q) {
  require_same_dim(p, q);
  Polynomial out(p.dim());
  for (const auto& [a, ca] : p.terms()) {
    for (const auto& [b, cb] : q.terms()) out.add_term(a + b, ca * cb);
  }
  return out;
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto& [alpha, c] : out.terms_) c = -c;
  return out;
}

Polynomial add(const Polynomial& p, const Polynomial& q) { return p + q; }

Polynomial mul(const Polynomial& p, const Polynomial& q) { return p * q; }

Polynomial pow(const Polynomial& p, unsigned exponent) {
  Polynomial result = Polynomial::constant(p.dim(), 1);
  Polynomial base = p;
  while (exponent) {
    if (exponent & 1u) result = result * base;
    exponent >>= 1;
    if (exponent) base = base * base;
  }
  return result;
}

namespace {

using TermRef = std::pair<const MultiIndex*, const Rational*>;

// Terms in [first, last) are sorted lexicographically descending and agree on
// all axes before `axis`.
Rational horner(std::span<const TermRef> terms, std::size_t axis,
                std::span<const Rational> point) {
  if (axis == point.size()) {
    Rational sum = 0;
    for (const auto& t : terms) sum += *t.second;
    return sum;
  }
  Rational acc = 0;
  unsigned current_power = 0;
  bool first = true;
  std::size_t i = 0;
  while (i < terms.size()) {
    const unsigned e = (*terms[i].first)[axis];
    std::size_t j = i;
    while (j < terms.size() && (*terms[j].first)[axis] == e) ++j;
    if (!first) acc *= pow(point[axis], current_power - e);
    acc += horner(terms.subspan(i, j - i), axis + 1, point);
    current_power = e;
    first = false;
    i = j;
  }
  return acc * pow(point[axis], current_power);
}

}  // namespace

Rational evaluate(const Polynomial& p, std::span<const Rational> point) {
  if (point.size() != p.dim()) throw DimensionMismatch(p.dim(), point.size());
  std::vector<TermRef> terms;
  terms.reserve(p.term_count());
  for (const auto& [alpha, c] : p.terms()) terms.emplace_back(&alpha, &c);
  std::sort(terms.begin(), terms.end(), [](const TermRef& a, const TermRef& b) {
    const auto ea = a.first->exponents();
    const auto eb = b.first->exponents();
    return std::lexicographical_compare(eb.begin(), eb.end(), ea.begin(), ea.end());
  });
  return horner(terms, 0, point);
}

std::vector<std::pair<unsigned, Polynomial>> homogeneous_components(const Polynomial& p) {
  std::vector<std::pair<unsigned, Polynomial>> out;
  for (const auto& [alpha, c] : p.terms()) {
    const unsigned d = alpha.degree();
    if (out.empty() || out.back().first != d) out.emplace_back(d, Polynomial(p.dim()));
    out.back().second.add_term(alpha, c);
  }
  return out;
}

Polynomial homogeneous_component(const Polynomial& p, unsigned m) {
  Polynomial out(p.dim());
  for (const auto& [alpha, c] : p.terms()) {
    if (alpha.degree() == m) out.add_term(alpha, c);
  }
  return out;
}

bool is_homogeneous(const Polynomial& p, unsigned l) {
  return std::all_of(p.terms().begin(), p.terms().end(),
                     [l](const auto& t) { return t.first.degree() == l; });
}

Polynomial compose_affine(const Polynomial& p, std::span<const Rational> center,
                          const Rational& scale) {
  const std::size_t n = p.dim();
  if (center.size() != n) throw DimensionMismatch(n, center.size());

  std::vector<unsigned> max_power(n, 0);
  for (const auto& [alpha, c] : p.terms()) {
    for (std::size_t i = 0; i < n; ++i) max_power[i] = std::max(max_power[i], alpha[i]);
  }
  std::vector<std::vector<std::vector<Rational>>> tables;
  tables.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    tables.push_back(affine_power_table(center[i], scale, max_power[i]));
  }

  Polynomial out(n);
  std::vector<unsigned> j(n);
  for (const auto& [alpha, c] : p.terms()) {
    // Odometer over 0 <= j_i <= alpha_i.
    std::fill(j.begin(), j.end(), 0u);
    while (true) {
      Rational coef = c;
      for (std::size_t i = 0; i < n; ++i) coef *= tables[i][alpha[i]][j[i]];
      out.add_term(MultiIndex(j), coef);
      std::size_t i = 0;
      while (i < n && j[i] == alpha[i]) j[i++] = 0;
      if (i == n) break;
      ++j[i];
    }
  }
  return out;
}

Polynomial shift_reflect(const Polynomial& p) {
  const std::size_t n = p.dim();
  Polynomial out(2 * n);
  std::vector<unsigned> gamma(n);
  for (const auto& [alpha, c] : p.terms()) {
    std::fill(gamma.begin(), gamma.end(), 0u);
    while (true) {
      // (x - y)^alpha = sum_gamma binom(alpha, gamma) (-1)^|gamma| x^(alpha-gamma) y^gamma
      Rational coef = c;
      unsigned sign_degree = 0;
      std::vector<unsigned> exps(2 * n);
      for (std::size_t i = 0; i < n; ++i) {
        coef *= Rational(binomial(alpha[i], gamma[i]));
        sign_degree += gamma[i];
        exps[i] = alpha[i] - gamma[i];
        exps[n + i] = gamma[i];
      }
      if (sign_degree % 2) coef = -coef;
      out.add_term(MultiIndex(std::move(exps)), coef);
      std::size_t i = 0;
      while (i < n && gamma[i] == alpha[i]) gamma[i++] = 0;
      if (i == n) break;
      ++gamma[i];
    }
  }
  return out;
}

Rational l1_norm(const Polynomial& p) {
  Rational sum = 0;
  for (const auto& [alpha, c] : p.terms()) sum += abs(c);
  return sum;
}

}  // namespace hconv
