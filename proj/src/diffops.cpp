#include "hconv/diffops.hpp"

#include <algorithm>

#include "hconv/errors.hpp"

namespace hconv {

Polynomial partial(const Polynomial& p, std::size_t axis) {
  if (axis >= p.dim()) {
    throw DomainError("axis " + std::to_string(axis + 1) + " out of range for dimension " +
                      std::to_string(p.dim()));
  }
  Polynomial out(p.dim());
  for (const auto& [alpha, c] : p.terms()) {
    const unsigned e = alpha[axis];
    if (e == 0) continue;
    out.add_term(alpha.with(axis, e - 1), c * e);
  }
  return out;
}

Polynomial derivative_multi(const Polynomial& p, const MultiIndex& beta) {
  if (beta.size() != p.dim()) throw DimensionMismatch(p.dim(), beta.size());
  // Falling factorials applied termwise: d^beta x^alpha = prod alpha_i!/(alpha_i-beta_i)! x^(alpha-beta).
  Polynomial out(p.dim());
  for (const auto& [alpha, c] : p.terms()) {
    if (!beta.divides(alpha)) continue;
    Rational coef = c;
    for (std::size_t i = 0; i < p.dim(); ++i) {
      for (unsigned k = 0; k < beta[i]; ++k) coef *= alpha[i] - k;
    }
    out.add_term(alpha - beta, coef);
  }
  return out;
}

Polynomial laplacian(const Polynomial& p) {
  Polynomial out(p.dim());
  for (const auto& [alpha, c] : p.terms()) {
    for (std::size_t i = 0; i < p.dim(); ++i) {
      const unsigned e = alpha[i];
      if (e < 2) continue;
      out.add_term(alpha.with(i, e - 2), c * (e * (e - 1)));
    }
  }
  return out;
}

Polynomial euler(const Polynomial& p) {
  Polynomial out(p.dim());
  for (const auto& [alpha, c] : p.terms()) out.add_term(alpha, c * alpha.degree());
  return out;
}

bool is_harmonic(const Polynomial& p) { return laplacian(p).is_zero(); }

namespace {

using IntMatrix = std::vector<std::vector<Integer>>;

// Bareiss fraction-free elimination to row echelon form. Returns pivot
// columns in row order; the matrix is modified in place.
std::vector<std::size_t> bareiss_echelon(IntMatrix& m, std::size_t cols) {
  std::vector<std::size_t> pivots;
  Integer prev = 1;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
    auto pivot_row = std::find_if(m.begin() + static_cast<std::ptrdiff_t>(row), m.end(),
                                  [col](const auto& r) { return r[col] != 0; });
    if (pivot_row == m.end()) continue;
    std::iter_swap(m.begin() + static_cast<std::ptrdiff_t>(row), pivot_row);
    const Integer& piv = m[row][col];
    for (std::size_t r = row + 1; r < m.size(); ++r) {
      for (std::size_t c = col + 1; c < cols; ++c) {
        m[r][c] = (piv * m[r][c] - m[r][col] * m[row][c]) / prev;  // exact division
      }
      m[r][col] = 0;
    }
    // Rows above the current one never change again, so their entries to the
    // left of later pivots are irrelevant for back substitution.
    prev = piv;
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

HarmonicBasis harmonic_basis(std::size_t dim, unsigned degree) {
  if (dim == 0) throw DomainError("dimension must be at least 1");
  HarmonicBasis out{dim, degree, {}, multi_indices_of_degree(dim, degree)};
  const auto& cols = out.monomial_order;

  if (degree < 2) {
    for (const auto& alpha : cols) out.basis.push_back(Polynomial::monomial(alpha));
    return out;
  }

  const auto rows = multi_indices_of_degree(dim, degree - 2);
  IntMatrix m(rows.size(), std::vector<Integer>(cols.size(), 0));
  auto row_of = [&rows](const MultiIndex& beta) {
    // rows are descending graded-lex; all share one degree
    auto it = std::lower_bound(rows.begin(), rows.end(), beta, std::greater<>());
    return static_cast<std::size_t>(it - rows.begin());
  };
  for (std::size_t c = 0; c < cols.size(); ++c) {
    const auto& alpha = cols[c];
    for (std::size_t i = 0; i < dim; ++i) {
      if (alpha[i] < 2) continue;
      m[row_of(alpha.with(i, alpha[i] - 2))][c] += alpha[i] * (alpha[i] - 1);
    }
  }

  const auto pivots = bareiss_echelon(m, cols.size());
  std::vector<bool> is_pivot(cols.size(), false);
  for (auto c : pivots) is_pivot[c] = true;

  for (std::size_t free = 0; free < cols.size(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> x(cols.size(), 0);
    x[free] = 1;
    for (std::size_t r = pivots.size(); r-- > 0;) {
      const std::size_t pc = pivots[r];
      Rational s = 0;
      for (std::size_t c = pc + 1; c < cols.size(); ++c) {
        if (x[c] != 0 && m[r][c] != 0) s += Rational(m[r][c]) * x[c];
      }
      x[pc] = -s / Rational(m[r][pc]);
    }
    Polynomial p(dim);
    for (std::size_t c = 0; c < cols.size(); ++c) p.add_term(cols[c], x[c]);
    p *= 1 / p.leading_term().second;
    out.basis.push_back(std::move(p));
  }
  std::sort(out.basis.begin(), out.basis.end(), [](const Polynomial& a, const Polynomial& b) {
    return a.leading_term().first > b.leading_term().first;
  });
  return out;
}

bool laplacian_component_shift_check(const Polynomial& p, unsigned m) {
  if (m < 2) throw DomainError("degree shift check requires m >= 2");
  return laplacian(homogeneous_component(p, m)) == homogeneous_component(laplacian(p), m - 2);
}

}  // namespace hconv
