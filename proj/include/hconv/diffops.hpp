#pragma once

#include <cstddef>
#include <vector>

#include "hconv/multi_index.hpp"
#include "hconv/polynomial.hpp"

namespace hconv {

// Basis of the homogeneous harmonic polynomials of a fixed degree.
struct HarmonicBasis {
  std::size_t dim;
  unsigned degree;
  // Each element is homogeneous of `degree`, harmonic, and has leading
  // (graded-lex greatest) coefficient 1. Sorted by leading monomial, descending.
  std::vector<Polynomial> basis;
  // Degree-l monomials in the column order used for elimination (descending graded-lex).
  std::vector<MultiIndex> monomial_order;
};

// d/dx_{axis+1}; axis is 0-based.
Polynomial partial(const Polynomial& p, std::size_t axis);

// d^beta p. Order independent.
Polynomial derivative_multi(const Polynomial& p, const MultiIndex& beta);

Polynomial laplacian(const Polynomial& p);

// sum_j x_j d_j p. Acts as multiplication by l on degree-l homogeneous parts.
Polynomial euler(const Polynomial& p);

bool is_harmonic(const Polynomial& p);

// Nullspace of the Laplacian restricted to degree-l homogeneous polynomials,
// computed by exact fraction-free elimination.
HarmonicBasis harmonic_basis(std::size_t dim, unsigned degree);

// True iff laplacian(component_m(p)) == component_{m-2}(laplacian(p)). Requires m >= 2.
bool laplacian_component_shift_check(const Polynomial& p, unsigned m);

}  // namespace hconv
