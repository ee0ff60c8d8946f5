#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hconv/diffops.hpp"
#include "hconv/errors.hpp"
#include "hconv/parser.hpp"
#include "support.hpp"

using namespace hconv;
using testing::Gen;

namespace {

Polynomial P(const char* text, std::size_t dim) { return parse_polynomial(text, dim); }

// Laplacian as a map from degree-l to degree-(l-2) monomial coefficients.
std::vector<std::vector<Rational>> laplacian_matrix(std::size_t n, unsigned l) {
  const auto cols = multi_indices_of_degree(n, l);
  const auto rows = multi_indices_of_degree(n, l - 2);
  std::vector<std::vector<Rational>> m(rows.size(), std::vector<Rational>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) {
    const Polynomial image = testing::naive_laplacian(Polynomial::monomial(cols[c]));
    for (std::size_t r = 0; r < rows.size(); ++r) m[r][c] = image.coefficient(rows[r]);
  }
  return m;
}

}  // namespace

TEST_CASE("partial derivative examples") {
  CHECK(partial(P("x1^3", 1), 0) == P("3*x1^2", 1));
  CHECK(partial(P("x1", 2), 1).is_zero());
  CHECK(derivative_multi(P("x1^2*x2 + 3", 2), MultiIndex(2)) == P("x1^2*x2 + 3", 2));
  CHECK(derivative_multi(P("x1^2", 2), MultiIndex{2, 0}) == P("2", 2));
  CHECK_THROWS_AS(partial(P("x1", 2), 2), DomainError);
}

TEST_CASE("laplacian and euler examples") {
  CHECK(laplacian(P("x1^2 - x2^2", 2)).is_zero());
  CHECK(laplacian(P("x1^2 + x2^2", 2)) == P("4", 2));
  CHECK(euler(P("x1*x2", 2)) == P("2*x1*x2", 2));
  CHECK(euler(P("5", 3)).is_zero());
  CHECK(is_harmonic(P("x1^2 - x2^2", 2)));
  CHECK_FALSE(is_harmonic(P("x1^2", 2)));
  for (unsigned k = 0; k <= 8; ++k) CHECK(is_harmonic(testing::real_power(2, k)));
  for (unsigned k = 0; k <= 8; ++k) CHECK(is_harmonic(testing::real_power(4, k)));
}

TEST_CASE("harmonic basis examples") {
  const auto b22 = harmonic_basis(2, 2);
  CHECK(b22.basis.size() == 2);
  CHECK(b22.basis[0] == P("x1^2 - x2^2", 2));
  CHECK(b22.basis[1] == P("x1*x2", 2));
  for (unsigned l = 2; l <= 8; ++l) CHECK(harmonic_basis(1, l).basis.empty());
  CHECK(harmonic_basis(1, 0).basis.size() == 1);
  CHECK(harmonic_basis(1, 1).basis.size() == 1);
  CHECK(harmonic_basis(3, 2).basis.size() == 5);
}

TEST_CASE("harmonic basis dimension, rank and independence") {
  for (std::size_t n = 1; n <= 4; ++n) {
    for (unsigned l = 0; l <= 8; ++l) {
      CAPTURE(n);
      CAPTURE(l);
      const auto hb = harmonic_basis(n, l);
      const long formula = testing::harmonic_dimension(static_cast<long>(n), l);
      CHECK(static_cast<long>(hb.basis.size()) == formula);
      if (l >= 2) {
        const long monomials = static_cast<long>(multi_indices_of_degree(n, l).size());
        const long rank = static_cast<long>(testing::rational_rank(laplacian_matrix(n, l)));
        CHECK(monomials - rank == formula);
      }
      std::vector<std::vector<Rational>> rows;
      const auto cols = multi_indices_of_degree(n, l);
      for (const auto& b : hb.basis) {
        CHECK(is_homogeneous(b, l));
        CHECK(testing::naive_laplacian(b).is_zero());
        CHECK(b.leading_term().second == 1);
        std::vector<Rational> row;
        for (const auto& alpha : cols) row.push_back(b.coefficient(alpha));
        rows.push_back(std::move(row));
      }
      CHECK(testing::rational_rank(rows) == hb.basis.size());
    }
  }
}

TEST_CASE("property: laplacian agrees with the direct assembly") {
  Gen gen(21);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = static_cast<std::size_t>(gen.integer(1, 4));
    const Polynomial p = gen.polynomial(n, 8);
    CHECK(laplacian(p) == testing::naive_laplacian(p));
  }
}

TEST_CASE("property: euler acts as the degree on each component") {
  Gen gen(22);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = static_cast<std::size_t>(gen.integer(1, 4));
    const Polynomial p = gen.polynomial(n, 8);
    Polynomial expected(n);
    for (const auto& [m, part] : homogeneous_components(p)) expected += part * Rational(m);
    CHECK(euler(p) == expected);
  }
}

TEST_CASE("property: harmonic components and degree shift") {
  Gen gen(23);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = static_cast<std::size_t>(gen.integer(1, 4));
    const Polynomial h = gen.harmonic(n, 6);
    REQUIRE(is_harmonic(h));
    for (const auto& [m, part] : homogeneous_components(h)) CHECK(is_harmonic(part));

    const Polynomial p = gen.polynomial(n, 8);
    for (unsigned m = 2; m <= 10; ++m) CHECK(laplacian_component_shift_check(p, m));
    CHECK(laplacian(homogeneous_component(p, 0)).is_zero());
    CHECK(laplacian(homogeneous_component(p, 1)).is_zero());
  }
  CHECK_THROWS_AS(laplacian_component_shift_check(P("x1", 1), 1), DomainError);
}

TEST_CASE("property: mixed partials commute") {
  Gen gen(24);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = static_cast<std::size_t>(gen.integer(2, 4));
    const Polynomial p = gen.polynomial(n, 8);
    const auto a = static_cast<std::size_t>(gen.integer(0, static_cast<std::int64_t>(n) - 1));
    const auto b = static_cast<std::size_t>(gen.integer(0, static_cast<std::int64_t>(n) - 1));
    CHECK(partial(partial(p, a), b) == partial(partial(p, b), a));
  }
}
