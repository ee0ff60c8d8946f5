#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace hconv {

// Exponent vector alpha in N^n. Indexes monomials x^alpha, derivatives
// d^alpha, and seminorms. Ordered graded-lexicographically: total degree
// first, then lexicographic with x1 most significant, so x1^2 > x1*x2 > x2^2.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::size_t dim) : exponents_(dim, 0) {}
  explicit MultiIndex(std::vector<unsigned> exponents) : exponents_(std::move(exponents)) {}
  MultiIndex(std::initializer_list<unsigned> exponents) : exponents_(exponents) {}

  static MultiIndex unit(std::size_t dim, std::size_t axis, unsigned power = 1);

  std::size_t size() const noexcept { return exponents_.size(); }
  unsigned operator[](std::size_t i) const { return exponents_[i]; }
  std::span<const unsigned> exponents() const noexcept { return exponents_; }

  // d(alpha) = sum of entries.
  unsigned degree() const noexcept;
  bool is_zero() const noexcept { return degree() == 0; }
  bool has_odd_entry() const noexcept;

  // Componentwise comparison: gamma <= alpha in every entry.
  bool divides(const MultiIndex& alpha) const;

  MultiIndex operator+(const MultiIndex& other) const;
  // Requires other.divides(*this).
  MultiIndex operator-(const MultiIndex& other) const;

  // alpha with one entry changed.
  MultiIndex with(std::size_t axis, unsigned value) const;

  // Concatenation (x-exponents followed by y-exponents).
  MultiIndex concat(const MultiIndex& other) const;

  // Entries sorted descending; permutation-class representative.
  MultiIndex sorted() const;

  std::string to_string() const;  // "(2,0,1)"

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
  friend std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b);

 private:
  std::vector<unsigned> exponents_;
};

// Every multi-index of length dim with d(alpha) == degree, in descending
// graded-lex order.
std::vector<MultiIndex> multi_indices_of_degree(std::size_t dim, unsigned degree);

// Every multi-index of length dim with d(alpha) <= max_degree, ascending.
std::vector<MultiIndex> multi_indices_up_to(std::size_t dim, unsigned max_degree);

}  // namespace hconv
