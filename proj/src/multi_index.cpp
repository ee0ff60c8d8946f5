#include "hconv/multi_index.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

#include "hconv/errors.hpp"

namespace hconv {

MultiIndex MultiIndex::unit(std::size_t dim, std::size_t axis, unsigned power) {
  if (axis >= dim) throw DomainError("axis " + std::to_string(axis) + " out of range");
  MultiIndex out(dim);
  out.exponents_[axis] = power;
  return out;
}

unsigned MultiIndex::degree() const noexcept {
  return std::accumulate(exponents_.begin(), exponents_.end(), 0u);
}

bool MultiIndex::has_odd_entry() const noexcept {
  return std::any_of(exponents_.begin(), exponents_.end(), [](unsigned e) { return e % 2 != 0; });
}

bool MultiIndex::divides(const MultiIndex& alpha) const {
  if (size() != alpha.size()) throw DimensionMismatch(alpha.size(), size());
  for (std::size_t i = 0; i < size(); ++i) {
    if (exponents_[i] > alpha.exponents_[i]) return false;
  }
  return true;
}

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
  if (size() != other.size()) throw DimensionMismatch(size(), other.size());
  MultiIndex out = *this;
  for (std::size_t i = 0; i < size(); ++i) out.exponents_[i] += other.exponents_[i];
  return out;
}

MultiIndex MultiIndex::operator-(const MultiIndex& other) const {
  if (!other.divides(*this)) throw DomainError("multi-index subtraction would go negative");
  MultiIndex out = *this;
  for (std::size_t i = 0; i < size(); ++i) out.exponents_[i] -= other.exponents_[i];
  return out;
}

MultiIndex MultiIndex::with(std::size_t axis, unsigned value) const {
  MultiIndex out = *this;
  out.exponents_.at(axis) = value;
  return out;
}

MultiIndex MultiIndex::concat(const MultiIndex& other) const {
  std::vector<unsigned> e = exponents_;
  e.insert(e.end(), other.exponents_.begin(), other.exponents_.end());
  return MultiIndex(std::move(e));
}

MultiIndex MultiIndex::sorted() const {
  std::vector<unsigned> e = exponents_;
  std::sort(e.begin(), e.end(), std::greater<>());
  return MultiIndex(std::move(e));
}

std::string MultiIndex::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < size(); ++i) {
    if (i) out += ',';
    out += std::to_string(exponents_[i]);
  }
  return out + ")";
}

std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b) {
  if (auto c = a.degree() <=> b.degree(); c != 0) return c;
  return a.exponents_ <=> b.exponents_;
}

namespace {

void fill_degree(std::vector<unsigned>& current, std::size_t axis, unsigned remaining,
                 std::vector<MultiIndex>& out) {
  if (axis + 1 == current.size()) {
    current[axis] = remaining;
    out.emplace_back(current);
    return;
  }
  for (unsigned e = remaining + 1; e-- > 0;) {
    current[axis] = e;
    fill_degree(current, axis + 1, remaining - e, out);
  }
}

}  // namespace

std::vector<MultiIndex> multi_indices_of_degree(std::size_t dim, unsigned degree) {
  std::vector<MultiIndex> out;
  if (dim == 0) return out;
  std::vector<unsigned> current(dim, 0);
  fill_degree(current, 0, degree, out);
  return out;
}

std::vector<MultiIndex> multi_indices_up_to(std::size_t dim, unsigned max_degree) {
  std::vector<MultiIndex> out;
  for (unsigned d = 0; d <= max_degree; ++d) {
    auto level = multi_indices_of_degree(dim, d);
    out.insert(out.end(), level.rbegin(), level.rend());
  }
  return out;
}

}  // namespace hconv
