#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <ostream>
#include <span>
#include <vector>

#include "fockcalc/errors.hpp"

namespace fockcalc {

/// Tuple of non-negative integers indexing Hermite functions, Fock monomials
/// and symbol terms.
///
/// Ordering is graded: lower total degree first; within a degree the index
/// with the larger leading entry comes first, so for d = 2 the degree-one
/// shell reads (1,0), (0,1).
class MultiIndex {
 public:
  MultiIndex() = default;

  /// Zero index of length `dimension`.
  explicit MultiIndex(std::size_t dimension) : entries_(dimension, 0) {}

  MultiIndex(std::initializer_list<int> entries) {
    entries_.reserve(entries.size());
    for (int e : entries) push_checked(e);
  }

  explicit MultiIndex(std::span<const int> entries) {
    entries_.reserve(entries.size());
    for (int e : entries) push_checked(e);
  }

  static MultiIndex unit(std::size_t dimension, std::size_t coordinate) {
    MultiIndex e(dimension);
    e.entries_.at(coordinate) = 1;
    return e;
  }

  std::size_t dimension() const noexcept { return entries_.size(); }
  int operator[](std::size_t j) const { return entries_[j]; }
  const std::vector<int>& entries() const noexcept { return entries_; }

  int degree() const noexcept {
    return std::accumulate(entries_.begin(), entries_.end(), 0);
  }

  /// Exact α! = Π α_j!. Overflows past 20! in any coordinate.
  std::uint64_t factorial() const {
    std::uint64_t f = 1;
    for (int e : entries_) {
      if (e > 20) throw UsageError("MultiIndex::factorial: entry exceeds 20, use factorial_real()");
      for (int k = 2; k <= e; ++k) f *= static_cast<std::uint64_t>(k);
    }
    return f;
  }

  double factorial_real() const noexcept {
    double f = 1.0;
    for (int e : entries_)
      for (int k = 2; k <= e; ++k) f *= k;
    return f;
  }

  bool is_zero() const noexcept {
    return std::all_of(entries_.begin(), entries_.end(), [](int e) { return e == 0; });
  }

  /// Componentwise α ≤ β.
  bool le(const MultiIndex& other) const {
    check_same(other);
    for (std::size_t j = 0; j < entries_.size(); ++j)
      if (entries_[j] > other.entries_[j]) return false;
    return true;
  }

  MultiIndex operator+(const MultiIndex& other) const {
    check_same(other);
    MultiIndex r = *this;
    for (std::size_t j = 0; j < entries_.size(); ++j) r.entries_[j] += other.entries_[j];
    return r;
  }

  /// Componentwise difference; requires other ≤ *this.
  MultiIndex operator-(const MultiIndex& other) const {
    check_same(other);
    MultiIndex r = *this;
    for (std::size_t j = 0; j < entries_.size(); ++j) {
      r.entries_[j] -= other.entries_[j];
      if (r.entries_[j] < 0) throw UsageError("MultiIndex subtraction would go negative");
    }
    return r;
  }

  MultiIndex with(std::size_t coordinate, int value) const {
    if (value < 0) throw UsageError("MultiIndex entries must be non-negative");
    MultiIndex r = *this;
    r.entries_.at(coordinate) = value;
    return r;
  }

  bool operator==(const MultiIndex&) const = default;

  std::strong_ordering operator<=>(const MultiIndex& other) const {
    if (auto c = entries_.size() <=> other.entries_.size(); c != 0) return c;
    if (auto c = degree() <=> other.degree(); c != 0) return c;
    for (std::size_t j = 0; j < entries_.size(); ++j) {
      if (entries_[j] != other.entries_[j])
        return entries_[j] > other.entries_[j] ? std::strong_ordering::less
                                                : std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const MultiIndex& a) {
    os << '(';
    for (std::size_t j = 0; j < a.entries_.size(); ++j) os << (j ? "," : "") << a.entries_[j];
    return os << ')';
  }

 private:
  void push_checked(int e) {
    if (e < 0) throw UsageError("MultiIndex entries must be non-negative");
    entries_.push_back(e);
  }
  void check_same(const MultiIndex& other) const {
    if (other.entries_.size() != entries_.size())
      throw UsageError("MultiIndex dimension mismatch");
  }

  std::vector<int> entries_;
};

}  // namespace fockcalc
