#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "fockcalc/core/multi_index.hpp"

namespace fockcalc {

/// binomial(n, k) as an exact integer.
inline std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// All α of length d with |α| ≤ max_degree, in graded order.
inline std::vector<MultiIndex> enumerate_basis(std::size_t dimension, int max_degree) {
  if (dimension == 0) throw UsageError("enumerate_basis: dimension must be positive");
  if (max_degree < 0) throw UsageError("enumerate_basis: degree bound must be non-negative");
  std::vector<MultiIndex> out;
  out.reserve(binomial(static_cast<std::size_t>(max_degree) + dimension, dimension));
  std::vector<int> cur(dimension, 0);
  // Within a shell, recurse with the leading coordinate taking the largest
  // share first.
  auto fill = [&](auto&& self, std::size_t j, int remaining) -> void {
    if (j + 1 == dimension) {
      cur[j] = remaining;
      out.emplace_back(std::span<const int>(cur));
      return;
    }
    for (int v = remaining; v >= 0; --v) {
      cur[j] = v;
      self(self, j + 1, remaining - v);
    }
  };
  for (int n = 0; n <= max_degree; ++n) fill(fill, 0, n);
  return out;
}

/// Truncated basis {index : |index| ≤ max_degree} with position lookup.
class GradedBasis {
 public:
  GradedBasis(std::size_t dimension, int max_degree)
      : dimension_(dimension), max_degree_(max_degree), indices_(enumerate_basis(dimension, max_degree)) {
    for (std::size_t i = 0; i < indices_.size(); ++i) position_.emplace(indices_[i], i);
  }

  std::size_t dimension() const noexcept { return dimension_; }
  int max_degree() const noexcept { return max_degree_; }
  std::size_t size() const noexcept { return indices_.size(); }
  const MultiIndex& operator[](std::size_t i) const { return indices_[i]; }
  const std::vector<MultiIndex>& indices() const noexcept { return indices_; }

  std::optional<std::size_t> find(const MultiIndex& index) const {
    auto it = position_.find(index);
    if (it == position_.end()) return std::nullopt;
    return it->second;
  }

  auto begin() const { return indices_.begin(); }
  auto end() const { return indices_.end(); }

 private:
  std::size_t dimension_;
  int max_degree_;
  std::vector<MultiIndex> indices_;
  std::map<MultiIndex, std::size_t> position_;
};

}  // namespace fockcalc
