#pragma once

#include <complex>
#include <map>
#include <string_view>

#include "fockcalc/core/multi_index.hpp"

namespace fockcalc {

using Complex = std::complex<double>;

enum class Side { hermite, fock };

/// z^n by repeated multiplication; 0^0 = 1.
template <class T>
T ipow(T base, int n) {
  T r{1};
  for (; n > 0; n >>= 1) {
    if (n & 1) r *= base;
    base *= base;
  }
  return r;
}

inline std::string_view to_string(Side s) { return s == Side::hermite ? "hermite" : "fock"; }

inline Side side_from_string(std::string_view s) {
  if (s == "hermite") return Side::hermite;
  if (s == "fock") return Side::fock;
  throw InputError("unknown side '" + std::string(s) + "'");
}

/// Finite coefficient map over an orthonormal basis: f = Σ c_α h_α on the
/// hermite side, F = Σ c_α e_α on the fock side.
///
/// Explicitly inserted entries are kept, including zeros, unless their modulus
/// falls below the prune threshold given at insertion time.
class CoefficientExpansion {
 public:
  using Map = std::map<MultiIndex, Complex>;

  CoefficientExpansion(std::size_t dimension, Side side) : dimension_(dimension), side_(side) {
    if (dimension == 0) throw UsageError("CoefficientExpansion: dimension must be positive");
  }

  static CoefficientExpansion basis_vector(const MultiIndex& index, Side side, Complex value = 1.0) {
    CoefficientExpansion e(index.dimension(), side);
    e.set(index, value);
    return e;
  }

  std::size_t dimension() const noexcept { return dimension_; }
  Side side() const noexcept { return side_; }
  const Map& coeffs() const noexcept { return coeffs_; }
  bool empty() const noexcept { return coeffs_.empty(); }
  std::size_t size() const noexcept { return coeffs_.size(); }

  /// Largest degree with a stored entry; -1 when empty.
  int degree_bound() const noexcept { return coeffs_.empty() ? -1 : coeffs_.rbegin()->first.degree(); }

  Complex operator[](const MultiIndex& index) const {
    auto it = coeffs_.find(index);
    return it == coeffs_.end() ? Complex{} : it->second;
  }

  void set(const MultiIndex& index, Complex value, double prune_threshold = 0.0) {
    check_index(index);
    if (prune_threshold > 0.0 && std::abs(value) < prune_threshold) {
      coeffs_.erase(index);
      return;
    }
    coeffs_[index] = value;
  }

  void add(const MultiIndex& index, Complex value) {
    check_index(index);
    coeffs_[index] += value;
  }

  double squared_norm() const noexcept {
    double s = 0.0;
    for (const auto& [_, c] : coeffs_) s += std::norm(c);
    return s;
  }

  /// Copy with entries of modulus below `threshold` removed.
  CoefficientExpansion pruned(double threshold) const {
    CoefficientExpansion out(dimension_, side_);
    for (const auto& [k, c] : coeffs_)
      if (std::abs(c) >= threshold) out.coeffs_.emplace(k, c);
    return out;
  }

  /// Same coefficients on the other side of the transform.
  CoefficientExpansion retagged(Side side) const {
    CoefficientExpansion out = *this;
    out.side_ = side;
    return out;
  }

  CoefficientExpansion scaled(Complex factor) const {
    CoefficientExpansion out = *this;
    for (auto& [_, c] : out.coeffs_) c *= factor;
    return out;
  }

  CoefficientExpansion operator+(const CoefficientExpansion& other) const {
    check_compatible(other);
    CoefficientExpansion out = *this;
    for (const auto& [k, c] : other.coeffs_) out.coeffs_[k] += c;
    return out;
  }

  CoefficientExpansion operator-(const CoefficientExpansion& other) const {
    return *this + other.scaled(-1.0);
  }

  void check_compatible(const CoefficientExpansion& other) const {
    if (other.dimension_ != dimension_) throw UsageError("expansion dimension mismatch");
    if (other.side_ != side_) throw UsageError("expansion side mismatch");
  }

  bool operator==(const CoefficientExpansion&) const = default;

 private:
  void check_index(const MultiIndex& index) const {
    if (index.dimension() != dimension_)
      throw UsageError("index length does not match expansion dimension");
  }

  std::size_t dimension_;
  Side side_;
  Map coeffs_;
};

/// Σ_α f_α·conj(g_α); conjugate-linear in the second slot.
inline Complex expansion_inner(const CoefficientExpansion& f, const CoefficientExpansion& g) {
  f.check_compatible(g);
  Complex s{};
  for (const auto& [k, c] : f.coeffs()) {
    auto it = g.coeffs().find(k);
    if (it != g.coeffs().end()) s += c * std::conj(it->second);
  }
  return s;
}

}  // namespace fockcalc
