#pragma once

#include <cmath>
#include <map>
#include <span>
#include <string_view>
#include <utility>

#include "fockcalc/core/expansion.hpp"

namespace fockcalc {

enum class Quantization { kohn_nirenberg, weyl };

inline std::string_view to_string(Quantization q) { return q == Quantization::weyl ? "weyl" : "kn"; }

/// Polynomial b(x, ξ) = Σ c · x^α ξ^β on R^{2d}, tagged with its quantization.
class RealSymbol {
 public:
  using Key = std::pair<MultiIndex, MultiIndex>;
  using Map = std::map<Key, Complex>;

  RealSymbol(std::size_t dimension, Quantization quantization, bool real_valued = false)
      : dimension_(dimension), quantization_(quantization), real_valued_(real_valued) {
    if (dimension == 0) throw UsageError("RealSymbol: dimension must be positive");
  }

  std::size_t dimension() const noexcept { return dimension_; }
  Quantization quantization() const noexcept { return quantization_; }
  bool real_valued() const noexcept { return real_valued_; }
  const Map& terms() const noexcept { return terms_; }

  void add_term(const MultiIndex& alpha, const MultiIndex& beta, Complex c) {
    if (alpha.dimension() != dimension_ || beta.dimension() != dimension_)
      throw UsageError("RealSymbol: index length does not match dimension");
    if (real_valued_ && c.imag() != 0.0)
      throw InputError("RealSymbol: complex coefficient in a symbol flagged real-valued");
    terms_[{alpha, beta}] += c;
  }

  /// Real-valued on R^{2d} iff every coefficient is real.
  bool is_real() const noexcept {
    for (const auto& [_, c] : terms_)
      if (c.imag() != 0.0) return false;
    return true;
  }

  int total_degree() const noexcept {
    int m = 0;
    for (const auto& [k, c] : terms_)
      if (c != Complex{}) m = std::max(m, k.first.degree() + k.second.degree());
    return m;
  }

  Complex evaluate(std::span<const double> x, std::span<const double> xi) const {
    if (x.size() != dimension_ || xi.size() != dimension_) throw UsageError("RealSymbol::evaluate: dimension mismatch");
    Complex s{};
    for (const auto& [k, c] : terms_) {
      double v = 1.0;
      for (std::size_t j = 0; j < dimension_; ++j) v *= ipow(x[j], k.first[j]) * ipow(xi[j], k.second[j]);
      s += c * v;
    }
    return s;
  }

 private:
  std::size_t dimension_;
  Quantization quantization_;
  bool real_valued_;
  Map terms_;
};

}  // namespace fockcalc
