#pragma once

#include <cmath>
#include <map>
#include <span>
#include <tuple>

#include "fockcalc/bargmann.hpp"
#include "fockcalc/core/expansion.hpp"

namespace fockcalc {

/// Exponents of z^z · w^w · conj(w)^wbar. Ordinary Wick symbols have w = 0;
/// anti-Wick point symbols have z = 0.
struct WickMonomial {
  MultiIndex z;
  MultiIndex w;
  MultiIndex wbar;

  auto operator<=>(const WickMonomial& o) const {
    return std::tie(z, wbar, w) <=> std::tie(o.z, o.wbar, o.w);
  }
  bool operator==(const WickMonomial&) const = default;
};

/// Polynomial symbol a(z, w) = Σ c · z^α w^μ conj(w)^β.
///
/// The operator of one term under the defining integral
/// π^{-d} ∫ a(z,w) F(w) e^{(z-w,w)} dλ(w) is z^α ∘ ∂^β ∘ z^μ, which is the
/// normal-ordered z^α ∂^β for ordinary symbols and the anti-normal ∂^τ z^σ for
/// point symbols w^σ conj(w)^τ.
class WickSymbol {
 public:
  using Map = std::map<WickMonomial, Complex>;

  explicit WickSymbol(std::size_t dimension, bool point_symbol = false)
      : dimension_(dimension), point_symbol_(point_symbol) {
    if (dimension == 0) throw UsageError("WickSymbol: dimension must be positive");
  }

  static WickSymbol constant(std::size_t dimension, Complex value) {
    WickSymbol a(dimension);
    a.add_term(MultiIndex(dimension), MultiIndex(dimension), value);
    return a;
  }

  std::size_t dimension() const noexcept { return dimension_; }
  bool is_point_symbol() const noexcept { return point_symbol_; }
  void set_point_symbol(bool flag) {
    if (flag && !is_z_independent()) throw UsageError("WickSymbol: point symbol cannot depend on z");
    point_symbol_ = flag;
  }
  const Map& terms() const noexcept { return terms_; }
  bool empty() const noexcept { return terms_.empty(); }

  /// c · z^alpha conj(w)^beta.
  void add_term(const MultiIndex& alpha, const MultiIndex& beta, Complex c) {
    add_general(alpha, MultiIndex(dimension_), beta, c);
  }

  /// c · w^sigma conj(w)^tau.
  void add_point_term(const MultiIndex& sigma, const MultiIndex& tau, Complex c) {
    add_general(MultiIndex(dimension_), sigma, tau, c);
  }

  void add_general(const MultiIndex& z, const MultiIndex& w, const MultiIndex& wbar, Complex c) {
    if (z.dimension() != dimension_ || w.dimension() != dimension_ || wbar.dimension() != dimension_)
      throw UsageError("WickSymbol: index length does not match dimension");
    if (point_symbol_ && !z.is_zero()) throw UsageError("WickSymbol: point symbol cannot depend on z");
    terms_[WickMonomial{z, w, wbar}] += c;
  }

  Complex coefficient(const MultiIndex& alpha, const MultiIndex& beta) const {
    auto it = terms_.find(WickMonomial{alpha, MultiIndex(dimension_), beta});
    return it == terms_.end() ? Complex{} : it->second;
  }

  Complex evaluate(std::span<const Complex> z, std::span<const Complex> w) const {
    if (z.size() != dimension_ || w.size() != dimension_) throw UsageError("WickSymbol::evaluate: dimension mismatch");
    Complex s{};
    for (const auto& [m, c] : terms_) {
      Complex v = c;
      for (std::size_t j = 0; j < dimension_; ++j)
        v *= ipow(z[j], m.z[j]) * ipow(w[j], m.w[j]) * ipow(std::conj(w[j]), m.wbar[j]);
      s += v;
    }
    return s;
  }

  /// a(w, w) for ordinary symbols, a0(w) for point symbols.
  Complex evaluate_diagonal(std::span<const Complex> w) const { return evaluate(w, w); }

  int z_degree() const noexcept { return max_over([](const WickMonomial& m) { return m.z.degree(); }); }
  int w_degree() const noexcept { return max_over([](const WickMonomial& m) { return m.w.degree(); }); }
  int wbar_degree() const noexcept { return max_over([](const WickMonomial& m) { return m.wbar.degree(); }); }
  int total_degree() const noexcept {
    return max_over([](const WickMonomial& m) { return m.z.degree() + m.w.degree() + m.wbar.degree(); });
  }

  /// Largest degree raise of any term acting on e_γ; the codomain bound is N_in + shift.
  int output_shift() const noexcept {
    return std::max(0, max_over([](const WickMonomial& m) { return m.z.degree() + m.w.degree() - m.wbar.degree(); }));
  }

  bool is_z_independent() const noexcept {
    for (const auto& [m, c] : terms_)
      if (!m.z.is_zero() && c != Complex{}) return false;
    return true;
  }

  bool has_holomorphic_w() const noexcept {
    for (const auto& [m, c] : terms_)
      if (!m.w.is_zero() && c != Complex{}) return true;
    return false;
  }

  WickSymbol scaled(Complex factor) const {
    WickSymbol out = *this;
    for (auto& [_, c] : out.terms_) c *= factor;
    return out;
  }

  WickSymbol operator+(const WickSymbol& other) const {
    if (other.dimension_ != dimension_) throw UsageError("WickSymbol: dimension mismatch");
    WickSymbol out = *this;
    out.point_symbol_ = point_symbol_ && other.point_symbol_;
    for (const auto& [m, c] : other.terms_) out.terms_[m] += c;
    return out;
  }

  /// Drops terms with |c| ≤ threshold.
  WickSymbol pruned(double threshold = 0.0) const {
    WickSymbol out(dimension_, point_symbol_);
    for (const auto& [m, c] : terms_)
      if (std::abs(c) > threshold) out.terms_.emplace(m, c);
    return out;
  }

  double max_abs_coefficient() const noexcept {
    double m = 0.0;
    for (const auto& [_, c] : terms_) m = std::max(m, std::abs(c));
    return m;
  }

 private:
  template <class F>
  int max_over(F&& f) const noexcept {
    int m = 0;
    for (const auto& [k, c] : terms_)
      if (c != Complex{}) m = std::max(m, f(k));
    return m;
  }

  std::size_t dimension_;
  bool point_symbol_;
  Map terms_;
};

/// K_a(z, w) = a(z, w) e^{(z,w)} with the sesquilinear pairing.
inline Complex wick_kernel(const WickSymbol& a, const FockPoint& z, const FockPoint& w) {
  return a.evaluate(z.z, w.z) * std::exp(sesquilinear(z.z, w.z));
}

}  // namespace fockcalc
