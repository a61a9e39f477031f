#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "fockcalc/bargmann.hpp"
#include "fockcalc/symbols/operator_matrix.hpp"
#include "fockcalc/symbols/real_symbol.hpp"
#include "fockcalc/symbols/wick_symbol.hpp"

namespace fockcalc {

namespace detail {

using Sparse1d = std::vector<std::pair<int, Complex>>;
using SparseNd = std::map<MultiIndex, Complex>;

/// √(m!/n!) for m ≥ n.
inline double sqrt_factorial_ratio(int m, int n) {
  double r = 1.0;
  for (int k = n + 1; k <= m; ++k) r *= std::sqrt(static_cast<double>(k));
  return r;
}

/// z^a ∂^b z^mu on e_n.
inline Sparse1d fock_word_1d(int a, int mu, int b, int n) {
  const int m = n + mu;
  if (m < b) return {};
  const int k = m - b;
  return {{k + a, sqrt_factorial_ratio(m, n) * sqrt_factorial_ratio(m, k) * sqrt_factorial_ratio(k + a, k)}};
}

// Position and momentum on Hermite coefficient vectors:
//   x h_k   = √(k/2) h_{k-1} + √((k+1)/2) h_{k+1}
//   ∂ h_k   = √(k/2) h_{k-1} - √((k+1)/2) h_{k+1},   D = -i∂.
inline std::vector<Complex> apply_position(const std::vector<Complex>& v) {
  std::vector<Complex> out(v.size() + 1);
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k] == Complex{}) continue;
    if (k > 0) out[k - 1] += std::sqrt(0.5 * k) * v[k];
    out[k + 1] += std::sqrt(0.5 * (k + 1)) * v[k];
  }
  return out;
}

inline std::vector<Complex> apply_momentum(const std::vector<Complex>& v) {
  const Complex minus_i{0.0, -1.0};
  std::vector<Complex> out(v.size() + 1);
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k] == Complex{}) continue;
    if (k > 0) out[k - 1] += minus_i * std::sqrt(0.5 * k) * v[k];
    out[k + 1] -= minus_i * std::sqrt(0.5 * (k + 1)) * v[k];
  }
  return out;
}

inline Sparse1d to_sparse(const std::vector<Complex>& v) {
  Sparse1d s;
  for (std::size_t k = 0; k < v.size(); ++k)
    if (v[k] != Complex{}) s.emplace_back(static_cast<int>(k), v[k]);
  return s;
}

/// Word of position (true) / momentum (false) factors applied right to left.
inline std::vector<Complex> apply_word(const std::vector<bool>& word, int n) {
  std::vector<Complex> v(static_cast<std::size_t>(n) + 1);
  v[n] = 1.0;
  for (auto it = word.rbegin(); it != word.rend(); ++it) v = *it ? apply_position(v) : apply_momentum(v);
  return v;
}

/// x^a D^b on h_n.
inline Sparse1d kn_1d(int a, int b, int n) {
  std::vector<bool> word(a, true);
  word.insert(word.end(), b, false);
  return to_sparse(apply_word(word, n));
}

/// Symmetrized product of a position and b momentum factors on h_n.
inline Sparse1d weyl_1d(int a, int b, int n) {
  const int len = a + b;
  std::vector<Complex> acc(static_cast<std::size_t>(n + len) + 1);
  std::size_t count = 0;
  // Choose the positions of the a position factors among len slots.
  std::vector<bool> word(len, false);
  std::fill(word.begin(), word.begin() + a, true);
  std::sort(word.begin(), word.end());
  do {
    const std::vector<Complex> v = apply_word(word, n);
    for (std::size_t k = 0; k < v.size(); ++k) acc[k] += v[k];
    ++count;
  } while (std::next_permutation(word.begin(), word.end()));
  for (auto& c : acc) c /= static_cast<double>(count);
  return to_sparse(acc);
}

/// Image of a basis vector under a tensor-product operator.
inline void tensor_accumulate(const std::vector<Sparse1d>& factors, Complex scale, SparseNd& out) {
  const std::size_t d = factors.size();
  for (const auto& f : factors)
    if (f.empty()) return;
  std::vector<std::size_t> pos(d, 0);
  std::vector<int> idx(d);
  for (;;) {
    Complex c = scale;
    for (std::size_t j = 0; j < d; ++j) {
      idx[j] = factors[j][pos[j]].first;
      c *= factors[j][pos[j]].second;
    }
    out[MultiIndex(std::span<const int>(idx))] += c;
    std::size_t j = 0;
    for (; j < d; ++j) {
      if (++pos[j] < factors[j].size()) break;
      pos[j] = 0;
    }
    if (j == d) break;
  }
}

inline OperatorMatrix assemble(std::size_t d, int n_in, int n_out, Side side,
                               const std::function<SparseNd(const MultiIndex&)>& column_image) {
  OperatorMatrix m(d, n_in, n_out, side);
  const GradedBasis in(d, n_in), out(d, n_out);
  for (std::size_t col = 0; col < in.size(); ++col) {
    for (const auto& [row_index, c] : column_image(in[col])) {
      if (c == Complex{}) continue;
      auto row = out.find(row_index);
      if (!row) throw ConsistencyError("operator image leaves the codomain truncation");
      m.entries(static_cast<Eigen::Index>(*row), static_cast<Eigen::Index>(col)) += c;
    }
  }
  return m;
}

inline OperatorMatrix fock_symbol_matrix(const WickSymbol& a, int n_in, std::optional<int> n_out) {
  if (n_in < 0) throw UsageError("matrix domain degree must be non-negative");
  const int required = n_in + a.output_shift();
  const int out = n_out.value_or(required);
  if (out < required) throw UsageError("codomain degree too small for an exact matrix");
  const std::size_t d = a.dimension();
  return assemble(d, n_in, out, Side::fock, [&](const MultiIndex& gamma) {
    SparseNd img;
    std::vector<Sparse1d> factors(d);
    for (const auto& [mono, c] : a.terms()) {
      if (c == Complex{}) continue;
      for (std::size_t j = 0; j < d; ++j) factors[j] = fock_word_1d(mono.z[j], mono.w[j], mono.wbar[j], gamma[j]);
      tensor_accumulate(factors, c, img);
    }
    return img;
  });
}

}  // namespace detail

/// Exact matrix of the Wick operator of a polynomial symbol. The monomial
/// z^α conj(w)^β acts as (multiply by z^α) ∘ ∂^β.
inline OperatorMatrix wick_matrix(const WickSymbol& a, int n_in, std::optional<int> n_out = std::nullopt) {
  return detail::fock_symbol_matrix(a, n_in, n_out);
}

/// Exact matrix of the anti-Wick operator of a point symbol; w^σ conj(w)^τ
/// acts as ∂^τ ∘ (multiply by z^σ).
inline OperatorMatrix antiwick_matrix(const WickSymbol& a0, int n_in, std::optional<int> n_out = std::nullopt) {
  if (!a0.is_z_independent())
    throw UsageError("antiwick_matrix: symbol depends on z; use wick_matrix for general symbols");
  return detail::fock_symbol_matrix(a0, n_in, n_out);
}

/// Σ c x^α D^β with every position factor left of every momentum factor.
inline OperatorMatrix kn_matrix(const RealSymbol& b, int n_in) {
  if (b.quantization() != Quantization::kohn_nirenberg) throw UsageError("kn_matrix: symbol is not tagged kohn_nirenberg");
  if (n_in < 0) throw UsageError("kn_matrix: domain degree must be non-negative");
  const std::size_t d = b.dimension();
  return detail::assemble(d, n_in, n_in + b.total_degree(), Side::hermite, [&](const MultiIndex& gamma) {
    detail::SparseNd img;
    std::vector<detail::Sparse1d> factors(d);
    for (const auto& [key, c] : b.terms()) {
      if (c == Complex{}) continue;
      for (std::size_t j = 0; j < d; ++j) factors[j] = detail::kn_1d(key.first[j], key.second[j], gamma[j]);
      detail::tensor_accumulate(factors, c, img);
    }
    return img;
  });
}

/// Weyl quantization: each monomial becomes the average over all orderings of
/// its position and momentum factors.
inline OperatorMatrix weyl_matrix(const RealSymbol& b, int n_in) {
  if (b.quantization() != Quantization::weyl) throw UsageError("weyl_matrix: symbol is not tagged weyl");
  if (n_in < 0) throw UsageError("weyl_matrix: domain degree must be non-negative");
  const std::size_t d = b.dimension();
  return detail::assemble(d, n_in, n_in + b.total_degree(), Side::hermite, [&](const MultiIndex& gamma) {
    detail::SparseNd img;
    std::vector<detail::Sparse1d> factors(d);
    for (const auto& [key, c] : b.terms()) {
      if (c == Complex{}) continue;
      for (std::size_t j = 0; j < d; ++j) factors[j] = detail::weyl_1d(key.first[j], key.second[j], gamma[j]);
      detail::tensor_accumulate(factors, c, img);
    }
    return img;
  });
}

inline OperatorMatrix quantization_matrix(const RealSymbol& b, int n_in) {
  return b.quantization() == Quantization::weyl ? weyl_matrix(b, n_in) : kn_matrix(b, n_in);
}

/// The same matrix read on the other side of the Bargmann transform. Since
/// h_γ ↦ e_γ the entries are unchanged.
inline OperatorMatrix conjugate_to_fock(const OperatorMatrix& m) {
  OperatorMatrix out = m;
  out.side = Side::fock;
  return out;
}

/// Recovers the unique Wick symbol Σ c(α,β) z^α conj(w)^β of total degree
/// ≤ max_degree whose matrix is m.
///
/// For a fixed offset α - β the entry at column β only involves c(α', β') with
/// β' ≤ β, so the coefficients follow by forward substitution in graded order.
/// The recovered symbol is re-assembled and compared with m; a mismatch means
/// m is not the matrix of such a symbol.
inline WickSymbol wick_symbol_from_matrix(const OperatorMatrix& m, int max_degree, double tolerance = 1e-9) {
  if (m.side != Side::fock) throw UsageError("wick_symbol_from_matrix: matrix must be on the fock side");
  if (m.n_in < max_degree) throw UsageError("wick_symbol_from_matrix: probe degree below symbol degree");
  const std::size_t d = m.dimension;
  const GradedBasis in(d, m.n_in), out(d, m.n_out);
  const GradedBasis betas(d, max_degree);

  // coef(α, β; γ) for z^α ∂^β on e_γ, landing on e_{γ-β+α}.
  auto word = [&](const MultiIndex& alpha, const MultiIndex& beta, const MultiIndex& gamma) {
    double c = 1.0;
    for (std::size_t j = 0; j < d; ++j) c *= detail::fock_word_1d(alpha[j], 0, beta[j], gamma[j]).front().second.real();
    return c;
  };

  std::map<std::pair<MultiIndex, MultiIndex>, Complex> coeff;
  for (const MultiIndex& beta : betas) {
    const auto col = in.find(beta);
    for (const MultiIndex& alpha : GradedBasis(d, max_degree - beta.degree())) {
      const auto row = out.find(alpha);
      if (!row) throw UsageError("wick_symbol_from_matrix: codomain too small for the requested degree");
      Complex rhs = m.entries(static_cast<Eigen::Index>(*row), static_cast<Eigen::Index>(*col));
      for (const auto& [key, c] : coeff) {
        const auto& [a2, b2] = key;
        if (b2 == beta || !b2.le(beta)) continue;
        // Same offset: a2 - b2 = alpha - beta.
        bool same = true;
        for (std::size_t j = 0; j < d && same; ++j) same = a2[j] - b2[j] == alpha[j] - beta[j];
        if (same) rhs -= c * word(a2, b2, beta);
      }
      const double diag = word(alpha, beta, beta);
      if (diag == 0.0) throw ConsistencyError("wick_symbol_from_matrix: singular triangular solve");
      coeff[{alpha, beta}] = rhs / diag;
    }
  }

  double scale = 0.0;
  for (const auto& [_, c] : coeff) scale = std::max(scale, std::abs(c));
  WickSymbol a(d);
  for (const auto& [key, c] : coeff)
    if (std::abs(c) > 1e-13 * std::max(scale, 1.0)) a.add_term(key.first, key.second, c);

  const OperatorMatrix rebuilt = wick_matrix(a, m.n_in, std::max(m.n_out, m.n_in + a.output_shift()));
  const double dev = max_deviation(rebuilt, m);
  const double mag = m.entries.size() ? m.entries.cwiseAbs().maxCoeff() : 0.0;
  if (dev > tolerance * std::max(1.0, mag))
    throw ConsistencyError("wick_symbol_from_matrix: matrix is not that of a Wick symbol of degree " +
                           std::to_string(max_degree) + " (residual " + std::to_string(dev) + ")");
  return a;
}

/// Wick symbol a with Op_V(a) = V ∘ Op(b) ∘ V^{-1} for the quantization b is tagged with.
inline WickSymbol real_to_wick_symbol(const RealSymbol& b, std::optional<int> n_probe = std::nullopt) {
  const int degree = b.total_degree();
  const int probe = n_probe.value_or(degree);
  if (probe < degree) throw UsageError("real_to_wick_symbol: probe degree must be at least the symbol degree");
  return wick_symbol_from_matrix(conjugate_to_fock(quantization_matrix(b, probe)), degree);
}

/// Matrix of Op_V(a) by quadrature of the defining integral (d = 1):
/// Op_V(a)e_n(z) = ∫ a(z,w) e_n(w) e^{z conj w} dμ(w) on the polar rule, then
/// Taylor coefficients from samples on the unit circle.
inline OperatorMatrix wick_matrix_quadrature(const WickSymbol& a, int n_in, std::optional<int> n_out = std::nullopt,
                                             int radial_order = 80, int angular_order = 96) {
  if (a.dimension() != 1) throw UsageError("wick_matrix_quadrature: only d = 1 is supported");
  const int out_deg = n_out.value_or(n_in + a.output_shift());
  OperatorMatrix m(1, n_in, out_deg, Side::fock);
  const FockPolarRule rule(radial_order, angular_order);
  const int samples = out_deg + 1;
  const double two_pi = 2.0 * std::numbers::pi;
  for (int n = 0; n <= n_in; ++n) {
    const MultiIndex gamma{n};
    std::vector<Complex> values(samples);
    for (int k = 0; k < samples; ++k) {
      const Complex z = std::polar(1.0, two_pi * k / samples);
      const std::array<Complex, 1> zz{z};
      values[k] = rule.integrate([&](Complex w) {
        const std::array<Complex, 1> ww{w};
        return a.evaluate(zz, ww) * fock_monomial(gamma, FockPoint{w}) * std::exp(z * std::conj(w));
      });
    }
    for (int row = 0; row <= out_deg; ++row) {
      Complex c{};
      for (int k = 0; k < samples; ++k) c += values[k] * std::polar(1.0, -two_pi * k * row / samples);
      c /= static_cast<double>(samples);
      m.entries(row, n) = c * std::sqrt(MultiIndex{row}.factorial_real());
    }
  }
  return m;
}

}  // namespace fockcalc
