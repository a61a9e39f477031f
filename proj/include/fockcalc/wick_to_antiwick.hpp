#pragma once

#include <cmath>
#include <vector>

#include "fockcalc/symbols/bounds.hpp"
#include "fockcalc/symbols/quantization.hpp"

namespace fockcalc {

/// One signed, factorial-weighted term (-1)^{|α|} Op(symbol) / α!.
struct ExpansionTerm {
  MultiIndex alpha;
  WickSymbol symbol;
  int sign = 1;
  double weight = 1.0;  // 1 / α!
};

/// Op_V(a) = Σ_{|α|≤N} (-1)^{|α|} Op^aw(a_α)/α! + Σ_{|α|=N+1} (-1)^{|α|} Op_V(b_α)/α!.
struct WickToAntiWickDecomposition {
  int order = 1;
  bool extension = false;  // order 0, below the usual N ≥ 1
  std::vector<ExpansionTerm> main_terms;
  std::vector<ExpansionTerm> remainder_terms;

  bool remainder_vanishes() const {
    for (const auto& t : remainder_terms)
      if (!t.symbol.pruned().empty()) return false;
    return true;
  }
};

/// a_α(w) = ∂_z^α ∂̄_w^α a(w, w) as a polynomial in (w, conj w).
inline WickSymbol diagonal_derivative_symbol(const WickSymbol& a, const MultiIndex& alpha) {
  if (alpha.dimension() != a.dimension()) throw UsageError("diagonal_derivative_symbol: dimension mismatch");
  const WickSymbol deriv = differentiate(a, alpha, alpha);
  WickSymbol out(a.dimension(), true);
  for (const auto& [m, c] : deriv.terms()) out.add_point_term(m.z + m.w, m.wbar, c);
  return out;
}

/// b_α(z, w) = |α| ∫_0^1 (1-t)^{|α|-1} ∂_z^α ∂̄_w^α a(w + t(z-w), w) dt.
///
/// Only the holomorphic slot is shifted. Writing w + t(z-w) = t z + (1-t) w,
/// each (t z_j + (1-t) w_j)^n expands binomially and the t-integrals are Beta
/// values |α| B(K+1, |α|+L) = |α| K! (|α|+L-1)! / (K+L+|α|)!.
inline WickSymbol remainder_symbol(const WickSymbol& a, const MultiIndex& alpha) {
  if (alpha.dimension() != a.dimension()) throw UsageError("remainder_symbol: dimension mismatch");
  if (alpha.is_zero()) throw UsageError("remainder_symbol: alpha must be nonzero");
  const std::size_t d = a.dimension();
  const int order = alpha.degree();
  const WickSymbol deriv = differentiate(a, alpha, alpha);

  auto fact = [](int n) { return MultiIndex{n}.factorial_real(); };
  WickSymbol out(d);
  for (const auto& [m, c] : deriv.terms()) {
    // Enumerate k ≤ m.z: k_j powers of z_j, m.z_j - k_j powers of w_j.
    for (const MultiIndex& k : enumerate_basis(d, m.z.degree())) {
      if (!k.le(m.z)) continue;
      const int K = k.degree();
      const int L = m.z.degree() - K;
      double binom = 1.0;
      for (std::size_t j = 0; j < d; ++j) binom *= static_cast<double>(binomial(m.z[j], k[j]));
      const double beta_val = order * fact(K) * fact(order + L - 1) / fact(K + L + order);
      out.add_general(k, m.w + (m.z - k), m.wbar, c * binom * beta_val);
    }
  }
  return out;
}

/// All symbols of the expansion at order N. N = 0 is accepted as an extension.
inline WickToAntiWickDecomposition decompose(const WickSymbol& a, int order) {
  if (order < 0) throw UsageError("decompose: order must be non-negative");
  const std::size_t d = a.dimension();
  WickToAntiWickDecomposition dec;
  dec.order = order;
  dec.extension = order == 0;
  for (const MultiIndex& alpha : enumerate_basis(d, order + 1)) {
    const int sign = alpha.degree() % 2 == 0 ? 1 : -1;
    const double weight = 1.0 / alpha.factorial_real();
    if (alpha.degree() <= order)
      dec.main_terms.push_back({alpha, diagonal_derivative_symbol(a, alpha), sign, weight});
    else
      dec.remainder_terms.push_back({alpha, remainder_symbol(a, alpha), sign, weight});
  }
  return dec;
}

/// Right-hand side of the expansion as a matrix on degree ≤ n_in, codomain n_out.
inline OperatorMatrix decomposition_matrix(const WickToAntiWickDecomposition& dec, std::size_t dimension, int n_in,
                                           int n_out, bool include_remainder = true) {
  OperatorMatrix sum(dimension, n_in, n_out, Side::fock);
  for (const auto& t : dec.main_terms) {
    if (t.symbol.pruned().empty()) continue;
    sum.entries += (t.sign * t.weight) * antiwick_matrix(t.symbol, n_in, n_out).entries;
  }
  if (include_remainder)
    for (const auto& t : dec.remainder_terms) {
      if (t.symbol.pruned().empty()) continue;
      sum.entries += (t.sign * t.weight) * wick_matrix(t.symbol, n_in, n_out).entries;
    }
  return sum;
}

/// Codomain degree exact for the symbol and every symbol of the decomposition.
inline int decomposition_codomain(const WickSymbol& a, const WickToAntiWickDecomposition& dec, int n_in) {
  int shift = a.output_shift();
  for (const auto& t : dec.main_terms) shift = std::max(shift, t.symbol.output_shift());
  for (const auto& t : dec.remainder_terms) shift = std::max(shift, t.symbol.output_shift());
  return n_in + shift;
}

/// max |Op_V(a) - RHS| over the matrix entries on degree ≤ trunc_degree.
inline double verify_decomposition(const WickSymbol& a, int order, int trunc_degree, bool include_remainder = true) {
  const WickToAntiWickDecomposition dec = decompose(a, order);
  const int n_out = decomposition_codomain(a, dec, trunc_degree);
  const OperatorMatrix lhs = wick_matrix(a, trunc_degree, n_out);
  const OperatorMatrix rhs = decomposition_matrix(dec, a.dimension(), trunc_degree, n_out, include_remainder);
  return max_deviation(lhs, rhs);
}

}  // namespace fockcalc
