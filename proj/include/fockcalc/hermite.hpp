#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <span>
#include <sstream>
#include <vector>

#include "fockcalc/core/basis.hpp"
#include "fockcalc/core/expansion.hpp"
#include "fockcalc/core/quadrature.hpp"

namespace fockcalc {

/// Sample of a function on R^d.
using RealSampler = std::function<Complex(std::span<const double>)>;

/// h_0(t), ..., h_{max_order}(t) via the normalized three-term recurrence.
inline std::vector<double> hermite_functions_1d(int max_order, double t) {
  std::vector<double> h(static_cast<std::size_t>(max_order) + 1);
  h[0] = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * t * t);
  if (max_order >= 1) h[1] = std::sqrt(2.0) * t * h[0];
  for (int n = 1; n < max_order; ++n)
    h[n + 1] = std::sqrt(2.0 / (n + 1)) * t * h[n] - std::sqrt(static_cast<double>(n) / (n + 1)) * h[n - 1];
  return h;
}

/// h_α(x) = Π_j h_{α_j}(x_j).
inline double hermite_function(const MultiIndex& alpha, std::span<const double> x) {
  if (alpha.dimension() != x.size()) throw UsageError("hermite_function: dimension mismatch");
  double v = 1.0;
  for (std::size_t j = 0; j < x.size(); ++j) v *= hermite_functions_1d(alpha[j], x[j]).back();
  return v;
}

enum class Ladder { creation, annihilation };

/// Creation A = -d/dx_j + x_j or annihilation A† = d/dx_j + x_j in one coordinate.
struct LadderKind {
  Ladder tag;
  std::size_t coordinate;
};

/// Coefficients c_α = (f, h_α) for |α| ≤ max_degree from a tensor Gauss-Hermite
/// rule. Samples are multiplied by e^{|x|^2} before the weighted sum, so slowly
/// decaying f lose accuracy.
inline CoefficientExpansion hermite_coefficients(const RealSampler& f, std::size_t dimension, int max_degree,
                                                 std::optional<int> quad_order = std::nullopt) {
  if (dimension == 0) throw UsageError("hermite_coefficients: dimension must be positive");
  if (max_degree < 0) throw UsageError("hermite_coefficients: degree bound must be non-negative");
  const int order = quad_order.value_or(max_degree + 20);
  if (order < max_degree + 1) throw UsageError("hermite_coefficients: quadrature order below degree bound");

  const QuadratureRule rule = gauss_hermite(order);
  // Folded weights w_i e^{x_i^2} and per-node Hermite tables.
  std::vector<double> folded(order);
  std::vector<std::vector<double>> table(order);
  for (int i = 0; i < order; ++i) {
    const double x = rule.nodes[i];
    folded[i] = std::exp(std::log(rule.weights[i]) + x * x);
    table[i] = hermite_functions_1d(max_degree, x);
  }

  const GradedBasis basis(dimension, max_degree);
  std::vector<Complex> acc(basis.size());
  std::vector<int> node(dimension, 0);
  std::vector<double> point(dimension);
  for (;;) {
    double w = 1.0;
    for (std::size_t j = 0; j < dimension; ++j) {
      point[j] = rule.nodes[node[j]];
      w *= folded[node[j]];
    }
    const Complex fx = f(point);
    if (!std::isfinite(fx.real()) || !std::isfinite(fx.imag())) {
      std::ostringstream msg;
      msg << "non-finite sample at quadrature node x = (";
      for (std::size_t j = 0; j < dimension; ++j) msg << (j ? ", " : "") << point[j];
      msg << ")";
      throw InputError(msg.str());
    }
    const Complex wf = w * fx;
    for (std::size_t b = 0; b < basis.size(); ++b) {
      double h = 1.0;
      for (std::size_t j = 0; j < dimension; ++j) h *= table[node[j]][basis[b][j]];
      acc[b] += wf * h;
    }
    std::size_t j = 0;
    for (; j < dimension; ++j) {
      if (++node[j] < order) break;
      node[j] = 0;
    }
    if (j == dimension) break;
  }

  CoefficientExpansion out(dimension, Side::hermite);
  for (std::size_t b = 0; b < basis.size(); ++b) out.set(basis[b], acc[b]);
  return out;
}

/// Σ_α c_α h_α(x).
inline Complex synthesize(const CoefficientExpansion& f, std::span<const double> x) {
  if (f.side() != Side::hermite) throw UsageError("synthesize: expansion must be on the hermite side");
  if (x.size() != f.dimension()) throw UsageError("synthesize: point dimension mismatch");
  if (f.empty()) return {};
  const int top = f.degree_bound();
  std::vector<std::vector<double>> table;
  table.reserve(x.size());
  for (double t : x) table.push_back(hermite_functions_1d(top, t));
  Complex s{};
  for (const auto& [alpha, c] : f.coeffs()) {
    double h = 1.0;
    for (std::size_t j = 0; j < x.size(); ++j) h *= table[j][alpha[j]];
    s += c * h;
  }
  return s;
}

/// Creation: h_α ↦ √(2(α_j+1)) h_{α+e_j}. Annihilation: h_α ↦ √(2α_j) h_{α-e_j}.
inline CoefficientExpansion apply_ladder(const CoefficientExpansion& f, LadderKind op) {
  if (f.side() != Side::hermite) throw UsageError("apply_ladder: expansion must be on the hermite side");
  if (op.coordinate >= f.dimension()) throw UsageError("apply_ladder: coordinate out of range");
  const std::size_t j = op.coordinate;
  CoefficientExpansion out(f.dimension(), Side::hermite);
  for (const auto& [alpha, c] : f.coeffs()) {
    const int n = alpha[j];
    if (op.tag == Ladder::creation) {
      out.add(alpha.with(j, n + 1), c * std::sqrt(2.0 * (n + 1)));
    } else if (n > 0) {
      out.add(alpha.with(j, n - 1), c * std::sqrt(2.0 * n));
    }
  }
  return out;
}

/// R = -Δ + |x|^2 acting as c_α ↦ (2|α| + d) c_α.
inline CoefficientExpansion apply_hermite_operator(const CoefficientExpansion& f) {
  if (f.side() != Side::hermite) throw UsageError("apply_hermite_operator: expansion must be on the hermite side");
  CoefficientExpansion out(f.dimension(), Side::hermite);
  const double d = static_cast<double>(f.dimension());
  for (const auto& [alpha, c] : f.coeffs()) out.set(alpha, c * (2.0 * alpha.degree() + d));
  return out;
}

/// Uniform box grid [-half_width, half_width]^d for sup-norm probes.
struct BoxGrid {
  std::optional<double> half_width;  // defaults to the turning-point radius
  int points_per_axis = 201;
};

/// sup_grid |R^N f| for N = 0..max_power.
inline std::vector<double> norm_growth_probe(const CoefficientExpansion& f, int max_power, const BoxGrid& grid = {}) {
  if (f.side() != Side::hermite) throw UsageError("norm_growth_probe: expansion must be on the hermite side");
  if (max_power < 0) throw UsageError("norm_growth_probe: max power must be non-negative");
  if (grid.points_per_axis < 2) throw UsageError("norm_growth_probe: need at least 2 grid points per axis");
  const std::size_t d = f.dimension();
  const double L = grid.half_width.value_or(std::sqrt(4.0 * max_power + 2.0 * std::max(f.degree_bound(), 0)));
  if (!(L > 0.0)) throw UsageError("norm_growth_probe: grid half-width must be positive");
  const int m = grid.points_per_axis;
  const double step = 2.0 * L / (m - 1);

  // R^p f has coefficients λ_α^p c_α; evaluate each h_α once per grid point.
  const double dd = static_cast<double>(d);
  const int top = std::max(f.degree_bound(), 0);
  std::vector<double> sup(static_cast<std::size_t>(max_power) + 1, 0.0);
  std::vector<int> pos(d, 0);
  std::vector<std::vector<double>> table(d);
  for (;;) {
    for (std::size_t j = 0; j < d; ++j) table[j] = hermite_functions_1d(top, -L + step * pos[j]);
    std::vector<Complex> terms;
    std::vector<double> eig;
    for (const auto& [alpha, c] : f.coeffs()) {
      double h = 1.0;
      for (std::size_t j = 0; j < d; ++j) h *= table[j][alpha[j]];
      terms.push_back(c * h);
      eig.push_back(2.0 * alpha.degree() + dd);
    }
    for (int p = 0; p <= max_power; ++p) {
      Complex v{};
      for (std::size_t t = 0; t < terms.size(); ++t) {
        v += terms[t];
        terms[t] *= eig[t];
      }
      sup[p] = std::max(sup[p], std::abs(v));
    }
    std::size_t j = 0;
    for (; j < d; ++j) {
      if (++pos[j] < m) break;
      pos[j] = 0;
    }
    if (j == d) break;
  }
  return sup;
}

}  // namespace fockcalc
