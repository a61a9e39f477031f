#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "fockcalc/symbols/wick_symbol.hpp"

namespace fockcalc {

/// ω(x) = ⟨x⟩^t with ⟨x⟩ = (1 + |x|^2)^{1/2}, and the Shubin decay exponent ρ.
struct ShubinWeight {
  double t = 0.0;
  double rho = 1.0;

  ShubinWeight() = default;
  ShubinWeight(double exponent, double rho_) : t(exponent), rho(rho_) {
    if (!(rho_ >= 0.0 && rho_ <= 1.0)) throw UsageError("ShubinWeight: rho must lie in [0, 1]");
  }

  /// ω evaluated on C^d through C^d ≅ R^{2d}.
  double operator()(std::span<const Complex> x) const { return std::pow(1.0 + norm_squared(x), 0.5 * t); }

  static double norm_squared(std::span<const Complex> x) {
    double s = 0.0;
    for (const Complex& c : x) s += std::norm(c);
    return s;
  }
  static double bracket(std::span<const Complex> x) { return std::sqrt(1.0 + norm_squared(x)); }
};

/// Points of C^d built as the product of a per-coordinate polar grid:
/// the origin plus `radii` equally spaced rings out to `radius`, `angles` points each.
struct ComplexGrid {
  double radius = 4.0;
  int radii = 12;
  int angles = 16;

  std::vector<std::vector<Complex>> points(std::size_t dimension) const {
    if (radius <= 0.0 || radii < 1 || angles < 1) throw UsageError("ComplexGrid: empty grid");
    std::vector<Complex> axis{Complex{}};
    for (int i = 1; i <= radii; ++i)
      for (int k = 0; k < angles; ++k)
        axis.push_back(std::polar(radius * i / radii, 2.0 * std::numbers::pi * k / angles));
    std::vector<std::vector<Complex>> out{{}};
    for (std::size_t j = 0; j < dimension; ++j) {
      std::vector<std::vector<Complex>> next;
      next.reserve(out.size() * axis.size());
      for (const auto& p : out)
        for (const Complex& c : axis) {
          next.push_back(p);
          next.back().push_back(c);
        }
      out = std::move(next);
    }
    return out;
  }
};

/// Grid supremum of a ratio, where it is attained, and how it grows with the
/// radius max(|z|, |w|). A finite supremum is consistency evidence, never proof.
struct BoundReport {
  double sup = 0.0;
  std::vector<Complex> argmax_z;
  std::vector<Complex> argmax_w;
  double grid_radius = 0.0;
  std::vector<double> shell_radii;
  std::vector<double> shell_sup;
  bool grows_with_radius = false;
};

namespace detail {

// Grid sweep of exp(log_ratio(z, w)), binned by max(|z|, |w|).
template <class LogRatio>
BoundReport sweep_pairs(std::size_t d, const ComplexGrid& grid, LogRatio&& log_ratio) {
  const auto pts = grid.points(d);
  if (pts.empty()) throw UsageError("bound check: empty grid");
  BoundReport rep;
  rep.grid_radius = grid.radius;
  const int shells = grid.radii + 1;
  std::vector<double> shell_log(shells, -std::numeric_limits<double>::infinity());
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& z : pts) {
    for (const auto& w : pts) {
      const double lr = log_ratio(z, w);
      const double r = std::sqrt(std::max(ShubinWeight::norm_squared(z), ShubinWeight::norm_squared(w)));
      const int shell = std::clamp(static_cast<int>(std::lround(r / grid.radius * grid.radii)), 0, shells - 1);
      shell_log[shell] = std::max(shell_log[shell], lr);
      if (lr > best) {
        best = lr;
        rep.argmax_z = z;
        rep.argmax_w = w;
      }
    }
  }
  rep.sup = std::exp(best);
  for (int i = 0; i < shells; ++i) {
    rep.shell_radii.push_back(grid.radius * i / grid.radii);
    rep.shell_sup.push_back(std::exp(shell_log[i]));
  }
  rep.grows_with_radius = shells >= 2 && rep.shell_sup[shells - 1] > rep.shell_sup[shells - 2] &&
                          rep.shell_sup[shells - 1] > rep.shell_sup.front();
  return rep;
}

inline double log_abs(Complex v) {
  const double a = std::abs(v);
  return a > 0.0 ? std::log(a) : -std::numeric_limits<double>::infinity();
}

}  // namespace detail

enum class BoundDirection { gain, loss };

/// sup |a(z,w)| e^{-½|z-w|^2 ± r(|z|^{1/s} + |w|^{1/s})}, + for the gain
/// (Gelfand-Shilov to dual) direction and - for loss.
inline BoundReport symbol_bound_check(const WickSymbol& a, double s, double r, BoundDirection direction,
                                      const ComplexGrid& grid = {}) {
  if (s < 0.5) throw UsageError("symbol_bound_check: s must be at least 1/2");
  if (!(r > 0.0)) throw UsageError("symbol_bound_check: r must be positive");
  const double sign = direction == BoundDirection::gain ? 1.0 : -1.0;
  return detail::sweep_pairs(a.dimension(), grid, [&](const auto& z, const auto& w) {
    std::vector<Complex> diff(z.size());
    for (std::size_t j = 0; j < z.size(); ++j) diff[j] = z[j] - w[j];
    const double growth = std::pow(std::sqrt(ShubinWeight::norm_squared(z)), 1.0 / s) +
                          std::pow(std::sqrt(ShubinWeight::norm_squared(w)), 1.0 / s);
    return detail::log_abs(a.evaluate(z, w)) - 0.5 * ShubinWeight::norm_squared(diff) + sign * r * growth;
  });
}

/// ∂_z^α ∂̄_w^β a, term by term.
inline WickSymbol differentiate(const WickSymbol& a, const MultiIndex& dz, const MultiIndex& dwbar) {
  WickSymbol out(a.dimension(), a.is_point_symbol() && dz.is_zero());
  for (const auto& [m, c] : a.terms()) {
    if (!dz.le(m.z) || !dwbar.le(m.wbar)) continue;
    double f = 1.0;
    for (std::size_t j = 0; j < a.dimension(); ++j) {
      for (int k = 0; k < dz[j]; ++k) f *= m.z[j] - k;
      for (int k = 0; k < dwbar[j]; ++k) f *= m.wbar[j] - k;
    }
    out.add_general(m.z - dz, m.w, m.wbar - dwbar, c * f);
  }
  return out;
}

struct ShubinEntry {
  MultiIndex alpha;
  MultiIndex beta;
  int decay_order = 0;
  BoundReport report;
};

/// For every |α+β| ≤ max_order and N ≤ max_decay, the grid supremum of
/// |∂_z^α ∂̄_w^β a| / (e^{½|z-w|^2} ω(√2 conj z) ⟨z+w⟩^{-ρ|α+β|} ⟨z-w⟩^{-N}).
inline std::vector<ShubinEntry> shubin_estimate_check(const WickSymbol& a, const ShubinWeight& weight, int max_order,
                                                      int max_decay, const ComplexGrid& grid = {}) {
  if (max_order < 0 || max_decay < 0) throw UsageError("shubin_estimate_check: orders must be non-negative");
  const std::size_t d = a.dimension();
  std::vector<ShubinEntry> out;
  for (int total = 0; total <= max_order; ++total) {
    for (int za = 0; za <= total; ++za) {
      for (const MultiIndex& alpha : enumerate_basis(d, za)) {
        if (alpha.degree() != za) continue;
        for (const MultiIndex& beta : enumerate_basis(d, total - za)) {
          if (beta.degree() != total - za) continue;
          const WickSymbol deriv = differentiate(a, alpha, beta);
          for (int n = 0; n <= max_decay; ++n) {
            auto rep = detail::sweep_pairs(d, grid, [&](const auto& z, const auto& w) {
              std::vector<Complex> diff(d), sum(d), root2zbar(d);
              for (std::size_t j = 0; j < d; ++j) {
                diff[j] = z[j] - w[j];
                sum[j] = z[j] + w[j];
                root2zbar[j] = std::sqrt(2.0) * std::conj(z[j]);
              }
              return detail::log_abs(deriv.evaluate(z, w)) - 0.5 * ShubinWeight::norm_squared(diff) -
                     std::log(weight(root2zbar)) + weight.rho * total * std::log(ShubinWeight::bracket(sum)) +
                     n * std::log(ShubinWeight::bracket(diff));
            });
            out.push_back({alpha, beta, n, std::move(rep)});
          }
        }
      }
    }
  }
  return out;
}

}  // namespace fockcalc
