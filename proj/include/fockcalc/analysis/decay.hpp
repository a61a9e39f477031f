#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "fockcalc/core/expansion.hpp"

namespace fockcalc {

enum class DecayFamily { roumieu_s, flat_sigma, finite };

inline std::string_view to_string(DecayFamily f) {
  switch (f) {
    case DecayFamily::roumieu_s: return "roumieu_s";
    case DecayFamily::flat_sigma: return "flat_sigma";
    case DecayFamily::finite: return "finite";
  }
  return "?";
}

/// Fitted decay of shell maxima M_k = max{|c_α| : |α| = k}.
///  roumieu_s:  log M_k ≈ log C - r k^{1/(2s)}          (parameter = s)
///  flat_sigma: log M_k ≈ log C + k log r - log(k!)/(2σ) (parameter = σ)
///  finite:     no nonzero shell past some k_0 below the horizon (H_0)
struct DecayFit {
  DecayFamily family = DecayFamily::finite;
  double parameter = 0.0;
  double rate = 0.0;
  double log_prefactor = 0.0;
  double residual = 0.0;
  int shells_used = 0;
  bool inconclusive = false;
};

struct DecayOptions {
  /// Shells whose maximum is ≤ this count as empty.
  double zero_tolerance = 0.0;
  /// Degree up to which the coefficients are known; defaults to the expansion's
  /// degree bound. Nonzero shells ending below it mark a finite expansion.
  std::optional<int> horizon;
  double s_min = 0.1;
  double s_max = 4.0;
  double s_tolerance = 1e-3;
};

/// M_0, ..., M_K for K = degree_bound.
inline std::vector<double> shell_maxima(const CoefficientExpansion& c) {
  std::vector<double> m(static_cast<std::size_t>(std::max(c.degree_bound(), -1) + 1), 0.0);
  for (const auto& [alpha, v] : c.coeffs()) m[alpha.degree()] = std::max(m[alpha.degree()], std::abs(v));
  return m;
}

namespace detail {

struct ShellData {
  std::vector<double> k;
  std::vector<double> log_m;
};

// Least squares y ≈ A - r x with r ≥ 0; returns RMS residual.
inline double fit_decreasing_line(const std::vector<double>& x, const std::vector<double>& y, double& A, double& r) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double den = n * sxx - sx * sx;
  double slope = den != 0.0 ? (n * sxy - sx * sy) / den : 0.0;
  if (slope > 0.0) slope = 0.0;
  r = -slope;
  A = (sy - slope * sx) / n;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - (A - r * x[i]);
    ss += e * e;
  }
  return std::sqrt(ss / n);
}

inline double roumieu_residual(const ShellData& data, double s, double& A, double& r) {
  std::vector<double> x(data.k.size());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::pow(data.k[i], 1.0 / (2.0 * s));
  return fit_decreasing_line(x, data.log_m, A, r);
}

}  // namespace detail

/// Classifies the decay of Hermite (or Fock) coefficients from shell maxima.
/// `family` selects the fit when the expansion is not finite.
inline DecayFit classify_decay(const CoefficientExpansion& c, DecayFamily family, const DecayOptions& opt = {}) {
  const std::vector<double> m = shell_maxima(c);
  const int horizon = std::max(opt.horizon.value_or(c.degree_bound()), c.degree_bound());
  detail::ShellData data;
  int last_nonzero = -1;
  for (std::size_t k = 0; k < m.size(); ++k) {
    if (m[k] > opt.zero_tolerance) {
      data.k.push_back(static_cast<double>(k));
      data.log_m.push_back(std::log(m[k]));
      last_nonzero = static_cast<int>(k);
    }
  }

  DecayFit fit;
  fit.shells_used = static_cast<int>(data.k.size());
  if (data.k.empty() || last_nonzero < horizon || family == DecayFamily::finite) {
    if (!data.k.empty() && last_nonzero >= horizon)
      throw InputError("classify_decay: expansion has nonzero coefficients up to its horizon; not a finite series");
    fit.family = DecayFamily::finite;
    return fit;
  }
  if (data.k.size() < 4)
    throw InputError("classify_decay: fewer than 4 nonzero shells; for a finite Hermite series set a horizon "
                     "above its top degree to classify it as H_0");

  fit.family = family;
  if (family == DecayFamily::roumieu_s) {
    // Golden-section search on the least-squares residual over s.
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = opt.s_min, hi = opt.s_max;
    double A = 0, r = 0;
    double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
    double f1 = detail::roumieu_residual(data, x1, A, r), f2 = detail::roumieu_residual(data, x2, A, r);
    while (hi - lo > opt.s_tolerance) {
      if (f1 <= f2) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - g * (hi - lo);
        f1 = detail::roumieu_residual(data, x1, A, r);
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + g * (hi - lo);
        f2 = detail::roumieu_residual(data, x2, A, r);
      }
    }
    const double s = 0.5 * (lo + hi);
    fit.residual = detail::roumieu_residual(data, s, A, r);
    fit.parameter = s;
    fit.rate = r;
    fit.log_prefactor = A;
    fit.inconclusive = s - opt.s_min < 10 * opt.s_tolerance || opt.s_max - s < 10 * opt.s_tolerance || r <= 0.0;
    return fit;
  }

  // flat_sigma: linear in (log C, log r, 1/(2σ)).
  const auto n = static_cast<Eigen::Index>(data.k.size());
  Eigen::MatrixXd X(n, 3);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double k = data.k[static_cast<std::size_t>(i)];
    X(i, 0) = 1.0;
    X(i, 1) = k;
    X(i, 2) = -std::lgamma(k + 1.0);
    y[i] = data.log_m[static_cast<std::size_t>(i)];
  }
  const Eigen::VectorXd beta = X.colPivHouseholderQr().solve(y);
  fit.log_prefactor = beta[0];
  fit.rate = std::exp(beta[1]);
  fit.parameter = beta[2] > 0.0 ? 1.0 / (2.0 * beta[2]) : std::numeric_limits<double>::infinity();
  fit.inconclusive = !(beta[2] > 0.0);
  fit.residual = std::sqrt((X * beta - y).squaredNorm() / static_cast<double>(n));
  return fit;
}

/// Fit of log n_N ≈ log C + N log h + 2s log N! to sup-norms of R^N f.
struct NormGrowthFit {
  double h = 0.0;
  double s = 0.0;
  double log_prefactor = 0.0;
  double residual = 0.0;
  /// Residual below 0.05 on at least 6 samples.
  bool reliable = false;
};

inline NormGrowthFit fit_norm_growth(const std::vector<double>& norms) {
  if (norms.size() < 4) throw UsageError("fit_norm_growth: need at least 4 norms");
  for (double v : norms)
    if (!(v > 0.0) || !std::isfinite(v)) throw InputError("fit_norm_growth: norms must be positive and finite");
  const auto n = static_cast<Eigen::Index>(norms.size());
  Eigen::MatrixXd X(n, 3);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    X(i, 0) = 1.0;
    X(i, 1) = static_cast<double>(i);
    X(i, 2) = std::lgamma(static_cast<double>(i) + 1.0);
    y[i] = std::log(norms[static_cast<std::size_t>(i)]);
  }
  const Eigen::VectorXd beta = X.colPivHouseholderQr().solve(y);
  NormGrowthFit fit;
  fit.log_prefactor = beta[0];
  fit.h = std::exp(beta[1]);
  fit.s = 0.5 * beta[2];
  fit.residual = std::sqrt((X * beta - y).squaredNorm() / static_cast<double>(n));
  fit.reliable = fit.residual < 0.05 && n >= 6;
  return fit;
}

}  // namespace fockcalc
