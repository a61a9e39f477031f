#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "fockcalc/symbols/bounds.hpp"
#include "fockcalc/symbols/quantization.hpp"

namespace fockcalc {

/// Diagonal sampling for a(w, w). In d = 1 a polar grid; in higher dimension
/// the product of a coarser per-coordinate polar grid.
struct DiagonalGrid {
  double radius = 4.0;
  int radii = 33;
  int angles = 64;
  int radii_multi = 6;
  int angles_multi = 8;

  ComplexGrid for_dimension(std::size_t d) const {
    // The origin is ring 0, so `radii` rings in total.
    if (d == 1) return ComplexGrid{radius, std::max(radii - 1, 1), angles};
    return ComplexGrid{radius, radii_multi, angles_multi};
  }
};

struct GardingReport {
  std::vector<int> truncation_degrees;
  std::vector<double> min_real_eigenvalues;  // of (M + M*)/2, M the compressed Wick matrix
  std::vector<double> max_imag_norms;        // spectral norm of (M - M*)/(2i)
  double diagonal_min = 0.0;                 // grid estimate of min Re a(w, w)
  double diagonal_max_imag = 0.0;            // grid estimate of max |Im a(w, w)|
  bool stabilized = false;
  std::optional<double> rho;
  std::vector<ShubinEntry> shubin;  // cross-report when rho is given
};

struct GardingOptions {
  DiagonalGrid diag_grid;
  double relative_plateau = 0.05;
  double absolute_plateau = 1e-6;
  /// Shubin exponent for the cross-report with ω = ⟨·⟩^{2ρ}; not inferred.
  std::optional<double> rho;
};

/// Spectral probe of Re/Im (Op_V(a)F, F) on the truncations span{e_γ : |γ| ≤ N}.
inline GardingReport garding_check(const WickSymbol& a, const std::vector<int>& truncations,
                                   const GardingOptions& opt = {}) {
  if (truncations.empty()) throw UsageError("garding_check: no truncations given");
  for (std::size_t i = 0; i < truncations.size(); ++i) {
    if (truncations[i] < 0) throw UsageError("garding_check: truncations must be non-negative");
    if (i > 0 && truncations[i] <= truncations[i - 1]) throw UsageError("garding_check: truncations must increase");
  }
  GardingReport rep;
  for (int n : truncations) {
    const OperatorMatrix m = wick_matrix(a, n).compress();
    const Eigen::MatrixXcd herm = 0.5 * (m.entries + m.entries.adjoint());
    const Eigen::MatrixXcd skew = (m.entries - m.entries.adjoint()) / Complex(0.0, 2.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> re(herm, Eigen::EigenvaluesOnly);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> im(skew, Eigen::EigenvaluesOnly);
    if (re.info() != Eigen::Success || im.info() != Eigen::Success)
      throw NumericalError("garding_check: eigen-solver did not converge at truncation " + std::to_string(n));
    rep.truncation_degrees.push_back(n);
    rep.min_real_eigenvalues.push_back(re.eigenvalues().minCoeff());
    rep.max_imag_norms.push_back(im.eigenvalues().cwiseAbs().maxCoeff());
  }

  double dmin = std::numeric_limits<double>::infinity(), dimag = 0.0;
  for (const auto& w : opt.diag_grid.for_dimension(a.dimension()).points(a.dimension())) {
    const Complex v = a.evaluate_diagonal(w);
    dmin = std::min(dmin, v.real());
    dimag = std::max(dimag, std::abs(v.imag()));
  }
  rep.diagonal_min = dmin;
  rep.diagonal_max_imag = dimag;

  const auto& ev = rep.min_real_eigenvalues;
  if (ev.size() >= 2) {
    const double x = ev[ev.size() - 1], y = ev[ev.size() - 2];
    const double diff = std::abs(x - y);
    rep.stabilized = diff < opt.absolute_plateau || diff < opt.relative_plateau * std::max(std::abs(x), std::abs(y));
  }

  if (opt.rho) {
    rep.rho = opt.rho;
    ComplexGrid g{opt.diag_grid.radius, a.dimension() == 1 ? 8 : 3, a.dimension() == 1 ? 12 : 4};
    rep.shubin = shubin_estimate_check(a, ShubinWeight(2.0 * *opt.rho, *opt.rho), 1, 0, g);
  }
  return rep;
}

}  // namespace fockcalc
