#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "fockcalc/core/expansion.hpp"
#include "fockcalc/core/quadrature.hpp"
#include "fockcalc/hermite.hpp"

namespace fockcalc {

/// Point z of C^d.
struct FockPoint {
  std::vector<Complex> z;

  FockPoint() = default;
  explicit FockPoint(std::vector<Complex> coords) : z(std::move(coords)) {
    for (const Complex& c : z)
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) throw InputError("FockPoint: non-finite component");
  }
  FockPoint(std::initializer_list<Complex> coords) : FockPoint(std::vector<Complex>(coords)) {}

  std::size_t dimension() const noexcept { return z.size(); }
  Complex operator[](std::size_t j) const { return z[j]; }
};

/// Bilinear pairing ⟨z, w⟩ = Σ z_j w_j (Bargmann kernel).
inline Complex bilinear(std::span<const Complex> z, std::span<const Complex> w) {
  if (z.size() != w.size()) throw UsageError("bilinear pairing: dimension mismatch");
  Complex s{};
  for (std::size_t j = 0; j < z.size(); ++j) s += z[j] * w[j];
  return s;
}

/// Sesquilinear pairing (z, w) = Σ z_j conj(w_j) (Wick kernels).
inline Complex sesquilinear(std::span<const Complex> z, std::span<const Complex> w) {
  if (z.size() != w.size()) throw UsageError("sesquilinear pairing: dimension mismatch");
  Complex s{};
  for (std::size_t j = 0; j < z.size(); ++j) s += z[j] * std::conj(w[j]);
  return s;
}

namespace detail {

// log of the Bargmann kernel; bilinear ⟨z,z⟩ and ⟨z,y⟩.
inline Complex log_bargmann_kernel(const FockPoint& z, std::span<const double> y) {
  const double d = static_cast<double>(z.dimension());
  Complex zz{}, zy{};
  double yy = 0.0;
  for (std::size_t j = 0; j < y.size(); ++j) {
    zz += z[j] * z[j];
    zy += z[j] * y[j];
    yy += y[j] * y[j];
  }
  return -0.25 * d * std::log(std::numbers::pi) - 0.5 * (zz + yy) + std::sqrt(2.0) * zy;
}

}  // namespace detail

/// A_d(z, y) = π^{-d/4} exp(-½(⟨z,z⟩ + |y|^2) + √2⟨z,y⟩).
inline Complex bargmann_kernel(const FockPoint& z, std::span<const double> y) {
  if (z.dimension() != y.size()) throw UsageError("bargmann_kernel: dimension mismatch");
  return std::exp(detail::log_bargmann_kernel(z, y));
}

/// ∫ A_d(z, y) f(y) dy by tensor Gauss-Hermite, with e^{|y|^2} folded into the
/// kernel exponent so each node costs one exp.
inline Complex bargmann_integral(const RealSampler& f, const FockPoint& z, int quad_order = 60) {
  const std::size_t d = z.dimension();
  if (d == 0) throw UsageError("bargmann_integral: empty point");
  const QuadratureRule rule = gauss_hermite(quad_order);
  std::vector<double> log_w(quad_order);
  for (int i = 0; i < quad_order; ++i) log_w[i] = std::log(rule.weights[i]);

  std::vector<int> node(d, 0);
  std::vector<double> y(d);
  Complex acc{};
  for (;;) {
    double lw = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      y[j] = rule.nodes[node[j]];
      lw += log_w[node[j]] + y[j] * y[j];
    }
    const Complex fy = f(y);
    if (!std::isfinite(fy.real()) || !std::isfinite(fy.imag())) {
      std::ostringstream msg;
      msg << "non-finite sample at quadrature node y = (";
      for (std::size_t j = 0; j < d; ++j) msg << (j ? ", " : "") << y[j];
      msg << ")";
      throw InputError(msg.str());
    }
    if (fy != Complex{}) acc += fy * std::exp(detail::log_bargmann_kernel(z, y) + lw);
    std::size_t j = 0;
    for (; j < d; ++j) {
      if (++node[j] < quad_order) break;
      node[j] = 0;
    }
    if (j == d) break;
  }
  return acc;
}

/// Coefficient realization of the transform: h_α ↦ e_α.
inline CoefficientExpansion bargmann_coeff(const CoefficientExpansion& f) {
  if (f.side() != Side::hermite) throw UsageError("bargmann_coeff: expansion must be on the hermite side");
  return f.retagged(Side::fock);
}

/// Inverse of bargmann_coeff.
inline CoefficientExpansion inverse_bargmann_coeff(const CoefficientExpansion& F) {
  if (F.side() != Side::fock) throw UsageError("inverse_bargmann_coeff: expansion must be on the fock side");
  return F.retagged(Side::hermite);
}

/// e_α(z) = z^α / √(α!).
inline Complex fock_monomial(const MultiIndex& alpha, const FockPoint& z) {
  Complex v = 1.0;
  for (std::size_t j = 0; j < z.dimension(); ++j) {
    const int n = alpha[j];
    for (int k = 1; k <= n; ++k) v *= z[j] / std::sqrt(static_cast<double>(k));
  }
  return v;
}

/// Σ c_α e_α(z).
inline Complex evaluate_fock(const CoefficientExpansion& F, const FockPoint& z) {
  if (F.side() != Side::fock) throw UsageError("evaluate_fock: expansion must be on the fock side");
  if (z.dimension() != F.dimension()) throw UsageError("evaluate_fock: dimension mismatch");
  Complex s{};
  for (const auto& [alpha, c] : F.coeffs()) s += c * fock_monomial(alpha, z);
  return s;
}

/// Multiplication by z_j: e_α ↦ √(α_j+1) e_{α+e_j}.
inline CoefficientExpansion multiply_by_z(const CoefficientExpansion& F, std::size_t j) {
  if (F.side() != Side::fock) throw UsageError("multiply_by_z: expansion must be on the fock side");
  CoefficientExpansion out(F.dimension(), Side::fock);
  for (const auto& [alpha, c] : F.coeffs()) out.add(alpha.with(j, alpha[j] + 1), c * std::sqrt(alpha[j] + 1.0));
  return out;
}

/// ∂/∂z_j: e_α ↦ √(α_j) e_{α-e_j}.
inline CoefficientExpansion differentiate_z(const CoefficientExpansion& F, std::size_t j) {
  if (F.side() != Side::fock) throw UsageError("differentiate_z: expansion must be on the fock side");
  CoefficientExpansion out(F.dimension(), Side::fock);
  for (const auto& [alpha, c] : F.coeffs())
    if (alpha[j] > 0) out.add(alpha.with(j, alpha[j] - 1), c * std::sqrt(static_cast<double>(alpha[j])));
  return out;
}

/// Polar rule for ∫_C g(w) dμ(w), dμ = π^{-1} e^{-|w|^2} dλ, in d = 1.
/// Radial Gauss-Laguerre in u = |w|^2, uniform angles.
class FockPolarRule {
 public:
  FockPolarRule(int radial_order, int angular_order)
      : radial_(gauss_laguerre(radial_order)), angular_order_(angular_order) {
    if (angular_order < 1) throw UsageError("FockPolarRule: angular order must be positive");
  }

  int radial_order() const noexcept { return radial_.order; }
  int angular_order() const noexcept { return angular_order_; }

  template <class G>
  Complex integrate(G&& g) const {
    Complex acc{};
    const double dphi = 2.0 * std::numbers::pi / angular_order_;
    for (int i = 0; i < radial_.order; ++i) {
      const double r = std::sqrt(radial_.nodes[i]);
      Complex ring{};
      for (int k = 0; k < angular_order_; ++k) ring += g(std::polar(r, k * dphi));
      acc += radial_.weights[i] * ring / static_cast<double>(angular_order_);
    }
    return acc;
  }

 private:
  QuadratureRule radial_;
  int angular_order_;
};

struct QuadratureValue {
  Complex value;
  std::optional<std::string> warning;
};

/// ∫ F conj(G) dμ by polar quadrature (d = 1). Exact when the angular order
/// exceeds the largest degree difference and the radial rule covers the degree.
inline QuadratureValue fock_inner_quadrature(const CoefficientExpansion& F, const CoefficientExpansion& G,
                                             int radial_order = 40, int angular_order = 64) {
  F.check_compatible(G);
  if (F.side() != Side::fock) throw UsageError("fock_inner_quadrature: expansions must be on the fock side");
  if (F.dimension() != 1) throw UsageError("fock_inner_quadrature: only d = 1 is supported");
  const FockPolarRule rule(radial_order, angular_order);
  QuadratureValue out;
  out.value = rule.integrate([&](Complex w) {
    const FockPoint p{w};
    return evaluate_fock(F, p) * std::conj(evaluate_fock(G, p));
  });
  const int df = std::max(F.degree_bound(), 0), dg = std::max(G.degree_bound(), 0);
  if (angular_order <= df + dg)
    out.warning = "angular order " + std::to_string(angular_order) + " does not exceed total degree " +
                  std::to_string(df + dg) + "; aliasing possible";
  else if (2 * radial_order - 1 < (df + dg + 1) / 2)
    out.warning = "radial order too small for the degrees present";
  return out;
}

/// π^{-1} ∫ F(w) e^{(z,w)} e^{-|w|^2} dλ(w) by polar quadrature (d = 1).
inline Complex fock_reproduce_quadrature(const CoefficientExpansion& F, const FockPoint& z, const FockPolarRule& rule) {
  if (F.side() != Side::fock || F.dimension() != 1 || z.dimension() != 1)
    throw UsageError("fock_reproduce_quadrature: d = 1 fock expansion required");
  return rule.integrate([&](Complex w) { return evaluate_fock(F, FockPoint{w}) * std::exp(z[0] * std::conj(w)); });
}

}  // namespace fockcalc
