#pragma once

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "fockcalc/fockcalc.hpp"

namespace fockcalc {

struct SelftestRow {
  std::string name;
  double deviation = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

namespace detail {

inline SelftestRow selftest_row(std::string name, double deviation, double tolerance) {
  return {std::move(name), deviation, tolerance, std::isfinite(deviation) && deviation <= tolerance};
}

}  // namespace detail

/// Closed-form Wick matrices against quadrature of the defining integral,
/// over all monomials z^p conj(w)^q with p + q ≤ max_degree, d = 1.
inline SelftestRow selftest_wick_quadrature(int max_degree = 3, int n_in = 6, double tol = 1e-8) {
  double dev = 0.0;
  for (int p = 0; p <= max_degree; ++p)
    for (int q = 0; p + q <= max_degree; ++q) {
      WickSymbol a(1);
      a.add_term({p}, {q}, 1.0);
      dev = std::max(dev, max_deviation(wick_matrix(a, n_in), wick_matrix_quadrature(a, n_in)));
    }
  return detail::selftest_row("wick closed form vs quadrature", dev, tol);
}

/// Same for anti-Wick monomials w^s conj(w)^t.
inline SelftestRow selftest_antiwick_quadrature(int max_degree = 3, int n_in = 6, double tol = 1e-8) {
  double dev = 0.0;
  for (int s = 0; s <= max_degree; ++s)
    for (int t = 0; s + t <= max_degree; ++t) {
      WickSymbol a(1, true);
      a.add_point_term({s}, {t}, 1.0);
      dev = std::max(dev, max_deviation(antiwick_matrix(a, n_in), wick_matrix_quadrature(a, n_in)));
    }
  return detail::selftest_row("antiwick closed form vs quadrature", dev, tol);
}

/// Bargmann integral of h_n against z^n / √n! on a ring of points.
inline SelftestRow selftest_basis_map(int max_order = 8, double tol = 1e-8) {
  double dev = 0.0;
  for (int n = 0; n <= max_order; ++n) {
    const RealSampler h = [n](std::span<const double> y) { return Complex(hermite_function({n}, y)); };
    for (int k = 0; k < 5; ++k) {
      const double r = 0.4 * (k + 1), th = 1.3 * k + 0.2;
      const FockPoint z{std::polar(r, th)};
      dev = std::max(dev, std::abs(bargmann_integral(h, z) - fock_monomial({n}, z)));
    }
  }
  return detail::selftest_row("bargmann integral of h_n vs e_n", dev, tol);
}

/// Gauss–Hermite exactness on x^{2k}, k ≤ order - 1, relative error.
inline SelftestRow selftest_gauss_hermite(int order = 20, double tol = 1e-12) {
  const QuadratureRule q = gauss_hermite(order);
  double dev = 0.0;
  for (int k = 0; k < order; ++k) {
    double s = 0.0;
    for (std::size_t i = 0; i < q.nodes.size(); ++i) s += q.weights[i] * std::pow(q.nodes[i], 2 * k);
    const double exact = std::exp(std::lgamma(k + 0.5));  // Γ(k + 1/2)
    dev = std::max(dev, std::abs(s - exact) / exact);
  }
  return detail::selftest_row("gauss-hermite moments", dev, tol);
}

/// Hermite-function Gram matrix from quadrature samples.
inline SelftestRow selftest_hermite_orthonormality(int max_order = 16, double tol = 1e-12) {
  const QuadratureRule q = gauss_hermite(max_order + 10);
  std::vector<std::vector<double>> h;
  for (double x : q.nodes) h.push_back(hermite_functions_1d(max_order, x));
  double dev = 0.0;
  for (int m = 0; m <= max_order; ++m)
    for (int n = 0; n <= m; ++n) {
      double s = 0.0;
      for (std::size_t i = 0; i < q.nodes.size(); ++i)
        s += q.weights[i] * std::exp(q.nodes[i] * q.nodes[i]) * h[i][m] * h[i][n];
      dev = std::max(dev, std::abs(s - (m == n ? 1.0 : 0.0)));
    }
  return detail::selftest_row("hermite function orthonormality", dev, tol);
}

/// Matrix check of the Wick to anti-Wick expansion on z^2 conj(w)^2 at N = 1 and 2.
inline SelftestRow selftest_decomposition(double tol = 1e-10) {
  WickSymbol a(1);
  a.add_term({2}, {2}, 1.0);
  a.add_term({3}, {1}, Complex(0.5, -0.5));
  const double dev = std::max(verify_decomposition(a, 1, 8), verify_decomposition(a, 2, 8));
  return detail::selftest_row("wick to anti-wick expansion", dev, tol);
}

/// Weyl x^2 + xi^2 against diag(2n + 1) through its Wick symbol.
inline SelftestRow selftest_oscillator(int n = 10, double tol = 1e-12) {
  RealSymbol b(1, Quantization::weyl, true);
  b.add_term({2}, {0}, 1.0);
  b.add_term({0}, {2}, 1.0);
  const OperatorMatrix m = wick_matrix(real_to_wick_symbol(b), n);
  OperatorMatrix expect(1, n, n, Side::fock);
  for (int g = 0; g <= n; ++g) expect.entries(g, g) = 2.0 * g + 1.0;
  return detail::selftest_row("harmonic oscillator wick matrix", max_deviation(m, expect), tol);
}

inline std::vector<SelftestRow> run_selftest() {
  return {selftest_gauss_hermite(),  selftest_hermite_orthonormality(), selftest_basis_map(),
          selftest_wick_quadrature(), selftest_antiwick_quadrature(),     selftest_decomposition(),
          selftest_oscillator()};
}

inline std::string format_selftest(const std::vector<SelftestRow>& rows) {
  std::size_t w = 4;
  for (const auto& r : rows) w = std::max(w, r.name.size());
  std::ostringstream os;
  os.setf(std::ios::scientific);
  os.precision(2);
  for (const auto& r : rows) {
    os << (r.passed ? "PASS  " : "FAIL  ") << r.name << std::string(w - r.name.size() + 2, ' ') << "dev " << r.deviation
       << "  tol " << r.tolerance << '\n';
  }
  return os.str();
}

}  // namespace fockcalc
