#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "fockcalc/errors.hpp"

namespace fockcalc {

/// Gauss rule for a fixed weight on the line: ∫ g(x) w(x) dx ≈ Σ weights_i g(nodes_i).
struct QuadratureRule {
  int order = 0;
  std::vector<double> nodes;
  std::vector<double> weights;
};

namespace detail {

// Orthonormal three-term recurrence
//   sqrt(b_{k+1}) q_{k+1} = (x - a_k) q_k - sqrt(b_k) q_{k-1},  q_0 = 1/sqrt(mu0).
// Golub-Welsch supplies starting nodes; Newton on q_n polishes them and the
// weights come from the Christoffel function 1 / Σ_{k<n} q_k(x)^2.
inline QuadratureRule gauss_from_recurrence(int order, const std::function<double(int)>& a,
                                            const std::function<double(int)>& b, double mu0) {
  if (order < 1) throw UsageError("quadrature order must be at least 1");
  const auto n = static_cast<Eigen::Index>(order);
  Eigen::VectorXd diag(n);
  Eigen::VectorXd sub(std::max<Eigen::Index>(n - 1, 0));
  for (int k = 0; k < order; ++k) diag[k] = a(k);
  for (int k = 1; k < order; ++k) sub[k - 1] = std::sqrt(b(k));

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  if (order == 1) {
    QuadratureRule r{1, {diag[0]}, {mu0}};
    return r;
  }
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw NumericalError("quadrature rule construction: tridiagonal eigen-solve did not converge");

  auto eval = [&](double x, double& qn, double& dqn, double& christoffel) {
    double qm1 = 0.0, dqm1 = 0.0;
    double q = 1.0 / std::sqrt(mu0), dq = 0.0;
    christoffel = 0.0;
    for (int k = 0; k < order; ++k) {
      christoffel += q * q;
      const double sb_next = std::sqrt(b(k + 1));
      const double sb = k > 0 ? std::sqrt(b(k)) : 0.0;
      const double qn1 = ((x - a(k)) * q - sb * qm1) / sb_next;
      const double dqn1 = (q + (x - a(k)) * dq - sb * dqm1) / sb_next;
      qm1 = q;
      dqm1 = dq;
      q = qn1;
      dq = dqn1;
    }
    qn = q;
    dqn = dq;
  };

  QuadratureRule rule;
  rule.order = order;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  for (int i = 0; i < order; ++i) {
    double x = solver.eigenvalues()[i];
    double qn = 0, dqn = 0, ch = 0;
    for (int it = 0; it < 4; ++it) {
      eval(x, qn, dqn, ch);
      if (dqn == 0.0) break;
      const double step = qn / dqn;
      x -= step;
      if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(x))) break;
    }
    eval(x, qn, dqn, ch);
    if (!std::isfinite(x) || !(ch > 0.0) || !std::isfinite(ch))
      throw NumericalError("quadrature rule construction: node polishing failed");
    rule.nodes[i] = x;
    rule.weights[i] = 1.0 / ch;
  }
  return rule;
}

}  // namespace detail

/// Gauss-Hermite rule for the weight e^{-x^2}, exact up to degree 2·order - 1.
inline QuadratureRule gauss_hermite(int order) {
  QuadratureRule r = detail::gauss_from_recurrence(
      order, [](int) { return 0.0; }, [](int k) { return 0.5 * k; }, std::sqrt(std::numbers::pi));
  // Exact symmetry about the origin.
  for (int i = 0; i < order / 2; ++i) {
    const int j = order - 1 - i;
    const double x = 0.5 * (r.nodes[j] - r.nodes[i]);
    const double w = 0.5 * (r.weights[i] + r.weights[j]);
    r.nodes[i] = -x;
    r.nodes[j] = x;
    r.weights[i] = r.weights[j] = w;
  }
  if (order % 2 == 1) r.nodes[order / 2] = 0.0;
  return r;
}

/// Gauss-Laguerre rule for the weight e^{-u} on [0, ∞).
inline QuadratureRule gauss_laguerre(int order) {
  return detail::gauss_from_recurrence(
      order, [](int k) { return 2.0 * k + 1.0; }, [](int k) { return static_cast<double>(k) * k; }, 1.0);
}

}  // namespace fockcalc
