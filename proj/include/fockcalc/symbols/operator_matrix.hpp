#pragma once

#include <Eigen/Dense>

#include "fockcalc/core/basis.hpp"
#include "fockcalc/core/expansion.hpp"

namespace fockcalc {

/// Dense matrix from span{|γ| ≤ n_in} to span{|γ| ≤ n_out}, rows and columns in
/// graded order.
struct OperatorMatrix {
  std::size_t dimension = 1;
  int n_in = 0;
  int n_out = 0;
  Side side = Side::fock;
  bool compressed = false;  // square degree ≤ n_in block of a larger operator
  Eigen::MatrixXcd entries;

  OperatorMatrix() = default;
  OperatorMatrix(std::size_t d, int in, int out, Side s)
      : dimension(d), n_in(in), n_out(out), side(s),
        entries(Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(binomial(out + d, d)),
                                       static_cast<Eigen::Index>(binomial(in + d, d)))) {
    if (in < 0) throw UsageError("OperatorMatrix: domain degree must be non-negative");
    if (out < 0) throw UsageError("OperatorMatrix: codomain degree must be non-negative");
  }

  Eigen::Index rows() const { return entries.rows(); }
  Eigen::Index cols() const { return entries.cols(); }

  Complex operator()(Eigen::Index r, Eigen::Index c) const { return entries(r, c); }

  /// Square block on degrees ≤ n_in; exact only for rows the operator never
  /// leaves, otherwise a truncation.
  OperatorMatrix compress() const {
    const int m = std::min(n_in, n_out);
    OperatorMatrix out(dimension, m, m, side);
    out.entries = entries.topLeftCorner(out.rows(), out.cols());
    out.compressed = true;
    return out;
  }

  /// Zero-padded copy with a larger codomain bound.
  OperatorMatrix padded_to(int out_degree) const {
    if (out_degree < n_out) throw UsageError("OperatorMatrix::padded_to: cannot shrink the codomain");
    OperatorMatrix out(dimension, n_in, out_degree, side);
    out.entries.topRows(rows()) = entries;
    out.compressed = compressed;
    return out;
  }
};

/// Entrywise max |A - B| after padding the shorter codomain with zeros.
inline double max_deviation(const OperatorMatrix& a, const OperatorMatrix& b) {
  if (a.dimension != b.dimension || a.n_in != b.n_in) throw UsageError("max_deviation: incompatible domains");
  const int out = std::max(a.n_out, b.n_out);
  const OperatorMatrix pa = a.padded_to(out), pb = b.padded_to(out);
  if (pa.entries.size() == 0) return 0.0;
  return (pa.entries - pb.entries).cwiseAbs().maxCoeff();
}

/// Matrix of the operator applied to an expansion of degree ≤ n_in.
inline CoefficientExpansion apply(const OperatorMatrix& m, const CoefficientExpansion& f) {
  if (f.dimension() != m.dimension) throw UsageError("apply: dimension mismatch");
  if (f.side() != m.side) throw UsageError("apply: side mismatch");
  const GradedBasis in(m.dimension, m.n_in), out(m.dimension, m.n_out);
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(m.cols());
  for (const auto& [k, c] : f.coeffs()) {
    auto pos = in.find(k);
    if (!pos) throw UsageError("apply: expansion exceeds the matrix domain");
    v[static_cast<Eigen::Index>(*pos)] = c;
  }
  const Eigen::VectorXcd r = m.entries * v;
  CoefficientExpansion res(m.dimension, m.side);
  for (std::size_t i = 0; i < out.size(); ++i)
    if (r[static_cast<Eigen::Index>(i)] != Complex{}) res.set(out[i], r[static_cast<Eigen::Index>(i)]);
  return res;
}

}  // namespace fockcalc
