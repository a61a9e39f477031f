// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "fockcalc/fockcalc.hpp"
#include "fockcalc/selftest.hpp"
#include "normal_order_oracle.hpp"

using namespace fockcalc;

namespace {

// Tolerances and time limits.
constexpr double kBasisMapTol = 1e-8;
constexpr double kIsometryQuadTol = 1e-8;
constexpr double kLadderRelTol = 1e-14;  // a few ulp: √(2(n+1)) against √2·√(n+1)
constexpr double kCorrespondenceTol = 1e-12;
constexpr double kOscillatorTol = 1e-12;
constexpr double kDecompositionTol = 1e-10;
constexpr double kPositivityTol = 1e-10;
constexpr double kGardingExactTol = 1e-12;
constexpr double kGardingDrift = 0.05;
constexpr double kDecayTol = 0.05;
constexpr double kSelftestTol = 1e-8;

constexpr double kLimitBasisMap = 5.0;
constexpr double kLimitCorrespondence = 10.0;
constexpr double kLimitDecomposition = 30.0;
constexpr double kLimitGarding = 60.0;
constexpr double kLimitSelftest = 30.0;

struct Outcome {
  bool passed = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double time_limit;  // seconds, 0 when none
  std::function<Outcome()> body;
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

WickSymbol wick_monomial(std::size_t d, const MultiIndex& a, const MultiIndex& b) {
  WickSymbol s(d);
  s.add_term(a, b, 1.0);
  return s;
}

double min_eigenvalue_hermitian_part(const OperatorMatrix& m) {
  const Eigen::MatrixXcd c = m.compress().entries;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (c + c.adjoint()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

Outcome basis_map() {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<FockPoint> pts;
  for (int k = 0; k < 20; ++k) pts.push_back(FockPoint{std::polar(2.0 * std::sqrt(u(rng)), 2.0 * std::numbers::pi * u(rng))});
  double dev = 0.0;
  for (int n = 0; n <= 8; ++n) {
    const RealSampler h = [n](std::span<const double> y) { return Complex(hermite_function({n}, y)); };
    for (const auto& z : pts) {
      const Complex expect = ipow(z[0], n) / std::sqrt(MultiIndex{n}.factorial_real());
      dev = std::max(dev, std::abs(bargmann_integral(h, z) - expect));
    }
  }
  return {dev <= kBasisMapTol, "max dev " + sci(dev) + " (tol " + sci(kBasisMapTol) + ")"};
}

Outcome isometry() {
  std::mt19937_64 rng(202);
  std::normal_distribution<double> g;
  bool exact = true;
  double dev = 0.0;
  for (int t = 0; t < 50; ++t) {
    CoefficientExpansion f(1, Side::hermite);
    for (int n = 0; n <= 10; ++n) f.set({n}, Complex(g(rng), g(rng)));
    const CoefficientExpansion F = bargmann_coeff(f);
    exact = exact && F.squared_norm() == f.squared_norm();
    const double quad = fock_inner_quadrature(F, F).value.real();
    dev = std::max(dev, std::abs(quad - f.squared_norm()) / std::max(1.0, f.squared_norm()));
  }
  return {exact && dev <= kIsometryQuadTol,
          std::string("coefficient norms ") + (exact ? "identical" : "DIFFER") + ", polar quadrature rel dev " + sci(dev) +
              " (tol " + sci(kIsometryQuadTol) + ")"};
}

Outcome ladder() {
  double dev = 0.0;
  for (std::size_t d : {1u, 2u})
    for (const auto& alpha : enumerate_basis(d, 10))
      for (std::size_t j = 0; j < d; ++j) {
        CoefficientExpansion f(d, Side::hermite);
        f.set(alpha, 1.0);
        const CoefficientExpansion F = bargmann_coeff(f);
        const auto up = bargmann_coeff(apply_ladder(f, {Ladder::creation, j})) - multiply_by_z(F, j).scaled(std::sqrt(2.0));
        const auto dn = bargmann_coeff(apply_ladder(f, {Ladder::annihilation, j})) - differentiate_z(F, j).scaled(std::sqrt(2.0));
        const double scale = std::sqrt(2.0 * (alpha.degree() + 1));
        for (const auto& [k, c] : up.coeffs()) dev = std::max(dev, std::abs(c) / scale);
        for (const auto& [k, c] : dn.coeffs()) dev = std::max(dev, std::abs(c) / scale);
      }
  return {dev <= kLadderRelTol, "max rel dev " + sci(dev) + " over |alpha| <= 10, d = 1, 2 (tol " + sci(kLadderRelTol) + ")"};
}

Outcome correspondence() {
  double dev = 0.0, oracle_dev = 0.0;
  int count = 0;
  for (std::size_t d : {1u, 2u})
    for (auto q : {Quantization::kohn_nirenberg, Quantization::weyl})
      for (const auto& alpha : enumerate_basis(d, 3))
        for (const auto& beta : enumerate_basis(d, 3 - alpha.degree())) {
          RealSymbol b(d, q);
          b.add_term(alpha, beta, 1.0);
          const WickSymbol a = real_to_wick_symbol(b);
          const int n = d == 1 ? 10 : 6;
          dev = std::max(dev, max_deviation(wick_matrix(a, n), conjugate_to_fock(quantization_matrix(b, n))));
          const WickSymbol ref = oracle::quantize(b).to_wick();
          for (const auto& [m, c] : a.terms()) oracle_dev = std::max(oracle_dev, std::abs(c - ref.coefficient(m.z, m.wbar)));
          for (const auto& [m, c] : ref.terms()) oracle_dev = std::max(oracle_dev, std::abs(c - a.coefficient(m.z, m.wbar)));
          ++count;
        }

  double osc = 0.0;
  for (std::size_t d : {1u, 2u}) {
    RealSymbol b(d, Quantization::weyl, true);
    for (std::size_t j = 0; j < d; ++j) {
      b.add_term(MultiIndex(d).with(j, 2), MultiIndex(d), 1.0);
      b.add_term(MultiIndex(d), MultiIndex(d).with(j, 2), 1.0);
    }
    const WickSymbol a = real_to_wick_symbol(b);
    WickSymbol expect = WickSymbol::constant(d, double(d));
    for (std::size_t j = 0; j < d; ++j) expect.add_term(MultiIndex::unit(d, j), MultiIndex::unit(d, j), 2.0);
    const WickSymbol diff = a + expect.scaled(-1.0);
    for (const auto& [m, c] : diff.terms()) osc = std::max(osc, std::abs(c));
    const int n = 8;
    OperatorMatrix diag(d, n, n, Side::fock);
    const GradedBasis basis(d, n);
    for (std::size_t i = 0; i < basis.size(); ++i) diag.entries(i, i) = 2.0 * basis[i].degree() + double(d);
    osc = std::max(osc, max_deviation(wick_matrix(a, n), diag));
  }
  const bool ok = dev <= kCorrespondenceTol && oracle_dev <= kCorrespondenceTol && osc <= kOscillatorTol;
  return {ok, std::to_string(count) + " monomials, matrix dev " + sci(dev) + ", symbolic oracle dev " + sci(oracle_dev) +
                  ", oscillator dev " + sci(osc) + " (tol " + sci(kCorrespondenceTol) + ")"};
}

Outcome decomposition() {
  double free_dev = 0.0, active_dev = 0.0;
  bool remainder_free = true;
  int active = 0;
  for (std::size_t d : {1u, 2u})
    for (const auto& alpha : enumerate_basis(d, 3))
      for (const auto& beta : enumerate_basis(d, 3)) {
        const WickSymbol a = wick_monomial(d, alpha, beta);
        const int trunc = d == 1 ? 8 : 5;
        const int m = std::min(alpha.degree(), beta.degree());
        for (int n = std::max(m, 1); n <= 3; ++n) {
          remainder_free = remainder_free && decompose(a, n).remainder_vanishes();
          free_dev = std::max(free_dev, verify_decomposition(a, n, trunc));
        }
        if (!decompose(a, 1).remainder_vanishes()) ++active;
        active_dev = std::max(active_dev, verify_decomposition(a, 1, trunc));
      }
  const bool ok = remainder_free && free_dev <= kDecompositionTol && active_dev <= kDecompositionTol && active > 0;
  return {ok, "N >= min degree dev " + sci(free_dev) + (remainder_free ? " (remainders zero)" : " (NONZERO remainder)") +
                  ", N = 1 dev " + sci(active_dev) + " with " + std::to_string(active) + " active remainders (tol " +
                  sci(kDecompositionTol) + ")"};
}

Outcome positivity() {
  std::mt19937_64 rng(606);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = std::numeric_limits<double>::infinity();
  for (int t = 0; t < 20; ++t) {
    const std::size_t d = t % 2 ? 2 : 1;
    WickSymbol a0(d, true);
    const auto sigmas = enumerate_basis(d, 3);
    const int terms = 1 + static_cast<int>(u(rng) * 4);
    for (int k = 0; k < terms; ++k) {
      const auto& s = sigmas[static_cast<std::size_t>(u(rng) * sigmas.size()) % sigmas.size()];
      a0.add_point_term(s, s, 3.0 * u(rng));
    }
    for (int n : {8, 16}) worst = std::min(worst, min_eigenvalue_hermitian_part(antiwick_matrix(a0, n)));
  }
  return {worst >= -kPositivityTol, "min eigenvalue " + sci(worst) + " (bound -" + sci(kPositivityTol) + ")"};
}

Outcome garding() {
  const std::vector<int> t = {8, 16, 32};
  WickSymbol osc(1), shifted(1);
  osc.add_term({1}, {1}, 2.0);
  osc.add_term({0}, {0}, 1.0);
  shifted.add_term({1}, {1}, 1.0);
  shifted.add_term({0}, {0}, -1.0);
  double exact_dev = 0.0;
  for (double v : garding_check(osc, t).min_real_eigenvalues) exact_dev = std::max(exact_dev, std::abs(v - 1.0));
  for (double v : garding_check(shifted, t).min_real_eigenvalues) exact_dev = std::max(exact_dev, std::abs(v + 1.0));

  // a(w, w) = |p + q w|^2 + k|w|^2 + Re(m w^2) + c with |m| ≤ k/2, so the diagonal is non-negative.
  std::mt19937_64 rng(707);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst_drift = 0.0, diag_min = std::numeric_limits<double>::infinity();
  double lowest = std::numeric_limits<double>::infinity();
  for (int trial = 0; trial < 10; ++trial) {
    const Complex p(g(rng), g(rng)), q(g(rng), g(rng));
    const double k = u(rng), c = u(rng);
    const Complex m = std::polar(0.5 * k * u(rng), 2.0 * std::numbers::pi * u(rng));
    WickSymbol a(1);
    a.add_term({0}, {0}, std::norm(p) + c);
    a.add_term({1}, {0}, std::conj(p) * q);
    a.add_term({0}, {1}, p * std::conj(q));
    a.add_term({1}, {1}, std::norm(q) + k);
    a.add_term({2}, {0}, 0.5 * m);
    a.add_term({0}, {2}, 0.5 * std::conj(m));
    const GardingReport rep = garding_check(a, t);
    diag_min = std::min(diag_min, rep.diagonal_min);
    const auto& ev = rep.min_real_eigenvalues;
    const double x = ev[ev.size() - 1], y = ev[ev.size() - 2];
    const double drift = std::abs(x - y) / std::max({std::abs(x), std::abs(y), 1e-6 / kGardingDrift});
    worst_drift = std::max(worst_drift, drift);
    lowest = std::min(lowest, x);
  }
  const bool ok = exact_dev <= kGardingExactTol && diag_min >= -1e-12 && worst_drift <= kGardingDrift;
  return {ok, "exact diagonals dev " + sci(exact_dev) + "; random: grid diagonal min " + sci(diag_min) +
                  ", lowest eigenvalue " + sci(lowest) + ", worst drift 16->32 " + sci(worst_drift) + " (limit " +
                  sci(kGardingDrift) + ")"};
}

Outcome decay() {
  double worst = 0.0;
  for (double s : {0.5, 1.0, 2.0})
    for (double r : {0.5, 1.0, 2.0}) {
      CoefficientExpansion c(1, Side::hermite);
      for (int k = 0; k <= 64; ++k) c.set({k}, std::exp(-r * std::pow(double(k), 1.0 / (2.0 * s))));
      const DecayFit fit = classify_decay(c, DecayFamily::roumieu_s);
      worst = std::max(worst, std::abs(fit.parameter - s));
    }
  CoefficientExpansion finite(2, Side::hermite);
  finite.set({0, 0}, 1.0);
  finite.set({2, 1}, 0.3);
  finite.set({0, 4}, -0.1);
  DecayOptions opt;
  opt.horizon = 32;
  const bool h0 = classify_decay(finite, DecayFamily::roumieu_s, opt).family == DecayFamily::finite;
  return {worst <= kDecayTol && h0, "worst |s_fit - s| " + sci(worst) + " (tol " + sci(kDecayTol) + "), finite series " +
                                        (h0 ? "classified H_0" : "NOT classified H_0")};
}

Outcome selftest() {
  const SelftestRow w = selftest_wick_quadrature(3, 6, kSelftestTol);
  const SelftestRow aw = selftest_antiwick_quadrature(3, 6, kSelftestTol);
  return {w.passed && aw.passed, "wick dev " + sci(w.deviation) + ", antiwick dev " + sci(aw.deviation) + " (tol " +
                                     sci(kSelftestTol) + ")"};
}

}  // namespace

int main() {
  std::setvbuf(stdout, nullptr, _IOLBF, 0);
  const std::vector<Criterion> criteria = {
      {1, "basis map h_n -> e_n", kLimitBasisMap, basis_map},
      {2, "isometry", 0.0, isometry},
      {3, "ladder intertwining", 0.0, ladder},
      {4, "quantization correspondence", kLimitCorrespondence, correspondence},
      {5, "wick to anti-wick exactness", kLimitDecomposition, decomposition},
      {6, "anti-wick positivity", 0.0, positivity},
      {7, "sharp garding probe", kLimitGarding, garding},
      {8, "decay classifier", 0.0, decay},
      {9, "oracle self-consistency", kLimitSelftest, selftest},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = c.time_limit == 0.0 || secs < c.time_limit;
    const bool pass = o.passed && in_time;
    failed += pass ? 0 : 1;
    char timing[64];
    if (c.time_limit > 0.0)
      std::snprintf(timing, sizeof timing, "%.2f s (limit %.0f s)", secs, c.time_limit);
    else
      std::snprintf(timing, sizeof timing, "%.2f s", secs);
    std::printf("[%s] %d %s: %s; %s\n", pass ? "PASS" : "FAIL", c.id, c.name.c_str(), o.detail.c_str(), timing);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
