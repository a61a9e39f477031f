#pragma once

// Test-only symbolic route to Wick symbols: operators on the Fock side as
// normal-ordered polynomials Σ c z^α ∂^β, with x_j = (z_j + ∂_j)/√2 and
// D_j = i(z_j - ∂_j)/√2. Independent of the matrix-based implementation.

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>
#include <vector>

#include "fockcalc/symbols/real_symbol.hpp"
#include "fockcalc/symbols/wick_symbol.hpp"

namespace oracle {

using fockcalc::Complex;
using fockcalc::MultiIndex;

struct NormalOrdered {
  std::size_t d = 1;
  std::map<std::pair<MultiIndex, MultiIndex>, Complex> terms;

  static NormalOrdered identity(std::size_t d) {
    NormalOrdered r{d, {}};
    r.terms[{MultiIndex(d), MultiIndex(d)}] = 1.0;
    return r;
  }

  NormalOrdered operator+(const NormalOrdered& o) const {
    NormalOrdered r = *this;
    for (const auto& [k, c] : o.terms) r.terms[k] += c;
    return r;
  }

  NormalOrdered scaled(Complex s) const {
    NormalOrdered r = *this;
    for (auto& [_, c] : r.terms) c *= s;
    return r;
  }

  // (z^a ∂^b)(z^c ∂^e) with ∂^b z^c = Σ_k C(b,k) c!/(c-k)! z^{c-k} ∂^{b-k} per coordinate.
  NormalOrdered operator*(const NormalOrdered& o) const {
    NormalOrdered r{d, {}};
    for (const auto& [k1, c1] : terms) {
      for (const auto& [k2, c2] : o.terms) {
        std::vector<std::vector<std::pair<std::pair<int, int>, double>>> per(d);
        for (std::size_t j = 0; j < d; ++j) {
          const int b = k1.second[j], c = k2.first[j];
          for (int k = 0; k <= std::min(b, c); ++k) {
            double coef = 1.0;
            for (int i = 0; i < k; ++i) coef *= static_cast<double>(b - i) / (i + 1) * (c - i);
            per[j].push_back({{c - k, b - k}, coef});
          }
        }
        std::vector<std::size_t> pos(d, 0);
        for (;;) {
          std::vector<int> za(d), db(d);
          double coef = 1.0;
          for (std::size_t j = 0; j < d; ++j) {
            za[j] = k1.first[j] + per[j][pos[j]].first.first;
            db[j] = per[j][pos[j]].first.second + k2.second[j];
            coef *= per[j][pos[j]].second;
          }
          r.terms[{MultiIndex(std::span<const int>(za)), MultiIndex(std::span<const int>(db))}] += c1 * c2 * coef;
          std::size_t j = 0;
          for (; j < d; ++j) {
            if (++pos[j] < per[j].size()) break;
            pos[j] = 0;
          }
          if (j == d) break;
        }
      }
    }
    return r;
  }

  fockcalc::WickSymbol to_wick(double prune = 1e-13) const {
    fockcalc::WickSymbol a(d);
    for (const auto& [k, c] : terms)
      if (std::abs(c) > prune) a.add_term(k.first, k.second, c);
    return a;
  }
};

inline NormalOrdered generator(std::size_t d, std::size_t j, bool position) {
  NormalOrdered r{d, {}};
  const MultiIndex e = MultiIndex::unit(d, j), zero(d);
  const double s = 1.0 / std::sqrt(2.0);
  if (position) {
    r.terms[{e, zero}] = s;
    r.terms[{zero, e}] = s;
  } else {
    r.terms[{e, zero}] = Complex(0, s);
    r.terms[{zero, e}] = Complex(0, -s);
  }
  return r;
}

inline NormalOrdered power(const NormalOrdered& x, int n) {
  NormalOrdered r = NormalOrdered::identity(x.d);
  for (int i = 0; i < n; ++i) r = r * x;
  return r;
}

inline NormalOrdered quantize(const fockcalc::RealSymbol& b) {
  const std::size_t d = b.dimension();
  NormalOrdered total{d, {}};
  for (const auto& [key, c] : b.terms()) {
    NormalOrdered op = NormalOrdered::identity(d);
    for (std::size_t j = 0; j < d; ++j) {
      const int p = key.first[j], q = key.second[j];
      const NormalOrdered x = generator(d, j, true), xi = generator(d, j, false);
      if (b.quantization() == fockcalc::Quantization::kohn_nirenberg) {
        op = op * power(x, p) * power(xi, q);
      } else {
        // Average over all arrangements of p positions and q momenta.
        std::vector<bool> word(p + q, false);
        std::fill(word.begin(), word.begin() + p, true);
        std::sort(word.begin(), word.end());
        NormalOrdered sym{d, {}};
        int count = 0;
        do {
          NormalOrdered w = NormalOrdered::identity(d);
          for (bool is_x : word) w = w * (is_x ? x : xi);
          sym = sym + w;
          ++count;
        } while (std::next_permutation(word.begin(), word.end()));
        op = op * sym.scaled(1.0 / count);
      }
    }
    total = total + op.scaled(c);
  }
  return total;
}

}  // namespace oracle
