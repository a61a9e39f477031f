#pragma once

#include <string>

#include <json.hpp>

#include "fockcalc/analysis/decay.hpp"
#include "fockcalc/analysis/garding.hpp"
#include "fockcalc/wick_to_antiwick.hpp"

namespace fockcalc::io {

using nlohmann::json;

inline json to_json(Complex c) { return json::array({c.real(), c.imag()}); }

inline Complex complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw InputError("complex value must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

inline json to_json(const MultiIndex& a) { return json(a.entries()); }

inline MultiIndex index_from_json(const json& j, std::size_t dimension) {
  if (!j.is_array()) throw InputError("multi-index must be an array of integers");
  std::vector<int> v;
  for (const auto& e : j) {
    if (!e.is_number_integer() || e.get<long long>() < 0) throw InputError("multi-index entries must be non-negative integers");
    v.push_back(e.get<int>());
  }
  if (v.size() != dimension)
    throw InputError("multi-index length " + std::to_string(v.size()) + " does not match dimension " +
                     std::to_string(dimension));
  return MultiIndex(std::span<const int>(v));
}

inline std::size_t dimension_from_json(const json& j) {
  if (!j.contains("dimension") || !j["dimension"].is_number_integer() || j["dimension"].get<long long>() < 1)
    throw InputError("'dimension' must be a positive integer");
  return j["dimension"].get<std::size_t>();
}

inline const json& array_field(const json& j, const char* name) {
  if (!j.contains(name) || !j[name].is_array()) throw InputError(std::string("'") + name + "' must be an array");
  return j[name];
}

// ---- expansions -------------------------------------------------------------

inline json to_json(const CoefficientExpansion& f) {
  json coeffs = json::array();
  for (const auto& [k, c] : f.coeffs()) coeffs.push_back({{"index", to_json(k)}, {"value", to_json(c)}});
  return {{"dimension", f.dimension()}, {"side", std::string(to_string(f.side()))}, {"coeffs", coeffs}};
}

inline CoefficientExpansion expansion_from_json(const json& j) {
  if (!j.is_object()) throw InputError("expansion must be a JSON object");
  const std::size_t d = dimension_from_json(j);
  if (!j.contains("side") || !j["side"].is_string()) throw InputError("'side' must be \"hermite\" or \"fock\"");
  CoefficientExpansion f(d, side_from_string(j["side"].get<std::string>()));
  for (const auto& e : array_field(j, "coeffs")) {
    if (!e.contains("index") || !e.contains("value")) throw InputError("coefficient entries need 'index' and 'value'");
    f.add(index_from_json(e["index"], d), complex_from_json(e["value"]));
  }
  return f;
}

// ---- symbols ----------------------------------------------------------------

inline json to_json(const WickSymbol& a) {
  json terms = json::array();
  const bool point = a.is_point_symbol();
  for (const auto& [m, c] : a.terms()) {
    json t;
    if (point) {
      t = {{"alpha", to_json(m.w)}, {"beta", to_json(m.wbar)}, {"value", to_json(c)}};
    } else {
      t = {{"alpha", to_json(m.z)}, {"beta", to_json(m.wbar)}, {"value", to_json(c)}};
      if (!m.w.is_zero()) t["mu"] = to_json(m.w);
    }
    terms.push_back(std::move(t));
  }
  return {{"dimension", a.dimension()}, {"kind", point ? "antiwick" : "wick"}, {"terms", terms}};
}

inline json to_json(const RealSymbol& b) {
  json terms = json::array();
  for (const auto& [k, c] : b.terms())
    terms.push_back({{"alpha", to_json(k.first)}, {"beta", to_json(k.second)}, {"value", to_json(c)}});
  return {{"dimension", b.dimension()},
          {"kind", std::string(to_string(b.quantization()))},
          {"real_valued", b.real_valued()},
          {"terms", terms}};
}

inline std::string symbol_kind(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw InputError("symbol must be an object with a string 'kind'");
  const std::string k = j["kind"].get<std::string>();
  if (k != "wick" && k != "antiwick" && k != "kn" && k != "weyl")
    throw InputError("symbol kind must be one of wick, antiwick, kn, weyl (got '" + k + "')");
  return k;
}

/// Wick or anti-Wick symbol. For "antiwick", alpha/beta are the powers of w and
/// conj(w); for "wick", alpha/beta are the powers of z and conj(w), with an
/// optional "mu" for holomorphic powers of w.
inline WickSymbol wick_symbol_from_json(const json& j) {
  const std::string kind = symbol_kind(j);
  if (kind != "wick" && kind != "antiwick") throw InputError("expected a wick or antiwick symbol, got '" + kind + "'");
  const std::size_t d = dimension_from_json(j);
  WickSymbol a(d, kind == "antiwick");
  for (const auto& t : array_field(j, "terms")) {
    if (!t.contains("alpha") || !t.contains("beta") || !t.contains("value"))
      throw InputError("symbol terms need 'alpha', 'beta' and 'value'");
    const MultiIndex alpha = index_from_json(t["alpha"], d), beta = index_from_json(t["beta"], d);
    const Complex c = complex_from_json(t["value"]);
    if (kind == "antiwick") {
      if (t.contains("mu")) throw InputError("antiwick terms take no 'mu'");
      a.add_point_term(alpha, beta, c);
    } else {
      a.add_general(alpha, t.contains("mu") ? index_from_json(t["mu"], d) : MultiIndex(d), beta, c);
    }
  }
  return a;
}

inline RealSymbol real_symbol_from_json(const json& j) {
  const std::string kind = symbol_kind(j);
  if (kind != "kn" && kind != "weyl") throw InputError("expected a kn or weyl symbol, got '" + kind + "'");
  const std::size_t d = dimension_from_json(j);
  if (j.contains("real_valued") && !j["real_valued"].is_boolean()) throw InputError("'real_valued' must be a boolean");
  RealSymbol b(d, kind == "weyl" ? Quantization::weyl : Quantization::kohn_nirenberg,
               j.value("real_valued", false));
  for (const auto& t : array_field(j, "terms")) {
    if (!t.contains("alpha") || !t.contains("beta") || !t.contains("value"))
      throw InputError("symbol terms need 'alpha', 'beta' and 'value'");
    b.add_term(index_from_json(t["alpha"], d), index_from_json(t["beta"], d), complex_from_json(t["value"]));
  }
  return b;
}

// ---- matrices and reports ---------------------------------------------------

inline json to_json(const OperatorMatrix& m) {
  json entries = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) entries.push_back(to_json(m(r, c)));
  return {{"dimension", m.dimension}, {"n_in", m.n_in},        {"n_out", m.n_out},
          {"side", std::string(to_string(m.side))}, {"compressed", m.compressed}, {"entries", entries}};
}

inline OperatorMatrix matrix_from_json(const json& j) {
  const std::size_t d = j.contains("dimension") ? dimension_from_json(j) : 1;
  auto degree = [&](const char* name) {
    if (!j.contains(name) || !j[name].is_number_integer() || j[name].get<long long>() < 0)
      throw InputError(std::string("matrix needs a non-negative integer '") + name + "'");
    return j[name].get<int>();
  };
  if (!j.contains("side") || !j["side"].is_string()) throw InputError("matrix needs a string 'side'");
  OperatorMatrix m(d, degree("n_in"), degree("n_out"), side_from_string(j["side"].get<std::string>()));
  if (j.contains("compressed")) {
    if (!j["compressed"].is_boolean()) throw InputError("'compressed' must be a boolean");
    m.compressed = j["compressed"].get<bool>();
  }
  const json& e = array_field(j, "entries");
  if (static_cast<Eigen::Index>(e.size()) != m.rows() * m.cols()) throw InputError("matrix entry count does not match shape");
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) m.entries(r, c) = complex_from_json(e[r * m.cols() + c]);
  return m;
}

inline json to_json(const BoundReport& r) {
  json z = json::array(), w = json::array();
  for (Complex c : r.argmax_z) z.push_back(to_json(c));
  for (Complex c : r.argmax_w) w.push_back(to_json(c));
  return {{"sup", r.sup},
          {"argmax_z", z},
          {"argmax_w", w},
          {"grid_radius", r.grid_radius},
          {"shell_radii", r.shell_radii},
          {"shell_sup", r.shell_sup},
          {"grows_with_radius", r.grows_with_radius}};
}

inline json to_json(const ShubinEntry& e) {
  return {{"alpha", to_json(e.alpha)}, {"beta", to_json(e.beta)}, {"decay_order", e.decay_order}, {"report", to_json(e.report)}};
}

inline json to_json(const DecayFit& f) {
  return {{"family", std::string(to_string(f.family))},
          {"parameter", f.parameter},
          {"rate", f.rate},
          {"log_prefactor", f.log_prefactor},
          {"residual", f.residual},
          {"shells_used", f.shells_used},
          {"inconclusive", f.inconclusive}};
}

inline json to_json(const NormGrowthFit& f) {
  return {{"h", f.h}, {"s", f.s}, {"log_prefactor", f.log_prefactor}, {"residual", f.residual}, {"reliable", f.reliable}};
}

inline json to_json(const GardingReport& r) {
  json j = {{"truncation_degrees", r.truncation_degrees},
            {"min_real_eigenvalues", r.min_real_eigenvalues},
            {"max_imag_norms", r.max_imag_norms},
            {"diagonal_min", r.diagonal_min},
            {"diagonal_min_is_grid_estimate", true},
            {"diagonal_max_imag", r.diagonal_max_imag},
            {"stabilized", r.stabilized}};
  if (r.rho) {
    j["rho"] = *r.rho;
    json sh = json::array();
    for (const auto& e : r.shubin) sh.push_back(to_json(e));
    j["shubin"] = sh;
  }
  return j;
}

inline json to_json(const ExpansionTerm& t) {
  return {{"alpha", to_json(t.alpha)}, {"sign", t.sign}, {"weight", t.weight}, {"symbol", to_json(t.symbol.pruned())}};
}

inline json to_json(const WickToAntiWickDecomposition& d) {
  json main = json::array(), rem = json::array();
  for (const auto& t : d.main_terms) main.push_back(to_json(t));
  for (const auto& t : d.remainder_terms) rem.push_back(to_json(t));
  return {{"order", d.order},
          {"extension", d.extension},
          {"main_terms", main},
          {"remainder_terms", rem},
          {"remainder_vanishes", d.remainder_vanishes()}};
}

}  // namespace fockcalc::io
