#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fockcalc/fockcalc.hpp"
#include "fockcalc/io/serialize.hpp"
#include "fockcalc/selftest.hpp"
#include "fockcalc/version.hpp"

namespace fockcalc::cli {

using nlohmann::json;

enum ExitCode : int {
  kOk = 0,
  kSelftestFailed = 1,
  kUsage = 2,
  kInput = 3,
  kNumerical = 4,
  kConsistency = 5,
  kInternal = 70,
};

inline constexpr const char* kOutputDirVariable = "FOCKCALC_OUTPUT_DIR";

struct RunConfig {
  std::string subcommand;
  std::string input;
  std::string output;
  std::string format = "json";
  std::optional<int> degree;
  std::optional<int> quad_order;
  std::vector<int> truncations = {8, 16, 32};
  std::optional<double> grid_radius;
  std::uint64_t seed = 0;
  int order = 1;
  double s = 1.0;
  double r = 1.0;
  std::string direction = "loss";
  std::string family = "roumieu_s";
  std::optional<int> horizon;
  std::optional<double> rho;
  int check_points = 0;
};

/// A finished subcommand: JSON result plus an optional CSV rendering.
struct Result {
  json config;
  json result;
  std::optional<std::string> csv;
  std::optional<std::string> text;  // printed to stdout as well
  int status = kOk;
};

namespace detail {

inline json read_json_file(const std::string& path) {
  if (path.empty()) throw UsageError("--input is required");
  std::ifstream in(path);
  if (!in) throw InputError("cannot open input file '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("malformed JSON in '" + path + "': " + e.what());
  }
}

inline int degree_or(const RunConfig& c, int fallback) {
  const int n = c.degree.value_or(fallback);
  if (n < 0) throw UsageError("--degree must be non-negative");
  return n;
}

inline std::string index_label(const MultiIndex& a) {
  std::string s;
  for (std::size_t j = 0; j < a.dimension(); ++j) s += (j ? " " : "") + std::to_string(a[j]);
  return s;
}

inline std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

inline std::string matrix_csv(const OperatorMatrix& m) {
  const GradedBasis in(m.dimension, m.n_in);
  const GradedBasis out(m.dimension, m.compressed ? m.n_in : m.n_out);
  std::string s = "row,col,re,im\n";
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      s += index_label(out[static_cast<std::size_t>(r)]) + "," + index_label(in[static_cast<std::size_t>(c)]) + "," +
           fmt(m.entries(r, c).real()) + "," + fmt(m.entries(r, c).imag()) + "\n";
  return s;
}

inline std::string expansion_csv(const CoefficientExpansion& f) {
  std::string s = "index,re,im\n";
  for (const auto& [a, c] : f.coeffs()) s += index_label(a) + "," + fmt(c.real()) + "," + fmt(c.imag()) + "\n";
  return s;
}

inline json base_config(const RunConfig& c) {
  return {{"subcommand", c.subcommand}, {"input", c.input}, {"format", c.format}};
}

/// Sample spec: {"dimension": d, "polynomial": [{"exponent": [...], "value": v}], "gaussian_scale": σ}
/// describing f(x) = P(x) exp(-|x|^2 / (2σ^2)).
inline RealSampler sampler_from_spec(const json& j, std::size_t& dimension) {
  if (!j.is_object()) throw InputError("sample spec must be a JSON object");
  dimension = io::dimension_from_json(j);
  const double sigma = j.contains("gaussian_scale") ? j["gaussian_scale"].get<double>() : 1.0;
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw InputError("'gaussian_scale' must be positive");
  std::vector<std::pair<MultiIndex, Complex>> terms;
  for (const auto& t : io::array_field(j, "polynomial")) {
    if (!t.contains("exponent") || !t.contains("value")) throw InputError("polynomial terms need 'exponent' and 'value'");
    terms.emplace_back(io::index_from_json(t["exponent"], dimension), io::complex_from_json(t["value"]));
  }
  return [terms, sigma](std::span<const double> x) {
    double r2 = 0.0;
    for (double v : x) r2 += v * v;
    Complex p{};
    for (const auto& [e, c] : terms) {
      double m = 1.0;
      for (std::size_t k = 0; k < x.size(); ++k) m *= ipow(x[k], e[k]);
      p += c * m;
    }
    return p * std::exp(-r2 / (2.0 * sigma * sigma));
  };
}

inline ComplexGrid grid_from(const RunConfig& c) {
  ComplexGrid g;
  if (c.grid_radius) {
    if (!(*c.grid_radius > 0.0)) throw UsageError("--grid-radius must be positive");
    g.radius = *c.grid_radius;
  }
  return g;
}

inline void require_format(const RunConfig& c, bool csv_supported) {
  if (c.format != "json" && c.format != "csv") throw UsageError("--format must be json or csv");
  if (c.format == "csv" && !csv_supported) throw UsageError(c.subcommand + " has no CSV rendering; use --format json");
}

}  // namespace detail

inline Result run_hermite_coeffs(const RunConfig& c) {
  detail::require_format(c, true);
  const json spec = detail::read_json_file(c.input);
  std::size_t d = 1;
  const RealSampler f = detail::sampler_from_spec(spec, d);
  const int n = detail::degree_or(c, 16);
  const int q = c.quad_order.value_or(n + 20);
  if (q < n + 1) throw UsageError("--quad-order must be at least degree + 1");
  const CoefficientExpansion coeffs = hermite_coefficients(f, d, n, q);
  Result r;
  r.config = detail::base_config(c);
  r.config["degree"] = n;
  r.config["quad_order"] = q;
  r.result = io::to_json(coeffs);
  r.csv = detail::expansion_csv(coeffs);
  return r;
}

inline Result run_bargmann(const RunConfig& c) {
  detail::require_format(c, true);
  const CoefficientExpansion f = io::expansion_from_json(detail::read_json_file(c.input));
  if (f.side() != Side::hermite) throw InputError("bargmann expects a hermite-side expansion");
  if (c.check_points < 0) throw UsageError("--check-points must be non-negative");
  const int q = c.quad_order.value_or(60);
  if (q < 1) throw UsageError("--quad-order must be positive");
  const CoefficientExpansion F = bargmann_coeff(f);
  Result r;
  r.config = detail::base_config(c);
  r.config["seed"] = c.seed;
  r.config["check_points"] = c.check_points;
  r.config["quad_order"] = q;
  r.result = {{"fock", io::to_json(F)}};
  if (c.check_points > 0) {
    std::mt19937_64 rng(c.seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const RealSampler sample = [&f](std::span<const double> y) { return synthesize(f, y); };
    json table = json::array();
    for (int k = 0; k < c.check_points; ++k) {
      std::vector<Complex> z(f.dimension());
      for (auto& zj : z) zj = std::polar(2.0 * std::sqrt(u(rng)) / std::sqrt(double(f.dimension())), 2.0 * std::numbers::pi * u(rng));
      const FockPoint p(z);
      const Complex closed = evaluate_fock(F, p), integral = bargmann_integral(sample, p, q);
      json zs = json::array();
      for (const Complex& zj : z) zs.push_back(io::to_json(zj));
      table.push_back({{"z", zs},
                       {"closed_form", io::to_json(closed)},
                       {"integral", io::to_json(integral)},
                       {"deviation", std::abs(closed - integral)}});
    }
    r.result["cross_check"] = table;
  }
  r.csv = detail::expansion_csv(F);
  return r;
}

inline Result run_matrix(const RunConfig& c) {
  detail::require_format(c, true);
  const json input = detail::read_json_file(c.input);
  const int n = detail::degree_or(c, 8);
  OperatorMatrix m(1, 0, 0, Side::fock);
  if (c.subcommand == "wick-matrix" || c.subcommand == "antiwick-matrix") {
    const WickSymbol a = io::wick_symbol_from_json(input);
    if (c.subcommand == "antiwick-matrix") {
      if (!a.is_z_independent()) throw InputError("antiwick-matrix needs a symbol independent of z");
      m = antiwick_matrix(a, n);
    } else {
      m = wick_matrix(a, n);
    }
  } else {
    const RealSymbol b = io::real_symbol_from_json(input);
    const Quantization want = c.subcommand == "kn-matrix" ? Quantization::kohn_nirenberg : Quantization::weyl;
    if (b.quantization() != want)
      throw InputError(c.subcommand + " needs a symbol of kind '" + std::string(to_string(want)) + "'");
    m = quantization_matrix(b, n);
  }
  Result r;
  r.config = detail::base_config(c);
  r.config["degree"] = n;
  r.result = io::to_json(m);
  r.csv = detail::matrix_csv(m);
  return r;
}

inline Result run_to_wick(const RunConfig& c) {
  detail::require_format(c, false);
  const RealSymbol b = io::real_symbol_from_json(detail::read_json_file(c.input));
  const std::optional<int> probe = c.degree;
  if (probe && *probe < 0) throw UsageError("--degree must be non-negative");
  Result r;
  r.config = detail::base_config(c);
  r.config["degree"] = probe ? json(*probe) : json(nullptr);
  r.result = io::to_json(real_to_wick_symbol(b, probe));
  return r;
}

inline Result run_expand_antiwick(const RunConfig& c) {
  detail::require_format(c, false);
  const WickSymbol a = io::wick_symbol_from_json(detail::read_json_file(c.input));
  if (c.order < 0) throw UsageError("--order must be non-negative");
  const int n = detail::degree_or(c, 8);
  const WickToAntiWickDecomposition dec = decompose(a, c.order);
  Result r;
  r.config = detail::base_config(c);
  r.config["order"] = c.order;
  r.config["degree"] = n;
  r.result = {{"decomposition", io::to_json(dec)}, {"deviation", verify_decomposition(a, c.order, n)}};
  return r;
}

inline Result run_garding(const RunConfig& c) {
  detail::require_format(c, true);
  const WickSymbol a = io::wick_symbol_from_json(detail::read_json_file(c.input));
  GardingOptions opt;
  if (c.grid_radius) {
    if (!(*c.grid_radius > 0.0)) throw UsageError("--grid-radius must be positive");
    opt.diag_grid.radius = *c.grid_radius;
  }
  if (c.rho && !(*c.rho > 0.0 && *c.rho <= 1.0)) throw UsageError("--rho must lie in (0, 1]");
  opt.rho = c.rho;
  const GardingReport rep = garding_check(a, c.truncations, opt);
  Result r;
  r.config = detail::base_config(c);
  r.config["truncations"] = c.truncations;
  r.config["grid_radius"] = opt.diag_grid.radius;
  r.config["rho"] = c.rho ? json(*c.rho) : json(nullptr);
  r.result = io::to_json(rep);

  std::ostringstream t;
  t << std::setw(10) << "N" << std::setw(24) << "min Re eigenvalue" << std::setw(24) << "Im norm" << '\n';
  std::string csv = "truncation,min_real_eigenvalue,max_imag_norm\n";
  for (std::size_t i = 0; i < rep.truncation_degrees.size(); ++i) {
    t << std::setw(10) << rep.truncation_degrees[i] << std::setw(24) << detail::fmt(rep.min_real_eigenvalues[i])
      << std::setw(24) << detail::fmt(rep.max_imag_norms[i]) << '\n';
    csv += std::to_string(rep.truncation_degrees[i]) + "," + detail::fmt(rep.min_real_eigenvalues[i]) + "," +
           detail::fmt(rep.max_imag_norms[i]) + "\n";
  }
  t << "diagonal min (grid estimate) " << detail::fmt(rep.diagonal_min) << ", stabilized "
    << (rep.stabilized ? "yes" : "no") << '\n';
  r.text = t.str();
  r.csv = csv;
  return r;
}

inline Result run_classify(const RunConfig& c) {
  detail::require_format(c, false);
  const CoefficientExpansion f = io::expansion_from_json(detail::read_json_file(c.input));
  DecayFamily family;
  if (c.family == "roumieu_s") family = DecayFamily::roumieu_s;
  else if (c.family == "flat_sigma") family = DecayFamily::flat_sigma;
  else throw UsageError("--family must be roumieu_s or flat_sigma");
  DecayOptions opt;
  opt.horizon = c.horizon;
  Result r;
  r.config = detail::base_config(c);
  r.config["family"] = c.family;
  r.config["horizon"] = c.horizon ? json(*c.horizon) : json(nullptr);
  r.result = io::to_json(classify_decay(f, family, opt));
  return r;
}

inline Result run_bound_check(const RunConfig& c) {
  detail::require_format(c, true);
  const WickSymbol a = io::wick_symbol_from_json(detail::read_json_file(c.input));
  BoundDirection dir;
  if (c.direction == "gain") dir = BoundDirection::gain;
  else if (c.direction == "loss") dir = BoundDirection::loss;
  else throw UsageError("--direction must be gain or loss");
  const ComplexGrid g = detail::grid_from(c);
  const BoundReport rep = symbol_bound_check(a, c.s, c.r, dir, g);
  Result r;
  r.config = detail::base_config(c);
  r.config["s"] = c.s;
  r.config["r"] = c.r;
  r.config["direction"] = c.direction;
  r.config["grid_radius"] = g.radius;
  r.result = io::to_json(rep);
  std::string csv = "shell_radius,shell_sup\n";
  for (std::size_t i = 0; i < rep.shell_radii.size(); ++i)
    csv += detail::fmt(rep.shell_radii[i]) + "," + detail::fmt(rep.shell_sup[i]) + "\n";
  r.csv = csv;
  return r;
}

inline Result run_selftest(const RunConfig& c) {
  detail::require_format(c, true);
  const std::vector<SelftestRow> rows = fockcalc::run_selftest();
  Result r;
  r.config = detail::base_config(c);
  r.result = json::array();
  std::string csv = "check,deviation,tolerance,passed\n";
  bool ok = true;
  for (const auto& row : rows) {
    r.result.push_back({{"check", row.name}, {"deviation", row.deviation}, {"tolerance", row.tolerance}, {"passed", row.passed}});
    csv += row.name + "," + detail::fmt(row.deviation) + "," + detail::fmt(row.tolerance) + "," + (row.passed ? "1" : "0") + "\n";
    ok = ok && row.passed;
  }
  r.csv = csv;
  r.text = format_selftest(rows);
  r.status = ok ? kOk : kSelftestFailed;
  return r;
}

inline Result dispatch(const RunConfig& c) {
  if (c.subcommand == "hermite-coeffs") return run_hermite_coeffs(c);
  if (c.subcommand == "bargmann") return run_bargmann(c);
  if (c.subcommand == "wick-matrix" || c.subcommand == "antiwick-matrix" || c.subcommand == "kn-matrix" ||
      c.subcommand == "weyl-matrix")
    return run_matrix(c);
  if (c.subcommand == "to-wick") return run_to_wick(c);
  if (c.subcommand == "expand-antiwick") return run_expand_antiwick(c);
  if (c.subcommand == "garding") return run_garding(c);
  if (c.subcommand == "classify") return run_classify(c);
  if (c.subcommand == "bound-check") return run_bound_check(c);
  if (c.subcommand == "selftest") return run_selftest(c);
  throw UsageError("unknown subcommand '" + c.subcommand + "'");
}

/// Output file: --output, else $FOCKCALC_OUTPUT_DIR/<subcommand>.<format>, else stdout.
inline std::optional<std::filesystem::path> output_path(const RunConfig& c) {
  if (!c.output.empty()) return std::filesystem::path(c.output);
  if (const char* dir = std::getenv(kOutputDirVariable); dir && *dir)
    return std::filesystem::path(dir) / (c.subcommand + "." + c.format);
  return std::nullopt;
}

inline std::string render(const Result& r, const std::string& format) {
  if (format == "csv") {
    std::string s = "# fockcalc " + std::string(kVersion) + "\n# config " + r.config.dump() + "\n";
    return s + *r.csv;
  }
  json doc = {{"fockcalc_version", kVersion}, {"config", r.config}, {"result", r.result}};
  return doc.dump(2) + "\n";
}

inline int report_error(std::ostream& err, const char* kind, const std::string& message, int code) {
  err << json{{"error", {{"kind", kind}, {"message", message}, {"exit_code", code}}}}.dump() << '\n';
  return code;
}

inline void add_common(CLI::App* sub, RunConfig& c, bool needs_input) {
  auto* in = sub->add_option("--input,-i", c.input, "input JSON file");
  if (needs_input) in->required();
  sub->add_option("--output,-o", c.output, "output file (default: $FOCKCALC_OUTPUT_DIR or stdout)");
  sub->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hermite, Bargmann and Wick operator calculus toolkit", "fockcalc"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  RunConfig c;

  auto* hc = app.add_subcommand("hermite-coeffs", "Hermite coefficients of a sampled function");
  add_common(hc, c, true);
  hc->add_option("--degree", c.degree, "maximal total degree");
  hc->add_option("--quad-order", c.quad_order, "Gauss-Hermite order per axis");

  auto* bg = app.add_subcommand("bargmann", "Fock-side coefficients, with optional integral cross-check");
  add_common(bg, c, true);
  bg->add_option("--quad-order", c.quad_order, "Gauss-Hermite order of the integral");
  bg->add_option("--check-points", c.check_points, "random points |z| <= 2 for the cross-check");
  bg->add_option("--seed", c.seed, "seed for the cross-check points");

  for (const char* name : {"wick-matrix", "antiwick-matrix", "kn-matrix", "weyl-matrix"}) {
    auto* m = app.add_subcommand(name, "matrix of the operator on span{e_gamma : |gamma| <= degree}");
    add_common(m, c, true);
    m->add_option("--degree", c.degree, "domain degree");
  }

  auto* tw = app.add_subcommand("to-wick", "Wick symbol of a KN or Weyl quantized real symbol");
  add_common(tw, c, true);
  tw->add_option("--degree", c.degree, "probe degree (default: symbol degree)");

  auto* ea = app.add_subcommand("expand-antiwick", "anti-Wick expansion with remainder and matrix check");
  add_common(ea, c, true);
  ea->add_option("--order", c.order, "expansion order N");
  ea->add_option("--degree", c.degree, "truncation degree of the check");

  auto* ga = app.add_subcommand("garding", "spectral probe of Re and Im of a Wick operator");
  add_common(ga, c, true);
  ga->add_option("--truncations", c.truncations, "increasing truncation degrees")->delimiter(',');
  ga->add_option("--grid-radius", c.grid_radius, "radius of the diagonal grid");
  ga->add_option("--rho", c.rho, "Shubin exponent for the cross-report");

  auto* cl = app.add_subcommand("classify", "decay family of a coefficient expansion");
  add_common(cl, c, true);
  cl->add_option("--family", c.family, "roumieu_s or flat_sigma");
  cl->add_option("--horizon", c.horizon, "degree up to which coefficients are known");

  auto* bc = app.add_subcommand("bound-check", "grid sup of a symbol against the Gaussian weight");
  add_common(bc, c, true);
  bc->add_option("--s", c.s, "class exponent s >= 1/2");
  bc->add_option("--r", c.r, "rate r > 0");
  bc->add_option("--direction", c.direction, "gain or loss");
  bc->add_option("--grid-radius", c.grid_radius, "grid radius");

  auto* st = app.add_subcommand("selftest", "closed forms against quadrature oracles");
  add_common(st, c, false);

  std::vector<const char*> argv = {"fockcalc"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion& e) {
    out << kVersion << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    return report_error(err, "usage", e.what(), kUsage);
  }
  c.subcommand = app.get_subcommands().front()->get_name();

  try {
    const Result r = dispatch(c);
    const std::string body = render(r, c.format);
    if (const auto path = output_path(c)) {
      if (path->has_parent_path()) std::filesystem::create_directories(path->parent_path());
      std::ofstream f(*path, std::ios::binary);
      if (!f) return report_error(err, "input", "cannot write output file '" + path->string() + "'", kInput);
      f << body;
      if (r.text) out << *r.text;
    } else {
      if (r.text && c.subcommand == "selftest") out << *r.text;
      else out << body;
    }
    return r.status;
  } catch (const UsageError& e) {
    return report_error(err, "usage", e.what(), kUsage);
  } catch (const InputError& e) {
    return report_error(err, "input", e.what(), kInput);
  } catch (const NumericalError& e) {
    return report_error(err, "numerical", e.what(), kNumerical);
  } catch (const ConsistencyError& e) {
    return report_error(err, "consistency", e.what(), kConsistency);
  } catch (const json::exception& e) {
    return report_error(err, "input", e.what(), kInput);
  } catch (const std::exception& e) {
    return report_error(err, "internal", e.what(), kInternal);
  }
}

}  // namespace fockcalc::cli
