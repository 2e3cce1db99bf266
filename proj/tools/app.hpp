#pragma once

// Subcommand implementations behind the oscurve executable. Each command
// takes a resolved RunConfig, writes its report to `out` and returns the
// process exit code; option parsing lives in oscurve.cpp.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "oscurve/oscurve.hpp"

namespace oscurve::cli {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitDomain = 2, kExitNumerical = 3 };

/// Bad or inconsistent options, detected before any computation.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Tolerances {
  real_t constancy = kDefaultConstancyTol;
  real_t frame = kFrameTol;
  real_t frenet = kFrenetResidualTol;
  real_t mannheim = kMannheimTol;
  real_t bar = 2e-4;
  real_t recovery = 1e-3;
  real_t slant = 1e-2;
  real_t od = kOdTol;
  real_t unit_field = 1e-9;
  real_t shape = kShapeAbsTol;
};

struct RunConfig {
  std::string curve;
  std::string input;
  ParameterMap params;
  std::optional<real_t> s_min;
  std::optional<real_t> s_max;
  std::size_t n = kDefaultSamples;
  real_t phase_c = kDefaultPhase;
  real_t a = 1.0;
  real_t b = 1.0;
  std::string family = "osculating";
  Tolerances tol;
  std::string output;
  std::string format = "csv";
  std::string only;
};

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

/// "k=v,k=v" into a parameter map.
inline ParameterMap parse_params(std::string_view text) {
  ParameterMap out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const auto item = detail::trim(text.substr(0, comma));
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) throw ConfigError("--params: expected key=value, got '" + std::string(item) + "'");
    const auto key = detail::trim(item.substr(0, eq));
    const auto val = detail::trim(item.substr(eq + 1));
    real_t v = 0.0;
    const auto [ptr, ec] = std::from_chars(val.data(), val.data() + val.size(), v);
    if (key.empty() || val.empty() || ec != std::errc{} || ptr != val.data() + val.size()) {
      throw ConfigError("--params: cannot read '" + std::string(item) + "' as key=number");
    }
    out[std::string(key)] = v;
  }
  return out;
}

inline void require_positive_tol(real_t v, const char* name) {
  if (!(v > 0.0)) throw ConfigError(std::string("--") + name + " must be positive");
}

inline void validate(const RunConfig& cfg) {
  if (cfg.format != "csv" && cfg.format != "json") throw ConfigError("--format must be csv or json");
  if (cfg.family != "osculating" && cfg.family != "principal" && cfg.family != "binormal") {
    throw ConfigError("--family must be osculating, principal or binormal");
  }
  if (cfg.n < kMinSamples || cfg.n % 2 == 0) {
    throw ConfigError("--n must be odd and at least 9 (got " + std::to_string(cfg.n) + ")");
  }
  if (cfg.s_min && cfg.s_max && !(*cfg.s_min < *cfg.s_max)) throw ConfigError("--s-min must be below --s-max");
  if (!std::isfinite(cfg.phase_c)) throw ConfigError("--phase-c must be finite");
  const auto& t = cfg.tol;
  require_positive_tol(t.constancy, "tol-constancy");
  require_positive_tol(t.frame, "tol-frame");
  require_positive_tol(t.frenet, "tol-frenet");
  require_positive_tol(t.mannheim, "tol-mannheim");
  require_positive_tol(t.bar, "tol-bar");
  require_positive_tol(t.recovery, "tol-recovery");
  require_positive_tol(t.slant, "tol-slant");
  require_positive_tol(t.od, "tol-od");
  require_positive_tol(t.unit_field, "tol-unit");
  require_positive_tol(t.shape, "tol-shape");
}

inline const CatalogEntry& find_catalog_entry_or_config(const std::string& name) {
  try {
    return find_catalog_entry(name);
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
}

struct ResolvedCurve {
  std::string label;
  CurveSamples samples;
  bool reparametrized = false;
};

/// Catalog curves are sampled on the configured grid; CSV input is read
/// as-is. Problems with names, parameters or grid sizes are ConfigErrors.
inline ResolvedCurve resolve_curve(const RunConfig& cfg) {
  if (!cfg.curve.empty() && !cfg.input.empty()) throw ConfigError("--curve and --input are mutually exclusive");
  if (cfg.curve.empty() && cfg.input.empty()) throw ConfigError("one of --curve NAME or --input PATH is required");
  if (!cfg.input.empty()) {
    if (!cfg.params.empty()) throw ConfigError("--params applies to catalog curves only");
    return {cfg.input, load_csv(cfg.input)};
  }
  Grid grid(0.0, 1.0, kMinSamples);
  try {
    const auto& entry = find_catalog_entry(cfg.curve);
    const auto p = resolve_parameters(entry, cfg.params);
    const auto dom = entry.default_domain(p);
    grid = Grid(cfg.s_min.value_or(dom.lo), cfg.s_max.value_or(dom.hi), cfg.n);
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
  return {cfg.curve, evaluate_catalog(cfg.curve, cfg.params, grid)};
}

/// Arc-length resampling for input that is not unit speed.
inline ResolvedCurve unit_speed(ResolvedCurve rc) {
  if (!rc.samples.unit_speed) {
    rc.samples = arclength_reparametrize(rc.samples, rc.samples.size());
    rc.reparametrized = true;
  }
  return rc;
}

// ---------------------------------------------------------------------------
// Output
// ---------------------------------------------------------------------------

inline double num(real_t v) { return static_cast<double>(v); }

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

// Flattened "key: value" lines for text summaries.
inline void print_text(const Json& j, std::ostream& out, const std::string& prefix = "") {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
    const auto& v = it.value();
    if (v.is_object()) {
      print_text(v, out, key);
    } else if (v.is_number_float()) {
      out << key << ": " << fmt(v.get<double>()) << '\n';
    } else if (v.is_string()) {
      out << key << ": " << v.get<std::string>() << '\n';
    } else {
      out << key << ": " << v.dump() << '\n';
    }
  }
}

inline void emit(const Json& summary, const RunConfig& cfg, std::ostream& out) {
  if (cfg.format == "json") {
    out << summary.dump(2) << '\n';
  } else {
    print_text(summary, out);
  }
}

struct Column {
  std::string name;
  std::vector<real_t> values;
};

/// Column table as CSV (header + rows) or as a JSON object of arrays.
inline void write_columns(const std::string& path, const std::string& format, const std::vector<Column>& cols) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing: " + std::strerror(errno));
  const std::size_t rows = cols.empty() ? 0 : cols.front().values.size();
  if (format == "json") {
    Json j = Json::object();
    for (const auto& c : cols) {
      Json arr = Json::array();
      for (real_t v : c.values) arr.push_back(std::isfinite(v) ? Json(num(v)) : Json(nullptr));
      j[c.name] = std::move(arr);
    }
    out << j.dump() << '\n';
  } else {
    for (std::size_t k = 0; k < cols.size(); ++k) out << (k ? "," : "") << cols[k].name;
    out << '\n';
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t k = 0; k < cols.size(); ++k) out << (k ? "," : "") << detail::format_number(cols[k].values[i]);
      out << '\n';
    }
  }
  out.flush();
  if (!out) throw IoError("error while writing '" + path + "': " + std::strerror(errno));
}

inline std::vector<Column> curve_columns(const CurveSamples& c) {
  std::vector<Column> cols{{"s", c.grid.values()}, {"x", {}}, {"y", {}}, {"z", {}}};
  for (const auto& p : c.points) {
    cols[1].values.push_back(p.x);
    cols[2].values.push_back(p.y);
    cols[3].values.push_back(p.z);
  }
  return cols;
}

inline std::vector<Column> frenet_columns(const FrenetData& f) {
  std::vector<Column> cols{{"s", f.grid.values()}};
  auto vec = [&](const char* base, const std::vector<Vec3>& v) {
    Column x{std::string(base) + "x", {}}, y{std::string(base) + "y", {}}, z{std::string(base) + "z", {}};
    for (const auto& p : v) {
      x.values.push_back(p.x);
      y.values.push_back(p.y);
      z.values.push_back(p.z);
    }
    cols.push_back(std::move(x));
    cols.push_back(std::move(y));
    cols.push_back(std::move(z));
  };
  vec("T", f.T);
  vec("N", f.N);
  vec("B", f.B);
  cols.push_back({"kappa", f.kappa});
  cols.push_back({"tau", f.tau});
  Column valid{"valid", {}};
  for (bool v : f.valid) valid.values.push_back(v ? 1.0 : 0.0);
  cols.push_back(std::move(valid));
  return cols;
}

inline void write_curve(const RunConfig& cfg, const CurveSamples& c) {
  if (!cfg.output.empty()) write_columns(cfg.output, cfg.format, curve_columns(c));
}

inline Json stats_json(const std::vector<real_t>& values) {
  if (values.empty()) return Json{{"mean", nullptr}, {"min", nullptr}, {"max", nullptr}};
  const auto r = is_constant(values);
  return Json{{"mean", num(r.mean)}, {"min", num(r.min)}, {"max", num(r.max)}};
}

inline Json constancy_json(const ConstancyReport& r) {
  return Json{{"mean", num(r.mean)},
              {"min", num(r.min)},
              {"max", num(r.max)},
              {"median", num(r.median)},
              {"rel_variation", num(r.rel_variation)},
              {"count", r.count},
              {"is_constant", r.is_constant}};
}

// ---------------------------------------------------------------------------
// catalog
// ---------------------------------------------------------------------------

inline int cmd_catalog(const RunConfig& cfg, std::ostream& out) {
  Json list = Json::array();
  for (const auto& e : catalog()) {
    Json params = Json::object();
    for (const auto& [k, v] : e.defaults) params[k] = num(v);
    const auto dom = e.default_domain(e.defaults);
    const auto valid = e.valid_domain(e.defaults);
    Json valid_j = Json::array();
    valid_j.push_back(std::isfinite(valid.lo) ? Json(num(valid.lo)) : Json(nullptr));
    valid_j.push_back(std::isfinite(valid.hi) ? Json(num(valid.hi)) : Json(nullptr));
    list.push_back(Json{{"name", e.name},
                        {"description", e.summary},
                        {"parameters", params},
                        {"default_domain", Json::array({num(dom.lo), num(dom.hi)})},
                        {"valid_domain", valid_j}});
  }
  if (cfg.format == "json") {
    out << list.dump(2) << '\n';
    return kExitOk;
  }
  for (const auto& e : list) {
    out << e["name"].get<std::string>() << '\n';
    out << "  " << e["description"].get<std::string>() << '\n';
    out << "  parameters:";
    if (e["parameters"].empty()) out << " none";
    for (auto it = e["parameters"].begin(); it != e["parameters"].end(); ++it) {
      out << ' ' << it.key() << '=' << fmt(it.value().get<double>());
    }
    out << "\n  default domain: [" << fmt(e["default_domain"][0].get<double>()) << ", "
        << fmt(e["default_domain"][1].get<double>()) << "]\n";
    auto bound = [](const Json& v) { return v.is_null() ? std::string("unbounded") : fmt(v.get<double>()); };
    out << "  valid domain: [" << bound(e["valid_domain"][0]) << ", " << bound(e["valid_domain"][1]) << "]\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// frenet
// ---------------------------------------------------------------------------

inline int cmd_frenet(const RunConfig& cfg, std::ostream& out) {
  const auto rc = unit_speed(resolve_curve(cfg));
  const auto f = frenet_apparatus(rc.samples);
  if (f.valid_count() == 0) throw DegenerateCurve(rc.label + ": curvature vanishes everywhere; no Frenet frame");

  const auto inner = interior_mask(f.size());
  std::vector<real_t> k, t;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!inner[i] || !f.valid[i]) continue;
    k.push_back(f.kappa[i]);
    t.push_back(f.tau[i]);
  }
  const auto frame = verify_frame(f, cfg.tol.frame);
  const auto residual = frenet_derivative_check(f, cfg.tol.frenet);
  const real_t frame_dev =
      std::max({frame.max_norm_deviation, frame.max_orthogonality, frame.max_handedness_deviation});

  Json j{{"curve", rc.label},
         {"samples", f.size()},
         {"valid_samples", f.valid_count()},
         {"reparametrized", rc.reparametrized},
         {"kappa", stats_json(k)},
         {"tau", stats_json(t)},
         {"frame_max_deviation", num(frame_dev)},
         {"frame_check", frame.passed ? "pass" : "fail"},
         {"frenet_residual", num(residual.max_residual())},
         {"frenet_check", residual.passed ? "pass" : "fail"}};
  if (!cfg.output.empty()) write_columns(cfg.output, cfg.format, frenet_columns(f));
  emit(j, cfg, out);
  return frame.passed && residual.passed ? kExitOk : kExitNumerical;
}

// ---------------------------------------------------------------------------
// direct
// ---------------------------------------------------------------------------

/// Everything derived from one osculating-direction construction.
/// `gamma_frame` has its normal aligned with the donor binormal (signed
/// curvature follows the donor); `gamma_intrinsic` keeps gamma's own
/// orientation, which is what its slant-helix invariant refers to.
struct DirectionRun {
  FrenetData donor;
  DirectionCoefficients coeffs;
  CurveSamples gamma;
  FrenetData gamma_frame;
  FrenetData gamma_intrinsic;
  SampleMask mask;
};

inline DirectionRun run_direction(const CurveSamples& donor_curve, real_t phase_c) {
  auto f = frenet_apparatus(donor_curve);
  auto dc = osculating_coefficients(f, phase_c);
  auto gamma = osculating_direction_curve(f, dc);
  auto intrinsic = frenet_apparatus(gamma);
  auto g = intrinsic;
  align_orientation(g, binormals(f));
  auto mask = mask_and(statistics_mask(g, f, dc), conditioned_mask(dc, kDarbouxMargin));
  return {std::move(f), std::move(dc), std::move(gamma), std::move(g), std::move(intrinsic), std::move(mask)};
}

inline int cmd_direct(const RunConfig& cfg, std::ostream& out) {
  const auto rc = unit_speed(resolve_curve(cfg));
  if (cfg.family != "osculating") {
    const auto f = frenet_apparatus(rc.samples);
    const auto gamma =
        cfg.family == "principal" ? principal_direction_curve(f) : binormal_direction_curve(f);
    Json j{{"curve", rc.label},
           {"family", cfg.family},
           {"samples", gamma.size()},
           {"max_speed_deviation", num(max_speed_deviation(gamma))}};
    write_curve(cfg, gamma);
    emit(j, cfg, out);
    return kExitOk;
  }

  const auto run = run_direction(rc.samples, cfg.phase_c);
  const auto mannheim = mannheim_check(run.gamma_frame, run.donor, cfg.tol.mannheim, run.mask);
  const auto bar = bar_agreement(run.gamma_frame, predicted_bar_data(run.donor, run.coeffs), run.mask);
  const real_t bar_dev = std::max(bar.max_kappa_deviation, bar.max_tau_deviation);
  const bool bar_ok = bar.checked > 0 && bar_dev < cfg.tol.bar;
  const auto slant = slant_helix_test(run.gamma_intrinsic, cfg.tol.slant);
  const auto recovery = recovery_check(run.gamma_frame, run.donor, run.coeffs);

  Json j{{"curve", rc.label},
         {"family", cfg.family},
         {"samples", run.gamma.size()},
         {"phase_c", num(cfg.phase_c)},
         {"reparametrized", rc.reparametrized},
         {"unit_field_deviation", num(unit_field_deviation(direction_field(run.donor, run.coeffs)))},
         {"mannheim_min_abs_dot", num(mannheim.min_abs_dot)},
         {"mannheim_check", mannheim.passed ? "pass" : "fail"},
         {"curvature_max_deviation", num(bar.max_kappa_deviation)},
         {"torsion_max_deviation", num(bar.max_tau_deviation)},
         {"curvature_torsion_check", bar_ok ? "pass" : "fail"},
         {"sigma_it", constancy_json(slant.sigma)},
         {"donor_recovery_max_rel", num(recovery.max_rel())},
         {"donor_recovery_samples", recovery.checked}};
  write_curve(cfg, run.gamma);
  emit(j, cfg, out);
  return mannheim.passed && bar_ok ? kExitOk : kExitNumerical;
}

// ---------------------------------------------------------------------------
// classify
// ---------------------------------------------------------------------------

inline Json classification_json(const ClassificationReport& r) {
  auto f = [](real_t v) { return std::isfinite(v) ? Json(num(v)) : Json(nullptr); };
  return Json{{"is_line", r.is_line},
              {"is_plane", r.is_plane},
              {"is_general_helix", r.is_general_helix},
              {"is_slant_helix", r.is_slant_helix},
              {"slant_degenerate_zero", r.slant.degenerate_zero},
              {"is_rectifying", r.is_rectifying},
              {"reparametrized", r.reparametrized},
              {"helix_ratio_mean", f(r.helix_ratio.mean)},
              {"helix_ratio_min", f(r.helix_ratio.min)},
              {"helix_ratio_max", f(r.helix_ratio.max)},
              {"helix_ratio_rel_variation", f(r.helix_ratio.rel_variation)},
              {"helix_ratio_is_constant", r.helix_ratio.is_constant},
              {"sigma_it_mean", f(r.slant.sigma.mean)},
              {"sigma_it_min", f(r.slant.sigma.min)},
              {"sigma_it_max", f(r.slant.sigma.max)},
              {"sigma_it_rel_variation", f(r.slant.sigma.rel_variation)},
              {"sigma_it_is_constant", r.slant.sigma.is_constant},
              {"rectifying_slope", f(r.rectifying.ratio_fit.slope)},
              {"rectifying_intercept", f(r.rectifying.ratio_fit.intercept)},
              {"rectifying_max_residual", f(r.rectifying.ratio_fit.max_residual)},
              {"normal_component", f(r.rectifying.normal_component)}};
}

inline int cmd_classify(const RunConfig& cfg, std::ostream& out) {
  const auto rc = resolve_curve(cfg);
  ClassifyOptions opt;
  opt.rel_tol = cfg.tol.constancy;
  opt.abs_tol = cfg.tol.shape;
  opt.rectifying_tol = cfg.tol.od;
  opt.resample_n = rc.samples.size();
  Json j{{"curve", rc.label}};
  j.update(classification_json(classify(rc.samples, opt)));
  const std::string text = j.dump(2) + "\n";
  if (!cfg.output.empty()) {
    std::ofstream file(cfg.output, std::ios::binary | std::ios::trunc);
    if (!file) throw IoError("cannot open '" + cfg.output + "' for writing: " + std::strerror(errno));
    file << text;
    if (!file) throw IoError("error while writing '" + cfg.output + "'");
  } else {
    out << text;
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// od
// ---------------------------------------------------------------------------

inline ODParameters od_parameters(const RunConfig& cfg) {
  if (cfg.a == 0.0 || cfg.b == 0.0) {
    throw ConfigError("--a and --b must be nonzero constants (got a = " + fmt(num(cfg.a)) +
                      ", b = " + fmt(num(cfg.b)) + ")");
  }
  return {cfg.a, cfg.b, cfg.phase_c};
}

inline Json od_json(const ODReport& r) {
  return Json{{"normal_component", num(r.rectifying.normal_component)},
              {"ratio_slope", num(r.rectifying.ratio_fit.slope)},
              {"ratio_intercept", num(r.rectifying.ratio_fit.intercept)},
              {"slope_deviation", num(r.slope_deviation)},
              {"intercept_deviation", num(r.intercept_deviation)},
              {"max_cross_ratio", num(r.max_cross_ratio)},
              {"max_tangent_offset", num(r.max_tangent_offset)},
              {"max_binormal_offset", num(r.max_binormal_offset)},
              {"max_speed_deviation", num(r.max_speed_deviation)},
              {"rectifying_check", r.rectifying_passed ? "pass" : "fail"},
              {"ratio_check", r.ratio_passed ? "pass" : "fail"},
              {"darboux_check", r.darboux_passed ? "pass" : "fail"}};
}

inline int cmd_od(const RunConfig& cfg, std::ostream& out) {
  const auto p = od_parameters(cfg);
  const auto rc = unit_speed(resolve_curve(cfg));
  const auto f = frenet_apparatus(rc.samples);
  const auto gamma = od_osculating_curve(f, p);
  const auto report = verify_od_properties(gamma, p, cfg.tol.od);
  Json j{{"curve", rc.label},
         {"a", num(p.a)},
         {"b", num(p.b)},
         {"phase_c", num(p.phase_c)},
         {"samples", gamma.size()},
         {"unit_speed", gamma.unit_speed}};
  j.update(od_json(report));
  j["result"] = report.passed ? "pass" : "fail";
  write_curve(cfg, gamma);
  emit(j, cfg, out);
  return report.passed ? kExitOk : kExitNumerical;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

struct CheckRow {
  std::string id;
  std::string curve;
  real_t deviation = 0.0;
  real_t tolerance = 0.0;
  bool lower_bound = false;  // passes when deviation >= tolerance
  bool passed = false;
};

inline const std::vector<std::string>& check_ids() {
  static const std::vector<std::string> ids{
      "frame",          "frenet-residual", "unit-field",        "mannheim",    "curvature-torsion",
      "donor-recovery", "slant-invariant", "not-general-helix", "not-planar",  "od-rectifying",
      "helix-not-rectifying"};
  return ids;
}

inline CheckRow upper(std::string id, const std::string& curve, real_t dev, real_t tol) {
  return {std::move(id), curve, dev, tol, false, std::isfinite(dev) && dev < tol};
}

inline CheckRow lower(std::string id, const std::string& curve, real_t dev, real_t tol) {
  return {std::move(id), curve, dev, tol, true, std::isfinite(dev) && dev >= tol};
}

/// Curves whose closed-form OD construction is checked.
inline bool od_curve(const std::string& name) { return name == "root_curve" || name == "helix_12_5"; }

inline std::vector<CheckRow> run_suite(const RunConfig& cfg) {
  std::vector<CheckRow> rows;
  const auto& tol = cfg.tol;
  auto wanted = [&](const char* id) { return cfg.only.empty() || cfg.only == id; };
  for (const auto& entry : catalog()) {
    const std::string& name = entry.name;
    if (!cfg.curve.empty() && cfg.curve != name) continue;
    const auto alpha = evaluate_catalog(name, {}, default_grid(name, {}, cfg.n));
    const auto run = run_direction(alpha, cfg.phase_c);
    const auto& f = run.donor;
    const auto& g = run.gamma_frame;

    if (wanted("frame")) {
      const auto fr = verify_frame(f, tol.frame);
      rows.push_back(upper("frame", name,
                           std::max({fr.max_norm_deviation, fr.max_orthogonality, fr.max_handedness_deviation}),
                           tol.frame));
    }
    if (wanted("frenet-residual")) {
      rows.push_back(upper("frenet-residual", name, frenet_derivative_check(f, tol.frenet).max_residual(), tol.frenet));
    }
    if (wanted("unit-field")) {
      rows.push_back(
          upper("unit-field", name, unit_field_deviation(direction_field(f, run.coeffs)), tol.unit_field));
    }
    if (wanted("mannheim")) {
      const auto m = mannheim_check(g, f, tol.mannheim, run.mask);
      rows.push_back(upper("mannheim", name, 1.0 - m.min_abs_dot, tol.mannheim));
    }
    if (wanted("curvature-torsion")) {
      const auto bar = bar_agreement(g, predicted_bar_data(f, run.coeffs), run.mask);
      rows.push_back(
          upper("curvature-torsion", name, std::max(bar.max_kappa_deviation, bar.max_tau_deviation), tol.bar));
    }
    if (wanted("donor-recovery")) {
      rows.push_back(upper("donor-recovery", name, recovery_check(g, f, run.coeffs).max_rel(), tol.recovery));
    }
    if (wanted("slant-invariant")) {
      const auto ratio = general_helix_test(f, tol.constancy);
      const auto slant = slant_helix_test(run.gamma_intrinsic, tol.slant);
      const real_t expected = 1.0 / ratio.mean;
      const real_t dev =
          std::max(slant.sigma.rel_variation, std::fabs(slant.sigma.mean - expected) / std::fabs(expected));
      rows.push_back(upper("slant-invariant", name, dev, tol.slant));
    }
    if (wanted("not-general-helix")) {
      rows.push_back(lower("not-general-helix", name, general_helix_test(g, tol.constancy).rel_variation,
                           tol.constancy));
    }
    if (wanted("not-planar")) {
      const auto inner = interior_mask(g.size());
      real_t tau_max = 0.0;
      for (std::size_t i = 0; i < g.size(); ++i) {
        if (inner[i] && g.valid[i]) tau_max = std::max(tau_max, std::fabs(g.tau[i]));
      }
      auto row = lower("not-planar", name, tau_max, tol.shape);
      row.passed = row.passed && !plane_test(g, tol.shape) && !line_test(g, tol.shape);
      rows.push_back(row);
    }
    if (wanted("od-rectifying") && od_curve(name)) {
      const ODParameters p{1.0, 1.0, cfg.phase_c};
      const auto rep = verify_od_properties(od_osculating_curve(f, p), p, tol.od);
      const real_t dev = std::max({rep.rectifying.normal_component, rep.slope_deviation, rep.intercept_deviation,
                                   rep.max_cross_ratio});
      rows.push_back(upper("od-rectifying", name, dev, tol.od));
    }
    if (wanted("helix-not-rectifying") && name == "circular_helix") {
      rows.push_back(lower("helix-not-rectifying", name, rectifying_test(alpha, f, tol.od).normal_component, tol.od));
    }
  }
  return rows;
}

inline int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  if (!cfg.input.empty()) throw ConfigError("verify runs on catalog curves; --input is not accepted");
  if (!cfg.curve.empty()) (void)find_catalog_entry_or_config(cfg.curve);
  if (!cfg.only.empty() && std::find(check_ids().begin(), check_ids().end(), cfg.only) == check_ids().end()) {
    std::string known;
    for (const auto& id : check_ids()) known += (known.empty() ? "" : ", ") + id;
    throw ConfigError("unknown check '" + cfg.only + "' (known: " + known + ")");
  }
  const auto rows = run_suite(cfg);
  if (rows.empty()) throw ConfigError("no check matches the given --curve/--only filter");

  bool all = true;
  for (const auto& r : rows) all = all && r.passed;

  if (cfg.format == "json") {
    Json list = Json::array();
    for (const auto& r : rows) {
      list.push_back(Json{{"check", r.id},
                          {"curve", r.curve},
                          {"deviation", std::isfinite(r.deviation) ? Json(num(r.deviation)) : Json(nullptr)},
                          {"tolerance", num(r.tolerance)},
                          {"bound", r.lower_bound ? "min" : "max"},
                          {"passed", r.passed}});
    }
    out << Json{{"checks", list}, {"all_passed", all}}.dump(2) << '\n';
  } else {
    char line[160];
    std::snprintf(line, sizeof line, "%-22s %-16s %-14s %-12s %s\n", "check", "curve", "deviation", "tolerance",
                  "result");
    out << line;
    for (const auto& r : rows) {
      const std::string tol = (r.lower_bound ? ">= " : "< ") + fmt(num(r.tolerance));
      std::snprintf(line, sizeof line, "%-22s %-16s %-14s %-12s %s\n", r.id.c_str(), r.curve.c_str(),
                    fmt(num(r.deviation)).c_str(), tol.c_str(), r.passed ? "pass" : "FAIL");
      out << line;
    }
    std::size_t passed = 0;
    for (const auto& r : rows) passed += r.passed ? 1 : 0;
    out << passed << "/" << rows.size() << " checks passed\n";
  }
  return all ? kExitOk : kExitNumerical;
}

}  // namespace oscurve::cli
