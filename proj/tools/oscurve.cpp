// oscurve: command-line front end for the Frenet/direction-curve library.

#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "app.hpp"

namespace {

using oscurve::real_t;
using namespace oscurve::cli;

// CLI11 reads plain doubles; the library works in real_t.
struct RawOptions {
  std::string params;
  double s_min = 0.0;
  double s_max = 0.0;
  double phase_c = static_cast<double>(oscurve::kDefaultPhase);
  double a = 1.0;
  double b = 1.0;
  bool json = false;
  std::map<std::string, double> tol;
};

void add_tolerance(CLI::App& app, RawOptions& raw, const std::string& name, real_t def, const std::string& what) {
  raw.tol[name] = static_cast<double>(def);
  app.add_option("--tol-" + name, raw.tol[name], what)->capture_default_str()->group("Tolerances");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Frenet frames, osculating-direction curves, helix and rectifying-curve classification", "oscurve"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  RawOptions raw;

  app.add_option("--curve", cfg.curve, "catalog curve name (see 'oscurve catalog')");
  app.add_option("--input", cfg.input, "CSV file with columns s,x,y,z or x,y,z");
  app.add_option("--params", raw.params, "catalog parameters, k=v,k=v");
  auto* s_min = app.add_option("--s-min", raw.s_min, "grid start (default: catalog default domain)");
  auto* s_max = app.add_option("--s-max", raw.s_max, "grid end (default: catalog default domain)");
  app.add_option("--n", cfg.n, "number of grid samples (odd, >= 9)")->capture_default_str();
  app.add_option("--phase-c", raw.phase_c, "integration constant of theta")->capture_default_str();
  app.add_option("--a", raw.a, "OD constant a (nonzero)")->capture_default_str();
  app.add_option("--b", raw.b, "OD constant b (nonzero)")->capture_default_str();
  app.add_option("--family", cfg.family, "direction family: osculating, principal or binormal")
      ->capture_default_str();
  app.add_option("--output", cfg.output, "write sampled data to this file");
  app.add_option("--format", cfg.format, "csv or json")->capture_default_str();
  app.add_flag("--json", raw.json, "same as --format json");
  app.add_option("--only", cfg.only, "verify: run a single check id");

  const Tolerances defaults;
  add_tolerance(app, raw, "constancy", defaults.constancy, "relative variation accepted as constant");
  add_tolerance(app, raw, "frame", defaults.frame, "frame orthonormality/handedness");
  add_tolerance(app, raw, "frenet", defaults.frenet, "Frenet-Serret residual");
  add_tolerance(app, raw, "mannheim", defaults.mannheim, "1 - min |<Nbar, B>|");
  add_tolerance(app, raw, "bar", defaults.bar, "direction-curve curvature/torsion vs prediction");
  add_tolerance(app, raw, "recovery", defaults.recovery, "relative error of recovered donor curvatures");
  add_tolerance(app, raw, "slant", defaults.slant, "slant-helix invariant constancy and mean");
  add_tolerance(app, raw, "od", defaults.od, "OD-curve and rectifying checks");
  add_tolerance(app, raw, "unit", defaults.unit_field, "| |X| - 1 | of the direction field");
  add_tolerance(app, raw, "shape", defaults.shape, "absolute bound for line and plane tests");

  const char* env_config = std::getenv("FD_CONFIG");
  app.set_config("--config", env_config ? env_config : "", "key = value file; flags override it (env FD_CONFIG)");

  using Command = std::function<int(const RunConfig&, std::ostream&)>;
  std::map<CLI::App*, Command> commands;
  auto add = [&](const char* name, const char* help, Command cmd) {
    commands[app.add_subcommand(name, help)] = std::move(cmd);
  };
  add("catalog", "list the built-in curves", cmd_catalog);
  add("frenet", "Frenet frame, curvature and torsion of a curve", cmd_frenet);
  add("direct", "build a direction curve and check it against its donor", cmd_direct);
  add("classify", "line/plane/helix/slant-helix/rectifying verdicts as JSON", cmd_classify);
  add("od", "closed-form OD-osculating curve and its rectifying checks", cmd_od);
  add("verify", "run the check suite over the catalog", cmd_verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "oscurve: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    cfg.params = parse_params(raw.params);
    if (*s_min) cfg.s_min = raw.s_min;
    if (*s_max) cfg.s_max = raw.s_max;
    cfg.phase_c = raw.phase_c;
    cfg.a = raw.a;
    cfg.b = raw.b;
    if (raw.json) cfg.format = "json";
    cfg.tol.constancy = raw.tol["constancy"];
    cfg.tol.frame = raw.tol["frame"];
    cfg.tol.frenet = raw.tol["frenet"];
    cfg.tol.mannheim = raw.tol["mannheim"];
    cfg.tol.bar = raw.tol["bar"];
    cfg.tol.recovery = raw.tol["recovery"];
    cfg.tol.slant = raw.tol["slant"];
    cfg.tol.od = raw.tol["od"];
    cfg.tol.unit_field = raw.tol["unit"];
    cfg.tol.shape = raw.tol["shape"];
    validate(cfg);

    for (const auto& [sub, cmd] : commands) {
      if (sub->parsed()) return cmd(cfg, std::cout);
    }
    return kExitUsage;
  } catch (const ConfigError& e) {
    std::cerr << "oscurve: " << e.what() << '\n';
    return kExitUsage;
  } catch (const oscurve::NumericalError& e) {
    std::cerr << "oscurve: numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    std::cerr << "oscurve: " << e.what() << '\n';
    return kExitDomain;
  } catch (const std::domain_error& e) {
    std::cerr << "oscurve: " << e.what() << '\n';
    return kExitDomain;
  } catch (const oscurve::IoError& e) {
    std::cerr << "oscurve: " << e.what() << '\n';
    return kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "oscurve: " << e.what() << '\n';
    return kExitNumerical;
  }
}
