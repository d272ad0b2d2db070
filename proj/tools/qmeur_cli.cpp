// qmeur: figure sweeps, bound reports, random-state checks and saturation checks.
//
// Exit status: 0 clean, 1 numeric issues or invariant violations, 2 usage errors.

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qmeur/io.hpp"
#include "qmeur/qmeur.hpp"
#include "qmeur/sweep.hpp"

namespace {

constexpr int kExitNumeric = 1;
constexpr int kExitUsage = 2;

qmeur::DensityMatrix saturation_preset(const std::string& name) {
  using namespace qmeur;
  if (name == "ghz") return make_state({Family::GHZ});
  if (name == "w") return make_state({Family::W});
  if (name == "product") return pure_state(detail::basis_ket(8, 0), Dims{2, 2, 2});
  if (name == "bell-product") {
    ComplexVector ket = tensor(bell_ket(), detail::basis_ket(2, 0));
    return pure_state(ket, Dims{2, 2, 2});
  }
  throw UsageError("unknown saturation preset '" + name +
                   "' (expected ghz, w, product, bell-product)");
}

std::map<std::string, double> parse_fixed(const std::vector<std::string>& items) {
  std::map<std::string, double> out;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw qmeur::UsageError("--fix expects name=value, got '" + item + "'");
    try {
      std::size_t used = 0;
      const std::string text = item.substr(eq + 1);
      out[item.substr(0, eq)] = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
    } catch (const std::logic_error&) {
      throw qmeur::UsageError("--fix value is not a decimal number: '" + item + "'");
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Memory-assisted entropic uncertainty bounds"};
  app.require_subcommand(1);

  // sweep
  std::string preset, family, param, out_path, obs_x = "sigma1", obs_z = "sigma3";
  double from = 0.0, to = 1.0;
  int steps = 2;
  std::vector<std::string> fixed, columns;
  auto* sweep = app.add_subcommand("sweep", "parameter sweep over a state family, CSV output");
  sweep->add_option("--preset", preset, "fig1, fig2, fig3 or fig4");
  sweep->add_option("--state", family, "gghz, werner, gw or sym-mixed");
  sweep->add_option("--param", param, "swept parameter (beta, p, theta, phi)");
  sweep->add_option("--from", from, "range start");
  sweep->add_option("--to", to, "range end (exclusive for beta and phi)");
  sweep->add_option("--steps", steps, "grid points (>= 2)");
  sweep->add_option("--fix", fixed, "fixed parameter name=value (repeatable)");
  sweep->add_option("--columns", columns, "subset of output columns, comma separated")->delimiter(',');
  sweep->add_option("--obs-x", obs_x, "sigma1|sigma2|sigma3 or observable JSON file");
  sweep->add_option("--obs-z", obs_z, "sigma1|sigma2|sigma3 or observable JSON file");
  sweep->add_option("--out", out_path, "CSV destination (default stdout)");

  // check
  int n = 1000;
  std::uint64_t seed = 42;
  double tol = 1e-9;
  auto* check = app.add_subcommand("check", "invariant check on seeded random states");
  check->add_option("--n", n, "number of random three-qubit states");
  check->add_option("--seed", seed, "generator seed");
  check->add_option("--tol", tol, "violation tolerance");

  // report
  std::string state_file;
  auto* report = app.add_subcommand("report", "full bound report for one state (JSON)");
  report->add_option("--state-file", state_file, "state JSON file")->required();
  report->add_option("--obs-x", obs_x, "sigma1|sigma2|sigma3 or observable JSON file");
  report->add_option("--obs-z", obs_z, "sigma1|sigma2|sigma3 or observable JSON file");

  // check-saturation
  std::string sat_preset;
  double sat_tol = qmeur::kSaturationTol;
  auto* saturation = app.add_subcommand("check-saturation", "SSA / Koashi-Winter residuals (JSON)");
  auto* sat_file_opt = saturation->add_option("--state-file", state_file, "three-qubit state JSON file");
  auto* sat_preset_opt =
      saturation->add_option("--preset", sat_preset, "ghz, w, product or bell-product");
  sat_file_opt->excludes(sat_preset_opt);
  saturation->add_option("--tol", sat_tol, "slack tolerance for the saturation flag");
  saturation->add_option("--obs-x", obs_x, "sigma1|sigma2|sigma3 or observable JSON file");
  saturation->add_option("--obs-z", obs_z, "sigma1|sigma2|sigma3 or observable JSON file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*sweep) {
      qmeur::SweepSpec spec;
      if (!preset.empty()) {
        spec = qmeur::figure_preset(qmeur::parse_preset(preset));
        // explicit range flags refine a preset
        if (sweep->count("--from")) spec.from = from;
        if (sweep->count("--to")) spec.to = to;
        if (sweep->count("--steps")) spec.steps = steps;
      } else {
        if (family.empty() || param.empty()) {
          throw qmeur::UsageError("sweep needs --preset or --state and --param");
        }
        spec.state.family = qmeur::parse_family(family);
        spec.param = param;
        spec.from = from;
        spec.to = to;
        spec.steps = steps;
      }
      for (const auto& [k, v] : parse_fixed(fixed)) spec.state.params[k] = v;
      if (sweep->count("--obs-x")) spec.obs_x = obs_x;
      if (sweep->count("--obs-z")) spec.obs_z = obs_z;
      spec.outputs = columns;
      qmeur::validate_sweep(spec);
      if (out_path.empty()) return qmeur::run_sweep(spec, std::cout);
      std::ofstream out(out_path);
      if (!out) throw qmeur::UsageError("cannot write '" + out_path + "'");
      return qmeur::run_sweep(spec, out);
    }
    if (*check) {
      const qmeur::CheckSummary summary = qmeur::run_check(n, seed, tol);
      std::cout << qmeur::to_json(summary).dump(2) << '\n';
      return summary.violations() == 0 ? 0 : kExitNumeric;
    }
    const auto pair = qmeur::pair_from_observables(qmeur::io::load_observable(obs_x),
                                                   qmeur::io::load_observable(obs_z));
    if (*report) {
      const auto rho = qmeur::io::load_state_file(state_file);
      std::cout << qmeur::io::to_json(qmeur::evaluate(rho, pair)).dump(2) << '\n';
      return 0;
    }
    if (*saturation) {
      if (state_file.empty() && sat_preset.empty()) {
        throw qmeur::UsageError("check-saturation needs --state-file or --preset");
      }
      const auto rho = state_file.empty() ? saturation_preset(sat_preset)
                                          : qmeur::io::load_state_file(state_file);
      std::cout << qmeur::io::to_json(qmeur::saturation_check(rho, pair, sat_tol)).dump(2) << '\n';
      return 0;
    }
  } catch (const qmeur::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.kind() == qmeur::ErrorKind::numeric ? kExitNumeric : kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumeric;
  }
  return 0;
}
