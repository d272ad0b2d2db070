// Parameter sweeps over the state families (figure data), and the seeded
// random-state invariant check.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "qmeur/bounds.hpp"
#include "qmeur/io.hpp"
#include "qmeur/measurement.hpp"
#include "qmeur/states.hpp"

namespace qmeur {

struct SweepSpec {
  StateSpec state;  // fixed parameters; the swept one is overwritten per point
  std::string param;
  double from = 0.0;
  double to = 1.0;
  int steps = 2;
  std::string obs_x = "sigma1";  // token or observable file
  std::string obs_z = "sigma3";
  std::vector<std::string> outputs;  // empty = every column
};

inline const std::vector<std::string>& sweep_columns() {
  static const std::vector<std::string> columns{
      "param",    "lhs_tripartite", "bound_new",   "bound_ming", "bound_base",
      "bound_no_memory", "delta_new", "delta_ming", "ssa_term",  "s_a_given_b",
      "s_a_given_c", "i_ab",        "i_ac",        "hol_xb",     "hol_zc"};
  return columns;
}

inline double column_value(const BoundReport& r, double param, std::string_view column) {
  if (column == "param") return param;
  if (column == "lhs_tripartite") return r.lhs_tripartite.value();
  if (column == "bound_new") return r.bound_new.value();
  if (column == "bound_ming") return r.bound_ming.value();
  if (column == "bound_base") return r.bound_tripartite_base.value();
  if (column == "bound_no_memory") return r.bound_no_memory;
  if (column == "delta_new") return r.delta_new.value();
  if (column == "delta_ming") return r.delta_ming.value();
  if (column == "ssa_term") return r.ssa_term.value();
  if (column == "s_a_given_b") return r.s_a_given_b;
  if (column == "s_a_given_c") return r.s_a_given_c.value();
  if (column == "i_ab") return r.i_ab;
  if (column == "i_ac") return r.i_ac.value();
  if (column == "hol_xb") return r.hol_xb;
  if (column == "hol_zc") return r.hol_zc.value();
  throw UsageError("unknown output column '" + std::string(column) + "'");
}

enum class FigurePreset { fig1, fig2, fig3, fig4 };

inline FigurePreset parse_preset(std::string_view name) {
  if (name == "fig1") return FigurePreset::fig1;
  if (name == "fig2") return FigurePreset::fig2;
  if (name == "fig3") return FigurePreset::fig3;
  if (name == "fig4") return FigurePreset::fig4;
  throw UsageError("unknown preset '" + std::string(name) + "' (expected fig1..fig4)");
}

inline SweepSpec figure_preset(FigurePreset id) {
  using std::numbers::pi;
  SweepSpec s;
  switch (id) {
    case FigurePreset::fig1:
      s.state.family = Family::GGHZ;
      s.param = "beta", s.from = 0.0, s.to = 2.0 * pi, s.steps = 201;
      break;
    case FigurePreset::fig2:
      s.state.family = Family::WERNER;
      s.param = "p", s.from = 0.0, s.to = 1.0, s.steps = 101;
      break;
    case FigurePreset::fig3:
      s.state.family = Family::GW;
      s.state.params["phi"] = pi / 4.0;
      s.param = "theta", s.from = 0.0, s.to = pi, s.steps = 181;
      break;
    case FigurePreset::fig4:
      s.state.family = Family::SYM_MIXED;
      s.param = "p", s.from = 0.0, s.to = 1.0, s.steps = 101;
      break;
  }
  return s;
}

/// Grid points in ascending order. Periodic parameters (beta, phi) exclude
/// the upper endpoint; all others include both endpoints.
inline std::vector<double> sweep_grid(const SweepSpec& spec) {
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(std::max(spec.steps, 0)));
  const bool periodic = is_periodic_parameter(spec.param);
  const double span = spec.to - spec.from;
  const double step = periodic ? span / spec.steps : span / (spec.steps - 1);
  for (int k = 0; k < spec.steps; ++k) grid.push_back(spec.from + k * step);
  if (!periodic) grid.back() = spec.to;
  return grid;
}

inline DensityMatrix sweep_state(const SweepSpec& spec, double value) {
  StateSpec s = spec.state;
  s.params[spec.param] = value;
  return make_state(s);
}

inline ObservablePair sweep_observables(const SweepSpec& spec) {
  return pair_from_observables(io::load_observable(spec.obs_x), io::load_observable(spec.obs_z));
}

inline void validate_sweep(const SweepSpec& spec) {
  const Family f = spec.state.family;
  if (f != Family::GGHZ && f != Family::WERNER && f != Family::GW && f != Family::SYM_MIXED) {
    throw UsageError("family '" + std::string(family_name(f)) + "' has no sweepable parameter");
  }
  const auto allowed = family_parameters(f);
  if (std::find(allowed.begin(), allowed.end(), spec.param) == allowed.end()) {
    throw UsageError("parameter '" + spec.param + "' does not belong to family '" +
                     std::string(family_name(f)) + "'");
  }
  if (spec.steps < 2) throw UsageError("steps must be >= 2");
  if (!(spec.from < spec.to)) throw UsageError("sweep range needs from < to");
  for (const auto& column : spec.outputs) {
    const auto& all = sweep_columns();
    if (std::find(all.begin(), all.end(), column) == all.end()) {
      throw UsageError("unknown output column '" + column + "'");
    }
  }
  // endpoints must be inside the family's domain; missing fixed parameters surface here too
  const auto grid = sweep_grid(spec);
  sweep_state(spec, grid.front());
  sweep_state(spec, grid.back());
}

inline BoundReport evaluate_point(const SweepSpec& spec, double value) {
  return evaluate(sweep_state(spec, value), sweep_observables(spec));
}

inline std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

/// Writes the CSV (header first, one row per grid point). Returns 0 when every
/// point evaluated, 1 when some rows carry an error marker instead of values.
inline int run_sweep(const SweepSpec& spec, std::ostream& out) {
  validate_sweep(spec);
  const ObservablePair pair = sweep_observables(spec);
  const std::vector<std::string> columns = spec.outputs.empty() ? sweep_columns() : spec.outputs;

  for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
  out << '\n';

  int status = 0;
  for (double value : sweep_grid(spec)) {
    std::string row;
    try {
      const BoundReport r = evaluate(sweep_state(spec, value), pair);
      for (std::size_t i = 0; i < columns.size(); ++i) {
        row += (i ? "," : "") + format_number(column_value(r, value, columns[i]));
      }
    } catch (const std::exception& e) {
      status = 1;
      row.clear();
      for (std::size_t i = 0; i < columns.size(); ++i) {
        row += i ? "," : "";
        if (columns[i] == "param") row += format_number(value);
      }
      std::string msg = e.what();
      std::replace(msg.begin(), msg.end(), ',', ';');
      row += ",ERROR: " + msg;
    }
    out << row << '\n';
  }
  return status;
}

// ---------------------------------------------------------------------------
// random-state invariant check

struct InvariantTally {
  std::string name;
  long checked = 0;
  long violations = 0;
  double worst_margin = std::numeric_limits<double>::infinity();

  void record(double margin, double tol) {
    ++checked;
    if (margin < -tol) ++violations;
    worst_margin = std::min(worst_margin, margin);
  }
};

struct CheckSummary {
  int n = 0;
  std::uint64_t seed = 0;
  double tol = 0.0;
  int pairs_per_state = 0;
  std::vector<InvariantTally> invariants;

  const InvariantTally& at(std::string_view name) const {
    for (const auto& t : invariants) {
      if (t.name == name) return t;
    }
    throw UsageError("no invariant named '" + std::string(name) + "'");
  }

  long violations() const {
    long v = 0;
    for (const auto& t : invariants) v += t.violations;
    return v;
  }
};

inline constexpr int kPairsPerState = 5;

/// One sample of the random ensemble: a three-qubit state of random rank and
/// kPairsPerState random nondegenerate observable pairs.
struct RandomSample {
  DensityMatrix state;
  std::vector<ObservablePair> pairs;
};

/// Deterministic ensemble generator shared by `check` and the tests.
class RandomEnsemble {
 public:
  explicit RandomEnsemble(std::uint64_t seed) : rng_(seed) {}

  RandomSample next() {
    const std::uint64_t state_seed = rng_();
    const int rank = 1 + static_cast<int>(rng_() % 8);
    RandomSample s{random_density(Dims{2, 2, 2}, rank, state_seed), {}};
    for (int j = 0; j < kPairsPerState; ++j) {
      const std::uint64_t sx = rng_();
      const std::uint64_t sz = rng_();
      s.pairs.push_back(pair_from_observables(random_observable(2, sx), random_observable(2, sz)));
    }
    return s;
  }

 private:
  std::mt19937_64 rng_;
};

inline CheckSummary run_check(int n, std::uint64_t seed, double tol) {
  if (n < 1) throw UsageError("check needs n >= 1");
  CheckSummary sum{n, seed, tol, kPairsPerState, {}};
  enum Index {
    theorem, theorem_unclamped, base_dominance, ssa, identity_ab, identity_ac, cq_decomposition,
    key_rate_corollary, key_rate_order, holevo_data_processing, count
  };
  const char* names[count] = {"theorem",           "theorem_unclamped",  "base_dominance",
                              "ssa_average",       "identity_s_a_ab",    "identity_s_a_ac",
                              "cq_decomposition",  "key_rate_corollary", "key_rate_order",
                              "holevo_le_mutual_info"};
  for (const char* name : names) sum.invariants.push_back({name});
  auto& t = sum.invariants;

  RandomEnsemble ensemble(seed);
  for (int i = 0; i < n; ++i) {
    const RandomSample sample = ensemble.next();
    const DensityMatrix& rho = sample.state;

    const double s_a = subsystem_entropy(rho, {0});
    t[identity_ab].record(
        -std::abs(s_a - conditional_entropy(rho, 0, 1) - mutual_information(rho, 0, 1)), tol);
    t[identity_ac].record(
        -std::abs(s_a - conditional_entropy(rho, 0, 2) - mutual_information(rho, 0, 2)), tol);

    for (const ObservablePair& pair : sample.pairs) {
      const BoundReport r = evaluate(rho, pair);
      t[theorem].record(*r.lhs_tripartite - *r.bound_new, tol);
      // the inequality actually implied by the two conditional-entropy identities
      t[theorem_unclamped].record(*r.lhs_tripartite - (r.q_mu + *r.ssa_term + *r.delta_new), tol);
      t[base_dominance].record(*r.bound_new - *r.bound_tripartite_base, tol);
      t[ssa].record(*r.ssa_term, tol);
      t[cq_decomposition].record(
          -std::max(std::abs(r.s_x_given_b - (r.h_x - r.hol_xb)),
                    std::abs(*r.s_z_given_c - (r.h_z - *r.hol_zc))),
          tol);
      // C plays Eve: S(Z|E) >= q_mu - S(X|B)
      t[key_rate_corollary].record(*r.s_z_given_c - (r.q_mu - r.s_x_given_b), tol);
      const double k_berta = r.q_mu - r.s_x_given_b - r.s_z_given_b;
      const double k_new = *r.bound_new - r.s_x_given_b - r.s_z_given_b;
      t[key_rate_order].record(k_new - k_berta, tol);
      t[holevo_data_processing].record(
          std::min(r.i_ab - r.hol_xb, *r.i_ac - *r.hol_zc), tol);
    }
  }
  return sum;
}

inline nlohmann::json to_json(const CheckSummary& s) {
  nlohmann::json inv = nlohmann::json::array();
  for (const auto& t : s.invariants) {
    inv.push_back({{"name", t.name},
                   {"checked", t.checked},
                   {"passed", t.checked - t.violations},
                   {"violations", t.violations},
                   {"worst_margin", t.worst_margin}});
  }
  return {{"n", s.n},
          {"seed", s.seed},
          {"tol", s.tol},
          {"pairs_per_state", s.pairs_per_state},
          {"violations", s.violations()},
          {"invariants", inv}};
}

}  // namespace qmeur
