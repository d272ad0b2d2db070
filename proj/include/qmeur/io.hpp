// JSON state and observable files, named observable tokens, and JSON
// serialization of reports.
//
// State file:      {"dims": [2, 2, 2], "matrix": [[re, im], ...]}   (row-major)
// Observable file: {"matrix": [[re, im], ...]}                       (Hermitian)

#pragma once

#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "json.hpp"
#include "qmeur/bounds.hpp"
#include "qmeur/correlations.hpp"
#include "qmeur/linalg.hpp"
#include "qmeur/measurement.hpp"

namespace qmeur::io {

using nlohmann::json;

class ParseError : public UsageError {
 public:
  explicit ParseError(const std::string& what) : UsageError(what) {}
};

namespace detail {

inline ComplexMatrix read_matrix(const json& j, const std::string& where) {
  if (!j.contains("matrix")) throw ParseError(where + ": missing field 'matrix'");
  const json& entries = j.at("matrix");
  if (!entries.is_array() || entries.empty()) {
    throw ParseError(where + ": field 'matrix' must be a non-empty array of [re, im] pairs");
  }
  const auto count = entries.size();
  const auto n = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(count))));
  if (static_cast<std::size_t>(n * n) != count) {
    throw ParseError(where + ": field 'matrix' has " + std::to_string(count) +
                     " entries, not a perfect square");
  }
  ComplexMatrix m(n, n);
  for (std::size_t k = 0; k < count; ++k) {
    const json& e = entries[k];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
      throw ParseError(where + ": matrix entry " + std::to_string(k) +
                       " must be a [re, im] pair of numbers");
    }
    m(static_cast<Eigen::Index>(k) / n, static_cast<Eigen::Index>(k) % n) =
        complex{e[0].get<double>(), e[1].get<double>()};
  }
  return m;
}

inline json parse_text(const std::string& text, const std::string& where) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(where + ": " + e.what());
  }
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline json write_matrix(const ComplexMatrix& m) {
  json entries = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      entries.push_back({m(i, k).real(), m(i, k).imag()});
    }
  }
  return entries;
}

}  // namespace detail

inline DensityMatrix parse_state(const std::string& text, const std::string& where = "state") {
  const json j = detail::parse_text(text, where);
  if (!j.is_object()) throw ParseError(where + ": top level must be an object");
  if (!j.contains("dims")) throw ParseError(where + ": missing field 'dims'");
  const json& jd = j.at("dims");
  if (!jd.is_array() || jd.empty()) throw ParseError(where + ": field 'dims' must be a non-empty array");
  std::vector<int> dims;
  for (const json& d : jd) {
    if (!d.is_number_integer()) throw ParseError(where + ": field 'dims' must hold integers");
    dims.push_back(d.get<int>());
  }
  const ComplexMatrix m = detail::read_matrix(j, where);
  const Dims parsed(dims);
  if (parsed.total() != m.rows()) {
    throw StructuralError(where + ": dimension mismatch, dims " + parsed.str() + " multiply to " +
                          std::to_string(parsed.total()) + " but matrix is " +
                          std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
  return validate_density(m, parsed);
}

inline DensityMatrix load_state_file(const std::string& path) {
  return parse_state(detail::slurp(path), path);
}

inline std::string state_to_json(const DensityMatrix& rho) {
  json j;
  j["dims"] = rho.dims().values();
  j["matrix"] = detail::write_matrix(rho.matrix());
  return j.dump(2);
}

inline ComplexMatrix parse_observable(const std::string& text, const std::string& where = "observable") {
  const json j = detail::parse_text(text, where);
  if (!j.is_object()) throw ParseError(where + ": top level must be an object");
  ComplexMatrix m = detail::read_matrix(j, where);
  if (hermitian_deviation(m) > kHermitianTol) throw UsageError(where + ": observable is not Hermitian");
  return m;
}

/// sigma1 / sigma2 / sigma3, or a path to an observable file.
inline ComplexMatrix load_observable(const std::string& token) {
  if (token == "sigma1") return sigma1();
  if (token == "sigma2") return sigma2();
  if (token == "sigma3") return sigma3();
  return parse_observable(detail::slurp(token), token);
}

inline json to_json(const BoundReport& r) {
  auto opt = [](const std::optional<double>& v) -> json { return v ? json(*v) : json(nullptr); };
  json j;
  j["q_mu"] = r.q_mu;
  j["s_a"] = r.s_a;
  j["s_a_given_b"] = r.s_a_given_b;
  j["s_a_given_c"] = opt(r.s_a_given_c);
  j["i_ab"] = r.i_ab;
  j["i_ac"] = opt(r.i_ac);
  j["h_x"] = r.h_x;
  j["h_z"] = r.h_z;
  j["hol_xb"] = r.hol_xb;
  j["hol_zb"] = r.hol_zb;
  j["hol_xc"] = opt(r.hol_xc);
  j["hol_zc"] = opt(r.hol_zc);
  j["s_x_given_b"] = r.s_x_given_b;
  j["s_z_given_b"] = r.s_z_given_b;
  j["s_z_given_c"] = opt(r.s_z_given_c);
  j["lhs_bipartite"] = r.lhs_bipartite;
  j["lhs_tripartite"] = opt(r.lhs_tripartite);
  j["delta_adabi"] = r.delta_adabi;
  j["delta_new"] = opt(r.delta_new);
  j["delta_ming"] = opt(r.delta_ming);
  j["ssa_term"] = opt(r.ssa_term);
  j["bound_mu"] = r.bound_mu;
  j["bound_no_memory"] = r.bound_no_memory;
  j["bound_berta"] = r.bound_berta;
  j["bound_adabi"] = r.bound_adabi;
  j["bound_tripartite_base"] = opt(r.bound_tripartite_base);
  j["bound_ming"] = opt(r.bound_ming);
  j["bound_new"] = opt(r.bound_new);
  return j;
}

inline json to_json(const SaturationReport& s) {
  return json{{"ssa_residual", s.ssa_residual},
              {"kw_residual_ab", s.kw_residual_ab},
              {"kw_residual_ac", s.kw_residual_ac},
              {"conservation_residual", s.conservation_residual},
              {"uncertainty_slack", s.uncertainty_slack},
              {"ssa_saturated", s.ssa_saturated}};
}

}  // namespace qmeur::io
