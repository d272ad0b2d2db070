// Memory-assisted entropic uncertainty: the measured uncertainties and the
// ladder of lower bounds on them, plus the two secret-key-rate bounds.
//
// Roles are fixed by subsystem order: 0 = A (measured), 1 = B (guesses X),
// 2 = C (guesses Z). In key-rate settings subsystem 2 is the eavesdropper E.

#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "qmeur/entropy.hpp"
#include "qmeur/linalg.hpp"
#include "qmeur/measurement.hpp"

namespace qmeur {

struct BoundReport {
  // bipartite part (A, B)
  double q_mu = 0.0;
  double s_a = 0.0;
  double s_a_given_b = 0.0;
  double i_ab = 0.0;
  double h_x = 0.0;
  double h_z = 0.0;
  double hol_xb = 0.0;
  double hol_zb = 0.0;
  double s_x_given_b = 0.0;
  double s_z_given_b = 0.0;
  double lhs_bipartite = 0.0;  // S(X|B) + S(Z|B)
  double delta_adabi = 0.0;    // unclamped
  double bound_mu = 0.0;
  double bound_no_memory = 0.0;
  double bound_berta = 0.0;
  double bound_adabi = 0.0;

  // tripartite part, absent for two-subsystem states
  std::optional<double> s_a_given_c;
  std::optional<double> i_ac;
  std::optional<double> hol_xc;
  std::optional<double> hol_zc;
  std::optional<double> s_z_given_c;
  std::optional<double> lhs_tripartite;  // S(X|B) + S(Z|C)
  std::optional<double> delta_new;       // unclamped
  std::optional<double> delta_ming;      // unclamped
  std::optional<double> ssa_term;        // (S(A|B) + S(A|C)) / 2
  std::optional<double> bound_tripartite_base;
  std::optional<double> bound_ming;
  std::optional<double> bound_new;

  bool tripartite() const noexcept { return lhs_tripartite.has_value(); }
};

namespace detail {

inline void check_bound_inputs(const DensityMatrix& rho, const ObservablePair& pair) {
  const auto n = rho.subsystems();
  if (n < 2) throw UsageError("bounds need at least two subsystems (A and a memory)");
  if (n > 3) throw UsageError("bounds support at most three subsystems (A, B, C)");
  if (rho.dims()[0] != pair.x.dim()) {
    throw UsageError("observable dimension " + std::to_string(pair.x.dim()) +
                     " does not match subsystem A dimension " + std::to_string(rho.dims()[0]));
  }
}

}  // namespace detail

/// Evaluates every uncertainty and bound in one pass. Partial traces and
/// post-measurement states are computed once and shared.
inline BoundReport evaluate(const DensityMatrix& rho, const ObservablePair& pair) {
  detail::check_bound_inputs(rho, pair);
  const bool three = rho.subsystems() == 3;

  const double s_a = subsystem_entropy(rho, {0});
  const double s_b = subsystem_entropy(rho, {1});
  const double s_ab = subsystem_entropy(rho, {0, 1});

  const DensityMatrix after_x = measure_channel(rho, pair.x, 0);
  const DensityMatrix after_z = measure_channel(rho, pair.z, 0);
  const MeasurementOutcome out_x = outcome_statistics(rho, pair.x, 0);
  const MeasurementOutcome out_z = outcome_statistics(rho, pair.z, 0);

  BoundReport r;
  r.q_mu = pair.q_mu;
  r.s_a = s_a;
  r.s_a_given_b = s_ab - s_b;
  r.i_ab = s_a + s_b - s_ab;
  r.h_x = shannon(out_x.probs);
  r.h_z = shannon(out_z.probs);
  r.hol_xb = holevo(out_x, 0);
  r.hol_zb = holevo(out_z, 0);
  r.s_x_given_b = subsystem_entropy(after_x, {0, 1}) - s_b;
  r.s_z_given_b = subsystem_entropy(after_z, {0, 1}) - s_b;
  r.lhs_bipartite = r.s_x_given_b + r.s_z_given_b;
  r.delta_adabi = r.i_ab - (r.hol_xb + r.hol_zb);
  r.bound_mu = r.q_mu;
  r.bound_no_memory = r.q_mu + s_a;
  r.bound_berta = r.q_mu + r.s_a_given_b;
  r.bound_adabi = r.q_mu + r.s_a_given_b + std::max(0.0, r.delta_adabi);

  if (!three) return r;

  const double s_c = subsystem_entropy(rho, {2});
  const double s_ac = subsystem_entropy(rho, {0, 2});
  const double s_a_given_c = s_ac - s_c;
  const double i_ac = s_a + s_c - s_ac;
  const double hol_xc = holevo(out_x, 1);
  const double hol_zc = holevo(out_z, 1);
  const double s_z_given_c = subsystem_entropy(after_z, {0, 2}) - s_c;

  r.s_a_given_c = s_a_given_c;
  r.i_ac = i_ac;
  r.hol_xc = hol_xc;
  r.hol_zc = hol_zc;
  r.s_z_given_c = s_z_given_c;
  r.lhs_tripartite = r.s_x_given_b + s_z_given_c;
  r.ssa_term = 0.5 * (r.s_a_given_b + s_a_given_c);
  r.delta_new = 0.5 * (r.i_ab + i_ac) - (r.hol_xb + hol_zc);
  // crossed Holevo terms I(Z:B) + I(X:C) are intentional
  r.delta_ming = r.q_mu + 2.0 * s_a - (r.i_ab + i_ac) + (r.hol_zb + hol_xc) - r.h_x - r.h_z;
  r.bound_tripartite_base = r.q_mu;
  r.bound_ming = r.q_mu + std::max(0.0, *r.delta_ming);
  r.bound_new = r.q_mu + *r.ssa_term + std::max(0.0, *r.delta_new);
  return r;
}

namespace detail {

inline void require_three(const DensityMatrix& rho) {
  if (rho.subsystems() != 3) throw UsageError("key-rate bounds need a state on A, B and E");
}

}  // namespace detail

/// q_mu - S(X|B) - S(Z|B). Not clamped; the sign is informative.
inline double key_rate_berta(const DensityMatrix& rho, const ObservablePair& pair) {
  detail::require_three(rho);
  const BoundReport r = evaluate(rho, pair);
  return r.q_mu - r.s_x_given_b - r.s_z_given_b;
}

/// Tripartite bound with C identified as E, minus S(X|B) + S(Z|B).
inline double key_rate_new(const DensityMatrix& rho, const ObservablePair& pair) {
  detail::require_three(rho);
  const BoundReport r = evaluate(rho, pair);
  return *r.bound_new - r.s_x_given_b - r.s_z_given_b;
}

/// S(Z|E) - S(Z|B) on the cq-state left by measuring z_basis on A.
inline double devetak_winter(const DensityMatrix& rho, const Basis& z_basis) {
  detail::require_three(rho);
  if (rho.dims()[0] != z_basis.dim()) throw UsageError("basis does not match subsystem A");
  const DensityMatrix after = measure_channel(rho, z_basis, 0);
  const double s_z_given_e = subsystem_entropy(after, {0, 2}) - subsystem_entropy(after, {2});
  const double s_z_given_b = subsystem_entropy(after, {0, 1}) - subsystem_entropy(after, {1});
  return s_z_given_e - s_z_given_b;
}

}  // namespace qmeur
