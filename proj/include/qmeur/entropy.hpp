// Shannon, von Neumann, conditional, mutual-information and Holevo quantities.
// All values in bits. Entropies are evaluated on clamped spectra only.

#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "qmeur/linalg.hpp"
#include "qmeur/measurement.hpp"

namespace qmeur {

inline constexpr double kProbabilityTol = 1e-10;

namespace detail {

// -sum p log2 p with 0 log 0 = 0 and negatives treated as zero
template <class Range>
double entropy_of_weights(const Range& weights) {
  double h = 0.0;
  for (double p : weights) {
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

inline double matrix_entropy(const ComplexMatrix& m) {
  const RealVector ev = eigenvalues_hermitian(m);
  return entropy_of_weights(std::span<const double>(ev.data(), static_cast<std::size_t>(ev.size())));
}

inline void check_pair(const DensityMatrix& rho, int a, int b) {
  const int n = static_cast<int>(rho.subsystems());
  if (a < 0 || a >= n || b < 0 || b >= n) {
    throw UsageError("subsystem index out of range for a " + std::to_string(n) + "-partite state");
  }
  if (a == b) throw UsageError("subsystem indices must differ");
}

}  // namespace detail

inline double shannon(std::span<const double> p) {
  if (p.empty()) throw UsageError("shannon: empty probability vector");
  double sum = 0.0;
  for (double v : p) {
    if (!(v >= -kProbabilityTol)) throw UsageError("shannon: negative probability");
    sum += v;
  }
  if (std::abs(sum - 1.0) > kProbabilityTol) {
    throw UsageError("shannon: probabilities sum to " + std::to_string(sum));
  }
  return detail::entropy_of_weights(p);
}

inline double shannon(const std::vector<double>& p) { return shannon(std::span<const double>(p)); }

inline double von_neumann(const DensityMatrix& rho) {
  return detail::matrix_entropy(rho.matrix());
}

/// Entropy of the reduced state on `keep`.
inline double subsystem_entropy(const DensityMatrix& rho, const std::vector<int>& keep) {
  return detail::matrix_entropy(partial_trace(rho.matrix(), rho.dims(), keep));
}

/// S(a|b) = S(rho_ab) - S(rho_b); may be negative.
inline double conditional_entropy(const DensityMatrix& rho, int a, int b) {
  detail::check_pair(rho, a, b);
  return subsystem_entropy(rho, {a, b}) - subsystem_entropy(rho, {b});
}

inline double mutual_information(const DensityMatrix& rho, int a, int b) {
  detail::check_pair(rho, a, b);
  return subsystem_entropy(rho, {a}) + subsystem_entropy(rho, {b}) - subsystem_entropy(rho, {a, b});
}

/// Holevo quantity of the ensemble {p_i, rho_B|i} left in `memory` after the
/// measured subsystem is measured in `basis`. Other memories are traced out.
inline double holevo(const MeasurementOutcome& outcome, int memory_slot) {
  double avg = 0.0;
  ComplexMatrix mixture;
  for (std::size_t i = 0; i < outcome.probs.size(); ++i) {
    const auto& cond = outcome.conditional_states[i];
    if (!cond) continue;
    const ComplexMatrix local =
        cond->subsystems() == 1 ? cond->matrix()
                                : partial_trace(cond->matrix(), cond->dims(), {memory_slot});
    avg += outcome.probs[i] * detail::matrix_entropy(local);
    if (mixture.size() == 0) mixture = ComplexMatrix::Zero(local.rows(), local.cols());
    mixture += outcome.probs[i] * local;
  }
  return detail::matrix_entropy(mixture) - avg;
}

inline double holevo(const DensityMatrix& rho, const Basis& basis, int measured, int memory) {
  detail::check_pair(rho, measured, memory);
  const DensityMatrix pair = marginal(rho, {measured, memory});
  const int target = measured < memory ? 0 : 1;
  return holevo(outcome_statistics(pair, basis, target), 0);
}

}  // namespace qmeur
