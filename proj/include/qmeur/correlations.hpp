// Two-qubit classical correlation, quantum discord and entanglement of
// formation, and the saturation residuals linking them to the tripartite
// uncertainty bound.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "qmeur/bounds.hpp"
#include "qmeur/detail/nelder_mead.hpp"
#include "qmeur/entropy.hpp"
#include "qmeur/linalg.hpp"

namespace qmeur {

/// h(x) = -x log2 x - (1-x) log2 (1-x)
inline double binary_entropy(double x) {
  x = std::clamp(x, 0.0, 1.0);
  double h = 0.0;
  if (x > 0.0) h -= x * std::log2(x);
  if (x < 1.0) h -= (1.0 - x) * std::log2(1.0 - x);
  return h;
}

struct ClassicalCorrelation {
  double j = 0.0;      // bits
  double theta = 0.0;  // polar angle of the optimal projector direction
  double phi = 0.0;    // azimuth
};

namespace detail {

inline void require_two_qubits(const DensityMatrix& rho, const char* who) {
  if (!(rho.dims() == Dims{2, 2})) {
    throw UsageError(std::string(who) + " needs a two-qubit state, got dims " + rho.dims().str());
  }
}

inline double qubit_entropy(const Eigen::Matrix2cd& m) {
  const double t = m.trace().real();
  const double diff = m(0, 0).real() - m(1, 1).real();
  const double disc = std::sqrt(diff * diff + 4.0 * std::norm(m(0, 1)));
  const std::array<double, 2> ev{0.5 * (t + disc), 0.5 * (t - disc)};
  return entropy_of_weights(ev);
}

/// Average conditional entropy of the unmeasured qubit after measuring the
/// other along the Bloch direction (theta, phi).
class ConditionalEntropyObjective {
 public:
  ConditionalEntropyObjective(const DensityMatrix& rho, int measured)
      : rho_(rho.matrix()), measured_(measured) {}

  double operator()(double theta, double phi) const {
    const double nx = std::sin(theta) * std::cos(phi);
    const double ny = std::sin(theta) * std::sin(phi);
    const double nz = std::cos(theta);
    Eigen::Matrix2cd ns;
    ns << nz, complex{nx, -ny}, complex{nx, ny}, -nz;
    double total = 0.0;
    for (double sign : {1.0, -1.0}) {
      const Eigen::Matrix2cd proj = 0.5 * (Eigen::Matrix2cd::Identity() + sign * ns);
      // unnormalized conditional state: Tr_measured[(Pi on measured) rho]
      Eigen::Matrix2cd cond = Eigen::Matrix2cd::Zero();
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
          for (int m = 0; m < 2; ++m) {
            for (int k = 0; k < 2; ++k) {
              // <m| Pi |k> rho[(k,a),(m,b)] in measured-major or -minor layout
              const complex pi_mk = proj(m, k);
              const complex val = measured_ == 0 ? rho_(k * 2 + a, m * 2 + b)
                                                 : rho_(a * 2 + k, b * 2 + m);
              cond(a, b) += pi_mk * val;
            }
          }
        }
      }
      const double p = cond.trace().real();
      if (p > kZeroProbability) total += p * qubit_entropy(cond / p);
    }
    return total;
  }

 private:
  Eigen::Matrix4cd rho_;
  int measured_;
};

}  // namespace detail

inline constexpr int kGridPolar = 64;
inline constexpr int kGridAzimuth = 128;

/// max over rank-1 projective measurements on `measured` of
/// S(rho_other) - sum_i p_i S(rho_other|i). Grid search, then Nelder-Mead
/// refinement from the three best grid points.
inline ClassicalCorrelation classical_correlation(const DensityMatrix& rho, int measured) {
  detail::require_two_qubits(rho, "classical_correlation");
  if (measured != 0 && measured != 1) throw UsageError("measured side must be 0 or 1");
  using std::numbers::pi;
  const detail::ConditionalEntropyObjective objective(rho, measured);

  struct Candidate {
    double value, theta, phi;
  };
  std::vector<Candidate> grid;
  grid.reserve(kGridPolar * kGridAzimuth);
  for (int i = 0; i < kGridPolar; ++i) {
    const double theta = pi * i / (kGridPolar - 1);
    for (int k = 0; k < kGridAzimuth; ++k) {
      const double phi = 2.0 * pi * k / kGridAzimuth;
      grid.push_back({objective(theta, phi), theta, phi});
    }
  }
  std::partial_sort(grid.begin(), grid.begin() + 3, grid.end(),
                    [](const Candidate& a, const Candidate& b) { return a.value < b.value; });

  Candidate best = grid.front();
  detail::SimplexOptions opt;
  opt.initial_step = pi / (kGridPolar - 1);
  opt.diameter_tol = 1e-7;
  for (int s = 0; s < 3; ++s) {
    auto res = detail::nelder_mead<2>(
        [&](const std::array<double, 2>& x) { return objective(x[0], x[1]); },
        std::array<double, 2>{grid[s].theta, grid[s].phi}, opt);
    if (res.value < best.value) best = {res.value, res.x[0], res.x[1]};
  }

  const int other = 1 - measured;
  const double s_other = subsystem_entropy(rho, {other});
  return {std::max(0.0, s_other - best.value), best.theta, best.phi};
}

/// D^Y = I(A:Y) - J_Y with the projectors acting on `measured`.
inline double discord(const DensityMatrix& rho, int measured) {
  detail::require_two_qubits(rho, "discord");
  return mutual_information(rho, 0, 1) - classical_correlation(rho, measured).j;
}

/// Two-qubit concurrence. The lambda_i are the singular values of
/// tau_ij = w_i^H (sigma_y x sigma_y) w_j^*, w_i = sqrt(p_i) v_i the
/// subnormalized eigenvectors of rho; these equal the square roots of the
/// eigenvalues of rho (sigma_y x sigma_y) rho^* (sigma_y x sigma_y).
inline double concurrence(const DensityMatrix& rho) {
  detail::require_two_qubits(rho, "concurrence");
  const EigenSystem es = eig_hermitian(rho.matrix());
  std::vector<ComplexVector> w;
  for (Eigen::Index i = 0; i < es.values.size(); ++i) {
    if (es.values(i) > 1e-14) w.push_back(std::sqrt(es.values(i)) * es.vectors.col(i));
  }
  Eigen::Matrix4cd flip = Eigen::Matrix4cd::Zero();
  flip(0, 3) = flip(3, 0) = -1.0;
  flip(1, 2) = flip(2, 1) = 1.0;
  const auto r = static_cast<Eigen::Index>(w.size());
  ComplexMatrix tau(r, r);
  for (Eigen::Index i = 0; i < r; ++i) {
    for (Eigen::Index j = 0; j < r; ++j) {
      tau(i, j) = (w[i].adjoint() * flip * w[j].conjugate())(0, 0);
    }
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(tau);
  std::array<double, 4> lambda{};
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) lambda[i] = svd.singularValues()(i);
  return std::max(0.0, lambda[0] - lambda[1] - lambda[2] - lambda[3]);
}

/// Closed form E = h((1 + sqrt(1 - C^2)) / 2).
inline double entanglement_of_formation(const DensityMatrix& rho) {
  const double c = concurrence(rho);
  return binary_entropy(0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - c * c))));
}

struct SaturationReport {
  double ssa_residual = 0.0;           // (S(A|B) + S(A|C)) / 2
  double kw_residual_ab = 0.0;         // E(AB) - D^C(AC) - S(A|C)
  double kw_residual_ac = 0.0;         // E(AC) - D^B(AB) - S(A|B)
  double conservation_residual = 0.0;  // E(AB) + E(AC) - D^B(AB) - D^C(AC)
  double uncertainty_slack = 0.0;      // lhs_tripartite - q_mu - max(0, delta_new)
  bool ssa_saturated = false;          // uncertainty_slack < tolerance
};

inline constexpr double kSaturationTol = 1e-6;

inline SaturationReport saturation_check(const DensityMatrix& rho, const ObservablePair& pair,
                                         double tol = kSaturationTol) {
  if (!(rho.dims() == Dims{2, 2, 2})) {
    throw UsageError("saturation_check needs a three-qubit state, got dims " + rho.dims().str());
  }
  const BoundReport r = evaluate(rho, pair);
  const DensityMatrix rho_ab = marginal(rho, {0, 1});
  const DensityMatrix rho_ac = marginal(rho, {0, 2});
  const double e_ab = entanglement_of_formation(rho_ab);
  const double e_ac = entanglement_of_formation(rho_ac);
  const double d_b = discord(rho_ab, 1);
  const double d_c = discord(rho_ac, 1);

  SaturationReport s;
  s.ssa_residual = *r.ssa_term;
  s.kw_residual_ab = e_ab - d_c - *r.s_a_given_c;
  s.kw_residual_ac = e_ac - d_b - r.s_a_given_b;
  s.conservation_residual = e_ab + e_ac - d_b - d_c;
  s.uncertainty_slack = *r.lhs_tripartite - r.q_mu - std::max(0.0, *r.delta_new);
  s.ssa_saturated = s.uncertainty_slack < tol;
  return s;
}

}  // namespace qmeur
