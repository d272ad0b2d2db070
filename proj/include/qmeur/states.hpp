// Parameterized three-qubit state families and seeded random density matrices.
//
// Basis ordering: |abc> maps to index a*4 + b*2 + c.

#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>

#include "qmeur/linalg.hpp"

namespace qmeur {

enum class Family { GGHZ, WERNER, GW, SYM_MIXED, GHZ, W, BELL, CUSTOM, RANDOM };

inline std::string_view family_name(Family f) {
  switch (f) {
    case Family::GGHZ: return "gghz";
    case Family::WERNER: return "werner";
    case Family::GW: return "gw";
    case Family::SYM_MIXED: return "sym-mixed";
    case Family::GHZ: return "ghz";
    case Family::W: return "w";
    case Family::BELL: return "bell";
    case Family::CUSTOM: return "custom";
    case Family::RANDOM: return "random";
  }
  return "?";
}

inline Family parse_family(std::string_view name) {
  for (Family f : {Family::GGHZ, Family::WERNER, Family::GW, Family::SYM_MIXED, Family::GHZ,
                   Family::W, Family::BELL, Family::CUSTOM, Family::RANDOM}) {
    if (family_name(f) == name) return f;
  }
  throw UsageError("unknown state family '" + std::string(name) + "'");
}

struct StateSpec {
  Family family = Family::GHZ;
  std::map<std::string, double> params;  // beta, p, theta, phi (radians / dimensionless), rank
  std::uint64_t seed = 0;                // RANDOM only
  std::optional<DensityMatrix> custom;   // CUSTOM only
};

namespace detail {

inline ComplexVector basis_ket(int dim, int index) {
  ComplexVector v = ComplexVector::Zero(dim);
  v(index) = 1.0;
  return v;
}

inline double require_param(const StateSpec& spec, const std::string& name, double lo, double hi,
                            bool hi_inclusive) {
  auto it = spec.params.find(name);
  if (it == spec.params.end()) {
    throw UsageError(std::string(family_name(spec.family)) + " requires parameter '" + name + "'");
  }
  const double v = it->second;
  const bool ok = std::isfinite(v) && v >= lo && (hi_inclusive ? v <= hi : v < hi);
  if (!ok) {
    std::ostringstream os;
    os << "parameter '" << name << "' = " << v << " outside " << '[' << lo << ", " << hi
       << (hi_inclusive ? "]" : ")");
    throw UsageError(os.str());
  }
  return v;
}

inline ComplexMatrix three_qubit_identity() { return ComplexMatrix::Identity(8, 8); }

}  // namespace detail

inline ComplexVector ghz_ket() {
  ComplexVector v = ComplexVector::Zero(8);
  v(0) = v(7) = 1.0 / std::sqrt(2.0);
  return v;
}

// Uses the normalized 1/sqrt(3) coefficient.
inline ComplexVector w_ket() {
  ComplexVector v = ComplexVector::Zero(8);
  v(1) = v(2) = v(4) = 1.0 / std::sqrt(3.0);
  return v;
}

inline ComplexVector bell_ket() {
  ComplexVector v = ComplexVector::Zero(4);
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  return v;
}

inline ComplexVector gghz_ket(double beta) {
  ComplexVector v = ComplexVector::Zero(8);
  v(0) = std::cos(beta);
  v(7) = std::sin(beta);
  return v;
}

inline ComplexVector gw_ket(double theta, double phi) {
  ComplexVector v = ComplexVector::Zero(8);
  v(4) = std::sin(theta) * std::cos(phi);  // |100>
  v(2) = std::sin(theta) * std::sin(phi);  // |010>
  v(1) = std::cos(theta);                  // |001>
  return v;
}

/// rho = G G^H / tr(G G^H), G a dim x rank matrix of standard complex Gaussians.
inline DensityMatrix random_density(const Dims& dims, int rank, std::uint64_t seed) {
  const auto dim = dims.total();
  if (rank < 1 || rank > dim) {
    throw UsageError("random_density: rank " + std::to_string(rank) + " outside [1, " +
                     std::to_string(dim) + "]");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(dim, rank);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < rank; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = complex{re, im};
    }
  }
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return validate_density(rho, dims);
}

/// Qubit factorization when dim is a power of two, a single factor otherwise.
inline DensityMatrix random_density(int dim, int rank, std::uint64_t seed) {
  if (dim < 2) throw UsageError("random_density: dimension must be >= 2");
  std::vector<int> dims;
  if ((dim & (dim - 1)) == 0) {
    for (int d = dim; d > 1; d >>= 1) dims.push_back(2);
  } else {
    dims.push_back(dim);
  }
  return random_density(Dims(std::move(dims)), rank, seed);
}

inline DensityMatrix pure_state(const ComplexVector& ket, const Dims& dims) {
  return validate_density(projector(ket), dims);
}

inline DensityMatrix make_state(const StateSpec& spec) {
  using std::numbers::pi;
  const Dims three{2, 2, 2};
  switch (spec.family) {
    case Family::GGHZ: {
      const double beta = detail::require_param(spec, "beta", 0.0, 2.0 * pi, false);
      return pure_state(gghz_ket(beta), three);
    }
    case Family::WERNER: {
      const double p = detail::require_param(spec, "p", 0.0, 1.0, true);
      const ComplexMatrix rho =
          (1.0 - p) * projector(ghz_ket()) + (p / 8.0) * detail::three_qubit_identity();
      return validate_density(rho, three);
    }
    case Family::GW: {
      const double theta = detail::require_param(spec, "theta", 0.0, pi, true);
      const double phi = detail::require_param(spec, "phi", 0.0, 2.0 * pi, false);
      return pure_state(gw_ket(theta, phi), three);
    }
    case Family::SYM_MIXED: {
      const double p = detail::require_param(spec, "p", 0.0, 1.0, true);
      const ComplexMatrix rho = ((1.0 - p) / 8.0) * detail::three_qubit_identity() +
                                (p / 2.0) * projector(ghz_ket()) + (p / 2.0) * projector(w_ket());
      return validate_density(rho, three);
    }
    case Family::GHZ:
      return pure_state(ghz_ket(), three);
    case Family::W:
      return pure_state(w_ket(), three);
    case Family::BELL:
      return pure_state(bell_ket(), Dims{2, 2});
    case Family::CUSTOM:
      if (!spec.custom) throw UsageError("custom state spec carries no matrix");
      return *spec.custom;
    case Family::RANDOM: {
      int rank = 8;
      if (auto it = spec.params.find("rank"); it != spec.params.end()) {
        rank = static_cast<int>(it->second);
      }
      return random_density(three, rank, spec.seed);
    }
  }
  throw UsageError("unhandled state family");
}

/// Parameter names accepted by each family, swept or fixed.
inline std::vector<std::string> family_parameters(Family f) {
  switch (f) {
    case Family::GGHZ: return {"beta"};
    case Family::WERNER:
    case Family::SYM_MIXED: return {"p"};
    case Family::GW: return {"theta", "phi"};
    case Family::RANDOM: return {"rank"};
    default: return {};
  }
}

inline bool is_periodic_parameter(const std::string& name) {
  return name == "beta" || name == "phi";
}

}  // namespace qmeur
