// Observables, measurement bases, incompatibility constants and projective
// measurement channels on a single subsystem.

#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "qmeur/linalg.hpp"

namespace qmeur {

inline constexpr double kOrthonormalTol = 1e-10;
inline constexpr double kEigenGapTol = 1e-8;
/// Outcomes with probability below this carry no conditional state.
inline constexpr double kZeroProbability = 1e-13;

inline ComplexMatrix sigma1() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

inline ComplexMatrix sigma2() {
  ComplexMatrix m(2, 2);
  m << 0, complex{0, -1}, complex{0, 1}, 0;
  return m;
}

inline ComplexMatrix sigma3() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

/// Orthonormal basis stored as the columns of a square matrix.
class Basis {
 public:
  static Basis from_columns(const ComplexMatrix& columns) {
    if (columns.rows() != columns.cols() || columns.rows() < 2) {
      throw UsageError("basis must be d vectors of dimension d >= 2");
    }
    const ComplexMatrix gram = columns.adjoint() * columns;
    const double dev =
        (gram - ComplexMatrix::Identity(columns.rows(), columns.cols())).cwiseAbs().maxCoeff();
    if (!(dev <= kOrthonormalTol)) {
      std::ostringstream os;
      os << "basis is not orthonormal (max Gram-matrix deviation " << dev << ")";
      throw UsageError(os.str());
    }
    return Basis(columns);
  }

  static Basis from_vectors(const std::vector<ComplexVector>& vectors) {
    if (vectors.empty()) throw UsageError("basis has no vectors");
    ComplexMatrix m(vectors.front().size(), static_cast<Eigen::Index>(vectors.size()));
    for (std::size_t i = 0; i < vectors.size(); ++i) {
      if (vectors[i].size() != m.rows()) throw UsageError("basis vectors differ in dimension");
      m.col(static_cast<Eigen::Index>(i)) = vectors[i];
    }
    return from_columns(m);
  }

  static Basis computational(int dim) {
    return Basis(ComplexMatrix::Identity(dim, dim));
  }

  int dim() const noexcept { return static_cast<int>(columns_.rows()); }
  ComplexVector vector(int i) const { return columns_.col(i); }
  ComplexMatrix projector(int i) const { return qmeur::projector(columns_.col(i)); }
  const ComplexMatrix& columns() const noexcept { return columns_; }

 private:
  explicit Basis(ComplexMatrix columns) : columns_(std::move(columns)) {}
  ComplexMatrix columns_;
};

struct ObservablePair {
  Basis x;
  Basis z;
  double c = 1.0;     // max_ij |<x_i|z_j>|^2
  double q_mu = 0.0;  // log2(1/c), bits
};

inline ObservablePair pair_from_bases(const Basis& bx, const Basis& bz) {
  if (bx.dim() != bz.dim()) throw UsageError("bases have different dimensions");
  const double c = (bx.columns().adjoint() * bz.columns()).cwiseAbs2().maxCoeff();
  return {bx, bz, c, -std::log2(c)};
}

namespace detail {

inline Basis nondegenerate_eigenbasis(const ComplexMatrix& obs, const char* name) {
  if (obs.rows() != obs.cols()) throw UsageError(std::string(name) + " is not square");
  if (hermitian_deviation(obs) > kHermitianTol) {
    throw UsageError(std::string(name) + " is not Hermitian");
  }
  const EigenSystem es = eig_hermitian(obs);
  for (Eigen::Index i = 0; i + 1 < es.values.size(); ++i) {
    if (es.values(i) - es.values(i + 1) <= kEigenGapTol) {
      throw UsageError(std::string(name) +
                       " has a degenerate spectrum; supply explicit bases via pair_from_bases");
    }
  }
  return Basis::from_columns(es.vectors);
}

}  // namespace detail

inline ObservablePair pair_from_observables(const ComplexMatrix& x, const ComplexMatrix& z) {
  if (x.rows() != z.rows()) throw UsageError("observables have different dimensions");
  return pair_from_bases(detail::nondegenerate_eigenbasis(x, "observable X"),
                         detail::nondegenerate_eigenbasis(z, "observable Z"));
}

/// Haar-random unitary via QR of a complex Ginibre matrix with phase fixing.
inline ComplexMatrix random_unitary(int dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = complex{re, im};
    }
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(dim, dim);
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < dim; ++j) {
    const complex d = r(j, j);
    if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

/// Observable U diag(1, -1, ...) U^H with a Haar-random U; nondegenerate.
inline ComplexMatrix random_observable(int dim, std::uint64_t seed) {
  const ComplexMatrix u = random_unitary(dim, seed);
  RealVector spectrum(dim);
  for (int i = 0; i < dim; ++i) spectrum(i) = 1.0 - 2.0 * i / std::max(1, dim - 1);
  ComplexMatrix obs = u * spectrum.cast<complex>().asDiagonal() * u.adjoint();
  return 0.5 * (obs + obs.adjoint());
}

namespace detail {

/// I ⊗ ... ⊗ op(target) ⊗ ... ⊗ I
inline ComplexMatrix embed(const ComplexMatrix& op, const Dims& dims, int target) {
  Eigen::Index left = 1, right = 1;
  for (int i = 0; i < target; ++i) left *= dims[i];
  for (std::size_t i = target + 1; i < dims.size(); ++i) right *= dims[i];
  return tensor({ComplexMatrix::Identity(left, left), op, ComplexMatrix::Identity(right, right)});
}

inline void check_target(const DensityMatrix& rho, const Basis& basis, int target) {
  if (target < 0 || target >= static_cast<int>(rho.subsystems())) {
    throw StructuralError("measurement target " + std::to_string(target) + " out of range");
  }
  if (rho.dims()[target] != basis.dim()) {
    throw StructuralError("basis dimension " + std::to_string(basis.dim()) +
                          " does not match subsystem dimension " +
                          std::to_string(rho.dims()[target]));
  }
}

}  // namespace detail

/// sum_i Pi_i rho Pi_i with Pi_i = |b_i><b_i| on the target subsystem.
inline DensityMatrix measure_channel(const DensityMatrix& rho, const Basis& basis, int target) {
  detail::check_target(rho, basis, target);
  ComplexMatrix out = ComplexMatrix::Zero(rho.dim(), rho.dim());
  for (int i = 0; i < basis.dim(); ++i) {
    const ComplexMatrix p = detail::embed(basis.projector(i), rho.dims(), target);
    out += p * rho.matrix() * p;
  }
  return validate_density(out, rho.dims());
}

struct MeasurementOutcome {
  std::vector<double> probs;
  /// Normalized memory states; absent where the outcome has zero probability.
  std::vector<std::optional<DensityMatrix>> conditional_states;
  std::vector<int> memory;  // subsystem indices of the memory, original order
};

/// Outcome probabilities and conditional states of every other subsystem.
inline MeasurementOutcome outcome_statistics(const DensityMatrix& rho, const Basis& basis,
                                             int target) {
  detail::check_target(rho, basis, target);
  if (rho.subsystems() < 2) throw StructuralError("outcome_statistics needs a memory subsystem");
  MeasurementOutcome out;
  for (int i = 0; i < static_cast<int>(rho.subsystems()); ++i) {
    if (i != target) out.memory.push_back(i);
  }
  const Dims memory_dims = rho.dims().select(out.memory);
  for (int i = 0; i < basis.dim(); ++i) {
    const ComplexMatrix p = detail::embed(basis.projector(i), rho.dims(), target);
    const ComplexMatrix branch = p * rho.matrix() * p;
    const double prob = std::max(0.0, branch.trace().real());
    out.probs.push_back(prob);
    if (prob < kZeroProbability) {
      out.conditional_states.emplace_back(std::nullopt);
      continue;
    }
    const ComplexMatrix reduced = partial_trace(branch, rho.dims(), out.memory) / prob;
    // rounding in the branch is amplified by 1/prob
    const double tol = std::max(kValidationTol, 1e-14 / prob);
    out.conditional_states.emplace_back(validate_density(reduced, memory_dims, tol));
  }
  return out;
}

/// Outcome probabilities <b_i| rho_target |b_i>.
inline std::vector<double> outcome_probabilities(const DensityMatrix& rho, const Basis& basis,
                                                 int target) {
  detail::check_target(rho, basis, target);
  const ComplexMatrix local =
      rho.subsystems() == 1 ? rho.matrix() : partial_trace(rho.matrix(), rho.dims(), {target});
  std::vector<double> p;
  for (int i = 0; i < basis.dim(); ++i) {
    const ComplexVector b = basis.vector(i);
    p.push_back(std::max(0.0, (b.adjoint() * local * b)(0, 0).real()));
  }
  return p;
}

struct RobertsonResult {
  double lhs = 0.0;  // Delta X * Delta Z
  double rhs = 0.0;  // |<[X, Z]>| / 2
};

inline RobertsonResult robertson_bound(const DensityMatrix& rho, const ComplexMatrix& x,
                                       const ComplexMatrix& z) {
  for (const auto* obs : {&x, &z}) {
    if (obs->rows() != rho.dim() || obs->cols() != rho.dim()) {
      throw UsageError("observable dimension does not match the state");
    }
    if (hermitian_deviation(*obs) > kHermitianTol) throw UsageError("observable is not Hermitian");
  }
  const ComplexMatrix& r = rho.matrix();
  auto spread = [&](const ComplexMatrix& p) {
    const double mean = (r * p).trace().real();
    const double second = (r * p * p).trace().real();
    return std::sqrt(std::max(0.0, second - mean * mean));
  };
  RobertsonResult res;
  res.lhs = spread(x) * spread(z);
  res.rhs = 0.5 * std::abs((r * (x * z - z * x)).trace());
  if (res.lhs < res.rhs - 1e-10) {
    throw NumericError("robertson_bound: uncertainty product below commutator bound");
  }
  return res;
}

}  // namespace qmeur
