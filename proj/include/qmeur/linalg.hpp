// Dense complex linear algebra for small quantum states: tensor products,
// partial traces, Hermitian spectra and density-matrix validation.
//
// Conventions used throughout the library:
//   * row-major, zero-based indexing;
//   * subsystem 0 is the leftmost tensor factor (the measured system A);
//   * all logarithms are base 2.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "qmeur/error.hpp"

namespace qmeur {

using complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kValidationTol = 1e-10;
inline constexpr Eigen::Index kMaxDimension = 64;

/// Ordered subsystem dimensions annotating a composite state.
class Dims {
 public:
  Dims() = default;
  Dims(std::initializer_list<int> dims) : dims_(dims) { check(); }
  explicit Dims(std::vector<int> dims) : dims_(std::move(dims)) { check(); }

  std::size_t size() const noexcept { return dims_.size(); }
  int operator[](std::size_t i) const { return dims_.at(i); }
  const std::vector<int>& values() const noexcept { return dims_; }

  Eigen::Index total() const {
    return std::accumulate(dims_.begin(), dims_.end(), Eigen::Index{1},
                           std::multiplies<>{});
  }

  /// Dimensions of the listed subsystems, in the listed order.
  Dims select(const std::vector<int>& which) const {
    std::vector<int> out;
    out.reserve(which.size());
    for (int i : which) out.push_back(dims_.at(static_cast<std::size_t>(i)));
    return Dims(std::move(out));
  }

  friend bool operator==(const Dims&, const Dims&) = default;

  std::string str() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < dims_.size(); ++i) os << (i ? "," : "") << dims_[i];
    os << ']';
    return os.str();
  }

 private:
  void check() const {
    for (int d : dims_) {
      if (d < 2) throw UsageError("subsystem dimension must be >= 2, got " + std::to_string(d));
    }
  }

  std::vector<int> dims_;
};

/// Kronecker product; dimensions multiply.
inline ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

inline ComplexMatrix tensor(std::initializer_list<ComplexMatrix> factors) {
  auto it = factors.begin();
  ComplexMatrix out = *it;
  for (++it; it != factors.end(); ++it) out = tensor(out, *it);
  return out;
}

/// Reduced matrix on the kept subsystems (sorted, duplicates removed).
inline ComplexMatrix partial_trace(const ComplexMatrix& rho, const Dims& dims,
                                   std::vector<int> keep) {
  if (rho.rows() != rho.cols()) {
    throw StructuralError("partial_trace: matrix is not square");
  }
  if (dims.size() == 0 || rho.rows() != dims.total()) {
    throw StructuralError("partial_trace: matrix dimension " + std::to_string(rho.rows()) +
                          " does not match dims " + dims.str());
  }
  if (keep.empty()) throw UsageError("partial_trace: keep set is empty");
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  const int n = static_cast<int>(dims.size());
  for (int k : keep) {
    if (k < 0 || k >= n) {
      throw UsageError("partial_trace: subsystem index " + std::to_string(k) + " out of range");
    }
  }
  if (static_cast<int>(keep.size()) == n) return rho;

  std::vector<int> traced;
  for (int i = 0; i < n; ++i) {
    if (!std::binary_search(keep.begin(), keep.end(), i)) traced.push_back(i);
  }

  // stride of subsystem i in the full row-major index
  std::vector<Eigen::Index> stride(n, 1);
  for (int i = n - 2; i >= 0; --i) stride[i] = stride[i + 1] * dims[i + 1];

  // full-space offsets contributed by every kept (resp. traced) multi-index
  auto offsets = [&](const std::vector<int>& subs) {
    std::vector<Eigen::Index> out{0};
    for (int s : subs) {
      std::vector<Eigen::Index> next;
      next.reserve(out.size() * dims[s]);
      for (Eigen::Index base : out) {
        for (int v = 0; v < dims[s]; ++v) next.push_back(base + v * stride[s]);
      }
      out = std::move(next);
    }
    return out;
  };
  const auto kept_off = offsets(keep);
  const auto traced_off = offsets(traced);

  const auto dk = static_cast<Eigen::Index>(kept_off.size());
  ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
  for (Eigen::Index i = 0; i < dk; ++i) {
    for (Eigen::Index j = 0; j < dk; ++j) {
      complex acc{0.0, 0.0};
      for (Eigen::Index t : traced_off) acc += rho(kept_off[i] + t, kept_off[j] + t);
      out(i, j) = acc;
    }
  }
  return out;
}

inline double hermitian_deviation(const ComplexMatrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

struct EigenSystem {
  RealVector values;      // descending
  ComplexMatrix vectors;  // orthonormal columns, matching values
};

inline void require_hermitian(const ComplexMatrix& m, const char* who) {
  if (m.rows() != m.cols()) throw StructuralError(std::string(who) + ": matrix is not square");
  const double dev = hermitian_deviation(m);
  if (!(dev <= kHermitianTol)) {
    std::ostringstream os;
    os << who << ": matrix is not Hermitian (max |m - m^H| = " << dev << ")";
    throw StructuralError(os.str());
  }
}

/// Spectral decomposition m = V diag(values) V^H of a Hermitian matrix.
inline EigenSystem eig_hermitian(const ComplexMatrix& m) {
  require_hermitian(m, "eig_hermitian");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m);
  if (solver.info() != Eigen::Success) throw NumericError("eig_hermitian: solver did not converge");
  // Eigen sorts ascending
  return {solver.eigenvalues().reverse(), solver.eigenvectors().rowwise().reverse()};
}

inline RealVector eigenvalues_hermitian(const ComplexMatrix& m) {
  require_hermitian(m, "eigenvalues_hermitian");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericError("eigenvalues_hermitian: solver did not converge");
  }
  return solver.eigenvalues().reverse();
}

class DensityMatrix;
DensityMatrix validate_density(const ComplexMatrix& rho, const Dims& dims,
                               double tol = kValidationTol);

/// Positive semidefinite, unit-trace matrix annotated with subsystem dimensions.
/// Only obtainable through validate_density.
class DensityMatrix {
 public:
  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  const Dims& dims() const noexcept { return dims_; }
  Eigen::Index dim() const noexcept { return matrix_.rows(); }
  std::size_t subsystems() const noexcept { return dims_.size(); }

  /// Spectrum with the stored clamping applied (non-negative, descending).
  RealVector spectrum() const {
    RealVector ev = eigenvalues_hermitian(matrix_);
    return ev.cwiseMax(0.0);
  }

  double purity() const { return (matrix_ * matrix_).trace().real(); }

 private:
  friend DensityMatrix validate_density(const ComplexMatrix&, const Dims&, double);
  DensityMatrix(ComplexMatrix m, Dims d) : matrix_(std::move(m)), dims_(std::move(d)) {}

  ComplexMatrix matrix_;
  Dims dims_;
};

/// Accepts rho iff it is Hermitian, has unit trace and no eigenvalue below -tol.
/// Each failed check is reported separately. Tiny negative eigenvalues are
/// clamped to zero and the spectrum renormalized before storage.
inline DensityMatrix validate_density(const ComplexMatrix& rho, const Dims& dims, double tol) {
  std::vector<Violation> bad;
  if (rho.rows() != rho.cols() || rho.rows() != dims.total()) {
    bad.push_back({"dimension", static_cast<double>(rho.rows())});
    throw ValidationError(std::move(bad));
  }
  if (rho.rows() > kMaxDimension) {
    throw UsageError("state dimension " + std::to_string(rho.rows()) + " exceeds cap " +
                     std::to_string(kMaxDimension));
  }
  if (!rho.allFinite()) {
    bad.push_back({"finite", 0.0});
    throw ValidationError(std::move(bad));
  }
  const double herm = hermitian_deviation(rho);
  if (herm > tol) bad.push_back({"hermitian", herm});
  const complex tr = rho.trace();
  const double trace_dev = std::abs(tr - complex{1.0, 0.0});
  if (trace_dev > tol) bad.push_back({"trace", trace_dev});

  ComplexMatrix h = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  if (solver.info() != Eigen::Success) throw NumericError("validate_density: solver did not converge");
  const double min_ev = solver.eigenvalues().minCoeff();
  if (min_ev < -tol) bad.push_back({"positivity", min_ev});
  if (!bad.empty()) throw ValidationError(std::move(bad));

  if (min_ev < 0.0) {
    RealVector clamped = solver.eigenvalues().cwiseMax(0.0);
    clamped /= clamped.sum();
    h = solver.eigenvectors() * clamped.asDiagonal() * solver.eigenvectors().adjoint();
  } else {
    h /= h.trace().real();
  }
  return DensityMatrix(std::move(h), dims);
}

inline DensityMatrix validate_density(const ComplexMatrix& rho, double tol = kValidationTol) {
  return validate_density(rho, Dims({static_cast<int>(rho.rows())}), tol);
}

/// Reduced state on the kept subsystems.
inline DensityMatrix marginal(const DensityMatrix& rho, const std::vector<int>& keep) {
  std::vector<int> sorted = keep;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  ComplexMatrix m = partial_trace(rho.matrix(), rho.dims(), sorted);
  return validate_density(m, rho.dims().select(sorted));
}

/// |v><v| for a column vector.
inline ComplexMatrix projector(const ComplexVector& v) { return v * v.adjoint(); }

}  // namespace qmeur
