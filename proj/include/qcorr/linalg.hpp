#pragma once

#include <Eigen/Dense>
#include <complex>

#include "qcorr/errors.hpp"

namespace qcorr {

using Real = double;
using Scalar = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;
using Vec2 = Eigen::Vector2d;
using Vec4 = Eigen::Vector4d;

inline constexpr Scalar kImag{0.0, 1.0};

inline const Mat2& pauli_id() {
  static const Mat2 m = Mat2::Identity();
  return m;
}
inline const Mat2& pauli_x() {
  static const Mat2 m = (Mat2() << 0, 1, 1, 0).finished();
  return m;
}
inline const Mat2& pauli_y() {
  static const Mat2 m = (Mat2() << 0, -kImag, kImag, 0).finished();
  return m;
}
inline const Mat2& pauli_z() {
  static const Mat2 m = (Mat2() << 1, 0, 0, -1).finished();
  return m;
}

/// Kronecker product with index convention (i1 i2, j1 j2) -> row 2*i1+i2,
/// col 2*j1+j2, i.e. the first factor acts on subsystem A.
Mat4 kron(const Mat2& a, const Mat2& b);

double hermiticity_error(const Mat2& m);  // max_ij |m_ij - conj(m_ji)|
double hermiticity_error(const Mat4& m);

struct HermitianEigen {
  Vec4 values;   // ascending
  Mat4 vectors;  // columns are the matching orthonormal eigenvectors
};

/// Eigendecomposition of a Hermitian 4x4 matrix. The input must be
/// Hermitian within 1e-10 (max entry deviation), else NotHermitian.
/// Deterministic: identical input yields bit-identical output.
HermitianEigen herm_eig(const Mat4& m);

/// Closed-form eigenvalues of a Hermitian 2x2 matrix, ascending.
Vec2 herm_eigvals2(const Mat2& m);

/// exp(-i h t) via spectral decomposition V diag(exp(-i lambda t)) V^dag.
/// h must be Hermitian within 1e-10.
Mat4 expm_i(const Mat4& h, double t);

enum class Subsystem { A, B };

/// Trace over the discarded qubit; `keep` names the surviving subsystem.
Mat2 partial_trace(const Mat4& m, Subsystem keep);

/// Re tr(m^2)
double purity(const Mat4& m);

}  // namespace qcorr
