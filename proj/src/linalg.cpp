#include "qcorr/linalg.hpp"

#include <sstream>

namespace qcorr {

namespace {

constexpr double kHermTol = 1e-10;

void require_hermitian(const Mat4& m, const char* who) {
  const double err = hermiticity_error(m);
  if (err > kHermTol) {
    std::ostringstream os;
    os << who << ": matrix is not Hermitian, max deviation " << err;
    throw NotHermitian(os.str());
  }
}

}  // namespace

Mat4 kron(const Mat2& a, const Mat2& b) {
  Mat4 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

double hermiticity_error(const Mat2& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double hermiticity_error(const Mat4& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

HermitianEigen herm_eig(const Mat4& m) {
  require_hermitian(m, "herm_eig");
  Eigen::SelfAdjointEigenSolver<Mat4> solver(m);
  if (solver.info() != Eigen::Success)
    throw Error("herm_eig: eigensolver did not converge");
  return HermitianEigen{solver.eigenvalues(), solver.eigenvectors()};
}

Vec2 herm_eigvals2(const Mat2& m) {
  const double a = m(0, 0).real();
  const double c = m(1, 1).real();
  const double mean = 0.5 * (a + c);
  const double rad = std::hypot(0.5 * (a - c), std::abs(m(0, 1)));
  return Vec2(mean - rad, mean + rad);
}

Mat4 expm_i(const Mat4& h, double t) {
  const HermitianEigen eig = herm_eig(h);
  Eigen::Vector4cd phases;
  for (int i = 0; i < 4; ++i)
    phases(i) = std::exp(-kImag * eig.values(i) * t);
  return eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
}

Mat2 partial_trace(const Mat4& m, Subsystem keep) {
  Mat2 out = Mat2::Zero();
  if (keep == Subsystem::A) {
    // trace over B: out(i,j) = sum_k m(2i+k, 2j+k)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        out(i, j) = m(2 * i, 2 * j) + m(2 * i + 1, 2 * j + 1);
  } else {
    // trace over A: out(i,j) = sum_k m(2k+i, 2k+j)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        out(i, j) = m(i, j) + m(2 + i, 2 + j);
  }
  return out;
}

double purity(const Mat4& m) {
  return (m * m).trace().real();
}

}  // namespace qcorr
