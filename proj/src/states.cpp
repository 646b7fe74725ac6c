#include "qcorr/states.hpp"

#include <cmath>
#include <sstream>

namespace qcorr {

namespace {

const double kSqrt3 = std::sqrt(3.0);

void check_range(double v, double lo, double hi, const char* name) {
  if (!(v >= lo && v <= hi)) {
    std::ostringstream os;
    os << name << " = " << v << " outside [" << lo << ", " << hi << "]";
    throw ParamOutOfRange(os.str());
  }
}

double require(const std::optional<double>& v, const char* name, Family f) {
  if (!v) {
    std::ostringstream os;
    os << "family " << family_name(f) << " requires parameter " << name;
    throw ParamOutOfRange(os.str());
  }
  return *v;
}

}  // namespace

const char* family_name(Family f) {
  switch (f) {
    case Family::MEMS: return "mems";
    case Family::Werner: return "werner";
    case Family::RhoN: return "rho-n";
    case Family::RhoM: return "rho-m";
  }
  return "?";
}

StateDiagnostics diagnose(const Mat4& m) {
  StateDiagnostics d;
  d.trace_error = std::abs(m.trace() - Scalar(1.0));
  d.hermiticity_error = hermiticity_error(m);
  const Mat4 herm = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat4> solver(herm, Eigen::EigenvaluesOnly);
  d.min_eigenvalue = solver.eigenvalues().minCoeff();
  return d;
}

DensityMatrix validate_state(const Mat4& m) {
  const StateDiagnostics d = diagnose(m);
  std::ostringstream os;
  if (d.hermiticity_error > kHermitianTol) {
    os << "NotHermitian: max |m - m^dag| entry = " << d.hermiticity_error;
    throw NotHermitian(os.str());
  }
  if (d.trace_error > kTraceTol) {
    os << "TraceNotOne: trace = " << m.trace().real()
       << " (deviation " << d.trace_error << ")";
    throw TraceNotOne(os.str());
  }
  if (d.min_eigenvalue < kPsdTol) {
    os << "NotPSD: min eigenvalue = " << d.min_eigenvalue;
    throw NotPSD(os.str());
  }
  return DensityMatrix(m, true, d);
}

DensityMatrix tolerant_state(const Mat4& m) {
  const StateDiagnostics d = diagnose(m);
  const bool ok = d.hermiticity_error <= kHermitianTol &&
                  d.trace_error <= kTraceTol && d.min_eigenvalue >= kPsdTol;
  return DensityMatrix(m, ok, d);
}

Mat4 mems_matrix(double gamma, bool as_printed) {
  check_range(gamma, 0.0, 1.0, "gamma");
  Mat4 m = Mat4::Zero();
  if (gamma >= 2.0 / 3.0) {
    m(0, 0) = gamma / 2;
    m(1, 1) = 1.0 - gamma;
    m(3, 3) = gamma / 2;
  } else {
    m(0, 0) = 1.0 / 3.0;
    m(1, 1) = 1.0 / 3.0;
    // printed (4,4) entry is gamma/2, which breaks tr = 1 for gamma != 2/3
    m(3, 3) = as_printed ? gamma / 2 : 1.0 / 3.0;
  }
  m(0, 3) = m(3, 0) = gamma / 2;
  return m;
}

Mat4 werner_matrix(double gamma) {
  check_range(gamma, 0.0, 1.0, "gamma");
  Mat4 m = Mat4::Identity() * ((1.0 - gamma) / 4.0);
  m(0, 0) += gamma / 2;
  m(3, 3) += gamma / 2;
  m(0, 3) += gamma / 2;
  m(3, 0) += gamma / 2;
  return m;
}

Mat4 rho_n_matrix(double c, double theta) {
  if (!(c > 0.0 && c < 1.0)) {
    std::ostringstream os;
    os << "c = " << c << " outside (0, 1)";
    throw ParamOutOfRange(os.str());
  }
  Mat4 m = Mat4::Zero();
  if (c < 2.0 / 3.0) {
    m(1, 1) = m(2, 2) = m(3, 3) = 1.0 / 3.0;
  } else {
    m(1, 1) = m(2, 2) = c / 2;
    m(3, 3) = 1.0 - c;
  }
  m(1, 2) = 0.5 * c * std::exp(kImag * theta);
  m(2, 1) = std::conj(m(1, 2));
  return m;
}

double d_parameter(double c, double s) {
  return -c * c / 12.0 - s / 8.0 + 1.0 / 9.0;
}

double s_max(double c) {
  check_range(c, 0.0, 1.0, "c");
  if (c < 2.0 / 3.0) return 8.0 / 9.0 - (2.0 / 3.0) * c * c;
  return (8.0 / 3.0) * c * (1.0 - c);
}

Mat4 rho_m_matrix(double c, double s, double phi, double theta) {
  if (!(c > 0.0 && c <= 1.0 / std::sqrt(2.0))) {
    std::ostringstream os;
    os << "c = " << c << " outside (0, 1/sqrt(2)]";
    throw ParamOutOfRange(os.str());
  }
  const double d = d_parameter(c, s);
  if (d < 0.0) {
    std::ostringstream os;
    os << "D(c=" << c << ", s=" << s << ") = " << d << " < 0";
    throw NegativeD(os.str());
  }
  const double sd = std::sqrt(d);
  Mat4 m = Mat4::Zero();
  m(1, 1) = 1.0 / 3.0 + sd * (std::sin(phi) + kSqrt3 * std::cos(phi));
  m(2, 2) = 1.0 / 3.0 + sd * (std::sin(phi) - kSqrt3 * std::cos(phi));
  m(3, 3) = 1.0 / 3.0 - 2.0 * sd * std::sin(phi);
  m(1, 2) = 0.5 * c * std::exp(kImag * theta);
  m(2, 1) = std::conj(m(1, 2));
  return m;
}

DensityMatrix make_mems(double gamma, bool as_printed) {
  const Mat4 m = mems_matrix(gamma, as_printed);
  return as_printed ? tolerant_state(m) : validate_state(m);
}

DensityMatrix make_werner(double gamma) {
  return validate_state(werner_matrix(gamma));
}

DensityMatrix make_rho_n(double c, double theta) {
  return validate_state(rho_n_matrix(c, theta));
}

DensityMatrix make_rho_m(double c, double s, double phi, double theta) {
  const Mat4 m = rho_m_matrix(c, s, phi, theta);
  const StateDiagnostics d = diagnose(m);
  if (d.min_eigenvalue < kPsdTol) {
    std::ostringstream os;
    os << "Unphysical: min eigenvalue " << d.min_eigenvalue
       << " at phi = " << phi << " (outside the admissible window)";
    throw Unphysical(os.str());
  }
  return validate_state(m);
}

Mat4 swap_unitary() {
  return kron(pauli_x(), pauli_id());
}

DensityMatrix build_state(const StateSpec& spec, bool as_printed,
                          bool tolerant) {
  Mat4 m;
  switch (spec.family) {
    case Family::MEMS:
      m = mems_matrix(require(spec.gamma, "gamma", spec.family), as_printed);
      break;
    case Family::Werner:
      m = werner_matrix(require(spec.gamma, "gamma", spec.family));
      break;
    case Family::RhoN:
      m = rho_n_matrix(require(spec.c, "c", spec.family),
                       spec.theta.value_or(0.0));
      break;
    case Family::RhoM:
      m = rho_m_matrix(require(spec.c, "c", spec.family),
                       require(spec.s, "s", spec.family),
                       require(spec.phi, "phi", spec.family),
                       spec.theta.value_or(0.0));
      break;
  }
  if (as_printed || tolerant) return tolerant_state(m);
  if (spec.family == Family::RhoM) {
    // report PSD failures of the two-parameter family as Unphysical
    return make_rho_m(*spec.c, *spec.s, *spec.phi, spec.theta.value_or(0.0));
  }
  return validate_state(m);
}

}  // namespace qcorr
