#include "qcorr/dynamics.hpp"

#include <cmath>
#include <sstream>

namespace qcorr {

namespace {

// the three published two-parameter instantiations, keyed by s
enum class RhoMVariant { S18, S12, S710 };

RhoMVariant classify_rho_m(const StateSpec& state) {
  const double c = state.c.value_or(-1);
  const double s = state.s.value_or(-1);
  if (std::abs(c - 0.5) > 1e-12)
    throw UnsupportedFamily("printed rho-m forms exist only for c = 1/2");
  for (const auto& [target, variant] :
       {std::pair{0.125, RhoMVariant::S18}, std::pair{0.5, RhoMVariant::S12},
        std::pair{0.7, RhoMVariant::S710}}) {
    if (std::abs(s - target) <= 1e-12) return variant;
  }
  std::ostringstream os;
  os << "printed rho-m forms exist only for s in {1/8, 1/2, 7/10}; got " << s;
  throw UnsupportedFamily(os.str());
}

}  // namespace

Mat4 build_hamiltonian(const HamiltonianSpec& spec) {
  const double j = spec.coupling();
  return 0.5 * j * (kron(pauli_x(), pauli_x()) + kron(pauli_y(), pauli_y())) +
         spec.b * (kron(pauli_z(), pauli_id()) + kron(pauli_id(), pauli_z()));
}

Mat4 evolve_matrix(const Mat4& rho, const HamiltonianSpec& spec, double t) {
  const Mat4 u = expm_i(build_hamiltonian(spec), t);
  return u * rho * u.adjoint();
}

DensityMatrix evolve(const DensityMatrix& rho, const HamiltonianSpec& spec,
                     double t) {
  if (!std::isfinite(t)) throw ParamOutOfRange("evolve: t is not finite");
  return validate_state(evolve_matrix(rho.matrix(), spec, t));
}

Mat4 closed_form_evolve_matrix(const Mat4& x_form, const HamiltonianSpec& spec,
                               double t) {
  const double a = spec.coupling() * t;
  const double c2 = std::cos(a) * std::cos(a);
  const double s2 = std::sin(a) * std::sin(a);
  const double s2a = std::sin(2.0 * a);

  const double p = x_form(1, 1).real();
  const double r = x_form(2, 2).real();
  const Scalar q = x_form(1, 2);

  Mat4 out = x_form;
  out(0, 3) = x_form(0, 3) * std::exp(-kImag * 4.0 * spec.b * t);
  out(3, 0) = std::conj(out(0, 3));
  out(1, 1) = p * c2 + r * s2 - s2a * q.imag();
  out(2, 2) = p * s2 + r * c2 + s2a * q.imag();
  out(1, 2) = q * c2 + std::conj(q) * s2 + 0.5 * kImag * s2a * (p - r);
  out(2, 1) = std::conj(out(1, 2));
  return out;
}

DensityMatrix closed_form_evolve(const StateSpec& state,
                                 const HamiltonianSpec& spec, double t) {
  if (state.family == Family::Werner)
    throw UnsupportedFamily(
        "closed_form_evolve: Werner is H-invariant up to the corner phase; "
        "use evolve()");
  const DensityMatrix rho0 = build_state(state);
  return validate_state(closed_form_evolve_matrix(rho0.matrix(), spec, t));
}

Mat4 paper_evolved_state(const StateSpec& state, const HamiltonianSpec& spec,
                         double t) {
  const double j = spec.coupling();
  const double jt = j * t;

  if (state.family == Family::MEMS) {
    if (!state.gamma) throw ParamOutOfRange("MEMS requires gamma");
    const double gamma = *state.gamma;
    Mat4 m = Mat4::Zero();
    m(0, 0) = 1.0 / 3.0;
    m(1, 1) = std::cos(jt) * std::cos(jt) / 3.0;
    m(2, 2) = std::sin(jt) * std::sin(jt) / 3.0;
    m(3, 3) = 1.0 / 3.0;
    m(1, 2) = kImag / 6.0 * std::sin(2.0 * jt);
    m(2, 1) = -m(1, 2);
    m(0, 3) = 0.5 * gamma * std::exp(-kImag * 4.0 * spec.b * t);
    m(3, 0) = std::conj(m(0, 3));
    return m;
  }

  if (state.family != Family::RhoM)
    throw UnsupportedFamily("no printed evolved form for this family");

  const RhoMVariant variant = classify_rho_m(state);
  if (!state.phi) throw ParamOutOfRange("rho-m requires phi");
  const double phi = *state.phi;
  const double c2jt = std::cos(2.0 * jt);
  const double s2jt = std::sin(2.0 * jt);

  Mat4 m = Mat4::Zero();
  switch (variant) {
    case RhoMVariant::S18: {
      const double x = std::sqrt(129.0) * c2jt * std::cos(phi);
      const double y = std::sqrt(43.0) * std::sin(phi);
      m(1, 1) = (x + y + 8.0) / 24.0;
      m(2, 2) = (-x + y + 8.0) / 24.0;
      m(3, 3) = (4.0 - y) / 12.0;
      // printed coherence keeps cos(2Jt); the t = 0 matrix forces sin
      m(1, 2) = (6.0 + kImag * x) / 24.0;
      m(2, 1) = (6.0 - kImag * x) / 24.0;
      break;
    }
    case RhoMVariant::S12: {
      const double a = std::sqrt(3.0) / 6.0 * c2jt * std::cos(phi) +
                       std::sin(phi);
      const Scalar b = std::sqrt(3.0) / 6.0 * kImag * std::cos(phi) + s2jt;
      m(1, 1) = 1.0 / 3.0 + a;
      m(2, 2) = 1.0 / 3.0 - a;
      // (4,4) is printed as 0; trace is 2/3
      m(1, 2) = 0.25 + b;
      m(2, 1) = 0.25 - b;  // not the adjoint of (1,2) whenever sin(2Jt) != 0
      break;
    }
    case RhoMVariant::S710: {
      const double g = std::sqrt(30.0) / 60.0 * c2jt * std::cos(phi) +
                       std::sqrt(10.0) / 60.0 * std::sin(phi);
      const Scalar h = kImag * std::cos(phi) * s2jt / (2.0 * std::sqrt(30.0));
      m(1, 1) = 1.0 / 3.0 + g;
      m(2, 2) = 1.0 / 3.0 - g;
      // (4,4) is printed as 0; trace is 2/3
      m(1, 2) = 0.25 + h;
      m(2, 1) = 0.25 - h;
      break;
    }
  }
  return m;
}

double paper_linear_entropy(const StateSpec& state, double jt) {
  if (state.family == Family::MEMS)
    return (25.0 - std::cos(4.0 * jt)) / 36.0;
  if (state.family != Family::RhoM)
    throw UnsupportedFamily("no printed linear entropy for this family");

  const RhoMVariant variant = classify_rho_m(state);
  if (!state.phi) throw ParamOutOfRange("rho-m requires phi");
  const double phi = *state.phi;
  const double cc = std::cos(2.0 * jt) * std::cos(2.0 * jt) *
                    std::cos(phi) * std::cos(phi);
  const double ss = std::sin(phi) * std::sin(phi);
  switch (variant) {
    case RhoMVariant::S18:
      return (-43.0 * cc - 43.0 * ss + 64.0) / 96.0;
    case RhoMVariant::S12:
      return (-cc - ss + 4.0) / 6.0;
    case RhoMVariant::S710:
      // printed with an unbalanced parenthesis; read in the s=1/2 shape
      return (-cc - ss + 40.0) / 60.0;
  }
  return 0;  // unreachable
}

}  // namespace qcorr
