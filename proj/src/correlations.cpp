#include "qcorr/correlations.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

namespace qcorr {

namespace {

constexpr double kMeasurePsdTol = -1e-3;  // published rounded window
// endpoints sit up to ~5e-4 outside PSD; grossly indefinite printed
// matrices stay rejected
constexpr double kOutcomeCutoff = 1e-14;
const double kNaN = std::numeric_limits<double>::quiet_NaN();

double entropy_from_eigs(const double* eigs, int n) {
  double out = 0;
  for (int i = 0; i < n; ++i) {
    const double lam = std::clamp(eigs[i], 0.0, 1.0);
    if (lam > 0) out -= lam * std::log2(lam);
  }
  return out;
}

void require_psd(double min_eig, const char* who) {
  if (min_eig < kMeasurePsdTol) {
    std::ostringstream os;
    os << who << ": min eigenvalue " << min_eig << " below tolerance";
    throw NotPSD(os.str());
  }
}

Mat4 projector_on_a(const BlochVector& n, int sign) {
  const Mat2 ns = n.nx * pauli_x() + n.ny * pauli_y() + n.nz * pauli_z();
  const Mat2 p = 0.5 * (pauli_id() + double(sign) * ns);
  return kron(p, pauli_id());
}

// |ij> -> |ji> basis permutation
Mat4 swap_gate() {
  Mat4 s = Mat4::Zero();
  s(0, 0) = s(3, 3) = 1;
  s(1, 2) = s(2, 1) = 1;
  return s;
}

struct SimplexPoint {
  double theta, phi, value;
};

}  // namespace

BlochVector::BlochVector(double x, double y, double z) : nx(x), ny(y), nz(z) {
  const double norm = std::sqrt(x * x + y * y + z * z);
  if (std::abs(norm - 1.0) > 1e-12) {
    std::ostringstream os;
    os << "Bloch vector norm " << norm << " != 1";
    throw ParamOutOfRange(os.str());
  }
}

BlochVector BlochVector::from_angles(double theta, double phi) {
  BlochVector n;
  n.nx = std::sin(theta) * std::cos(phi);
  n.ny = std::sin(theta) * std::sin(phi);
  n.nz = std::cos(theta);
  return n;
}

double vn_entropy(const Mat2& m) {
  const Vec2 eigs = herm_eigvals2(m);
  require_psd(eigs(0), "vn_entropy");
  return entropy_from_eigs(eigs.data(), 2);
}

double vn_entropy(const Mat4& m) {
  const HermitianEigen eig = herm_eig(m);
  require_psd(eig.values(0), "vn_entropy");
  return entropy_from_eigs(eig.values.data(), 4);
}

double linear_entropy(const DensityMatrix& rho) {
  return linear_entropy_of(rho.matrix());
}

double linear_entropy_of(const Mat4& m) {
  return (4.0 / 3.0) * (1.0 - purity(m));
}

Mat4 spin_flip(const Mat4& rho) {
  const Mat4 yy = kron(pauli_y(), pauli_y());
  return yy * rho.conjugate() * yy;
}

bool is_x_form(const Mat4& m, double tol) {
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const bool on_pattern = i == j || (i == 0 && j == 3) ||
                              (i == 3 && j == 0) || (i == 1 && j == 2) ||
                              (i == 2 && j == 1);
      if (!on_pattern && std::abs(m(i, j)) > tol) return false;
    }
  return true;
}

double concurrence_x(const Mat4& rho) {
  if (!is_x_form(rho)) throw NotXForm("concurrence_x: matrix is not X-form");
  const double d11 = std::max(0.0, rho(0, 0).real());
  const double d22 = std::max(0.0, rho(1, 1).real());
  const double d33 = std::max(0.0, rho(2, 2).real());
  const double d44 = std::max(0.0, rho(3, 3).real());
  const double outer = std::abs(rho(0, 3)) - std::sqrt(d22 * d33);
  const double inner = std::abs(rho(1, 2)) - std::sqrt(d11 * d44);
  return 2.0 * std::max({0.0, outer, inner});
}

double concurrence(const DensityMatrix& rho) {
  const Mat4& m = rho.matrix();
  if (is_x_form(m)) return concurrence_x(m);
  return concurrence_wootters(rho);
}

double concurrence_wootters(const DensityMatrix& rho) {
  const Mat4& m = rho.matrix();
  require_psd(rho.diagnostics().min_eigenvalue, "concurrence");

  // eigenvalues of rho * flip(rho) via the Hermitian similarity
  // sqrt(rho) flip(rho) sqrt(rho)
  const HermitianEigen eig = herm_eig(m);
  Vec4 sq;
  for (int i = 0; i < 4; ++i) sq(i) = std::sqrt(std::max(0.0, eig.values(i)));
  const Mat4 root =
      eig.vectors * sq.cast<Scalar>().asDiagonal() * eig.vectors.adjoint();
  const Mat4 prod = root * spin_flip(m) * root;
  const Vec4 mu = herm_eig(prod).values;  // ascending
  double c = std::sqrt(std::max(0.0, mu(3)));
  for (int i = 0; i < 3; ++i) c -= std::sqrt(std::max(0.0, mu(i)));
  return std::max(0.0, c);
}

double conditional_entropy(const DensityMatrix& rho, const BlochVector& axis) {
  double out = 0;
  for (int sign : {+1, -1}) {
    const Mat4 proj = projector_on_a(axis, sign);
    const Mat4 selected = proj * rho.matrix() * proj;
    const double p = selected.trace().real();
    if (p < kOutcomeCutoff) continue;
    const Mat2 cond = partial_trace(selected, Subsystem::B) / p;
    out += p * vn_entropy(cond);
  }
  return out;
}

double quantum_discord(const DensityMatrix& rho, const DiscordOptions& opts) {
  require_psd(rho.diagnostics().min_eigenvalue, "quantum_discord");
  DensityMatrix state = rho;
  if (opts.side == MeasuredSide::B) {
    const Mat4 sw = swap_gate();
    state = tolerant_state(sw * rho.matrix() * sw);
  }

  const double hold = vn_entropy(partial_trace(state.matrix(), Subsystem::A)) -
                      vn_entropy(state.matrix());

  const auto objective = [&](double theta, double phi) {
    return conditional_entropy(state, BlochVector::from_angles(theta, phi));
  };

  // analytic candidates, then the coarse grid
  SimplexPoint best{0.0, 0.0, conditional_entropy(state, BlochVector::axis_z())};
  for (const auto& [th, ph] : {std::pair{M_PI / 2, 0.0},
                               std::pair{M_PI / 2, M_PI / 2}}) {
    const double v = objective(th, ph);
    if (v < best.value) best = {th, ph, v};
  }
  for (int i = 0; i < opts.grid_theta; ++i) {
    const double theta = M_PI * i / (opts.grid_theta - 1);
    for (int j = 0; j < opts.grid_phi; ++j) {
      const double phi = 2.0 * M_PI * j / opts.grid_phi;
      const double v = objective(theta, phi);
      if (v < best.value) best = {theta, phi, v};
    }
  }

  // Nelder-Mead refinement (2d, unconstrained; angles are periodic)
  const double h = 0.05;
  std::array<SimplexPoint, 3> sx{
      best,
      SimplexPoint{best.theta + h, best.phi, objective(best.theta + h, best.phi)},
      SimplexPoint{best.theta, best.phi + h, objective(best.theta, best.phi + h)}};
  bool converged = false;
  for (int iter = 0; iter < opts.max_refine_iterations; ++iter) {
    std::stable_sort(sx.begin(), sx.end(),
                     [](const SimplexPoint& a, const SimplexPoint& b) {
                       return a.value < b.value;
                     });
    if (sx[2].value - sx[0].value < opts.refine_tolerance) {
      converged = true;
      break;
    }
    const double ct = 0.5 * (sx[0].theta + sx[1].theta);
    const double cp = 0.5 * (sx[0].phi + sx[1].phi);
    const auto at = [&](double scale) {
      SimplexPoint p;
      p.theta = ct + scale * (ct - sx[2].theta);
      p.phi = cp + scale * (cp - sx[2].phi);
      p.value = objective(p.theta, p.phi);
      return p;
    };
    const SimplexPoint refl = at(1.0);
    if (refl.value < sx[0].value) {
      const SimplexPoint expd = at(2.0);
      sx[2] = expd.value < refl.value ? expd : refl;
    } else if (refl.value < sx[1].value) {
      sx[2] = refl;
    } else {
      const SimplexPoint contr = at(refl.value < sx[2].value ? 0.5 : -0.5);
      if (contr.value < std::min(refl.value, sx[2].value)) {
        sx[2] = contr;
      } else {  // shrink toward the best vertex
        for (int k = 1; k < 3; ++k) {
          sx[k].theta = sx[0].theta + 0.5 * (sx[k].theta - sx[0].theta);
          sx[k].phi = sx[0].phi + 0.5 * (sx[k].phi - sx[0].phi);
          sx[k].value = objective(sx[k].theta, sx[k].phi);
        }
      }
    }
  }
  if (!converged)
    throw OptimizerFailure("quantum_discord: simplex refinement did not "
                           "converge within the iteration budget");

  const double min_cond = std::min(best.value, sx[0].value);
  const double value = hold + min_cond;
  if (value < -1e-9) {
    std::ostringstream os;
    os << "quantum_discord: value " << value << " below -1e-9";
    throw Error(os.str());
  }
  return std::max(0.0, value);
}

Eigen::Matrix3d correlation_tensor(const Mat4& m) {
  const std::array<const Mat2*, 3> paulis{&pauli_x(), &pauli_y(), &pauli_z()};
  Eigen::Matrix3d t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      t(i, j) = (m * kron(*paulis[i], *paulis[j])).trace().real();
  return t;
}

double horodecki_m_of(const Mat4& m) {
  const Eigen::Matrix3d t = correlation_tensor(m);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(
      t.transpose() * t, Eigen::EigenvaluesOnly);
  const Eigen::Vector3d eigs = solver.eigenvalues();  // ascending
  return eigs(1) + eigs(2);
}

double horodecki_m(const DensityMatrix& rho) {
  return horodecki_m_of(rho.matrix());
}

double lambda_param(const Mat4& rho) {
  const double r44 = rho(3, 3).real();
  const double v = 1.0 - 2.0 * r44;
  return v * v;
}

double x_state_m(const DensityMatrix& rho) {
  const Mat4& m = rho.matrix();
  if (!is_x_form(m)) throw NotXForm("x_state_m: matrix is not X-form");
  if (std::abs(m(0, 3)) > 1e-12 && std::abs(m(1, 2)) > 1e-12)
    throw NotXForm("x_state_m: both coherence sectors populated");
  const double c = concurrence_x(m);
  const double lam = lambda_param(m);
  return c * c + std::max(c * c, lam);
}

CorrelationReport report_measures(const DensityMatrix& rho) {
  const Mat4& m = rho.matrix();
  const StateDiagnostics& d = rho.diagnostics();
  CorrelationReport r;
  r.purity = purity(m);
  r.linear_entropy = (4.0 / 3.0) * (1.0 - r.purity);
  r.horodecki_m = horodecki_m_of(m);
  r.lambda = lambda_param(m);
  r.bell_violated = r.horodecki_m > 1.0;
  r.min_eigenvalue = d.min_eigenvalue;
  r.discord = kNaN;

  if (rho.physical() || is_x_form(m)) {
    r.concurrence = concurrence(rho);
  } else if (d.hermiticity_error <= kHermitianTol &&
             d.min_eigenvalue >= kPsdTol) {
    r.concurrence = concurrence_wootters(rho);
  } else {
    r.concurrence = kNaN;
  }
  return r;
}

double discord_or_nan(const DensityMatrix& rho) {
  if (rho.physical()) return quantum_discord(rho);
  const StateDiagnostics& d = rho.diagnostics();
  const bool ok = d.hermiticity_error <= 1e-9 && d.trace_error <= 1e-9 &&
                  d.min_eigenvalue >= kMeasurePsdTol;
  return ok ? quantum_discord(rho) : kNaN;
}

CorrelationReport report(const DensityMatrix& rho) {
  CorrelationReport r = report_measures(rho);
  r.discord = discord_or_nan(rho);
  return r;
}

CorrelationReport report_raw(const Mat4& m) {
  return report(tolerant_state(m));
}

}  // namespace qcorr
