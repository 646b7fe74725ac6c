#pragma once

#include "qcorr/states.hpp"

namespace qcorr {

/// Unit measurement axis on the Bloch sphere.
struct BlochVector {
  double nx = 0, ny = 0, nz = 1;

  BlochVector() = default;
  BlochVector(double x, double y, double z);  // throws unless |n| = 1 within 1e-12
  static BlochVector from_angles(double theta, double phi);
  static BlochVector axis_x() { return {1, 0, 0}; }
  static BlochVector axis_y() { return {0, 1, 0}; }
  static BlochVector axis_z() { return {0, 0, 1}; }
};

struct CorrelationReport {
  double concurrence = 0;
  double discord = 0;  // bits; NaN when the matrix is too far from a state
  double linear_entropy = 0;
  double purity = 1;
  double horodecki_m = 0;
  double lambda = 0;
  bool bell_violated = false;
  double min_eigenvalue = 0;
};

/// Von Neumann entropy in bits; eigenvalues are clamped to [0,1] before the
/// log (0 log 0 = 0). Throws NotPSD below the evaluation tolerance -1e-3
/// (published rounded window endpoints sit a few 1e-4 outside PSD).
double vn_entropy(const Mat2& m);
double vn_entropy(const Mat4& m);

/// (4/3)(1 - tr rho^2)
double linear_entropy(const DensityMatrix& rho);
double linear_entropy_of(const Mat4& m);  // same formula on a raw matrix

/// (sigma_y (x) sigma_y) conj(rho) (sigma_y (x) sigma_y)
Mat4 spin_flip(const Mat4& rho);

/// Wootters concurrence. Uses the X-state closed form when the matrix is
/// X-form, otherwise the Hermitian route sqrt(rho) flip(rho) sqrt(rho).
double concurrence(const DensityMatrix& rho);

/// The general Hermitian route unconditionally (cross-check for the
/// X-state fast path).
double concurrence_wootters(const DensityMatrix& rho);

/// True when only the diagonal, (1,4) and (2,3) entries are nonzero.
bool is_x_form(const Mat4& m, double tol = 1e-12);

/// 2 max(0, |rho14| - sqrt(rho22 rho33), |rho23| - sqrt(rho11 rho44)).
/// Throws NotXForm if the sparsity pattern does not hold.
double concurrence_x(const Mat4& rho);

/// Post-measurement entropy of B for a projective measurement along `axis`
/// on A: sum_pm p_pm S(rho_B | pm); outcomes with p < 1e-14 contribute 0.
double conditional_entropy(const DensityMatrix& rho, const BlochVector& axis);

enum class MeasuredSide { A, B };

struct DiscordOptions {
  MeasuredSide side = MeasuredSide::A;
  int grid_theta = 64;   // inclusive samples of [0, pi]
  int grid_phi = 128;    // samples of [0, 2pi)
  int max_refine_iterations = 200;
  double refine_tolerance = 1e-10;
};

/// Quantum discord in bits: S(rho_A) - S(rho_AB) + min over projective
/// measurement axes of the conditional entropy. Minimization: the three
/// principal axes, a coarse angular grid, then simplex refinement from the
/// best point. Deterministic (index-ordered reduction).
double quantum_discord(const DensityMatrix& rho,
                       const DiscordOptions& opts = {});

/// Spin correlation matrix T_ij = tr(rho sigma_i (x) sigma_j).
Eigen::Matrix3d correlation_tensor(const Mat4& m);

/// Sum of the two largest eigenvalues of T^T T; the Bell-CHSH inequality is
/// violated iff the value exceeds 1.
double horodecki_m(const DensityMatrix& rho);
double horodecki_m_of(const Mat4& m);

/// (1 - 2 rho44)^2
double lambda_param(const Mat4& rho);

/// X-state Bell criterion C^2 + max(C^2, lambda); requires a single
/// coherence sector (rho14 = 0 or rho23 = 0). Equals horodecki_m exactly
/// for inner-coherence states with rho11 = 0.
double x_state_m(const DensityMatrix& rho);

/// All measures of a physical state; falls back to the degraded rules of
/// report_raw for tolerantly wrapped non-physical matrices.
CorrelationReport report(const DensityMatrix& rho);

/// report() without the discord optimization (discord left NaN); sweeps use
/// this to keep rows intact when the optimizer fails.
CorrelationReport report_measures(const DensityMatrix& rho);

/// quantum_discord when the matrix is Hermitian and unit-trace within 1e-9
/// and PSD within 1e-3 (the physical path skips these checks); NaN
/// otherwise. May throw OptimizerFailure.
double discord_or_nan(const DensityMatrix& rho);

/// Degraded report for matrices that may violate the state invariants:
/// purity, linear entropy, Horodecki M and lambda are plain formulas;
/// concurrence uses the X-form expression when the pattern holds (NaN when
/// nothing applies); discord per discord_or_nan.
CorrelationReport report_raw(const Mat4& m);

}  // namespace qcorr
