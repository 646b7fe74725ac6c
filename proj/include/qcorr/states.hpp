#pragma once

#include <optional>

#include "qcorr/linalg.hpp"

namespace qcorr {

enum class Family { MEMS, Werner, RhoN, RhoM };

const char* family_name(Family f);

/// Parameters selecting one member of the supported state families.
/// Only the fields required by the family are set.
struct StateSpec {
  Family family = Family::MEMS;
  std::optional<double> gamma;  // MEMS / Werner
  std::optional<double> c;      // RhoN / RhoM: concurrence parameter
  std::optional<double> s;      // RhoM: target linear entropy
  std::optional<double> phi;    // RhoM
  std::optional<double> theta;  // RhoN / RhoM: coherence phase
};

struct StateDiagnostics {
  double trace_error = 0;        // |tr - 1|
  double hermiticity_error = 0;  // max entry deviation from the adjoint
  double min_eigenvalue = 0;     // of the Hermitian part
};

StateDiagnostics diagnose(const Mat4& m);

/// Validation tolerances for a physical state.
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kPsdTol = -1e-9;  // window-boundary states are rank deficient

/// A 4x4 Hermitian unit-trace PSD matrix (within tolerance). Instances are
/// produced by validate_state / tolerant_state and are immutable.
class DensityMatrix {
 public:
  const Mat4& matrix() const { return m_; }
  /// false only for tolerantly wrapped matrices that failed validation
  bool physical() const { return physical_; }
  const StateDiagnostics& diagnostics() const { return diag_; }

 private:
  friend DensityMatrix validate_state(const Mat4&);
  friend DensityMatrix tolerant_state(const Mat4&);
  DensityMatrix(const Mat4& m, bool physical, const StateDiagnostics& d)
      : m_(m), physical_(physical), diag_(d) {}

  Mat4 m_;
  bool physical_;
  StateDiagnostics diag_;
};

/// Wraps m if Hermitian (1e-10), unit trace (1e-10) and PSD (min eigenvalue
/// >= -1e-9); otherwise throws NotHermitian / TraceNotOne / NotPSD naming
/// the failed invariant and its magnitude.
DensityMatrix validate_state(const Mat4& m);

/// Wraps m unconditionally and tags it non-physical if any invariant fails.
/// Used for as-printed matrices and published rounded window endpoints.
DensityMatrix tolerant_state(const Mat4& m);

// Raw matrix builders (no PSD validation; parameter checks only).
Mat4 mems_matrix(double gamma, bool as_printed = false);
Mat4 werner_matrix(double gamma);
Mat4 rho_n_matrix(double c, double theta);
Mat4 rho_m_matrix(double c, double s, double phi, double theta);

/// One-parameter maximally entangled mixed state. The printed gamma < 2/3
/// branch has trace 2/3 + gamma/2; the corrected branch (default) restores
/// the (4,4) entry to 1/3. as_printed = true keeps the printed entry and
/// tags the result non-physical.
DensityMatrix make_mems(double gamma, bool as_printed = false);

/// gamma |phi+><phi+| + (1-gamma)/4 I with |phi+> = (|00>+|11>)/sqrt(2).
DensityMatrix make_werner(double gamma);

/// One-parameter family with vanishing (1,1) entry and inner coherence
/// (c/2) e^{i theta}; branch rho1 for c < 2/3, rho2 for c >= 2/3.
DensityMatrix make_rho_n(double c, double theta);

/// D = -c^2/12 - s/8 + 1/9; the discriminant of the two-parameter family.
double d_parameter(double c, double s);

/// Largest linear entropy compatible with concurrence c.
double s_max(double c);

/// Two-parameter family at concurrence c and linear entropy s; throws
/// Unphysical when phi lies outside the PSD window.
DensityMatrix make_rho_m(double c, double s, double phi, double theta);

/// Permutation (e3, e4, e1, e2) = sigma_x (x) I linking the MEMS branches
/// to the rho_n fragments.
Mat4 swap_unitary();

/// Dispatch on spec.family; throws ParamOutOfRange if required parameters
/// are missing. tolerant = true wraps without throwing on PSD failures.
DensityMatrix build_state(const StateSpec& spec, bool as_printed = false,
                          bool tolerant = false);

}  // namespace qcorr
