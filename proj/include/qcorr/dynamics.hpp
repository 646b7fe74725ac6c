#pragma once

#include "qcorr/states.hpp"

namespace qcorr {

/// XX coupling and transverse field, hbar = 1. j_scale is a global rescale
/// knob (config file only) and defaults to off.
struct HamiltonianSpec {
  double j = 1.0;
  double b = 0.0;
  double j_scale = 1.0;

  double coupling() const { return j * j_scale; }
};

enum class EvolutionMode { Physical, PaperPrinted };

/// H = (J/2)(sx sx + sy sy) + B(sz 1 + 1 sz)
///   = diag(2B, 0, 0, -2B) with inner block ((0, J), (J, 0)).
Mat4 build_hamiltonian(const HamiltonianSpec& spec);

/// Schroedinger picture conjugation by exp(-i H t).
DensityMatrix evolve(const DensityMatrix& rho, const HamiltonianSpec& spec,
                     double t);
Mat4 evolve_matrix(const Mat4& rho, const HamiltonianSpec& spec, double t);

/// Exact closed form for X-form input: rho14 picks up the phase
/// exp(-4iBt); the inner block rotates with angle Jt. Entrywise equal to
/// evolve() to 1e-12. Werner is not supported here (it is H-invariant up
/// to the corner phase; use evolve()).
DensityMatrix closed_form_evolve(const StateSpec& state,
                                 const HamiltonianSpec& spec, double t);
Mat4 closed_form_evolve_matrix(const Mat4& x_form, const HamiltonianSpec& spec,
                               double t);

/// The published evolved matrices transcribed verbatim, including their
/// inconsistencies (stale coherence factor for the s=1/8 family, missing
/// (4,4) entry and non-Hermitian coherence for the s=1/2 family, missing
/// (4,4) entry for the s=7/10 family). The result is a raw matrix; callers
/// obtain physicality diagnostics via diagnose()/tolerant_state().
/// Supported: MEMS (any gamma) and RhoM with c = 1/2, s in {1/8, 1/2, 7/10}.
Mat4 paper_evolved_state(const StateSpec& state, const HamiltonianSpec& spec,
                         double t);

/// The published closed-form linear entropies, evaluated verbatim at the
/// dimensionless time jt = J*t. These vary with t although the unitary
/// evolution preserves purity; they are exposed for comparison only.
double paper_linear_entropy(const StateSpec& state, double jt);

}  // namespace qcorr
