#pragma once

#include <vector>

#include "qcorr/correlations.hpp"
#include "qcorr/dynamics.hpp"

namespace qcorr {

struct SweepSpec {
  StateSpec state;
  HamiltonianSpec ham;
  std::vector<double> t_grid;  // nonempty, strictly ascending, finite
  EvolutionMode mode = EvolutionMode::Physical;
  /// Tag rows instead of throwing when the initial state fails validation;
  /// used when sweeping published rounded window endpoints.
  bool tolerant = false;
};

struct SweepRow {
  double t = 0;
  CorrelationReport report;
  bool physical = true;
  /// Discord optimizer did not converge; discord is NaN, the row stands.
  bool optimizer_failed = false;
  /// Paper mode only: printed S(t) minus the physical linear entropy.
  std::optional<double> paper_s_divergence;
};

enum class WindowKind { Physicality, Violation, SuddenDeath };

struct Window {
  double lo = 0;
  double hi = 0;
  WindowKind kind = WindowKind::Physicality;
};

/// t_k = k * t_max / (samples - 1), k = 0 .. samples-1.
std::vector<double> uniform_grid(double t_max, int samples);

/// One correlation report per grid point, ordered by t. In paper mode the
/// linear_entropy column carries the printed closed form S(t) and
/// paper_s_divergence its offset from the (constant) physical value.
std::vector<SweepRow> time_sweep(const SweepSpec& spec);

/// Maximal phi intervals of [0, 2pi) where the two-parameter family is PSD,
/// endpoints bisected to +-resolution (resolution <= 1e-3).
std::vector<Window> phi_window_physical(double c, double s, double resolution);

/// Maximal phi intervals where the state is physical and horodecki_m > 1.
std::vector<Window> phi_window_violation(double c, double s, double resolution);

/// Maximal t intervals with concurrence <= threshold. Endpoints are refined
/// by bisecting the exact evolved state between neighbouring grid rows,
/// never by interpolating reports.
std::vector<Window> sudden_death_intervals(const SweepSpec& spec,
                                           const std::vector<SweepRow>& rows,
                                           double threshold = 1e-9);

}  // namespace qcorr
