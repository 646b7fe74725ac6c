#include "qcorr/sweeps.hpp"

#include <cmath>
#include <functional>
#include <sstream>

namespace qcorr {

namespace {

constexpr int kScanPoints = 2048;
constexpr int kMaxBisectIterations = 60;

void check_grid(const std::vector<double>& grid) {
  if (grid.empty()) throw ParamOutOfRange("t_grid is empty");
  for (size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i]))
      throw ParamOutOfRange("t_grid contains a non-finite value");
    if (i > 0 && !(grid[i] > grid[i - 1]))
      throw ParamOutOfRange("t_grid is not strictly ascending");
  }
}

// Locate the flip of a boolean predicate inside (lo, hi); pred(lo) == at_lo.
double bisect_flip(const std::function<bool(double)>& pred, double lo,
                   double hi, bool at_lo, double resolution) {
  for (int i = 0; i < kMaxBisectIterations && hi - lo > resolution; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (pred(mid) == at_lo)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

// Maximal runs of pred over a uniform scan of [0, 2pi), refined by bisection.
std::vector<Window> scan_windows(const std::function<bool(double)>& pred,
                                 double resolution, WindowKind kind) {
  if (!(resolution > 0.0 && resolution <= 1e-3))
    throw ParamOutOfRange("window resolution must lie in (0, 1e-3]");
  const double span = 2.0 * M_PI;
  std::vector<bool> hit(kScanPoints);
  for (int k = 0; k < kScanPoints; ++k)
    hit[k] = pred(span * k / kScanPoints);

  std::vector<Window> out;
  int k = 0;
  while (k < kScanPoints) {
    if (!hit[k]) {
      ++k;
      continue;
    }
    const int start = k;
    while (k < kScanPoints && hit[k]) ++k;
    const int stop = k - 1;  // last true index
    Window w;
    w.kind = kind;
    if (start == 0) {
      w.lo = 0.0;
    } else {
      w.lo = bisect_flip(pred, span * (start - 1) / kScanPoints,
                         span * start / kScanPoints, false, resolution);
    }
    if (start == 0 && stop == kScanPoints - 1) {
      w.hi = span;  // the whole circle
    } else if (stop == kScanPoints - 1) {
      w.hi = bisect_flip(pred, span * stop / kScanPoints, span, true,
                         resolution);
    } else {
      w.hi = bisect_flip(pred, span * stop / kScanPoints,
                         span * (stop + 1) / kScanPoints, true, resolution);
    }
    out.push_back(w);
  }
  return out;
}

}  // namespace

std::vector<double> uniform_grid(double t_max, int samples) {
  if (samples < 2 || !(t_max > 0.0))
    throw ParamOutOfRange("grid needs t_max > 0 and samples >= 2");
  std::vector<double> out(samples);
  for (int k = 0; k < samples; ++k) out[k] = t_max * k / (samples - 1);
  return out;
}

std::vector<SweepRow> time_sweep(const SweepSpec& spec) {
  check_grid(spec.t_grid);
  std::vector<SweepRow> rows;
  rows.reserve(spec.t_grid.size());

  const auto make_row = [](double t, const DensityMatrix& ev) {
    SweepRow row;
    row.t = t;
    row.report = report_measures(ev);
    row.physical = ev.physical();
    try {
      row.report.discord = discord_or_nan(ev);
    } catch (const OptimizerFailure&) {
      row.optimizer_failed = true;  // discord stays NaN
    }
    return row;
  };

  if (spec.mode == EvolutionMode::Physical) {
    const DensityMatrix rho0 =
        build_state(spec.state, /*as_printed=*/false, spec.tolerant);
    for (const double t : spec.t_grid) {
      rows.push_back(make_row(
          t, tolerant_state(evolve_matrix(rho0.matrix(), spec.ham, t))));
    }
    return rows;
  }

  // paper mode: printed matrices and printed S(t), plus the divergence from
  // the physical linear entropy (constant in t by unitarity)
  const double s_phys = linear_entropy_of(
      build_state(spec.state, false, /*tolerant=*/true).matrix());
  for (const double t : spec.t_grid) {
    const Mat4 printed = paper_evolved_state(spec.state, spec.ham, t);
    SweepRow row = make_row(t, tolerant_state(printed));
    row.report.linear_entropy =
        paper_linear_entropy(spec.state, spec.ham.coupling() * t);
    row.paper_s_divergence = row.report.linear_entropy - s_phys;
    rows.push_back(row);
  }
  return rows;
}

std::vector<Window> phi_window_physical(double c, double s,
                                        double resolution) {
  const double d = d_parameter(c, s);
  if (d < 0) {
    std::ostringstream os;
    os << "D(c=" << c << ", s=" << s << ") = " << d << " < 0";
    throw NegativeD(os.str());
  }
  const auto physical = [&](double phi) {
    return diagnose(rho_m_matrix(c, s, phi, 0.0)).min_eigenvalue >= kPsdTol;
  };
  return scan_windows(physical, resolution, WindowKind::Physicality);
}

std::vector<Window> phi_window_violation(double c, double s,
                                         double resolution) {
  const double d = d_parameter(c, s);
  if (d < 0) {
    std::ostringstream os;
    os << "D(c=" << c << ", s=" << s << ") = " << d << " < 0";
    throw NegativeD(os.str());
  }
  const auto violating = [&](double phi) {
    const Mat4 m = rho_m_matrix(c, s, phi, 0.0);
    return diagnose(m).min_eigenvalue >= kPsdTol && horodecki_m_of(m) > 1.0;
  };
  return scan_windows(violating, resolution, WindowKind::Violation);
}

std::vector<Window> sudden_death_intervals(const SweepSpec& spec,
                                           const std::vector<SweepRow>& rows,
                                           double threshold) {
  if (rows.empty()) return {};

  // concurrence of the exact state at arbitrary t, matching the sweep mode
  const Mat4 rho0 = build_state(spec.state, false, true).matrix();
  const auto conc_at = [&](double t) {
    const Mat4 m = spec.mode == EvolutionMode::PaperPrinted
                       ? paper_evolved_state(spec.state, spec.ham, t)
                       : evolve_matrix(rho0, spec.ham, t);
    return is_x_form(m) ? concurrence_x(m) : concurrence(tolerant_state(m));
  };
  const auto dead = [&](double t) { return conc_at(t) <= threshold; };

  std::vector<Window> out;
  size_t k = 0;
  while (k < rows.size()) {
    if (!(rows[k].report.concurrence <= threshold)) {
      ++k;
      continue;
    }
    const size_t start = k;
    while (k < rows.size() && rows[k].report.concurrence <= threshold) ++k;
    const size_t stop = k - 1;
    Window w;
    w.kind = WindowKind::SuddenDeath;
    w.lo = start == 0 ? rows.front().t
                      : bisect_flip(dead, rows[start - 1].t, rows[start].t,
                                    false, 1e-13);
    w.hi = stop + 1 == rows.size()
               ? rows.back().t
               : bisect_flip(dead, rows[stop].t, rows[stop + 1].t, true,
                             1e-13);
    out.push_back(w);
  }
  return out;
}

}  // namespace qcorr
