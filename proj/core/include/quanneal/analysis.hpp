#pragma once

#include <map>
#include <string>
#include <vector>

#include "quanneal/observables.hpp"

namespace quanneal {

/// (t_f, n_def) series from one sweep, strictly increasing in t_f.
struct ScalingSeries {
  std::vector<DefectSeriesPoint> points;
  double dt = 0.0;
  int n_sites = 0;
  std::string label;
};

/// Half-open-free t_f window [t_lo, t_hi], inclusive on both ends.
struct FitWindow {
  double t_lo = 0.0;
  double t_hi = 0.0;
};

struct PowerLawFit {
  double exponent = 0.0;
  double exponent_stderr = 0.0;
  double prefactor = 0.0;
  std::vector<double> residuals;  // log-space, per window point
};

/// Least squares of log n_def on log t_f; weighted by 1/std_err^2 when every
/// window point carries one, unweighted otherwise. Requires >= 3 points with
/// n_def > 0 inside the window.
PowerLawFit fit_power_law(const ScalingSeries& series, FitWindow window);

struct LzFit {
  double b = 0.0;          // n_def ~ prefactor * exp(-b * t_f / N^2)
  double prefactor = 0.0;
};

/// Least squares of log n_def on t_f / N^2 over the finite-size drop-off
/// window.
LzFit fit_lz_regime(const ScalingSeries& series, FitWindow window);

/// Fits the adiabatic tail n_def = p(t) + (1 - 2 p(t)) / (a t^2) with
/// p(t) = lz.prefactor * exp(-b t / N^2) held fixed; the single parameter a
/// has a closed-form least-squares solution.
double fit_adiabatic_regime(const ScalingSeries& series, FitWindow window, const LzFit& lz);

struct RegimeFit {
  PowerLawFit kz;
  LzFit lz;
  double adiabatic_a = 0.0;
  FitWindow kz_window, lz_window, adiabatic_window;
};

RegimeFit fit_regimes(const ScalingSeries& series, FitWindow kz_window, FitWindow lz_window,
                      FitWindow adiabatic_window);

/// Threshold-depth benchmark. The prefactor c is calibrated on the first
/// calib_points points against c * t_f^reference_exponent; threshold_steps is
/// the depth of the last point of the maximal prefix whose relative deviation
/// |n - c t^ref| / (c t^ref) stays within delta (0 when even the first point
/// deviates, which can only happen with a failed calibration).
struct BenchmarkReport {
  int threshold_steps = 0;
  int min_def_steps = 0;
  double reference_exponent = -0.5;
  double delta = 0.2;
  double prefactor = 0.0;          // calibrated c
  bool calibration_ok = true;      // calibration points themselves within delta
  PowerLawFit kz_fit;              // free fit over the calibration points
  FitWindow kz_fit_window;
  std::vector<double> deviations;  // per series point
};

BenchmarkReport detect_threshold(const ScalingSeries& series, double reference_exponent = -0.5,
                                 double delta = 0.2, int calib_points = 3);

/// Report JSON; extra top-level fields may be appended by callers.
std::string benchmark_report_to_json(const BenchmarkReport& report, const ScalingSeries& series);

struct DepthPoint {
  int n_steps = 0;
  double e_res = 0.0;
  double std_err = 0.0;
};

struct OptimalTimeStep {
  struct Curve {
    double dt = 0.0;
    int argmin_steps = 0;
    double min_e_res = 0.0;
    double std_err = 0.0;
  };
  double dt_star = 0.0;
  std::vector<Curve> curves;  // ascending dt
};

/// Per-dt minimum of E_res over depth; dt_star is the dt whose minimum is
/// lowest. Every curve needs at least 3 depths.
OptimalTimeStep optimal_time_step(const std::map<double, std::vector<DepthPoint>>& curves);

}  // namespace quanneal
