#include "quanneal/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace quanneal {

namespace {

std::vector<std::size_t> window_indices(const ScalingSeries& series, FitWindow window) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < series.points.size(); ++i) {
    const double t = series.points[i].t_f;
    if (t >= window.t_lo && t <= window.t_hi) idx.push_back(i);
  }
  return idx;
}

void check_series(const ScalingSeries& series) {
  for (std::size_t i = 1; i < series.points.size(); ++i) {
    if (!(series.points[i].t_f > series.points[i - 1].t_f))
      throw std::invalid_argument("series must be strictly increasing in t_f");
  }
}

struct LineFit {
  double slope = 0.0;
  double slope_stderr = 0.0;
  double intercept = 0.0;
  std::vector<double> residuals;
};

// Weighted OLS of y on x; weights w (all 1 for unweighted).
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y,
                 const std::vector<double>& w) {
  const std::size_t n = x.size();
  double sw = 0.0, sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sw += w[i];
    sx += w[i] * x[i];
    sy += w[i] * y[i];
  }
  const double xbar = sx / sw;
  const double ybar = sy / sw;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += w[i] * (x[i] - xbar) * (x[i] - xbar);
    sxy += w[i] * (x[i] - xbar) * (y[i] - ybar);
  }
  if (sxx == 0.0) throw std::invalid_argument("degenerate fit window: no spread in t_f");
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = ybar - f.slope * xbar;
  f.residuals.resize(n);
  double ssr = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    f.residuals[i] = y[i] - (f.intercept + f.slope * x[i]);
    ssr += w[i] * f.residuals[i] * f.residuals[i];
  }
  if (n > 2) {
    const double s2 = ssr / static_cast<double>(n - 2);
    f.slope_stderr = std::sqrt(s2 / sxx);
  }
  return f;
}

PowerLawFit power_law_on(const ScalingSeries& series, const std::vector<std::size_t>& idx) {
  std::vector<double> x, y, w;
  bool weighted = true;
  for (std::size_t i : idx) {
    const auto& p = series.points[i];
    if (!(p.n_def > 0.0))
      throw std::invalid_argument("power-law fit requires positive n_def in the window");
    x.push_back(std::log(p.t_f));
    y.push_back(std::log(p.n_def));
    weighted = weighted && p.std_err > 0.0;
  }
  for (std::size_t i : idx) {
    const auto& p = series.points[i];
    // sigma of log n is std_err / n
    w.push_back(weighted ? (p.n_def * p.n_def) / (p.std_err * p.std_err) : 1.0);
  }
  const LineFit line = fit_line(x, y, w);
  PowerLawFit fit;
  fit.exponent = line.slope;
  fit.exponent_stderr = line.slope_stderr;
  fit.prefactor = std::exp(line.intercept);
  fit.residuals = line.residuals;
  return fit;
}

}  // namespace

PowerLawFit fit_power_law(const ScalingSeries& series, FitWindow window) {
  check_series(series);
  const auto idx = window_indices(series, window);
  if (idx.size() < 3) throw std::invalid_argument("power-law fit window needs at least 3 points");
  return power_law_on(series, idx);
}

LzFit fit_lz_regime(const ScalingSeries& series, FitWindow window) {
  check_series(series);
  if (series.n_sites < 1) throw std::invalid_argument("series must carry the system size");
  const auto idx = window_indices(series, window);
  if (idx.size() < 2) throw std::invalid_argument("drop-off fit window needs at least 2 points");
  const double n2 = static_cast<double>(series.n_sites) * series.n_sites;
  std::vector<double> x, y, w;
  for (std::size_t i : idx) {
    const auto& p = series.points[i];
    if (!(p.n_def > 0.0))
      throw std::invalid_argument("drop-off fit requires positive n_def in the window");
    x.push_back(p.t_f / n2);
    y.push_back(std::log(p.n_def));
    w.push_back(1.0);
  }
  const LineFit line = fit_line(x, y, w);
  return {-line.slope, std::exp(line.intercept)};
}

double fit_adiabatic_regime(const ScalingSeries& series, FitWindow window, const LzFit& lz) {
  check_series(series);
  const auto idx = window_indices(series, window);
  if (idx.size() < 2) throw std::invalid_argument("adiabatic fit window needs at least 2 points");
  const double n2 = static_cast<double>(series.n_sites) * series.n_sites;
  double suv = 0.0, svv = 0.0;
  for (std::size_t i : idx) {
    const auto& p = series.points[i];
    const double plz = lz.prefactor * std::exp(-lz.b * p.t_f / n2);
    const double u = p.n_def - plz;
    const double v = (1.0 - 2.0 * plz) / (p.t_f * p.t_f);
    suv += u * v;
    svv += v * v;
  }
  if (svv == 0.0 || suv == 0.0)
    throw std::domain_error("adiabatic fit is degenerate on this window");
  return svv / suv;
}

RegimeFit fit_regimes(const ScalingSeries& series, FitWindow kz_window, FitWindow lz_window,
                      FitWindow adiabatic_window) {
  RegimeFit fit;
  fit.kz = fit_power_law(series, kz_window);
  fit.lz = fit_lz_regime(series, lz_window);
  fit.adiabatic_a = fit_adiabatic_regime(series, adiabatic_window, fit.lz);
  fit.kz_window = kz_window;
  fit.lz_window = lz_window;
  fit.adiabatic_window = adiabatic_window;
  return fit;
}

BenchmarkReport detect_threshold(const ScalingSeries& series, double reference_exponent,
                                 double delta, int calib_points) {
  check_series(series);
  if (calib_points < 2) throw std::invalid_argument("calibration needs at least 2 points");
  if (static_cast<int>(series.points.size()) < calib_points + 1)
    throw std::invalid_argument("series too short for threshold detection");
  if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");

  BenchmarkReport report;
  report.reference_exponent = reference_exponent;
  report.delta = delta;

  // Prefactor calibration at fixed exponent: geometric mean of n / t^ref.
  double acc = 0.0;
  for (int i = 0; i < calib_points; ++i) {
    const auto& p = series.points[static_cast<std::size_t>(i)];
    if (!(p.n_def > 0.0))
      throw std::invalid_argument("calibration points must have positive n_def");
    acc += std::log(p.n_def) - reference_exponent * std::log(p.t_f);
  }
  report.prefactor = std::exp(acc / calib_points);

  std::vector<std::size_t> calib_idx(static_cast<std::size_t>(calib_points));
  for (int i = 0; i < calib_points; ++i) calib_idx[static_cast<std::size_t>(i)] = i;
  report.kz_fit = power_law_on(series, calib_idx);
  report.kz_fit_window = {series.points.front().t_f,
                          series.points[static_cast<std::size_t>(calib_points - 1)].t_f};

  report.deviations.reserve(series.points.size());
  for (const auto& p : series.points) {
    const double ref = report.prefactor * std::pow(p.t_f, reference_exponent);
    report.deviations.push_back(std::abs(p.n_def - ref) / ref);
  }

  report.calibration_ok = true;
  for (int i = 0; i < calib_points; ++i)
    report.calibration_ok = report.calibration_ok && report.deviations[static_cast<std::size_t>(i)] <= delta;

  report.threshold_steps = 0;
  for (std::size_t i = 0; i < series.points.size(); ++i) {
    if (report.deviations[i] > delta) break;
    report.threshold_steps = series.points[i].n_steps;
  }

  std::size_t argmin = 0;
  for (std::size_t i = 1; i < series.points.size(); ++i)
    if (series.points[i].n_def < series.points[argmin].n_def) argmin = i;
  report.min_def_steps = series.points[argmin].n_steps;
  return report;
}

std::string benchmark_report_to_json(const BenchmarkReport& report, const ScalingSeries& series) {
  nlohmann::ordered_json doc;
  doc["threshold_steps"] = report.threshold_steps;
  doc["min_def_steps"] = report.min_def_steps;
  doc["reference_exponent"] = report.reference_exponent;
  doc["delta"] = report.delta;
  doc["calibration_ok"] = report.calibration_ok;
  nlohmann::ordered_json kz;
  kz["exponent"] = report.kz_fit.exponent;
  kz["stderr"] = report.kz_fit.exponent_stderr;
  kz["prefactor"] = report.prefactor;
  kz["window"] = {report.kz_fit_window.t_lo, report.kz_fit_window.t_hi};
  doc["kz_fit"] = std::move(kz);
  auto& points = doc["points"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < series.points.size(); ++i) {
    nlohmann::ordered_json p;
    p["t_f"] = series.points[i].t_f;
    p["n_def"] = series.points[i].n_def;
    p["deviation"] = report.deviations[i];
    points.push_back(std::move(p));
  }
  return doc.dump(2) + "\n";
}

OptimalTimeStep optimal_time_step(const std::map<double, std::vector<DepthPoint>>& curves) {
  if (curves.empty()) throw std::invalid_argument("at least one dt curve required");
  OptimalTimeStep result;
  bool first = true;
  double best = 0.0;
  for (const auto& [dt, points] : curves) {
    if (points.size() < 3) throw std::invalid_argument("each dt curve needs at least 3 depths");
    std::size_t argmin = 0;
    for (std::size_t i = 1; i < points.size(); ++i)
      if (points[i].e_res < points[argmin].e_res) argmin = i;
    OptimalTimeStep::Curve curve;
    curve.dt = dt;
    curve.argmin_steps = points[argmin].n_steps;
    curve.min_e_res = points[argmin].e_res;
    curve.std_err = points[argmin].std_err;
    result.curves.push_back(curve);
    if (first || curve.min_e_res < best) {
      best = curve.min_e_res;
      result.dt_star = dt;
      first = false;
    }
  }
  return result;
}

}  // namespace quanneal
