#include "runner.hpp"

#include <cmath>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "experiments.hpp"
#include "pool.hpp"
#include "quanneal/exact.hpp"
#include "quanneal/io.hpp"

namespace quanneal::runner {

using nlohmann::ordered_json;

namespace {

struct Context {
  const ExperimentConfig& config;
  std::filesystem::path out;
  int workers;
  RunOptions::Format format;
  ArtifactMeta meta;
};

std::string rows_to_json(std::span<const SeriesRow> rows, const ArtifactMeta& meta) {
  ordered_json doc;
  doc["meta"] = {{"config_hash", meta.config_hash}, {"seed", meta.seed}, {"version", meta.version}};
  for (const auto& [key, value] : meta.extras) doc["meta"][key] = value;
  auto& points = doc["points"] = ordered_json::array();
  for (const auto& r : rows) {
    ordered_json p;
    p["t_f"] = r.t_f;
    p["n_steps"] = r.n_steps;
    p["dt"] = r.dt;
    p["observable"] = r.observable;
    p["mean"] = r.mean;
    p["std_err"] = r.std_err;
    points.push_back(std::move(p));
  }
  return doc.dump(2) + "\n";
}

void write_series_file(const Context& ctx, const std::string& stem, std::span<const SeriesRow> rows,
                       std::vector<std::pair<std::string, std::string>> extras = {}) {
  ArtifactMeta meta = ctx.meta;
  meta.extras = std::move(extras);
  std::ostringstream os;
  std::string name;
  if (ctx.format == RunOptions::Format::csv) {
    write_series_csv(os, rows, meta);
    name = stem + ".csv";
  } else {
    os << rows_to_json(rows, meta);
    name = stem + ".json";
  }
  write_file_atomic(ctx.out / name, os.str());
}

void write_json_file(const Context& ctx, const std::string& name, ordered_json doc) {
  doc["meta"] = {{"config_hash", ctx.meta.config_hash},
                 {"seed", ctx.meta.seed},
                 {"version", ctx.meta.version}};
  doc["config"] = nlohmann::json::parse(ctx.config.canonical_json);
  write_file_atomic(ctx.out / name, doc.dump(2) + "\n");
}

void write_chart(const Context& ctx, const std::string& name, std::string_view title,
                 std::string_view x_label, std::string_view y_label,
                 std::span<const ChartSeries> series, bool log_x, bool log_y) {
  std::ostringstream os;
  write_line_chart_svg(os, title, x_label, y_label, series, log_x, log_y, ctx.meta);
  write_file_atomic(ctx.out / name, os.str());
}

ChartSeries chart_from_series(const ScalingSeries& series) {
  ChartSeries out;
  out.label = series.label;
  for (const auto& p : series.points) out.points.emplace_back(p.t_f, p.n_def);
  return out;
}

void append_rows(std::vector<SeriesRow>& rows, const ScalingSeries& series,
                 std::string_view observable) {
  const auto extra = series_rows(series, observable);
  rows.insert(rows.end(), extra.begin(), extra.end());
}

// ---------------------------------------------------------------------------
// kz_bench: defect-density scaling series plus the threshold-depth report.
// ---------------------------------------------------------------------------
void run_kz_bench(const Context& ctx) {
  const auto graph = build_graph(ctx.config);
  const auto couplings = build_couplings(ctx.config, graph);
  const auto& cfg = ctx.config;

  std::vector<SeriesRow> rows;
  std::vector<ChartSeries> charts;
  const ScalingSeries* benchmark_series = nullptr;
  ScalingSeries statevector, noisy_raw, noisy_mit;

  std::vector<std::pair<std::string, std::string>> extras;
  if (cfg.noise) {
    const double eta = cfg.noise->etas.at(0);
    const auto model = scaled(cfg.noise->base, eta);
    auto noisy = defect_series_noisy(graph, couplings, cfg.dt, cfg.steps, model,
                                     cfg.noise->n_traj, cfg.noise->shots_per_traj, cfg.seed,
                                     /*stream=*/1, ctx.workers, "noisy");
    noisy_raw = std::move(noisy.raw);
    noisy_mit = std::move(noisy.mitigated);
    noisy_mit.label = "noisy (readout mitigated)";
    append_rows(rows, noisy_raw, "n_def");
    append_rows(rows, noisy_mit, "n_def_rem");
    charts.push_back(chart_from_series(noisy_mit));
    benchmark_series = &noisy_mit;
    extras.emplace_back("eta", format_double(eta));
  } else {
    statevector = defect_series_statevector(graph, couplings, cfg.dt, cfg.steps, ctx.workers,
                                            "statevector");
    append_rows(rows, statevector, "n_def");
    charts.push_back(chart_from_series(statevector));
    benchmark_series = &statevector;
  }
  write_series_file(ctx, "kz_series", rows, extras);

  // The threshold walk starts at the scaling window: points before
  // fit_window.t_lo sit in the short-time plateau and would poison the
  // prefactor calibration. The full series stays in the CSV.
  ScalingSeries bench = *benchmark_series;
  std::erase_if(bench.points,
                [&](const DefectSeriesPoint& p) { return p.t_f < cfg.fit_window.t_lo; });
  if (static_cast<int>(bench.points.size()) < cfg.calib_points + 1) bench = *benchmark_series;

  const auto report = detect_threshold(bench, cfg.reference_exponent, cfg.delta, cfg.calib_points);
  auto report_doc = ordered_json::parse(benchmark_report_to_json(report, bench));
  // free power-law fit over the configured window, when enough of the series
  // falls inside it
  report_doc["window_fit"] = ordered_json();
  try {
    const auto window_fit = fit_power_law(*benchmark_series, cfg.fit_window);
    report_doc["window_fit"] = {{"exponent", window_fit.exponent},
                                {"stderr", window_fit.exponent_stderr},
                                {"prefactor", window_fit.prefactor},
                                {"window", {cfg.fit_window.t_lo, cfg.fit_window.t_hi}}};
  } catch (const std::invalid_argument&) {
    // window without three positive points: reported as null
  }
  write_json_file(ctx, "kz_report.json", std::move(report_doc));

  ChartSeries ref_line;
  ref_line.label = "reference scaling";
  for (const auto& p : bench.points)
    ref_line.points.emplace_back(p.t_f, report.prefactor * std::pow(p.t_f, cfg.reference_exponent));
  charts.push_back(std::move(ref_line));
  write_chart(ctx, "kz_series.svg", "defect density vs annealing time", "t_f", "n_def", charts,
              true, true);
}

// ---------------------------------------------------------------------------
// noise_sweep: per-eta trajectory curves against the noise-free reference,
// with the divergence-time summary.
// ---------------------------------------------------------------------------
void run_noise_sweep(const Context& ctx) {
  const auto graph = build_graph(ctx.config);
  const auto couplings = build_couplings(ctx.config, graph);
  const auto& cfg = ctx.config;

  const auto reference = defect_series_statevector(graph, couplings, cfg.dt, cfg.steps,
                                                   ctx.workers, "noise-free");
  write_series_file(ctx, "noise_reference", series_rows(reference, "n_def"));

  std::vector<ChartSeries> charts{chart_from_series(reference)};
  ordered_json summary;
  summary["divergence_delta"] = cfg.divergence_delta;
  auto& entries = summary["etas"] = ordered_json::array();

  for (std::size_t e = 0; e < cfg.noise->etas.size(); ++e) {
    const double eta = cfg.noise->etas[e];
    const auto model = scaled(cfg.noise->base, eta);
    auto noisy = defect_series_noisy(graph, couplings, cfg.dt, cfg.steps, model, cfg.noise->n_traj,
                                     cfg.noise->shots_per_traj, cfg.seed,
                                     /*stream=*/e + 1, ctx.workers, "eta=" + format_double(eta));
    noisy.mitigated.label = "eta=" + format_double(eta);

    std::vector<SeriesRow> rows;
    append_rows(rows, noisy.raw, "n_def");
    append_rows(rows, noisy.mitigated, "n_def_rem");
    write_series_file(ctx, "noise_eta_" + format_double(eta), rows, {{"eta", format_double(eta)}});

    const double t_star = divergence_time(noisy.mitigated, reference, cfg.divergence_delta);
    ordered_json entry;
    entry["eta"] = eta;
    entry["t_f_star"] = t_star < 0.0 ? ordered_json() : ordered_json(t_star);
    entries.push_back(std::move(entry));
    charts.push_back(chart_from_series(noisy.mitigated));
  }
  write_json_file(ctx, "noise_summary.json", std::move(summary));
  write_chart(ctx, "noise_series.svg", "defect density under scaled noise", "t_f", "n_def", charts,
              true, true);
}

// ---------------------------------------------------------------------------
// trotter_convergence: per-dt series against the near-continuum reference.
// ---------------------------------------------------------------------------
void run_trotter_convergence(const Context& ctx) {
  const auto graph = build_graph(ctx.config);
  const auto couplings = build_couplings(ctx.config, graph);
  const auto& cfg = ctx.config;

  const auto reference = defect_series_reference(graph, couplings, cfg.t_f_grid, cfg.fine_dt,
                                                 ctx.workers, "reference");
  write_series_file(ctx, "trotter_reference", series_rows(reference, "n_def"));

  std::vector<ChartSeries> charts{chart_from_series(reference)};
  ordered_json summary;
  summary["fine_dt"] = cfg.fine_dt;
  auto& entries = summary["dt"] = ordered_json::array();

  for (double dt : cfg.dt_grid) {
    std::vector<int> steps;
    steps.reserve(cfg.t_f_grid.size());
    for (double t : cfg.t_f_grid) steps.push_back(static_cast<int>(std::llround(t / dt)));
    auto series = defect_series_statevector(graph, couplings, dt, steps, ctx.workers,
                                            "dt=" + format_double(dt));
    write_series_file(ctx, "trotter_dt_" + format_double(dt), series_rows(series, "n_def"));

    double max_dev = 0.0;
    for (std::size_t i = 0; i < series.points.size(); ++i)
      max_dev = std::max(max_dev, std::abs(series.points[i].n_def - reference.points[i].n_def));
    ordered_json entry;
    entry["dt"] = dt;
    entry["max_abs_deviation"] = max_dev;
    entries.push_back(std::move(entry));
    charts.push_back(chart_from_series(series));
  }
  write_json_file(ctx, "trotter_summary.json", std::move(summary));
  write_chart(ctx, "trotter_series.svg", "discretization error against the continuum limit", "t_f",
              "n_def", charts, true, true);
}

// ---------------------------------------------------------------------------
// anneal_opt: residual-energy curves per time step across disorder
// instances, with the optimal time step per instance.
// ---------------------------------------------------------------------------
void run_anneal_opt(const Context& ctx) {
  const auto graph = build_graph(ctx.config);
  const auto& cfg = ctx.config;

  ordered_json summary;
  auto& instances = summary["instances"] = ordered_json::array();

  for (std::size_t inst = 0; inst < cfg.coupling_seeds.size(); ++inst) {
    const auto couplings = build_couplings(ctx.config, graph, inst);
    const double e0 = brute_force_ground(graph, couplings).e0;

    std::map<double, std::vector<DepthPoint>> curves;
    if (cfg.noise) {
      const auto model = scaled(cfg.noise->base, cfg.noise->etas.at(0));
      curves = anneal_curves_noisy(graph, couplings, e0, cfg.dt_grid, cfg.steps, model,
                                   cfg.noise->n_traj, cfg.noise->shots_per_traj, cfg.seed,
                                   /*stream=*/inst + 1, ctx.workers);
    } else {
      curves = anneal_curves_statevector(graph, couplings, e0, cfg.dt_grid, cfg.steps, ctx.workers);
    }

    const std::string tag = std::to_string(cfg.coupling_seeds[inst]);
    std::vector<SeriesRow> rows;
    std::vector<ChartSeries> charts;
    for (const auto& [dt, points] : curves) {
      ChartSeries chart;
      chart.label = "dt=" + format_double(dt);
      for (const auto& p : points) {
        rows.push_back({p.n_steps * dt, p.n_steps, dt, "e_res", p.e_res, p.std_err});
        chart.points.emplace_back(static_cast<double>(p.n_steps), p.e_res);
      }
      charts.push_back(std::move(chart));
    }
    std::vector<std::pair<std::string, std::string>> extras = {{"coupling_seed", tag}};
    if (cfg.noise) extras.emplace_back("eta", format_double(cfg.noise->etas.at(0)));
    write_series_file(ctx, "anneal_seed_" + tag, rows, extras);
    write_chart(ctx, "anneal_seed_" + tag + ".svg", "residual energy vs depth (seed " + tag + ")",
                "n_steps", "E_res", charts, false, false);

    const auto best = optimal_time_step(curves);
    ordered_json entry;
    entry["coupling_seed"] = cfg.coupling_seeds[inst];
    entry["e0"] = e0;
    entry["dt_star"] = best.dt_star;
    auto& jcurves = entry["curves"] = ordered_json::array();
    for (const auto& c : best.curves) {
      ordered_json jc;
      jc["dt"] = c.dt;
      jc["argmin_steps"] = c.argmin_steps;
      jc["min_e_res"] = c.min_e_res;
      jc["std_err"] = c.std_err;
      jcurves.push_back(std::move(jc));
    }
    instances.push_back(std::move(entry));
  }
  write_json_file(ctx, "anneal_summary.json", std::move(summary));
}

// ---------------------------------------------------------------------------
// spectrum_scan: instantaneous spectrum slices and the minimum parity gap.
// ---------------------------------------------------------------------------
void run_spectrum_scan(const Context& ctx) {
  const auto graph = build_graph(ctx.config);
  const auto couplings = build_couplings(ctx.config, graph);
  const auto& cfg = ctx.config;

  const auto grid = uniform_grid(cfg.s_points);
  std::vector<SpectrumSlice> slices(grid.size());
  parallel_for(static_cast<int>(grid.size()), ctx.workers, [&](int i) {
    slices[static_cast<std::size_t>(i)] =
        spectrum_at(graph, couplings, grid[static_cast<std::size_t>(i)], cfg.k_levels);
  });

  ArtifactMeta meta = ctx.meta;
  if (cfg.coupling_kind == CouplingKind::disordered)
    meta.extras.emplace_back("coupling_seed", std::to_string(cfg.coupling_seeds.at(0)));
  std::ostringstream os;
  write_spectrum_csv(os, slices, meta);
  write_file_atomic(ctx.out / "spectrum.csv", os.str());

  ordered_json summary;
  summary["k_levels"] = cfg.k_levels;
  summary["s_points"] = cfg.s_points;
  if (cfg.min_gap) {
    const auto gap = min_parity_gap(graph, couplings, grid);
    summary["min_parity_gap"] = gap.gap;
    summary["s_star"] = gap.s_star;
  }
  write_json_file(ctx, "spectrum_summary.json", std::move(summary));

  std::vector<ChartSeries> charts(static_cast<std::size_t>(cfg.k_levels));
  for (int l = 0; l < cfg.k_levels; ++l) {
    charts[static_cast<std::size_t>(l)].label = "level " + std::to_string(l);
    for (const auto& slice : slices)
      charts[static_cast<std::size_t>(l)].points.emplace_back(
          slice.s, slice.energies[static_cast<std::size_t>(l)] - slice.energies[0]);
  }
  write_chart(ctx, "spectrum.svg", "spectrum relative to the ground state", "s", "E - E0", charts,
              false, false);
}

}  // namespace

void run_experiment(const ExperimentConfig& config, const RunOptions& options) {
  if (config.canonical_json.empty() || config.config_hash.empty())
    throw std::logic_error("config must be resolved before running");
  validate_resources(config);

  Context ctx{config,
              options.out_dir,
              options.workers > 0 ? options.workers
                                  : static_cast<int>(std::thread::hardware_concurrency()),
              options.format,
              {}};
  if (ctx.workers < 1) ctx.workers = 1;
  ctx.meta.config_hash = config.config_hash;
  ctx.meta.seed = config.seed;

  std::filesystem::create_directories(ctx.out);
  write_file_atomic(ctx.out / "config.resolved.json", config.canonical_json);
  {
    // lattice (and couplings, when the experiment has a single instance)
    const auto graph = build_graph(config);
    if (config.kind == ExperimentKind::anneal_opt) {
      for (std::size_t inst = 0; inst < config.coupling_seeds.size(); ++inst) {
        const auto couplings = build_couplings(config, graph, inst);
        write_file_atomic(
            ctx.out / ("graph_seed_" + std::to_string(config.coupling_seeds[inst]) + ".json"),
            graph_to_json(graph, &couplings));
      }
    } else {
      const auto couplings = build_couplings(config, graph);
      write_file_atomic(ctx.out / "graph.json", graph_to_json(graph, &couplings));
    }
  }

  switch (config.kind) {
    case ExperimentKind::kz_bench: run_kz_bench(ctx); break;
    case ExperimentKind::noise_sweep: run_noise_sweep(ctx); break;
    case ExperimentKind::trotter_convergence: run_trotter_convergence(ctx); break;
    case ExperimentKind::anneal_opt: run_anneal_opt(ctx); break;
    case ExperimentKind::spectrum_scan: run_spectrum_scan(ctx); break;
  }
}

}  // namespace quanneal::runner
