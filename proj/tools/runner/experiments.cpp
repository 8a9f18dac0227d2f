#include "experiments.hpp"

#include <cmath>
#include <stdexcept>

#include "pool.hpp"
#include "quanneal/observables.hpp"
#include "quanneal/rng.hpp"
#include "quanneal/statevector.hpp"

namespace quanneal::runner {

ScalingSeries defect_series_statevector(const SiteGraph& graph, const CouplingMap& couplings,
                                        double dt, std::span<const int> steps, int workers,
                                        const std::string& label) {
  ScalingSeries series;
  series.dt = dt;
  series.n_sites = graph.n_sites;
  series.label = label;
  series.points.resize(steps.size());
  parallel_for(static_cast<int>(steps.size()), workers, [&](int i) {
    const int n_steps = steps[static_cast<std::size_t>(i)];
    const auto plan = build_trotter_plan(graph, couplings, {}, dt, n_steps);
    const auto state = run_trotter_anneal(plan);
    series.points[static_cast<std::size_t>(i)] = {n_steps * dt, n_steps,
                                                  defect_density_state(state, graph), 0.0};
  });
  return series;
}

NoisySeries defect_series_noisy(const SiteGraph& graph, const CouplingMap& couplings, double dt,
                                std::span<const int> steps, const NoiseModel& model, int n_traj,
                                int shots_per_traj, std::uint64_t seed, std::uint64_t stream,
                                int workers, const std::string& label) {
  NoisySeries out;
  for (ScalingSeries* s : {&out.raw, &out.mitigated}) {
    s->dt = dt;
    s->n_sites = graph.n_sites;
    s->label = label;
    s->points.resize(steps.size());
  }
  const SplitMix64 root(seed);
  parallel_for(static_cast<int>(steps.size()), workers, [&](int i) {
    const int n_steps = steps[static_cast<std::size_t>(i)];
    const auto plan = build_trotter_plan(graph, couplings, {}, dt, n_steps);
    NoisyRunOptions opts;
    opts.n_traj = n_traj;
    opts.shots_per_traj = shots_per_traj;
    opts.seed = root.derive(stream * 0x10000ULL + static_cast<std::uint64_t>(n_steps)).seed();
    const auto result = run_noisy_anneal(plan, model, opts);
    const double t_f = n_steps * dt;
    out.raw.points[static_cast<std::size_t>(i)] = {t_f, n_steps, result.n_def.mean,
                                                   result.n_def.std_err};
    out.mitigated.points[static_cast<std::size_t>(i)] = {t_f, n_steps, result.n_def_mitigated.mean,
                                                         result.n_def_mitigated.std_err};
  });
  return out;
}

ScalingSeries defect_series_reference(const SiteGraph& graph, const CouplingMap& couplings,
                                      std::span<const double> t_fs, double fine_dt, int workers,
                                      const std::string& label) {
  ScalingSeries series;
  series.dt = fine_dt;
  series.n_sites = graph.n_sites;
  series.label = label;
  series.points.resize(t_fs.size());
  parallel_for(static_cast<int>(t_fs.size()), workers, [&](int i) {
    const double t_f = t_fs[static_cast<std::size_t>(i)];
    const auto state = run_reference_anneal(graph, couplings, {}, t_f, fine_dt);
    const int n_steps = static_cast<int>(std::llround(t_f / fine_dt));
    series.points[static_cast<std::size_t>(i)] = {t_f, n_steps, defect_density_state(state, graph),
                                                  0.0};
  });
  return series;
}

std::map<double, std::vector<DepthPoint>> anneal_curves_statevector(
    const SiteGraph& graph, const CouplingMap& couplings, double e0, std::span<const double> dts,
    std::span<const int> steps, int workers) {
  const int n_dt = static_cast<int>(dts.size());
  const int n_depth = static_cast<int>(steps.size());
  std::vector<DepthPoint> flat(static_cast<std::size_t>(n_dt * n_depth));
  parallel_for(n_dt * n_depth, workers, [&](int idx) {
    const double dt = dts[static_cast<std::size_t>(idx / n_depth)];
    const int n_steps = steps[static_cast<std::size_t>(idx % n_depth)];
    const auto plan = build_trotter_plan(graph, couplings, {}, dt, n_steps);
    const auto state = run_trotter_anneal(plan);
    const auto res = residual_energy(state, graph, couplings, e0);
    flat[static_cast<std::size_t>(idx)] = {n_steps, res.mean, res.std_err};
  });
  std::map<double, std::vector<DepthPoint>> curves;
  for (int d = 0; d < n_dt; ++d) {
    auto& curve = curves[dts[static_cast<std::size_t>(d)]];
    curve.assign(flat.begin() + d * n_depth, flat.begin() + (d + 1) * n_depth);
  }
  return curves;
}

std::map<double, std::vector<DepthPoint>> anneal_curves_noisy(
    const SiteGraph& graph, const CouplingMap& couplings, double e0, std::span<const double> dts,
    std::span<const int> steps, const NoiseModel& model, int n_traj, int shots_per_traj,
    std::uint64_t seed, std::uint64_t stream, int workers) {
  const int n_dt = static_cast<int>(dts.size());
  const int n_depth = static_cast<int>(steps.size());
  std::vector<DepthPoint> flat(static_cast<std::size_t>(n_dt * n_depth));
  const SplitMix64 root(seed);
  parallel_for(n_dt * n_depth, workers, [&](int idx) {
    const int dt_idx = idx / n_depth;
    const double dt = dts[static_cast<std::size_t>(dt_idx)];
    const int n_steps = steps[static_cast<std::size_t>(idx % n_depth)];
    const auto plan = build_trotter_plan(graph, couplings, {}, dt, n_steps);
    NoisyRunOptions opts;
    opts.n_traj = n_traj;
    opts.shots_per_traj = shots_per_traj;
    opts.seed = root.derive(stream * 0x1000000ULL +
                            static_cast<std::uint64_t>(dt_idx) * 0x10000ULL +
                            static_cast<std::uint64_t>(n_steps))
                    .seed();
    const auto result = run_noisy_anneal(plan, model, opts);
    flat[static_cast<std::size_t>(idx)] = {n_steps, result.energy_mitigated.mean - e0,
                                           result.energy_mitigated.std_err};
  });
  std::map<double, std::vector<DepthPoint>> curves;
  for (int d = 0; d < n_dt; ++d) {
    auto& curve = curves[dts[static_cast<std::size_t>(d)]];
    curve.assign(flat.begin() + d * n_depth, flat.begin() + (d + 1) * n_depth);
  }
  return curves;
}

double divergence_time(const ScalingSeries& noisy, const ScalingSeries& reference, double delta) {
  if (noisy.points.size() != reference.points.size())
    throw std::invalid_argument("series must share their t_f grid");
  for (std::size_t i = 0; i < noisy.points.size(); ++i) {
    if (noisy.points[i].t_f != reference.points[i].t_f)
      throw std::invalid_argument("series must share their t_f grid");
    const double ref = reference.points[i].n_def;
    if (ref <= 0.0) continue;
    if (std::abs(noisy.points[i].n_def - ref) / ref > delta) return noisy.points[i].t_f;
  }
  return -1.0;
}

}  // namespace quanneal::runner
