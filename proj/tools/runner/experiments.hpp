#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "quanneal/analysis.hpp"
#include "quanneal/lattice.hpp"
#include "quanneal/model.hpp"
#include "quanneal/noise.hpp"

namespace quanneal::runner {

/// Noise-free defect-density sweep over Trotter depths (one anneal per
/// entry of steps), parallelized over sweep points.
ScalingSeries defect_series_statevector(const SiteGraph& graph, const CouplingMap& couplings,
                                        double dt, std::span<const int> steps, int workers,
                                        const std::string& label);

struct NoisySeries {
  ScalingSeries raw;        // readout-affected estimates
  ScalingSeries mitigated;  // readout-inverted estimates
};

/// Trajectory sweep; the per-point seeds derive from (seed, stream, n_steps)
/// so results are independent of worker count.
NoisySeries defect_series_noisy(const SiteGraph& graph, const CouplingMap& couplings, double dt,
                                std::span<const int> steps, const NoiseModel& model, int n_traj,
                                int shots_per_traj, std::uint64_t seed, std::uint64_t stream,
                                int workers, const std::string& label);

/// Near-continuum reference curve at the given final times.
ScalingSeries defect_series_reference(const SiteGraph& graph, const CouplingMap& couplings,
                                      std::span<const double> t_fs, double fine_dt, int workers,
                                      const std::string& label);

/// Residual-energy curves E_res(depth) per time step, exact expectations.
std::map<double, std::vector<DepthPoint>> anneal_curves_statevector(
    const SiteGraph& graph, const CouplingMap& couplings, double e0, std::span<const double> dts,
    std::span<const int> steps, int workers);

/// Same with trajectory noise; readout-mitigated energies.
std::map<double, std::vector<DepthPoint>> anneal_curves_noisy(
    const SiteGraph& graph, const CouplingMap& couplings, double e0, std::span<const double> dts,
    std::span<const int> steps, const NoiseModel& model, int n_traj, int shots_per_traj,
    std::uint64_t seed, std::uint64_t stream, int workers);

/// First t_f whose relative deviation from the reference series exceeds
/// delta; -1 when the curve never diverges within the range.
double divergence_time(const ScalingSeries& noisy, const ScalingSeries& reference, double delta);

}  // namespace quanneal::runner
