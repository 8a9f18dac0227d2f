#pragma once

#include <cstdint>
#include <vector>

#include "quanneal/lattice.hpp"
#include "quanneal/statevector.hpp"

namespace quanneal {

struct MeanErr {
  double mean = 0.0;
  double std_err = 0.0;
};

struct DefectSeriesPoint {
  double t_f = 0.0;
  int n_steps = 0;
  double n_def = 0.0;
  double std_err = 0.0;
};

struct KinkCorrelation {
  int r = 0;        // edge separation
  double c_kk = 0.0;
  double xi = 0.0;  // 1/xi = n_def
};

/// Density of domain walls (1 / 2N_e) * sum_e (1 - <sigma_z sigma_z>).
double defect_density_state(const PureState& state, const SiteGraph& graph);

/// Per-shot kink fraction averaged over shots; std_err from the shot
/// variance.
MeanErr defect_density_samples(const Counts& counts, const SiteGraph& graph);

/// Kink-kink correlator C_r = (<K_i K_{i+r}> - n_def^2) / n_def^2 averaged
/// over all valid edge pairs at separation r, with the kink indicator
/// K_i in {0, 1}. Chains only; periodic chains wrap. Throws
/// std::domain_error when n_def = 0 (the normalization is undefined).
std::vector<KinkCorrelation> kink_kink(const Counts& counts, const SiteGraph& graph, int r_max);

/// Classical Ising energy -sum_e J_e s_i s_j with s = +1 for bit 0.
double classical_energy(std::uint64_t bits, const SiteGraph& graph, const CouplingMap& couplings);

/// <H_P> of a pure state, evaluated edge by edge.
double energy_expectation(const PureState& state, const SiteGraph& graph,
                          const CouplingMap& couplings);

/// E(t_f) - e0 from measurement samples (std_err from the shot variance).
MeanErr residual_energy(const Counts& counts, const SiteGraph& graph,
                        const CouplingMap& couplings, double e0);
/// E(t_f) - e0 from the exact state expectation (std_err = 0).
MeanErr residual_energy(const PureState& state, const SiteGraph& graph,
                        const CouplingMap& couplings, double e0);

}  // namespace quanneal
