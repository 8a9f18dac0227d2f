#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "quanneal/model.hpp"
#include "quanneal/observables.hpp"
#include "quanneal/statevector.hpp"

namespace quanneal {

/// Device-averaged noise parameters. Times in microseconds, durations in
/// nanoseconds, error entries are probabilities. eta is the global scale
/// factor the model was derived with (1 = unscaled averages).
struct NoiseModel {
  double t1_us = 0.0;
  double t2_us = 0.0;
  double e_1q = 0.0;
  double e_2q = 0.0;
  double e_ro = 0.0;
  double dur_1q_ns = 50.0;
  double dur_2q_ns = 533.0;
  double dur_ro_ns = 1200.0;
  double eta = 1.0;

  /// Physicality checks: t2 <= 2*t1, probabilities in [0, 1], positive
  /// durations. Throws std::invalid_argument.
  void validate() const;
};

/// Average calibration values of the 127-qubit reference device, eta = 1.
/// The two-qubit duration is the device's median gate time; the one-qubit
/// and readout durations are artifact defaults (the calibration source does
/// not quote them) and can be overridden field-wise.
NoiseModel default_sherbrooke_model();

/// Rescales a model: T1, T2 divided by eta, error probabilities multiplied
/// by eta (clamped to 1), durations unchanged.
NoiseModel scaled(const NoiseModel& base, double eta);

std::string noise_model_to_json(const NoiseModel& model);
NoiseModel noise_model_from_json(const std::string& text);

/// Trajectory-averaged observables; std_err is the sample standard deviation
/// over trajectories divided by sqrt(n_traj) (shot noise therefore included).
/// Mitigated entries invert the readout channel per Z-weight; they are NaN
/// when e_ro >= 0.5.
struct TrajectoryResult {
  int n_traj = 0;
  int shots_per_traj = 0;
  MeanErr n_def;
  MeanErr n_def_mitigated;
  MeanErr energy;
  MeanErr energy_mitigated;
  Counts counts;  // aggregated over trajectories when requested
};

struct NoisyRunOptions {
  int n_traj = 1;
  int shots_per_traj = 1;
  std::uint64_t seed = 0;
  bool collect_counts = false;
  int n_threads = 1;
};

/// Monte Carlo wavefunction simulation of the digitized anneal.
///
/// Each trajectory applies, layer by layer: the ideal unitary, a stochastic
/// Pauli error per gate (probability e_1q / e_2q, uniform over the 3 or 15
/// non-identity Paulis on the gate support), then T1/T2 relaxation on every
/// site for the layer duration (gate time on busy sites, idle time on the
/// rest; the layered schedule makes the two equal). Measurement adds
/// relaxation for the readout duration, then an independent bit flip with
/// probability e_ro per site and shot.
TrajectoryResult run_noisy_anneal(const TrotterPlan& plan, const NoiseModel& model,
                                  const NoisyRunOptions& options);
TrajectoryResult run_noisy_anneal(const TrotterPlan& plan, const NoiseModel& model, int n_traj,
                                  int shots_per_traj, std::uint64_t seed);

/// Readout error channel on sampled counts: flips each measured bit
/// independently with probability e_ro.
Counts apply_readout_error(const Counts& counts, int n_sites, double e_ro, SplitMix64& rng);

/// Readout-mitigated expectation of a Z-type observable supported on the
/// given sites: the raw sample mean of prod(sigma_z) is rescaled by
/// (1 - 2*e_ro)^-k, the inverse of the symmetric tensored confusion matrix.
/// Requires e_ro < 0.5.
double mitigate_readout_expectation(const Counts& counts, std::span<const int> z_support,
                                    double e_ro);

namespace detail {

/// Relaxation over one duration. When t2 <= t1 the exact channel is a
/// probabilistic mixture {identity, Z flip, reset}; otherwise (physical up
/// to t2 = 2*t1) it is unraveled with first-order quantum jumps on
/// substeps.
struct ThermalParams {
  bool mixture = true;
  // mixture path
  double p_reset = 0.0;
  double p_z = 0.0;
  // jump path
  int n_sub = 0;
  double gamma1_dt = 0.0;    // amplitude-damping rate x substep
  double gamma_phi_dt = 0.0; // pure-dephasing rate x substep
};

ThermalParams thermal_params(const NoiseModel& model, double dur_ns);
void apply_thermal(PureState& state, int site, const ThermalParams& params, SplitMix64& rng);

}  // namespace detail

}  // namespace quanneal
