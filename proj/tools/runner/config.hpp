#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "quanneal/analysis.hpp"
#include "quanneal/lattice.hpp"
#include "quanneal/noise.hpp"

namespace quanneal::runner {

/// Invalid or unknown configuration input; carries one message per problem
/// so sweep definitions fail fast and completely.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> messages)
      : std::runtime_error(join(messages)), messages_(std::move(messages)) {}
  const std::vector<std::string>& messages() const { return messages_; }

 private:
  static std::string join(const std::vector<std::string>& msgs);
  std::vector<std::string> messages_;
};

enum class ExperimentKind { kz_bench, noise_sweep, trotter_convergence, anneal_opt, spectrum_scan };

std::string_view experiment_name(ExperimentKind kind);
ExperimentKind experiment_from_name(std::string_view name);

struct NoiseSpec {
  NoiseModel base;
  std::vector<double> etas;  // one entry unless the experiment sweeps eta
  int n_traj = 0;
  int shots_per_traj = 0;
};

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::kz_bench;
  std::uint64_t seed = 0;
  std::string out_dir;  // may be empty when --out is given on the command line

  LatticeSpec lattice;
  CouplingKind coupling_kind = CouplingKind::uniform;
  double coupling_j = 1.0;
  std::vector<std::uint64_t> coupling_seeds;  // disordered instances

  // kz_bench / noise_sweep / anneal_opt
  double dt = 0.5;
  std::vector<int> steps;
  std::optional<NoiseSpec> noise;

  // kz_bench analysis
  double reference_exponent = -0.5;
  double delta = 0.2;
  int calib_points = 3;
  FitWindow fit_window{2.0, 10.0};

  // noise_sweep
  double divergence_delta = 0.2;

  // trotter_convergence / anneal_opt
  std::vector<double> dt_grid;
  std::vector<double> t_f_grid;
  double fine_dt = 0.01;

  // spectrum_scan
  int s_points = 101;
  int k_levels = 6;
  bool min_gap = true;

  // filled by resolve()
  std::string canonical_json;
  std::string config_hash;
};

/// Parses and validates a config document for the given experiment. Unknown
/// keys, missing keys, and type mismatches are collected into a ConfigError.
ExperimentConfig parse_config(const std::string& text, ExperimentKind kind);

/// Materializes defaults into the canonical resolved document and hashes it.
/// Call after any command-line overrides.
void resolve(ExperimentConfig& config);

/// Size checks (statevector width, exhaustive-search width, spectrum width)
/// that must fail before any long computation starts.
void validate_resources(const ExperimentConfig& config);

SiteGraph build_graph(const ExperimentConfig& config);
CouplingMap build_couplings(const ExperimentConfig& config, const SiteGraph& graph,
                            std::size_t instance = 0);

}  // namespace quanneal::runner
