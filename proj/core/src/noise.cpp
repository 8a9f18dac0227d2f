#include "quanneal/noise.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

namespace quanneal {

void NoiseModel::validate() const {
  if (!(t1_us > 0.0) || !(t2_us > 0.0))
    throw std::invalid_argument("T1 and T2 must be positive");
  if (!(t2_us <= 2.0 * t1_us)) throw std::invalid_argument("unphysical model: T2 > 2*T1");
  for (double p : {e_1q, e_2q, e_ro}) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("error probabilities must lie in [0, 1]");
  }
  if (!(dur_1q_ns >= 0.0 && dur_2q_ns >= 0.0 && dur_ro_ns >= 0.0))
    throw std::invalid_argument("durations must be non-negative");
  if (!(eta > 0.0)) throw std::invalid_argument("eta must be positive");
}

NoiseModel default_sherbrooke_model() {
  NoiseModel m;
  m.t1_us = 266.37;
  m.t2_us = 178.71;
  m.e_1q = 1.25e-3;
  m.e_2q = 1.10e-2;
  m.e_ro = 2.41e-2;
  m.dur_1q_ns = 50.0;
  m.dur_2q_ns = 533.0;
  m.dur_ro_ns = 1200.0;
  m.eta = 1.0;
  return m;
}

NoiseModel scaled(const NoiseModel& base, double eta) {
  if (!(eta > 0.0)) throw std::invalid_argument("eta must be positive");
  NoiseModel m = base;
  m.t1_us = base.t1_us / eta;
  m.t2_us = base.t2_us / eta;
  m.e_1q = std::min(1.0, base.e_1q * eta);
  m.e_2q = std::min(1.0, base.e_2q * eta);
  m.e_ro = std::min(1.0, base.e_ro * eta);
  m.eta = base.eta * eta;
  return m;
}

std::string noise_model_to_json(const NoiseModel& model) {
  nlohmann::ordered_json doc;
  doc["t1"] = model.t1_us;
  doc["t2"] = model.t2_us;
  doc["e_1q"] = model.e_1q;
  doc["e_2q"] = model.e_2q;
  doc["e_ro"] = model.e_ro;
  doc["dur_1q"] = model.dur_1q_ns;
  doc["dur_2q"] = model.dur_2q_ns;
  doc["dur_ro"] = model.dur_ro_ns;
  doc["eta"] = model.eta;
  return doc.dump(2) + "\n";
}

NoiseModel noise_model_from_json(const std::string& text) {
  const auto doc = nlohmann::json::parse(text);
  NoiseModel m;
  m.t1_us = doc.at("t1").get<double>();
  m.t2_us = doc.at("t2").get<double>();
  m.e_1q = doc.at("e_1q").get<double>();
  m.e_2q = doc.at("e_2q").get<double>();
  m.e_ro = doc.at("e_ro").get<double>();
  m.dur_1q_ns = doc.at("dur_1q").get<double>();
  m.dur_2q_ns = doc.at("dur_2q").get<double>();
  m.dur_ro_ns = doc.at("dur_ro").get<double>();
  m.eta = doc.at("eta").get<double>();
  m.validate();
  return m;
}

namespace detail {

ThermalParams thermal_params(const NoiseModel& model, double dur_ns) {
  const double gamma1 = 1.0 / (model.t1_us * 1e3);  // per ns
  const double rate2 = 1.0 / (model.t2_us * 1e3);
  const double gamma_phi = rate2 - 0.5 * gamma1;  // pure dephasing, >= 0 iff t2 <= 2 t1

  ThermalParams p;
  if (dur_ns <= 0.0) {
    p.mixture = true;
    return p;
  }
  if (model.t2_us <= model.t1_us) {
    p.mixture = true;
    const double decay1 = std::exp(-gamma1 * dur_ns);
    const double decay2 = std::exp(-rate2 * dur_ns);
    p.p_reset = 1.0 - decay1;
    p.p_z = 0.5 * (decay1 - decay2);
    return p;
  }
  p.mixture = false;
  const double total_rate = gamma1 + 0.5 * gamma_phi;
  p.n_sub = std::max(1, static_cast<int>(std::ceil(total_rate * dur_ns / 0.02)));
  const double dt = dur_ns / p.n_sub;
  p.gamma1_dt = gamma1 * dt;
  p.gamma_phi_dt = gamma_phi * dt;
  return p;
}

void apply_thermal(PureState& state, int site, const ThermalParams& params, SplitMix64& rng) {
  if (params.mixture) {
    if (params.p_reset <= 0.0 && params.p_z <= 0.0) return;
    const double u = rng.next_unit();
    if (u < params.p_reset) {
      // Reset channel, unraveled by the Born weights of its two Kraus
      // branches |0><0| and |0><1|.
      const double p1 = state.population(site);
      if (rng.next_unit() < p1) {
        state.apply_sigma_minus(site);
      } else {
        state.apply_projector(site, 0);
      }
    } else if (u < params.p_reset + params.p_z) {
      state.apply_pauli(site, 3);
    }
    return;
  }
  for (int sub = 0; sub < params.n_sub; ++sub) {
    const double p1 = params.gamma1_dt * state.population(site);
    const double p_phi = 0.5 * params.gamma_phi_dt;
    const double u = rng.next_unit();
    if (u < p1) {
      state.apply_sigma_minus(site);
    } else if (u < p1 + p_phi) {
      state.apply_pauli(site, 3);
    } else {
      state.scale_bit(site, 1.0, std::exp(-0.5 * params.gamma1_dt));
      state.normalize();
    }
  }
}

}  // namespace detail

namespace {

void sample_pauli_error_1q(PureState& state, int site, double e, SplitMix64& rng) {
  if (e <= 0.0) {
    return;
  }
  if (rng.next_unit() < e) {
    state.apply_pauli(site, 1 + static_cast<int>(rng.next_below(3)));
  }
}

void sample_pauli_error_2q(PureState& state, int i, int j, double e, SplitMix64& rng) {
  if (e <= 0.0) {
    return;
  }
  if (rng.next_unit() < e) {
    const int p = 1 + static_cast<int>(rng.next_below(15));
    const int pi = p >> 2;
    const int pj = p & 3;
    if (pi != 0) state.apply_pauli(i, pi);
    if (pj != 0) state.apply_pauli(j, pj);
  }
}

struct TrajectoryEstimates {
  double n_def_raw = 0.0;
  double n_def_mit = 0.0;
  double energy_raw = 0.0;
  double energy_mit = 0.0;
};

MeanErr reduce(const std::vector<double>& values) {
  const std::size_t n = values.size();
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(n);
  if (n < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / static_cast<double>(n - 1) / static_cast<double>(n))};
}

}  // namespace

TrajectoryResult run_noisy_anneal(const TrotterPlan& plan, const NoiseModel& model,
                                  const NoisyRunOptions& options) {
  model.validate();
  if (options.n_traj < 1) throw std::invalid_argument("n_traj must be at least 1");
  if (options.shots_per_traj < 1) throw std::invalid_argument("shots_per_traj must be at least 1");

  const int n = plan.graph.n_sites;
  const auto layers = plan.graph.color_layers();
  std::vector<std::vector<std::pair<int, int>>> layer_edges(layers.size());
  for (std::size_t c = 0; c < layers.size(); ++c)
    for (int e : layers[c]) layer_edges[c].push_back(plan.graph.edges[e]);

  const auto th_1q = detail::thermal_params(model, model.dur_1q_ns);
  const auto th_2q = detail::thermal_params(model, model.dur_2q_ns);
  const auto th_ro = detail::thermal_params(model, model.dur_ro_ns);

  const double mit_factor = 1.0 - 2.0 * model.e_ro;
  const bool mitigable = mit_factor > 0.0;
  const SplitMix64 root(options.seed);

  std::vector<TrajectoryEstimates> est(options.n_traj);
  std::vector<Counts> traj_counts(options.collect_counts ? options.n_traj : 0);

  auto run_one = [&](int traj) {
    SplitMix64 rng = root.derive(static_cast<std::uint64_t>(traj));
    PureState state = PureState::plus_state(n);
    std::vector<double> thetas;
    for (int m = 0; m < plan.n_steps; ++m) {
      state.apply_rx_all(plan.x_angles[m]);
      for (int q = 0; q < n; ++q) sample_pauli_error_1q(state, q, model.e_1q, rng);
      for (int q = 0; q < n; ++q) detail::apply_thermal(state, q, th_1q, rng);
      for (std::size_t c = 0; c < layers.size(); ++c) {
        thetas.clear();
        for (int e : layers[c]) thetas.push_back(plan.zz_angles[m][e]);
        state.apply_rzz_layer(layer_edges[c], thetas);
        for (const auto& [i, j] : layer_edges[c])
          sample_pauli_error_2q(state, i, j, model.e_2q, rng);
        for (int q = 0; q < n; ++q) detail::apply_thermal(state, q, th_2q, rng);
      }
    }
    for (int q = 0; q < n; ++q) detail::apply_thermal(state, q, th_ro, rng);

    // Measure: Born samples, then the readout flip channel per bit.
    const Counts raw = state.sample(static_cast<std::uint64_t>(options.shots_per_traj), rng);
    const Counts flipped = apply_readout_error(raw, n, model.e_ro, rng);

    // Per-edge <zz> over this trajectory's shots.
    const auto n_e = plan.graph.edges.size();
    std::vector<double> zz(n_e, 0.0);
    double energy = 0.0;
    for (const auto& [bits, c] : flipped) {
      for (std::size_t e = 0; e < n_e; ++e) {
        const auto [i, j] = plan.graph.edges[e];
        const bool diff = ((bits >> i) ^ (bits >> j)) & 1u;
        zz[e] += static_cast<double>(c) * (diff ? -1.0 : 1.0);
      }
    }
    const double inv_shots = 1.0 / static_cast<double>(options.shots_per_traj);
    double zz_mean = 0.0;
    double zz_mean_mit = 0.0;
    double energy_mit = 0.0;
    for (std::size_t e = 0; e < n_e; ++e) {
      zz[e] *= inv_shots;
      zz_mean += zz[e];
      energy -= plan.couplings.values[e] * zz[e];
      if (mitigable) {
        const double corrected = zz[e] / (mit_factor * mit_factor);
        zz_mean_mit += corrected;
        energy_mit -= plan.couplings.values[e] * corrected;
      }
    }
    est[traj].n_def_raw = 0.5 * (1.0 - zz_mean / static_cast<double>(n_e));
    est[traj].energy_raw = energy;
    if (mitigable) {
      est[traj].n_def_mit = 0.5 * (1.0 - zz_mean_mit / static_cast<double>(n_e));
      est[traj].energy_mit = energy_mit;
    } else {
      est[traj].n_def_mit = std::numeric_limits<double>::quiet_NaN();
      est[traj].energy_mit = std::numeric_limits<double>::quiet_NaN();
    }
    if (options.collect_counts) traj_counts[traj] = std::move(flipped);
  };

  const int threads = std::max(1, options.n_threads);
  if (threads == 1) {
    for (int t = 0; t < options.n_traj; ++t) run_one(t);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        for (int t = w; t < options.n_traj; t += threads) run_one(t);
      });
    }
    for (auto& th : pool) th.join();
  }

  TrajectoryResult result;
  result.n_traj = options.n_traj;
  result.shots_per_traj = options.shots_per_traj;
  std::vector<double> buf(options.n_traj);
  for (int t = 0; t < options.n_traj; ++t) buf[t] = est[t].n_def_raw;
  result.n_def = reduce(buf);
  for (int t = 0; t < options.n_traj; ++t) buf[t] = est[t].n_def_mit;
  result.n_def_mitigated = reduce(buf);
  for (int t = 0; t < options.n_traj; ++t) buf[t] = est[t].energy_raw;
  result.energy = reduce(buf);
  for (int t = 0; t < options.n_traj; ++t) buf[t] = est[t].energy_mit;
  result.energy_mitigated = reduce(buf);
  if (options.collect_counts) {
    for (const auto& counts : traj_counts)
      for (const auto& [bits, c] : counts) result.counts[bits] += c;
  }
  return result;
}

TrajectoryResult run_noisy_anneal(const TrotterPlan& plan, const NoiseModel& model, int n_traj,
                                  int shots_per_traj, std::uint64_t seed) {
  NoisyRunOptions opts;
  opts.n_traj = n_traj;
  opts.shots_per_traj = shots_per_traj;
  opts.seed = seed;
  return run_noisy_anneal(plan, model, opts);
}

Counts apply_readout_error(const Counts& counts, int n_sites, double e_ro, SplitMix64& rng) {
  if (!(e_ro >= 0.0 && e_ro <= 1.0)) throw std::invalid_argument("e_ro must lie in [0, 1]");
  if (e_ro == 0.0) return counts;
  Counts out;
  for (const auto& [bits, c] : counts) {
    for (std::uint64_t shot = 0; shot < c; ++shot) {
      std::uint64_t b = bits;
      for (int q = 0; q < n_sites; ++q)
        if (rng.next_unit() < e_ro) b ^= std::uint64_t{1} << q;
      ++out[b];
    }
  }
  return out;
}

double mitigate_readout_expectation(const Counts& counts, std::span<const int> z_support,
                                    double e_ro) {
  if (!(e_ro >= 0.0 && e_ro < 0.5))
    throw std::invalid_argument("readout mitigation requires e_ro < 0.5");
  std::uint64_t shots = 0;
  double sum = 0.0;
  for (const auto& [bits, c] : counts) {
    int ones = 0;
    for (int q : z_support) ones += static_cast<int>((bits >> q) & 1u);
    sum += static_cast<double>(c) * ((ones & 1) ? -1.0 : 1.0);
    shots += c;
  }
  if (shots == 0) throw std::invalid_argument("counts must contain at least one shot");
  const double raw = sum / static_cast<double>(shots);
  return raw / std::pow(1.0 - 2.0 * e_ro, static_cast<double>(z_support.size()));
}

}  // namespace quanneal
