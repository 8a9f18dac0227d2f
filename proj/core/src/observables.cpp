#include "quanneal/observables.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace quanneal {

namespace {

std::uint64_t total_shots(const Counts& counts) {
  std::uint64_t s = 0;
  for (const auto& [bits, c] : counts) s += c;
  if (s == 0) throw std::invalid_argument("counts must contain at least one shot");
  return s;
}

MeanErr weighted_mean_err(const Counts& counts, const std::vector<double>& per_string,
                          std::uint64_t shots) {
  double mean = 0.0;
  std::size_t idx = 0;
  for (const auto& [bits, c] : counts) mean += per_string[idx++] * static_cast<double>(c);
  mean /= static_cast<double>(shots);
  if (shots < 2) return {mean, 0.0};
  double ss = 0.0;
  idx = 0;
  for (const auto& [bits, c] : counts) {
    const double d = per_string[idx++] - mean;
    ss += static_cast<double>(c) * d * d;
  }
  const double var = ss / static_cast<double>(shots - 1);
  return {mean, std::sqrt(var / static_cast<double>(shots))};
}

}  // namespace

double defect_density_state(const PureState& state, const SiteGraph& graph) {
  if (state.n_sites() != graph.n_sites)
    throw std::invalid_argument("state and graph site counts must match");
  if (graph.n_edges() == 0) throw std::invalid_argument("graph has no edges");
  double sum = 0.0;
  for (const auto& [i, j] : graph.edges) sum += 1.0 - state.expect_zz(i, j);
  return sum / (2.0 * graph.n_edges());
}

MeanErr defect_density_samples(const Counts& counts, const SiteGraph& graph) {
  const std::uint64_t shots = total_shots(counts);
  if (graph.n_edges() == 0) throw std::invalid_argument("graph has no edges");
  std::vector<double> fraction;
  fraction.reserve(counts.size());
  for (const auto& [bits, c] : counts) {
    int kinks = 0;
    for (const auto& [i, j] : graph.edges) kinks += static_cast<int>(((bits >> i) ^ (bits >> j)) & 1u);
    fraction.push_back(static_cast<double>(kinks) / graph.n_edges());
  }
  return weighted_mean_err(counts, fraction, shots);
}

std::vector<KinkCorrelation> kink_kink(const Counts& counts, const SiteGraph& graph, int r_max) {
  const auto order = chain_edge_order(graph);  // rejects non-chain geometries
  const int n_e = static_cast<int>(order.size());
  const bool periodic = graph.geometry == Geometry::periodic_chain;
  const int max_sep = periodic ? n_e - 1 : n_e - 1;
  if (r_max < 1 || r_max > max_sep)
    throw std::invalid_argument("r_max must lie in [1, n_edges - 1]");
  const std::uint64_t shots = total_shots(counts);

  // Kink indicator per chain-ordered edge, averaged over shots.
  const double inv_shots = 1.0 / static_cast<double>(shots);
  std::vector<std::vector<int>> kinks;  // per distinct bitstring
  kinks.reserve(counts.size());
  double n_def = 0.0;
  for (const auto& [bits, c] : counts) {
    std::vector<int> k(n_e);
    for (int pos = 0; pos < n_e; ++pos) {
      const auto [i, j] = graph.edges[order[pos]];
      k[pos] = static_cast<int>(((bits >> i) ^ (bits >> j)) & 1u);
      n_def += static_cast<double>(c) * k[pos];
    }
    kinks.push_back(std::move(k));
  }
  n_def *= inv_shots / n_e;
  if (n_def <= 0.0) throw std::domain_error("kink-kink correlator undefined at n_def = 0");

  std::vector<KinkCorrelation> result;
  result.reserve(r_max);
  const double n2 = n_def * n_def;
  for (int r = 1; r <= r_max; ++r) {
    const int pairs = periodic ? n_e : n_e - r;
    double acc = 0.0;
    std::size_t idx = 0;
    for (const auto& [bits, c] : counts) {
      const auto& k = kinks[idx++];
      int prod = 0;
      for (int i = 0; i < pairs; ++i) prod += k[i] * k[periodic ? (i + r) % n_e : i + r];
      acc += static_cast<double>(c) * prod;
    }
    const double corr = acc * inv_shots / pairs;
    result.push_back({r, (corr - n2) / n2, 1.0 / n_def});
  }
  return result;
}

double classical_energy(std::uint64_t bits, const SiteGraph& graph, const CouplingMap& couplings) {
  if (couplings.values.size() != graph.edges.size())
    throw std::invalid_argument("couplings must be index-aligned with graph edges");
  double e = 0.0;
  for (std::size_t idx = 0; idx < graph.edges.size(); ++idx) {
    const auto [i, j] = graph.edges[idx];
    const bool diff = ((bits >> i) ^ (bits >> j)) & 1u;
    e -= couplings.values[idx] * (diff ? -1.0 : 1.0);
  }
  return e;
}

double energy_expectation(const PureState& state, const SiteGraph& graph,
                          const CouplingMap& couplings) {
  if (couplings.values.size() != graph.edges.size())
    throw std::invalid_argument("couplings must be index-aligned with graph edges");
  double e = 0.0;
  for (std::size_t idx = 0; idx < graph.edges.size(); ++idx) {
    const auto [i, j] = graph.edges[idx];
    e -= couplings.values[idx] * state.expect_zz(i, j);
  }
  return e;
}

MeanErr residual_energy(const Counts& counts, const SiteGraph& graph,
                        const CouplingMap& couplings, double e0) {
  const std::uint64_t shots = total_shots(counts);
  std::vector<double> energy;
  energy.reserve(counts.size());
  for (const auto& [bits, c] : counts) energy.push_back(classical_energy(bits, graph, couplings));
  MeanErr res = weighted_mean_err(counts, energy, shots);
  res.mean -= e0;
  return res;
}

MeanErr residual_energy(const PureState& state, const SiteGraph& graph,
                        const CouplingMap& couplings, double e0) {
  return {energy_expectation(state, graph, couplings) - e0, 0.0};
}

}  // namespace quanneal
