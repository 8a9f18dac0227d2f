#include "quanneal/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <ostream>
#include <stdexcept>

#include "quanneal/errors.hpp"

namespace quanneal {

namespace {

void check_site(int site, int n) {
  if (site < 0 || site >= n) throw std::invalid_argument("site index out of range");
}

}  // namespace

std::string to_bitstring(std::uint64_t index, int n_sites) {
  std::string s(static_cast<std::size_t>(n_sites), '0');
  for (int k = 0; k < n_sites; ++k) {
    if ((index >> k) & 1u) s[static_cast<std::size_t>(k)] = '1';
  }
  return s;
}

PureState::PureState(int n_sites) : n_(n_sites) {
  if (n_sites < 1) throw std::invalid_argument("state needs at least one site");
  if (n_sites > max_sites)
    throw ResourceLimitError("statevector limited to " + std::to_string(max_sites) + " sites");
  a_.assign(std::uint64_t{1} << n_, {0.0, 0.0});
  a_[0] = {1.0, 0.0};
}

PureState PureState::plus_state(int n_sites) {
  PureState st(n_sites);
  const double amp = std::pow(2.0, -0.5 * n_sites);
  std::fill(st.a_.begin(), st.a_.end(), std::complex<double>{amp, 0.0});
  return st;
}

void PureState::apply_rx(int site, double phi) {
  check_site(site, n_);
  const double c = std::cos(0.5 * phi);
  const double s = std::sin(0.5 * phi);
  const std::uint64_t bit = std::uint64_t{1} << site;
  const std::uint64_t d = dim();
  for (std::uint64_t base = 0; base < d; base += 2 * bit) {
    for (std::uint64_t off = 0; off < bit; ++off) {
      const std::uint64_t k0 = base + off;
      const std::uint64_t k1 = k0 + bit;
      const std::complex<double> a0 = a_[k0];
      const std::complex<double> a1 = a_[k1];
      // exp(-i*phi*X/2) = [[c, -i s], [-i s, c]]
      a_[k0] = {c * a0.real() + s * a1.imag(), c * a0.imag() - s * a1.real()};
      a_[k1] = {c * a1.real() + s * a0.imag(), c * a1.imag() - s * a0.real()};
    }
  }
}

void PureState::apply_rx_all(double phi) {
  for (int q = 0; q < n_; ++q) apply_rx(q, phi);
}

void PureState::apply_rzz(int i, int j, double theta) {
  check_site(i, n_);
  check_site(j, n_);
  if (i == j) throw std::invalid_argument("rzz needs two distinct sites");
  const std::complex<double> equal{std::cos(0.5 * theta), -std::sin(0.5 * theta)};
  const std::complex<double> differ = std::conj(equal);
  const std::uint64_t d = dim();
  for (std::uint64_t k = 0; k < d; ++k) {
    const bool diff = ((k >> i) ^ (k >> j)) & 1u;
    a_[k] *= diff ? differ : equal;
  }
}

void PureState::apply_rzz_layer(std::span<const std::pair<int, int>> edges,
                                std::span<const double> thetas) {
  if (edges.size() != thetas.size()) throw std::invalid_argument("one angle per edge required");
  const std::size_t m = edges.size();
  if (m == 0) return;
  if (m == 1) {
    apply_rzz(edges[0].first, edges[0].second, thetas[0]);
    return;
  }
  struct Term {
    std::uint64_t mi;
    std::uint64_t mj;
    double half;
  };
  std::vector<Term> terms(m);
  for (std::size_t e = 0; e < m; ++e) {
    check_site(edges[e].first, n_);
    check_site(edges[e].second, n_);
    terms[e] = {std::uint64_t{1} << edges[e].first, std::uint64_t{1} << edges[e].second,
                0.5 * thetas[e]};
  }
  const std::uint64_t d = dim();
  for (std::uint64_t k = 0; k < d; ++k) {
    double ang = 0.0;
    for (const Term& t : terms) {
      const bool diff = ((k & t.mi) != 0) != ((k & t.mj) != 0);
      ang += diff ? t.half : -t.half;
    }
    a_[k] *= std::complex<double>{std::cos(ang), std::sin(ang)};
  }
}

void PureState::apply_pauli(int site, int pauli) {
  check_site(site, n_);
  const std::uint64_t bit = std::uint64_t{1} << site;
  const std::uint64_t d = dim();
  switch (pauli) {
    case 1:  // X
      for (std::uint64_t base = 0; base < d; base += 2 * bit)
        for (std::uint64_t off = 0; off < bit; ++off)
          std::swap(a_[base + off], a_[base + off + bit]);
      return;
    case 2:  // Y = [[0, -i], [i, 0]]
      for (std::uint64_t base = 0; base < d; base += 2 * bit)
        for (std::uint64_t off = 0; off < bit; ++off) {
          const std::uint64_t k0 = base + off;
          const std::uint64_t k1 = k0 + bit;
          const std::complex<double> a0 = a_[k0];
          const std::complex<double> a1 = a_[k1];
          a_[k0] = {a1.imag(), -a1.real()};
          a_[k1] = {-a0.imag(), a0.real()};
        }
      return;
    case 3:  // Z
      for (std::uint64_t k = 0; k < d; ++k)
        if (k & bit) a_[k] = -a_[k];
      return;
    default:
      throw std::invalid_argument("pauli must be 1 (X), 2 (Y) or 3 (Z)");
  }
}

double PureState::norm() const {
  double s = 0.0;
  for (const auto& a : a_) s += std::norm(a);
  return std::sqrt(s);
}

void PureState::normalize() {
  const double nrm = norm();
  if (nrm == 0.0) throw std::runtime_error("cannot normalize a zero state");
  const double inv = 1.0 / nrm;
  for (auto& a : a_) a *= inv;
}

double PureState::expect_x(int site) const {
  check_site(site, n_);
  const std::uint64_t bit = std::uint64_t{1} << site;
  const std::uint64_t d = dim();
  double s = 0.0;
  for (std::uint64_t base = 0; base < d; base += 2 * bit)
    for (std::uint64_t off = 0; off < bit; ++off) {
      const std::uint64_t k0 = base + off;
      s += 2.0 * (a_[k0].real() * a_[k0 + bit].real() + a_[k0].imag() * a_[k0 + bit].imag());
    }
  return s;
}

double PureState::expect_zz(int i, int j) const {
  check_site(i, n_);
  check_site(j, n_);
  const std::uint64_t d = dim();
  double s = 0.0;
  for (std::uint64_t k = 0; k < d; ++k) {
    const bool diff = ((k >> i) ^ (k >> j)) & 1u;
    s += diff ? -std::norm(a_[k]) : std::norm(a_[k]);
  }
  return s;
}

double PureState::population(int site) const {
  check_site(site, n_);
  const std::uint64_t bit = std::uint64_t{1} << site;
  double s = 0.0;
  const std::uint64_t d = dim();
  for (std::uint64_t k = 0; k < d; ++k)
    if (k & bit) s += std::norm(a_[k]);
  return s;
}

void PureState::scale_bit(int site, double f0, double f1) {
  check_site(site, n_);
  const std::uint64_t bit = std::uint64_t{1} << site;
  const std::uint64_t d = dim();
  for (std::uint64_t k = 0; k < d; ++k) a_[k] *= (k & bit) ? f1 : f0;
}

double PureState::apply_projector(int site, int value) {
  check_site(site, n_);
  if (value != 0 && value != 1) throw std::invalid_argument("projector value must be 0 or 1");
  const std::uint64_t bit = std::uint64_t{1} << site;
  const std::uint64_t d = dim();
  double weight = 0.0;
  for (std::uint64_t k = 0; k < d; ++k) {
    const bool keep = ((k & bit) != 0) == (value == 1);
    if (keep) {
      weight += std::norm(a_[k]);
    } else {
      a_[k] = 0.0;
    }
  }
  if (weight <= 0.0) throw std::runtime_error("projection onto zero-weight outcome");
  const double inv = 1.0 / std::sqrt(weight);
  for (auto& a : a_) a *= inv;
  return weight;
}

void PureState::apply_sigma_minus(int site) {
  check_site(site, n_);
  const std::uint64_t bit = std::uint64_t{1} << site;
  const std::uint64_t d = dim();
  double weight = 0.0;
  for (std::uint64_t base = 0; base < d; base += 2 * bit)
    for (std::uint64_t off = 0; off < bit; ++off) {
      const std::uint64_t k0 = base + off;
      const std::uint64_t k1 = k0 + bit;
      weight += std::norm(a_[k1]);
      a_[k0] = a_[k1];
      a_[k1] = 0.0;
    }
  if (weight <= 0.0) throw std::runtime_error("sigma_minus on an unpopulated site");
  const double inv = 1.0 / std::sqrt(weight);
  for (auto& a : a_) a *= inv;
}

Counts PureState::sample(std::uint64_t shots, SplitMix64& rng) const {
  const std::uint64_t d = dim();
  std::vector<double> cum(d);
  double run = 0.0;
  for (std::uint64_t k = 0; k < d; ++k) {
    run += std::norm(a_[k]);
    cum[k] = run;
  }
  const double total = run;
  Counts counts;
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double u = rng.next_unit() * total;
    const auto it = std::upper_bound(cum.begin(), cum.end(), u);
    const std::uint64_t k = it == cum.end() ? d - 1 : static_cast<std::uint64_t>(it - cum.begin());
    ++counts[k];
  }
  return counts;
}

void PureState::dump_binary(std::ostream& os) const {
  const std::uint64_t n = static_cast<std::uint64_t>(n_);
  os.write(reinterpret_cast<const char*>(&n), sizeof(n));
  for (const auto& a : a_) {
    const double re = a.real();
    const double im = a.imag();
    os.write(reinterpret_cast<const char*>(&re), sizeof(re));
    os.write(reinterpret_cast<const char*>(&im), sizeof(im));
  }
}

Counts sample_bitstrings(const PureState& state, std::uint64_t shots, std::uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("at least one shot required");
  SplitMix64 rng(seed);
  return state.sample(shots, rng);
}

PureState run_trotter_anneal(const TrotterPlan& plan, PureState initial) {
  if (initial.n_sites() != plan.graph.n_sites)
    throw std::invalid_argument("plan and state site counts must match");
  const auto layers = plan.graph.color_layers();
  std::vector<std::vector<std::pair<int, int>>> layer_edges(layers.size());
  for (std::size_t c = 0; c < layers.size(); ++c)
    for (int e : layers[c]) layer_edges[c].push_back(plan.graph.edges[e]);

  std::vector<double> thetas;
  for (int m = 0; m < plan.n_steps; ++m) {
    initial.apply_rx_all(plan.x_angles[m]);
    for (std::size_t c = 0; c < layers.size(); ++c) {
      thetas.clear();
      for (int e : layers[c]) thetas.push_back(plan.zz_angles[m][e]);
      initial.apply_rzz_layer(layer_edges[c], thetas);
    }
  }
  return initial;
}

PureState run_trotter_anneal(const TrotterPlan& plan) {
  return run_trotter_anneal(plan, PureState::plus_state(plan.graph.n_sites));
}

PureState run_reference_anneal(const SiteGraph& graph, const CouplingMap& couplings,
                               const AnnealSchedule& schedule, double t_f, double fine_dt) {
  if (t_f <= 0.0) throw std::invalid_argument("t_f must be positive");
  if (!(fine_dt > 0.0 && fine_dt <= 0.01))
    throw std::invalid_argument("reference evolution requires 0 < fine_dt <= 0.01");
  if (couplings.values.size() != graph.edges.size())
    throw std::invalid_argument("couplings must be index-aligned with graph edges");

  const int n = std::max<int>(1, static_cast<int>(std::llround(t_f / fine_dt)));
  const double dt = t_f / n;
  const auto layers = graph.color_layers();
  std::vector<std::vector<std::pair<int, int>>> layer_edges(layers.size());
  for (std::size_t c = 0; c < layers.size(); ++c)
    for (int e : layers[c]) layer_edges[c].push_back(graph.edges[e]);

  PureState state = PureState::plus_state(graph.n_sites);
  std::vector<double> a_mid(n), b_mid(n);
  for (int m = 0; m < n; ++m) {
    const double s = (m + 0.5) / n;
    std::tie(a_mid[m], b_mid[m]) = schedule.at(s);
  }

  std::vector<double> thetas;
  // Strang steps X(dt/2) ZZ(dt) X(dt/2); adjacent X half-steps commute and
  // are merged.
  state.apply_rx_all(-a_mid[0] * dt);
  for (int m = 0; m < n; ++m) {
    for (std::size_t c = 0; c < layers.size(); ++c) {
      thetas.clear();
      for (int e : layers[c]) thetas.push_back(-2.0 * couplings.values[e] * b_mid[m] * dt);
      state.apply_rzz_layer(layer_edges[c], thetas);
    }
    const double phi = (m + 1 < n) ? -(a_mid[m] + a_mid[m + 1]) * dt : -a_mid[m] * dt;
    state.apply_rx_all(phi);
  }
  return state;
}

}  // namespace quanneal
