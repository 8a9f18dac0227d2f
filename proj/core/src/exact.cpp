#include "quanneal/exact.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "quanneal/errors.hpp"

namespace quanneal {

namespace {

constexpr int kMaxBruteForceSites = 24;
constexpr int kMaxSpectrumSites = 14;

void check_couplings(const SiteGraph& graph, const CouplingMap& couplings) {
  if (couplings.values.size() != graph.edges.size())
    throw std::invalid_argument("couplings must be index-aligned with graph edges");
}

// Lowest k eigenvalues of H(s) restricted to one parity sector.
//
// In the sigma_x product basis (basis index bit = sigma_x eigenvalue, bit 0
// meaning +1) the mixer term is diagonal, -A * (N - 2*popcount), while each
// sigma_z sigma_z term flips the two bits of its edge with amplitude -B*J_e.
// Bit flips come in pairs, so the bit-count parity is conserved and H splits
// into two real symmetric blocks of dimension 2^(N-1). The parity eigenvalue
// of a sector state is (-1)^popcount.
std::vector<double> sector_eigenvalues(const SiteGraph& graph, const CouplingMap& couplings,
                                       double a, double b, int parity_bit, int k) {
  const int n = graph.n_sites;
  const std::uint64_t dim = std::uint64_t{1} << n;
  std::vector<std::uint64_t> basis;
  basis.reserve(dim / 2);
  std::vector<std::int32_t> pos(dim, -1);
  for (std::uint64_t x = 0; x < dim; ++x) {
    if ((std::popcount(x) & 1) == parity_bit) {
      pos[x] = static_cast<std::int32_t>(basis.size());
      basis.push_back(x);
    }
  }
  const auto sd = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(sd, sd);
  for (Eigen::Index r = 0; r < sd; ++r) {
    const std::uint64_t x = basis[static_cast<std::size_t>(r)];
    h(r, r) = -a * (n - 2 * std::popcount(x));
    for (std::size_t e = 0; e < graph.edges.size(); ++e) {
      const auto [i, j] = graph.edges[e];
      const std::uint64_t y = x ^ ((std::uint64_t{1} << i) | (std::uint64_t{1} << j));
      const Eigen::Index c = pos[y];
      if (c > r) {
        h(r, c) += -b * couplings.values[e];
        h(c, r) = h(r, c);
      }
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigensolver failed to converge");
  const int take = std::min<int>(k, static_cast<int>(sd));
  std::vector<double> out(solver.eigenvalues().data(), solver.eigenvalues().data() + take);
  return out;
}

struct SectorPair {
  std::vector<double> even;
  std::vector<double> odd;
};

SectorPair sector_spectra(const SiteGraph& graph, const CouplingMap& couplings, double s, int k,
                          const AnnealSchedule& schedule) {
  if (graph.n_sites > kMaxSpectrumSites)
    throw ResourceLimitError("dense spectrum limited to " + std::to_string(kMaxSpectrumSites) +
                             " sites");
  check_couplings(graph, couplings);
  const auto [a, b] = schedule.at(s);
  return {sector_eigenvalues(graph, couplings, a, b, 0, k),
          sector_eigenvalues(graph, couplings, a, b, 1, k)};
}

}  // namespace

GroundResult brute_force_ground(const SiteGraph& graph, const CouplingMap& couplings) {
  if (graph.n_sites > kMaxBruteForceSites)
    throw ResourceLimitError("exhaustive search limited to " +
                             std::to_string(kMaxBruteForceSites) + " sites");
  check_couplings(graph, couplings);

  const std::uint64_t dim = std::uint64_t{1} << graph.n_sites;
  const std::size_t n_e = graph.edges.size();
  std::vector<std::uint64_t> masks(n_e);
  for (std::size_t e = 0; e < n_e; ++e)
    masks[e] = (std::uint64_t{1} << graph.edges[e].first) |
               (std::uint64_t{1} << graph.edges[e].second);

  GroundResult best;
  best.e0 = std::numeric_limits<double>::infinity();
  for (std::uint64_t x = 0; x < dim; ++x) {
    double e = 0.0;
    for (std::size_t k = 0; k < n_e; ++k) {
      // aligned bits contribute -J, anti-aligned +J
      e -= couplings.values[k] * ((std::popcount(x & masks[k]) & 1) ? -1.0 : 1.0);
    }
    if (e < best.e0) {
      best.e0 = e;
      best.minimizers.clear();
      best.minimizers.push_back(x);
    } else if (e == best.e0) {
      best.minimizers.push_back(x);
    }
  }
  return best;
}

SpectrumSlice spectrum_at(const SiteGraph& graph, const CouplingMap& couplings, double s, int k,
                          const AnnealSchedule& schedule) {
  if (k < 1 || static_cast<std::uint64_t>(k) > (std::uint64_t{1} << graph.n_sites))
    throw std::invalid_argument("k must lie in [1, 2^N]");
  const auto [even, odd] = sector_spectra(graph, couplings, s, k, schedule);

  SpectrumSlice slice;
  slice.s = s;
  std::size_t ie = 0, io = 0;
  while (static_cast<int>(slice.energies.size()) < k) {
    const bool take_even =
        io >= odd.size() || (ie < even.size() && even[ie] <= odd[io]);
    if (take_even) {
      slice.energies.push_back(even[ie++]);
      slice.parities.push_back(+1);
    } else {
      slice.energies.push_back(odd[io++]);
      slice.parities.push_back(-1);
    }
  }
  return slice;
}

namespace {

double parity_gap_at(const SiteGraph& graph, const CouplingMap& couplings, double s,
                     const AnnealSchedule& schedule) {
  const auto [even, odd] = sector_spectra(graph, couplings, s, 2, schedule);
  const bool ground_even = even[0] <= odd[0];
  const auto& sector = ground_even ? even : odd;
  if (sector.size() < 2) throw std::invalid_argument("system too small for a parity gap");
  return sector[1] - sector[0];
}

}  // namespace

GapResult min_parity_gap(const SiteGraph& graph, const CouplingMap& couplings,
                         std::span<const double> s_grid, const AnnealSchedule& schedule) {
  if (s_grid.size() < 3) throw std::invalid_argument("s grid needs at least 3 points");
  std::vector<double> grid(s_grid.begin(), s_grid.end());
  std::sort(grid.begin(), grid.end());
  if (grid.front() != 0.0 || grid.back() != 1.0)
    throw std::invalid_argument("s grid must cover [0, 1]");

  std::size_t best = 0;
  double best_gap = std::numeric_limits<double>::infinity();
  std::vector<double> gaps(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    gaps[i] = parity_gap_at(graph, couplings, grid[i], schedule);
    if (gaps[i] < best_gap) {
      best_gap = gaps[i];
      best = i;
    }
  }

  // One golden-section refinement between the neighbors of the coarse
  // minimum.
  double lo = grid[best > 0 ? best - 1 : best];
  double hi = grid[best + 1 < grid.size() ? best + 1 : best];
  double s_star = grid[best];
  if (hi > lo) {
    constexpr double inv_phi = 0.6180339887498949;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = parity_gap_at(graph, couplings, x1, schedule);
    double f2 = parity_gap_at(graph, couplings, x2, schedule);
    for (int it = 0; it < 24 && (hi - lo) > 1e-3; ++it) {
      if (f1 <= f2) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - inv_phi * (hi - lo);
        f1 = parity_gap_at(graph, couplings, x1, schedule);
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + inv_phi * (hi - lo);
        f2 = parity_gap_at(graph, couplings, x2, schedule);
      }
    }
    const double s_mid = f1 <= f2 ? x1 : x2;
    const double f_mid = std::min(f1, f2);
    if (f_mid < best_gap) {
      best_gap = f_mid;
      s_star = s_mid;
    }
  }
  return {best_gap, s_star};
}

std::vector<double> uniform_grid(int points) {
  if (points < 2) throw std::invalid_argument("grid needs at least 2 points");
  std::vector<double> grid(points);
  for (int i = 0; i < points; ++i) grid[i] = static_cast<double>(i) / (points - 1);
  return grid;
}

std::vector<double> dense_hamiltonian(const SiteGraph& graph, const CouplingMap& couplings,
                                      double s, const AnnealSchedule& schedule) {
  if (graph.n_sites > 12) throw ResourceLimitError("dense Z-basis Hamiltonian limited to 12 sites");
  check_couplings(graph, couplings);
  const auto [a, b] = schedule.at(s);
  const std::uint64_t dim = std::uint64_t{1} << graph.n_sites;
  std::vector<double> h(dim * dim, 0.0);
  for (std::uint64_t z = 0; z < dim; ++z) {
    double diag = 0.0;
    for (std::size_t e = 0; e < graph.edges.size(); ++e) {
      const auto [i, j] = graph.edges[e];
      const bool diff = ((z >> i) ^ (z >> j)) & 1u;
      diag -= b * couplings.values[e] * (diff ? -1.0 : 1.0);
    }
    h[z * dim + z] = diag;
    for (int q = 0; q < graph.n_sites; ++q) {
      const std::uint64_t zq = z ^ (std::uint64_t{1} << q);
      h[z * dim + zq] += -a;
    }
  }
  return h;
}

}  // namespace quanneal
