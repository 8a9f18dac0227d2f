#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "quanneal/lattice.hpp"
#include "quanneal/model.hpp"

namespace quanneal {

struct GroundResult {
  double e0 = 0.0;
  std::vector<std::uint64_t> minimizers;  // all optimal bitstrings, ascending
};

/// Exhaustive classical ground-state search over all 2^N strings (N <= 24).
/// The global spin-flip symmetry guarantees at least two minimizers.
GroundResult brute_force_ground(const SiteGraph& graph, const CouplingMap& couplings);

/// Lowest part of the instantaneous spectrum of
///   H(s) = -A(s) sum_i sigma_x_i - B(s) sum_e J_e sigma_z sigma_z
/// with the parity label P = prod_i sigma_x_i (+1 or -1) per level.
struct SpectrumSlice {
  double s = 0.0;
  std::vector<double> energies;  // ascending, absolute scale
  std::vector<int> parities;     // +1 / -1, aligned with energies
};

/// Dense symmetric eigensolve, block-diagonalized into the two parity
/// sectors (the sigma_x product basis splits H(s) exactly), N <= 14.
/// Parities are exact sector labels. k is the number of levels returned.
SpectrumSlice spectrum_at(const SiteGraph& graph, const CouplingMap& couplings, double s, int k,
                          const AnnealSchedule& schedule = {});

struct GapResult {
  double gap = 0.0;     // min over s of E1(same parity) - E0
  double s_star = 0.0;  // location of the minimum
};

/// Minimum gap between the ground state and the first excited state of the
/// same parity, over the given grid (which must cover [0, 1]); the coarse
/// minimum is refined once by golden-section search between its neighbors.
GapResult min_parity_gap(const SiteGraph& graph, const CouplingMap& couplings,
                         std::span<const double> s_grid, const AnnealSchedule& schedule = {});

/// Uniform grid of `points` values covering [0, 1].
std::vector<double> uniform_grid(int points);

/// Row-major dense H(s) in the computational (Z) basis; real symmetric.
/// Audit/testing helper, N <= 12.
std::vector<double> dense_hamiltonian(const SiteGraph& graph, const CouplingMap& couplings,
                                      double s, const AnnealSchedule& schedule = {});

}  // namespace quanneal
