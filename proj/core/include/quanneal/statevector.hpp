#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "quanneal/model.hpp"
#include "quanneal/rng.hpp"

namespace quanneal {

using Counts = std::map<std::uint64_t, std::uint64_t>;

/// Renders basis index as a site string: character k is site k ('0' means
/// sigma_z = +1).
std::string to_bitstring(std::uint64_t index, int n_sites);

/// Dense pure state over 2^N basis states. Basis index bit k holds the Z
/// eigenvalue of site k (bit 0 means sigma_z = +1). Rotations follow
/// R(theta) = exp(-i*theta*G/2).
class PureState {
 public:
  /// Hard width limit; a 26-site state already occupies 1 GiB.
  static constexpr int max_sites = 26;

  /// Computational basis state |0...0>.
  explicit PureState(int n_sites);
  /// |+>^N, the uniform superposition.
  static PureState plus_state(int n_sites);

  int n_sites() const { return n_; }
  std::uint64_t dim() const { return std::uint64_t{1} << n_; }
  std::span<const std::complex<double>> amplitudes() const { return a_; }
  std::complex<double>& amplitude(std::uint64_t k) { return a_[k]; }

  void apply_rx(int site, double phi);
  void apply_rzz(int i, int j, double theta);
  /// All R_ZZ rotations of one color layer in a single sweep. The edges must
  /// be site-disjoint (any proper color layer is), so the order is immaterial.
  void apply_rzz_layer(std::span<const std::pair<int, int>> edges, std::span<const double> thetas);
  /// R_X with the same angle on every site.
  void apply_rx_all(double phi);

  /// pauli: 1 = X, 2 = Y, 3 = Z.
  void apply_pauli(int site, int pauli);

  double norm() const;
  void normalize();

  double expect_x(int site) const;
  double expect_zz(int i, int j) const;
  /// Probability of sigma_z = -1 (bit set) on a site.
  double population(int site) const;

  /// Diagonal per-site scaling diag(f0, f1) in the Z basis (not unitary;
  /// used by open-system evolutions). Does not renormalize.
  void scale_bit(int site, double f0, double f1);
  /// Projects onto bit value (0 or 1) and renormalizes; returns the
  /// pre-collapse probability of that outcome. Throws if the outcome has
  /// zero weight.
  double apply_projector(int site, int value);
  /// Lowering operator |0><1| followed by renormalization.
  void apply_sigma_minus(int site);

  /// Born-rule samples; deterministic for a given generator state.
  Counts sample(std::uint64_t shots, SplitMix64& rng) const;

  /// Debug dump: 8-byte little-endian site count, then interleaved
  /// little-endian float64 (re, im) pairs.
  void dump_binary(std::ostream& os) const;

 private:
  int n_;
  std::vector<std::complex<double>> a_;
};

Counts sample_bitstrings(const PureState& state, std::uint64_t shots, std::uint64_t seed);

/// Runs the digitized anneal: for m = 1..n_steps, one R_X(phi_m) per site,
/// then the R_ZZ layers in ascending color order (step 1 acts first).
PureState run_trotter_anneal(const TrotterPlan& plan, PureState initial);
/// Same, starting from |+>^N.
PureState run_trotter_anneal(const TrotterPlan& plan);

/// Near-continuum reference: symmetric (Strang) splitting with midpoint
/// schedule evaluation at step size fine_dt, second order in the step size.
/// Serves as the dt -> 0 oracle for Trotterized runs. fine_dt must be
/// <= 0.01.
PureState run_reference_anneal(const SiteGraph& graph, const CouplingMap& couplings,
                               const AnnealSchedule& schedule, double t_f, double fine_dt);

}  // namespace quanneal
