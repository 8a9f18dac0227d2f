#include <doctest.h>

#include <cmath>
#include <map>

#include "quanneal/exact.hpp"
#include "quanneal/observables.hpp"
#include "quanneal/rng.hpp"

using namespace quanneal;

namespace {

PureState basis_state(int n, std::uint64_t index) {
  PureState st(n);
  st.amplitude(0) = 0.0;
  st.amplitude(index) = 1.0;
  return st;
}

// Direct transcription of the correlator definition over a fixed kink
// pattern, independent of the library path.
double brute_c_r(const std::vector<int>& kinks, int r, bool periodic) {
  const int n_e = static_cast<int>(kinks.size());
  double n_def = 0.0;
  for (int k : kinks) n_def += k;
  n_def /= n_e;
  const int pairs = periodic ? n_e : n_e - r;
  double corr = 0.0;
  for (int i = 0; i < pairs; ++i) corr += kinks[i] * kinks[periodic ? (i + r) % n_e : i + r];
  corr /= pairs;
  return (corr - n_def * n_def) / (n_def * n_def);
}

}  // namespace

TEST_SUITE("observables") {

TEST_CASE("defect density of reference states") {
  const auto g5 = open_chain(5);
  CHECK(defect_density_state(PureState::plus_state(5), g5) == doctest::Approx(0.5));
  CHECK(defect_density_state(PureState(5), g5) == doctest::Approx(0.0));
  // sites 3 and 4 flipped: one domain wall over four edges
  CHECK(defect_density_state(basis_state(5, 0b11000), g5) == doctest::Approx(0.25));
}

TEST_CASE("sampled defect density on exact counts") {
  const auto g4p = periodic_chain(4);
  Counts zeros{{0, 50}};
  const auto res = defect_density_samples(zeros, g4p);
  CHECK(res.mean == doctest::Approx(0.0));
  CHECK(res.std_err == doctest::Approx(0.0));

  const auto g4 = open_chain(4);
  Counts mixed{{0b1100, 1}, {0, 1}};  // "0011" and "0000"
  const auto res2 = defect_density_samples(mixed, g4);
  CHECK(res2.mean == doctest::Approx(1.0 / 6.0));
}

TEST_CASE("sampled defect density is consistent with the exact expectation") {
  const auto g = periodic_chain(8);
  SplitMix64 seeds(3);
  for (int trial = 0; trial < 3; ++trial) {
    PureState st(8);
    SplitMix64 rng(seeds.next());
    for (std::uint64_t k = 0; k < st.dim(); ++k)
      st.amplitude(k) = {rng.next_symmetric(), rng.next_symmetric()};
    st.normalize();
    const double exact = defect_density_state(st, g);
    const auto counts = sample_bitstrings(st, 4096, seeds.next());
    const auto est = defect_density_samples(counts, g);
    CHECK(std::abs(est.mean - exact) < 4.0 * est.std_err + 1e-12);
  }
}

TEST_CASE("kink correlator vanishes for independent kinks") {
  // build open-chain strings whose kink indicators are i.i.d. coins
  const int n = 9;
  const auto g = open_chain(n);
  SplitMix64 rng(12);
  Counts counts;
  const int shots = 20000;
  for (int s = 0; s < shots; ++s) {
    std::uint64_t bits = 0;
    int prev = 0;
    for (int e = 0; e < n - 1; ++e) {
      const int kink = rng.next_unit() < 0.3 ? 1 : 0;
      prev ^= kink;
      bits |= std::uint64_t(prev) << (e + 1);
    }
    ++counts[bits];
  }
  const auto corr = kink_kink(counts, g, 4);
  REQUIRE(corr.size() == 4);
  for (const auto& c : corr) CHECK(std::abs(c.c_kk) < 0.06);
}

TEST_CASE("kink correlator on a fixed pattern matches a direct evaluation") {
  // "001100": kinks at chain edges 1 and 3
  const auto g = open_chain(6);
  Counts counts{{0b001100, 1}};
  const auto corr = kink_kink(counts, g, 4);
  const std::vector<int> kinks = {0, 1, 0, 1, 0};
  for (const auto& c : corr) {
    CHECK(c.c_kk == doctest::Approx(brute_c_r(kinks, c.r, false)).epsilon(1e-12));
    CHECK(c.xi == doctest::Approx(2.5));  // 1/n_def with n_def = 2/5
  }
  CHECK(corr[1].c_kk == doctest::Approx(13.0 / 12.0).epsilon(1e-12));
}

TEST_CASE("kink indicator conventions give the same correlator") {
  // scaling K -> 2K rescales both the correlator and its normalization
  const auto g = periodic_chain(6);
  SplitMix64 rng(8);
  Counts counts;
  for (int s = 0; s < 500; ++s) ++counts[rng.next() & 0x3F];
  const auto corr = kink_kink(counts, g, 3);
  const auto order = chain_edge_order(g);
  const std::uint64_t shots = 500;
  for (const auto& c : corr) {
    double big_corr = 0.0, big_mean = 0.0;
    for (const auto& [bits, cnt] : counts) {
      for (int i = 0; i < 6; ++i) {
        const auto [a1, b1] = g.edges[order[i]];
        const auto [a2, b2] = g.edges[order[(i + c.r) % 6]];
        const int k1 = 2 * int(((bits >> a1) ^ (bits >> b1)) & 1u);
        const int k2 = 2 * int(((bits >> a2) ^ (bits >> b2)) & 1u);
        big_corr += double(cnt) * k1 * k2;
        big_mean += double(cnt) * k1;
      }
    }
    big_corr /= double(shots) * 6.0;
    big_mean /= double(shots) * 6.0;
    const double c_big = (big_corr - big_mean * big_mean) / (big_mean * big_mean);
    CHECK(c.c_kk == doctest::Approx(c_big).epsilon(1e-10));
  }
}

TEST_CASE("kink correlator is invariant under a global spin flip") {
  const auto g = periodic_chain(8);
  SplitMix64 rng(21);
  Counts counts, flipped;
  for (int s = 0; s < 400; ++s) {
    const std::uint64_t bits = rng.next() & 0xFF;
    ++counts[bits];
    ++flipped[bits ^ 0xFF];
  }
  const auto a = kink_kink(counts, g, 4);
  const auto b = kink_kink(flipped, g, 4);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].c_kk == doctest::Approx(b[i].c_kk).epsilon(1e-12));
}

TEST_CASE("kink correlator rejects the defect-free case") {
  const auto g = periodic_chain(4);
  Counts zeros{{0, 10}};
  CHECK_THROWS_AS(kink_kink(zeros, g, 2), std::domain_error);
}

TEST_CASE("classical energies") {
  const auto g3 = open_chain(3);
  CouplingMap c;
  c.values = {1.0, -1.0};
  // "110": s = (-1, -1, +1)
  CHECK(classical_energy(0b011, g3, c) == doctest::Approx(-2.0));

  const auto g4 = periodic_chain(4);
  CHECK(classical_energy(0, g4, uniform_couplings(g4, 1.0)) == doctest::Approx(-4.0));
}

TEST_CASE("single spin flip costs 2J per touched edge") {
  const auto g = open_chain(6);
  const auto c = uniform_couplings(g, 1.0);
  const double e0 = classical_energy(0, g, c);
  // interior spin touches two edges, boundary spin one
  CHECK(classical_energy(std::uint64_t{1} << 2, g, c) - e0 == doctest::Approx(4.0));
  CHECK(classical_energy(std::uint64_t{1} << 0, g, c) - e0 == doctest::Approx(2.0));
}

TEST_CASE("residual energy from counts") {
  const auto g = periodic_chain(4);
  const auto c = uniform_couplings(g, 1.0);
  const double e0 = brute_force_ground(g, c).e0;

  Counts ground{{0, 25}};
  CHECK(residual_energy(ground, g, c, e0).mean == doctest::Approx(0.0));

  Counts uniform;
  for (std::uint64_t b = 0; b < 16; ++b) uniform[b] = 1;
  const auto res = residual_energy(uniform, g, c, e0);
  CHECK(res.mean == doctest::Approx(4.0));  // mean energy 0 minus e0 = -N J
}

TEST_CASE("exact residual energy is non-negative for annealed states") {
  const auto g = periodic_chain(6);
  SplitMix64 rng(14);
  for (int trial = 0; trial < 5; ++trial) {
    const auto c = disordered_couplings(g, rng.next());
    const double e0 = brute_force_ground(g, c).e0;
    const auto plan = build_trotter_plan(g, c, {}, 0.2 + rng.next_unit(), 4 + int(rng.next_below(8)));
    const auto res = residual_energy(run_trotter_anneal(plan), g, c, e0);
    CHECK(res.mean >= -1e-9);
    CHECK(res.std_err == 0.0);
  }
}

}  // TEST_SUITE
