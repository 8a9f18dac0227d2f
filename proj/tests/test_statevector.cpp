#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include "quanneal/errors.hpp"
#include "quanneal/observables.hpp"
#include "quanneal/statevector.hpp"
#include "test_util.hpp"

using namespace quanneal;
using testutil::Mat;
using testutil::Vec;

namespace {

PureState basis_state(int n, std::uint64_t index) {
  PureState st(n);
  st.amplitude(0) = 0.0;
  st.amplitude(index) = 1.0;
  return st;
}

double max_amp_diff(const PureState& a, const Vec& b) {
  double d = 0.0;
  auto amps = a.amplitudes();
  for (Eigen::Index k = 0; k < b.size(); ++k)
    d = std::max(d, std::abs(amps[static_cast<std::size_t>(k)] - b(k)));
  return d;
}

}  // namespace

TEST_SUITE("statevec") {

TEST_CASE("plus state amplitudes") {
  const auto one = PureState::plus_state(1);
  CHECK(std::abs(one.amplitudes()[0] - std::numbers::sqrt2 / 2.0) < 1e-15);
  CHECK(std::abs(one.amplitudes()[1] - std::numbers::sqrt2 / 2.0) < 1e-15);

  const auto two = PureState::plus_state(2);
  for (auto a : two.amplitudes()) CHECK(std::abs(a - 0.5) < 1e-15);

  const auto ten = PureState::plus_state(10);
  REQUIRE(ten.dim() == 1024);
  for (auto a : ten.amplitudes()) CHECK(std::abs(a - 0.03125) < 1e-15);
}

TEST_CASE("width limit raises a resource error") {
  CHECK_THROWS_AS(PureState(27), ResourceLimitError);
}

TEST_CASE("rzz is diagonal with the documented phases") {
  const double theta = 0.7;
  auto st = basis_state(2, 0b00);
  st.apply_rzz(0, 1, theta);
  CHECK(std::abs(st.amplitudes()[0] - std::exp(std::complex<double>(0, -theta / 2))) < 1e-15);

  st = basis_state(2, 0b01);
  st.apply_rzz(0, 1, theta);
  CHECK(std::abs(st.amplitudes()[1] - std::exp(std::complex<double>(0, theta / 2))) < 1e-15);
}

TEST_CASE("zero angles are the identity") {
  auto st = testutil::random_state(4, 99);
  auto copy = st;
  st.apply_rx(2, 0.0);
  st.apply_rzz(0, 3, 0.0);
  for (std::uint64_t k = 0; k < st.dim(); ++k)
    CHECK(std::abs(st.amplitudes()[k] - copy.amplitudes()[k]) < 1e-15);
}

TEST_CASE("rx at pi maps |0> to -i|1>") {
  auto st = basis_state(1, 0);
  st.apply_rx(0, std::numbers::pi);
  CHECK(std::abs(st.amplitudes()[0]) < 1e-15);
  CHECK(std::abs(st.amplitudes()[1] - std::complex<double>(0, -1)) < 1e-15);
}

TEST_CASE("norm is preserved across long random gate sequences") {
  auto st = PureState::plus_state(6);
  SplitMix64 rng(5);
  for (int k = 0; k < 300; ++k) {
    if (rng.next_below(2) == 0) {
      st.apply_rx(int(rng.next_below(6)), rng.next_symmetric() * 3.0);
    } else {
      int i = int(rng.next_below(6));
      int j = (i + 1 + int(rng.next_below(5))) % 6;
      st.apply_rzz(std::min(i, j), std::max(i, j), rng.next_symmetric() * 3.0);
    }
  }
  CHECK(std::abs(st.norm() - 1.0) < 1e-10);
}

TEST_CASE("gates within a color layer commute and match the fused kernel") {
  const std::vector<std::pair<int, int>> edges = {{0, 1}, {2, 3}, {4, 5}};
  const std::vector<double> thetas = {0.3, -0.9, 1.7};
  auto a = testutil::random_state(6, 1);
  auto b = a;
  auto c = a;
  for (std::size_t e = 0; e < edges.size(); ++e) a.apply_rzz(edges[e].first, edges[e].second, thetas[e]);
  for (std::size_t e = edges.size(); e-- > 0;) b.apply_rzz(edges[e].first, edges[e].second, thetas[e]);
  c.apply_rzz_layer(edges, thetas);
  for (std::uint64_t k = 0; k < a.dim(); ++k) {
    CHECK(std::abs(a.amplitudes()[k] - b.amplitudes()[k]) < 1e-12);
    CHECK(std::abs(a.amplitudes()[k] - c.amplitudes()[k]) < 1e-12);
  }
}

TEST_CASE("single site stays in the mixer ground state") {
  auto st = PureState::plus_state(1);
  for (double phi : {-0.75, -0.5, -0.25, -1.3}) st.apply_rx(0, phi);
  CHECK(st.expect_x(0) == doctest::Approx(1.0).epsilon(1e-12));
  // equal to |+> up to a global phase
  const auto amps = st.amplitudes();
  CHECK(std::abs(std::abs(amps[0]) - std::numbers::sqrt2 / 2.0) < 1e-12);
  CHECK(std::abs(amps[0] - amps[1]) < 1e-12);
}

TEST_CASE("trotter anneal equals the explicit matrix product for small systems") {
  for (int pick = 0; pick < 2; ++pick) {
    const SiteGraph g = pick == 0 ? open_chain(3) : square_lattice(2, 2);
    const CouplingMap c = pick == 0 ? uniform_couplings(g, 1.0) : disordered_couplings(g, 17);
    const auto plan = build_trotter_plan(g, c, {}, 0.5, 5);
    const int n = g.n_sites;
    const Eigen::Index dim = Eigen::Index(1) << n;

    Mat u = Mat::Identity(dim, dim);
    const auto layers = g.color_layers();
    for (int m = 0; m < plan.n_steps; ++m) {
      Mat step = Mat::Identity(dim, dim);
      for (int q = 0; q < n; ++q)
        step = testutil::op_at(n, q, testutil::rx_gate(plan.x_angles[m])) * step;
      for (const auto& layer : layers)
        for (int e : layer)
          step = testutil::rzz_full(n, g.edges[e].first, g.edges[e].second, plan.zz_angles[m][e]) * step;
      u = step * u;
    }
    Vec expected = u * testutil::to_eigen(PureState::plus_state(n));
    const auto actual = run_trotter_anneal(plan);
    CHECK(max_amp_diff(actual, expected) < 1e-10);
    CHECK(std::abs(actual.norm() - 1.0) < 1e-10);
  }
}

TEST_CASE("anneal rejects mismatched state width") {
  const auto g = open_chain(3);
  const auto plan = build_trotter_plan(g, uniform_couplings(g, 1.0), {}, 0.5, 2);
  CHECK_THROWS_AS(run_trotter_anneal(plan, PureState::plus_state(4)), std::invalid_argument);
}

TEST_CASE("reference evolution is self-converged at small steps") {
  const auto g = periodic_chain(12);
  const auto c = uniform_couplings(g, 1.0);
  const auto coarse = run_reference_anneal(g, c, {}, 10.0, 0.01);
  const auto fine = run_reference_anneal(g, c, {}, 10.0, 0.005);
  const double d = std::abs(defect_density_state(coarse, g) - defect_density_state(fine, g));
  CHECK(d < 1e-3);
}

TEST_CASE("one reference step approaches one trotter step as dt shrinks") {
  // At t_f = dt the schedule sweeps its full range within the single step,
  // so the endpoint- and midpoint-evaluated integrators differ at first
  // order in dt.
  const auto g = periodic_chain(6);
  const auto c = uniform_couplings(g, 1.0);
  auto single_step_diff = [&](double dt) {
    const auto plan = build_trotter_plan(g, c, {}, dt, 1);
    const auto trotter = run_trotter_anneal(plan);
    const auto ref = run_reference_anneal(g, c, {}, dt, dt);
    double diff = 0.0;
    for (std::uint64_t k = 0; k < trotter.dim(); ++k)
      diff = std::max(diff, std::abs(trotter.amplitudes()[k] - ref.amplitudes()[k]));
    return diff;
  };
  const double coarse = single_step_diff(0.01);
  const double fine = single_step_diff(0.005);
  CHECK(coarse < 0.01);
  CHECK(fine < 0.65 * coarse);  // shrinks roughly linearly in dt
  CHECK(fine > 0.0);
}

TEST_CASE("pair correlators on reference states") {
  const auto g = open_chain(2);
  auto plus = PureState::plus_state(4);
  for (int q = 0; q + 1 < 4; ++q) CHECK(plus.expect_zz(q, q + 1) == doctest::Approx(0.0));

  auto zero = PureState(3);
  CHECK(zero.expect_zz(0, 1) == doctest::Approx(1.0));
  CHECK(zero.expect_zz(1, 2) == doctest::Approx(1.0));

  PureState bell(2);
  bell.amplitude(0) = std::numbers::sqrt2 / 2.0;
  bell.amplitude(3) = std::numbers::sqrt2 / 2.0;
  CHECK(bell.expect_zz(0, 1) == doctest::Approx(1.0));
  CHECK(bell.expect_x(0) == doctest::Approx(0.0));
}

TEST_CASE("pauli actions on basis states") {
  auto st = basis_state(2, 0b00);
  st.apply_pauli(0, 1);  // X_0
  CHECK(std::abs(st.amplitudes()[1] - 1.0) < 1e-15);
  st.apply_pauli(1, 2);  // Y_1: |0> -> i|1>
  CHECK(std::abs(st.amplitudes()[3] - std::complex<double>(0, 1)) < 1e-15);
  st.apply_pauli(0, 3);  // Z_0 on bit set
  CHECK(std::abs(st.amplitudes()[3] - std::complex<double>(0, -1)) < 1e-15);
}

TEST_CASE("projector and lowering collapse and renormalize") {
  auto st = PureState::plus_state(1);
  auto st2 = st;
  const double p = st.apply_projector(0, 0);
  CHECK(p == doctest::Approx(0.5));
  CHECK(std::abs(st.amplitudes()[0] - 1.0) < 1e-12);

  st2.apply_sigma_minus(0);
  CHECK(std::abs(st2.amplitudes()[0] - 1.0) < 1e-12);
  CHECK(std::abs(st2.norm() - 1.0) < 1e-12);
}

TEST_CASE("sampling determinism and degenerate states") {
  auto zero = PureState(4);
  const auto counts = sample_bitstrings(zero, 100, 9);
  REQUIRE(counts.size() == 1);
  CHECK(counts.at(0) == 100);

  const auto st = testutil::random_state(5, 33);
  CHECK(sample_bitstrings(st, 500, 1234) == sample_bitstrings(st, 500, 1234));
  CHECK(sample_bitstrings(st, 500, 1234) != sample_bitstrings(st, 500, 1235));
}

TEST_CASE("uniform state sampling matches multinomial bounds") {
  const int n = 4;
  const std::uint64_t shots = 1 << 14;
  const auto counts = sample_bitstrings(PureState::plus_state(n), shots, 7);
  const double p = 1.0 / 16.0;
  const double sigma = std::sqrt(p * (1 - p) / double(shots));
  for (std::uint64_t k = 0; k < 16; ++k) {
    const double freq = counts.count(k) ? double(counts.at(k)) / double(shots) : 0.0;
    CHECK(std::abs(freq - p) < 4.0 * sigma);
  }
}

TEST_CASE("binary dump layout") {
  auto st = PureState::plus_state(2);
  std::ostringstream os(std::ios::binary);
  st.dump_binary(os);
  const std::string blob = os.str();
  REQUIRE(blob.size() == 8 + 4 * 16);
  std::uint64_t n = 0;
  std::memcpy(&n, blob.data(), 8);
  CHECK(n == 2);
  double re = 0.0, im = 0.0;
  std::memcpy(&re, blob.data() + 8, 8);
  std::memcpy(&im, blob.data() + 16, 8);
  CHECK(re == doctest::Approx(0.5));
  CHECK(im == 0.0);
}

TEST_CASE("bitstring rendering puts site zero first") {
  CHECK(to_bitstring(0b00110, 5) == "01100");
  CHECK(to_bitstring(0, 3) == "000");
  CHECK(to_bitstring(0b111, 3) == "111");
}

}  // TEST_SUITE
