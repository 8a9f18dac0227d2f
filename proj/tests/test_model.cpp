#include <doctest.h>

#include <cmath>

#include <nlohmann/json.hpp>

#include "quanneal/model.hpp"
#include "quanneal/rng.hpp"

using namespace quanneal;

TEST_SUITE("model") {

TEST_CASE("linear schedule boundary and midpoint values") {
  AnnealSchedule sched;
  CHECK(sched.at(0.0) == std::pair(1.0, 0.0));
  CHECK(sched.at(1.0) == std::pair(0.0, 1.0));
  CHECK(sched.at(0.5) == std::pair(0.5, 0.5));
  CHECK_THROWS_AS(sched.at(-0.01), std::domain_error);
  CHECK_THROWS_AS(sched.at(1.01), std::domain_error);
}

TEST_CASE("scaling exponent from critical exponents") {
  CHECK(kz_exponent({1, 1.0, 1.0}) == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(kz_exponent({2, 1.0, 1.0}) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(kz_exponent({1, 2.0, 1.0}) == doctest::Approx(-1.0 / 3.0).epsilon(1e-12));
  CHECK_THROWS_AS(kz_exponent({0, 1.0, 1.0}), std::invalid_argument);
}

TEST_CASE("exponent is negative and strictly decreasing in dimension") {
  SplitMix64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const double z = 0.1 + 3.0 * rng.next_unit();
    const double nu = 0.1 + 3.0 * rng.next_unit();
    const int d = 1 + int(rng.next_below(4));
    const double e1 = kz_exponent({d, z, nu});
    const double e2 = kz_exponent({d + 1, z, nu});
    CHECK(e1 < 0.0);
    CHECK(e2 < e1);
  }
}

TEST_CASE("plan angles at the endpoints and first step") {
  const auto g = periodic_chain(6);
  const auto c = uniform_couplings(g, 1.0);
  const auto plan = build_trotter_plan(g, c, {}, 0.5, 4);
  CHECK(plan.t_f() == doctest::Approx(2.0));
  // last step: B(1) = 1
  for (double theta : plan.zz_angles[3]) CHECK(theta == doctest::Approx(-1.0).epsilon(1e-14));
  // first step: theta = -2 J m dt^2 / t_f with m = 1
  for (double theta : plan.zz_angles[0]) CHECK(theta == doctest::Approx(-0.25).epsilon(1e-14));
  CHECK(plan.x_angles[0] == doctest::Approx(-0.75).epsilon(1e-14));
  CHECK(plan.x_angles[3] == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("plan angles agree with an independent recomputation") {
  const auto g = heavy_hex_cells(1, 1);
  const auto c = disordered_couplings(g, 3);
  const double dt = 0.7;
  const int n_steps = 9;
  const auto plan = build_trotter_plan(g, c, {}, dt, n_steps);
  for (int m = 1; m <= n_steps; ++m) {
    const double s = double(m) * dt / (dt * n_steps);
    CHECK(plan.x_angles[m - 1] == doctest::Approx(-2.0 * (1.0 - s) * dt).epsilon(1e-13));
    for (std::size_t e = 0; e < c.values.size(); ++e) {
      CHECK(plan.zz_angles[m - 1][e] == doctest::Approx(-2.0 * c.values[e] * s * dt).epsilon(1e-13));
    }
  }
}

TEST_CASE("linear schedule makes theta proportional to the step index") {
  const auto g = periodic_chain(8);
  const auto c = disordered_couplings(g, 5);
  const auto plan = build_trotter_plan(g, c, {}, 0.3, 12);
  for (std::size_t e = 0; e < c.values.size(); ++e) {
    if (c.values[e] == 0.0) continue;
    const double ratio = plan.zz_angles[0][e] / 1.0;
    for (int m = 2; m <= 12; ++m) {
      CHECK(plan.zz_angles[m - 1][e] / m == doctest::Approx(ratio).epsilon(1e-13));
    }
  }
}

TEST_CASE("plan rejects invalid inputs") {
  const auto g = open_chain(3);
  const auto c = uniform_couplings(g, 1.0);
  CHECK_THROWS_AS(build_trotter_plan(g, c, {}, 0.0, 4), std::invalid_argument);
  CHECK_THROWS_AS(build_trotter_plan(g, c, {}, 0.5, 0), std::invalid_argument);
  CouplingMap wrong;
  wrong.values = {1.0};
  CHECK_THROWS_AS(build_trotter_plan(g, wrong, {}, 0.5, 4), std::invalid_argument);
}

TEST_CASE("plan json layout") {
  const auto g = periodic_chain(5);
  const auto c = uniform_couplings(g, 1.0);
  const auto plan = build_trotter_plan(g, c, {}, 0.5, 2);
  const auto doc = nlohmann::json::parse(plan_to_json(plan));
  CHECK(doc.at("dt").get<double>() == 0.5);
  CHECK(doc.at("n_steps").get<int>() == 2);
  CHECK(doc.at("t_f").get<double>() == 1.0);
  REQUIRE(doc.at("steps").size() == 2);
  const auto& step = doc.at("steps")[0];
  CHECK(step.at("m").get<int>() == 1);
  // one block per color; 5-cycle needs three
  REQUIRE(step.at("layers").size() == 3);
  int total_angles = 0;
  for (const auto& layer : step.at("layers")) total_angles += int(layer.at("angles").size());
  CHECK(total_angles == g.n_edges());
}

}  // TEST_SUITE
