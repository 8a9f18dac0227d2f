#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include <nlohmann/json.hpp>

#include "quanneal/lattice.hpp"
#include "quanneal/rng.hpp"

using namespace quanneal;

namespace {

void check_proper_coloring(const SiteGraph& g) {
  std::vector<std::vector<int>> incident(g.n_sites);
  for (int e = 0; e < g.n_edges(); ++e) {
    incident[g.edges[e].first].push_back(e);
    incident[g.edges[e].second].push_back(e);
  }
  for (const auto& inc : incident) {
    std::set<int> seen;
    for (int e : inc) {
      CHECK(!seen.count(g.colors[e]));
      seen.insert(g.colors[e]);
    }
  }
}

int max_degree(const SiteGraph& g) {
  std::vector<int> deg(g.n_sites, 0);
  for (const auto& [i, j] : g.edges) {
    ++deg[i];
    ++deg[j];
  }
  return *std::max_element(deg.begin(), deg.end());
}

}  // namespace

TEST_SUITE("lattice") {

TEST_CASE("open chain has n-1 path edges") {
  const auto g = open_chain(5);
  CHECK(g.n_sites == 5);
  CHECK(g.n_edges() == 4);
  for (int i = 0; i < 4; ++i) CHECK(g.edges[i] == std::pair(i, i + 1));
  CHECK(g.n_colors() == 2);
}

TEST_CASE("edge counts match the closed-form geometry formulas") {
  CHECK(periodic_chain(12).n_edges() == 12);
  CHECK(open_chain(100).n_edges() == 99);
  for (int r : {2, 3, 7}) {
    for (int c : {2, 3, 5}) {
      CHECK(square_lattice(r, c).n_edges() == r * (c - 1) + c * (r - 1));
      CHECK(square_lattice(r, c).n_sites == r * c);
    }
  }
}

TEST_CASE("device layouts have the published site and edge counts") {
  const auto d133 = heavy_hex_device(HeavyHexDevice::device_133);
  CHECK(d133.n_sites == 133);
  CHECK(d133.n_edges() == 150);
  CHECK(d133.n_colors() == 3);
  CHECK(max_degree(d133) == 3);

  const auto d127 = heavy_hex_device(HeavyHexDevice::device_127);
  CHECK(d127.n_sites == 127);
  CHECK(d127.n_edges() == 144);
  CHECK(d127.n_colors() == 3);
  CHECK(max_degree(d127) == 3);
}

TEST_CASE("two heavy-hex cells give the 21-site lattice") {
  const auto g = heavy_hex_cells(1, 2);
  CHECK(g.n_sites == 21);
  CHECK(g.n_edges() == 22);
  CHECK(g.n_colors() == 3);
  CHECK(max_degree(g) == 3);
}

TEST_CASE("heavy-hex edge/site ratio approaches 6/5 with cell count") {
  const auto small = heavy_hex_cells(4, 4);
  const auto large = heavy_hex_cells(12, 12);
  const double r_small = double(small.n_edges()) / small.n_sites;
  const double r_large = double(large.n_edges()) / large.n_sites;
  CHECK(r_small > 1.1);
  CHECK(r_large > r_small);
  CHECK(r_large == doctest::Approx(1.2).epsilon(0.02));
}

TEST_CASE("color counts per geometry") {
  CHECK(open_chain(100).n_colors() == 2);
  CHECK(periodic_chain(12).n_colors() == 2);
  CHECK(periodic_chain(5).n_colors() == 3);
  CHECK(heavy_hex_cells(2, 3).n_colors() == 3);
  CHECK(square_lattice(7, 3).n_colors() == 4);
  CHECK(open_chain(2).n_colors() == 1);
}

TEST_CASE("every generated coloring is proper (randomized geometries)") {
  SplitMix64 rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    switch (rng.next_below(4)) {
      case 0: check_proper_coloring(open_chain(2 + int(rng.next_below(40)))); break;
      case 1: check_proper_coloring(periodic_chain(3 + int(rng.next_below(40)))); break;
      case 2:
        check_proper_coloring(square_lattice(1 + int(rng.next_below(7)), 2 + int(rng.next_below(7))));
        break;
      default:
        check_proper_coloring(heavy_hex_cells(1 + int(rng.next_below(4)), 1 + int(rng.next_below(4))));
        break;
    }
  }
  check_proper_coloring(heavy_hex_device(HeavyHexDevice::device_127));
  check_proper_coloring(heavy_hex_device(HeavyHexDevice::device_133));
}

TEST_CASE("size validation") {
  CHECK_THROWS_AS(open_chain(1), std::invalid_argument);
  CHECK_THROWS_AS(periodic_chain(2), std::invalid_argument);
  CHECK_THROWS_AS(square_lattice(1, 1), std::invalid_argument);
  CHECK_THROWS_AS(heavy_hex_cells(0, 1), std::invalid_argument);
  CHECK_THROWS_AS(geometry_from_name("triangular"), std::invalid_argument);
}

TEST_CASE("uniform couplings") {
  const auto g = periodic_chain(12);
  const auto c = uniform_couplings(g, 1.0);
  CHECK(c.values.size() == 12);
  for (double v : c.values) CHECK(v == 1.0);
}

TEST_CASE("disordered couplings are reproducible and in range") {
  const auto g = heavy_hex_cells(1, 2);
  const auto a = disordered_couplings(g, 7);
  const auto b = disordered_couplings(g, 7);
  CHECK(a.values == b.values);
  const auto c = disordered_couplings(g, 8);
  CHECK(a.values != c.values);
  for (double v : a.values) {
    CHECK(v >= -1.0);
    CHECK(v <= 1.0);
  }
}

TEST_CASE("chain edge order maps positions to sorted indices") {
  const auto g = periodic_chain(5);
  const auto order = chain_edge_order(g);
  REQUIRE(order.size() == 5);
  // position 4 is the wrap-around edge (4,0) -> canonical (0,4), sorted
  // directly after (0,1)
  CHECK(g.edges[order[4]] == std::pair(0, 4));
  CHECK(g.edges[order[0]] == std::pair(0, 1));
  CHECK(g.edges[order[2]] == std::pair(2, 3));
  CHECK_THROWS_AS(chain_edge_order(square_lattice(2, 2)), std::invalid_argument);
}

TEST_CASE("graph json round trip") {
  const auto g = heavy_hex_cells(1, 2);
  const auto couplings = disordered_couplings(g, 42);
  const std::string text = graph_to_json(g, &couplings);

  CouplingMap back_couplings;
  const auto back = graph_from_json(text, &back_couplings);
  CHECK(back.n_sites == g.n_sites);
  CHECK(back.geometry == g.geometry);
  CHECK(back.edges == g.edges);
  CHECK(back.colors == g.colors);
  CHECK(back_couplings.values == couplings.values);

  // field order is part of the format
  const auto keys_pos = std::vector<std::size_t>{text.find("\"n_sites\""), text.find("\"geometry\""),
                                                 text.find("\"edges\""), text.find("\"colors\""),
                                                 text.find("\"couplings\"")};
  CHECK(std::is_sorted(keys_pos.begin(), keys_pos.end()));
}

TEST_CASE("graph json import rejects an improper coloring") {
  const auto g = open_chain(4);
  auto doc = nlohmann::json::parse(graph_to_json(g));
  doc["colors"] = {0, 0, 0};
  CHECK_THROWS_AS(graph_from_json(doc.dump()), std::invalid_argument);
}

}  // TEST_SUITE
