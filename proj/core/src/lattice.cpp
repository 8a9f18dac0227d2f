#include "quanneal/lattice.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "quanneal/rng.hpp"

#include <nlohmann/json.hpp>

namespace quanneal {

namespace {

struct RawEdge {
  int a;
  int b;
  int color;
};

// Canonicalize (i < j), sort lexicographically, compact colors to 0..k-1.
SiteGraph finalize(int n_sites, Geometry geometry, std::vector<RawEdge> raw) {
  for (auto& e : raw) {
    if (e.a > e.b) std::swap(e.a, e.b);
  }
  std::sort(raw.begin(), raw.end(), [](const RawEdge& x, const RawEdge& y) {
    return std::pair(x.a, x.b) < std::pair(y.a, y.b);
  });
  std::set<int> used;
  for (const auto& e : raw) used.insert(e.color);
  std::map<int, int> remap;
  int next = 0;
  for (int c : used) remap[c] = next++;

  SiteGraph g;
  g.n_sites = n_sites;
  g.geometry = geometry;
  g.edges.reserve(raw.size());
  g.colors.reserve(raw.size());
  for (const auto& e : raw) {
    g.edges.emplace_back(e.a, e.b);
    g.colors.push_back(remap.at(e.color));
  }
  g.validate();
  return g;
}

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

// ---------------------------------------------------------------------------
// Heavy-hex construction.
//
// The lattice is described as horizontal rows of sites joined by vertical
// connector sites in the gaps between rows. Hexagon sides are subdivided
// once: even-column row sites act as hexagon corners, odd-column row sites
// and connector sites as the subdividing midpoints. Connector columns in
// consecutive gaps are offset by two, giving the staggered brick pattern and
// a maximum degree of three.
// ---------------------------------------------------------------------------

struct HexRow {
  int col_lo;
  int col_hi;  // inclusive
};

struct HexGap {
  std::vector<int> cols;
  bool dangling = false;  // attached to the row above only
};

SiteGraph build_heavy_hex(const std::vector<HexRow>& rows, const std::vector<HexGap>& gaps) {
  std::map<std::pair<int, int>, int> row_site;  // (row, col) -> id
  std::vector<std::vector<int>> gap_site(gaps.size());
  int id = 0;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (int c = rows[r].col_lo; c <= rows[r].col_hi; ++c) row_site[{static_cast<int>(r), c}] = id++;
    if (r < gaps.size()) {
      for (std::size_t k = 0; k < gaps[r].cols.size(); ++k) gap_site[r].push_back(id++);
    }
  }

  // Corner (even-column) sites split into two classes; the class decides
  // which end of a subdivided hexagon side carries which color.
  auto corner_class_a = [](int r, int col) { return ((r + col / 2) % 2) == 0; };

  std::vector<RawEdge> edges;
  // Horizontal edges. A site pair (col j, j+1) is half of the hexagon side
  // whose corner sits at the even column; the side's base color alternates
  // between 0 and 1 along the row.
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (int j = rows[r].col_lo; j < rows[r].col_hi; ++j) {
      int corner_col = (j % 2 == 0) ? j : j + 1;
      int base = ((j - (j % 2)) / 2) % 2;
      int color = corner_class_a(static_cast<int>(r), corner_col) ? base : (base + 1) % 3;
      edges.push_back({row_site.at({static_cast<int>(r), j}), row_site.at({static_cast<int>(r), j + 1}), color});
    }
  }
  // Vertical edges (base color 2).
  for (std::size_t g = 0; g < gaps.size(); ++g) {
    for (std::size_t k = 0; k < gaps[g].cols.size(); ++k) {
      int col = gaps[g].cols[k];
      int conn = gap_site[g][k];
      int upper = row_site.at({static_cast<int>(g), col});
      edges.push_back({upper, conn, corner_class_a(static_cast<int>(g), col) ? 2 : 0});
      if (!gaps[g].dangling) {
        int lower = row_site.at({static_cast<int>(g) + 1, col});
        edges.push_back({conn, lower, corner_class_a(static_cast<int>(g) + 1, col) ? 2 : 0});
      }
    }
  }
  return finalize(id, Geometry::heavy_hex, std::move(edges));
}

}  // namespace

std::string_view geometry_name(Geometry g) {
  switch (g) {
    case Geometry::open_chain: return "open_chain";
    case Geometry::periodic_chain: return "periodic_chain";
    case Geometry::heavy_hex: return "heavy_hex";
    case Geometry::square: return "square";
  }
  throw std::invalid_argument("unknown geometry");
}

Geometry geometry_from_name(std::string_view name) {
  if (name == "open_chain") return Geometry::open_chain;
  if (name == "periodic_chain") return Geometry::periodic_chain;
  if (name == "heavy_hex") return Geometry::heavy_hex;
  if (name == "square") return Geometry::square;
  throw std::invalid_argument("unknown geometry: " + std::string(name));
}

int SiteGraph::n_colors() const {
  int k = 0;
  for (int c : colors) k = std::max(k, c + 1);
  return k;
}

std::vector<std::vector<int>> SiteGraph::color_layers() const {
  std::vector<std::vector<int>> layers(n_colors());
  for (int e = 0; e < n_edges(); ++e) layers[colors[e]].push_back(e);
  return layers;
}

void SiteGraph::validate() const {
  require(n_sites >= 2, "graph needs at least 2 sites");
  require(colors.size() == edges.size(), "colors must be index-aligned with edges");
  for (std::size_t e = 0; e < edges.size(); ++e) {
    auto [i, j] = edges[e];
    require(0 <= i && i < j && j < n_sites, "edges must satisfy 0 <= i < j < n_sites");
    if (e > 0) require(edges[e - 1] < edges[e], "edges must be sorted and unique");
    require(colors[e] >= 0, "colors must be non-negative");
  }
  // Proper coloring: edges sharing a site have distinct colors.
  std::vector<std::vector<int>> incident(n_sites);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    for (int s : {edges[e].first, edges[e].second}) {
      for (int other : incident[s]) {
        require(colors[other] != colors[e], "edge coloring is not proper");
      }
      incident[s].push_back(static_cast<int>(e));
    }
  }
}

SiteGraph open_chain(int n_sites) {
  require(n_sites >= 2, "open_chain needs n >= 2");
  std::vector<RawEdge> edges;
  for (int i = 0; i + 1 < n_sites; ++i) edges.push_back({i, i + 1, i % 2});
  return finalize(n_sites, Geometry::open_chain, std::move(edges));
}

SiteGraph periodic_chain(int n_sites) {
  require(n_sites >= 3, "periodic_chain needs n >= 3");
  std::vector<RawEdge> edges;
  for (int i = 0; i + 1 < n_sites; ++i) edges.push_back({i, i + 1, i % 2});
  // Closing edge: fits the alternating pattern for even rings, needs the
  // third color on odd rings (edge-chromatic number of an odd cycle).
  edges.push_back({n_sites - 1, 0, (n_sites % 2 == 0) ? 1 : 2});
  return finalize(n_sites, Geometry::periodic_chain, std::move(edges));
}

SiteGraph square_lattice(int rows, int cols) {
  require(rows >= 1 && cols >= 1 && rows * cols >= 2, "square lattice needs at least 2 sites");
  auto at = [cols](int r, int c) { return r * cols + c; };
  std::vector<RawEdge> edges;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c + 1 < cols; ++c) edges.push_back({at(r, c), at(r, c + 1), c % 2});
  }
  for (int r = 0; r + 1 < rows; ++r) {
    for (int c = 0; c < cols; ++c) edges.push_back({at(r, c), at(r + 1, c), 2 + r % 2});
  }
  return finalize(rows * cols, Geometry::square, std::move(edges));
}

SiteGraph heavy_hex_cells(int cell_rows, int cell_cols) {
  require(cell_rows >= 1 && cell_cols >= 1, "heavy_hex cell grid must be positive");
  std::vector<HexRow> rows(cell_rows + 1, HexRow{0, 4 * cell_cols});
  std::vector<HexGap> gaps(cell_rows);
  for (int g = 0; g < cell_rows; ++g) {
    int offset = (g % 2 == 0) ? 0 : 2;
    for (int c = offset; c <= 4 * cell_cols; c += 4) gaps[g].cols.push_back(c);
  }
  return build_heavy_hex(rows, gaps);
}

SiteGraph heavy_hex_device(HeavyHexDevice device) {
  if (device == HeavyHexDevice::device_127) {
    std::vector<HexRow> rows = {{0, 13}, {0, 14}, {0, 14}, {0, 14}, {0, 14}, {0, 14}, {1, 14}};
    std::vector<HexGap> gaps(6);
    for (int g = 0; g < 6; ++g) {
      int offset = (g % 2 == 0) ? 0 : 2;
      for (int c = offset; c <= 14; c += 4) gaps[g].cols.push_back(c);
    }
    return build_heavy_hex(rows, gaps);
  }
  // 133-site layout: seven full rows of 15 plus a final group of four
  // degree-1 connectors hanging below the bottom row.
  std::vector<HexRow> rows(7, HexRow{0, 14});
  std::vector<HexGap> gaps(7);
  for (int g = 0; g < 6; ++g) {
    int offset = (g % 2 == 0) ? 0 : 2;
    for (int c = offset; c <= 14; c += 4) gaps[g].cols.push_back(c);
  }
  gaps[6].cols = {0, 4, 8, 12};
  gaps[6].dangling = true;
  return build_heavy_hex(rows, gaps);
}

SiteGraph build_lattice(const LatticeSpec& spec) {
  switch (spec.geometry) {
    case Geometry::open_chain:
      return open_chain(spec.n);
    case Geometry::periodic_chain:
      return periodic_chain(spec.n);
    case Geometry::square:
      return square_lattice(spec.rows, spec.cols);
    case Geometry::heavy_hex:
      if (spec.device) return heavy_hex_device(*spec.device);
      return heavy_hex_cells(spec.rows, spec.cols);
  }
  throw std::invalid_argument("unknown geometry");
}

std::vector<int> chain_edge_order(const SiteGraph& graph) {
  require(graph.geometry == Geometry::open_chain || graph.geometry == Geometry::periodic_chain,
          "chain_edge_order requires a chain geometry");
  std::map<std::pair<int, int>, int> index;
  for (int e = 0; e < graph.n_edges(); ++e) index[graph.edges[e]] = e;
  std::vector<int> order;
  order.reserve(graph.edges.size());
  int n = graph.n_sites;
  int count = graph.geometry == Geometry::open_chain ? n - 1 : n;
  for (int k = 0; k < count; ++k) {
    int a = k;
    int b = (k + 1) % n;
    if (a > b) std::swap(a, b);
    order.push_back(index.at({a, b}));
  }
  return order;
}

CouplingMap uniform_couplings(const SiteGraph& graph, double j) {
  CouplingMap m;
  m.kind = CouplingKind::uniform;
  m.values.assign(graph.edges.size(), j);
  return m;
}

CouplingMap disordered_couplings(const SiteGraph& graph, std::uint64_t seed) {
  CouplingMap m;
  m.kind = CouplingKind::disordered;
  m.seed = seed;
  SplitMix64 rng(seed);
  m.values.reserve(graph.edges.size());
  for (std::size_t e = 0; e < graph.edges.size(); ++e) m.values.push_back(rng.next_symmetric());
  return m;
}

std::string graph_to_json(const SiteGraph& graph, const CouplingMap* couplings) {
  nlohmann::ordered_json doc;
  doc["n_sites"] = graph.n_sites;
  doc["geometry"] = geometry_name(graph.geometry);
  auto& edges = doc["edges"] = nlohmann::ordered_json::array();
  for (const auto& [i, j] : graph.edges) edges.push_back({i, j});
  doc["colors"] = graph.colors;
  if (couplings) {
    if (couplings->values.size() != graph.edges.size())
      throw std::invalid_argument("couplings must be index-aligned with edges");
    doc["couplings"] = couplings->values;
  }
  return doc.dump(2) + "\n";
}

SiteGraph graph_from_json(const std::string& text, CouplingMap* couplings_out) {
  auto doc = nlohmann::json::parse(text);
  SiteGraph g;
  g.n_sites = doc.at("n_sites").get<int>();
  g.geometry = geometry_from_name(doc.at("geometry").get<std::string>());
  for (const auto& e : doc.at("edges")) {
    require(e.is_array() && e.size() == 2, "edge entries must be [i, j]");
    g.edges.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  g.colors = doc.at("colors").get<std::vector<int>>();
  g.validate();
  if (couplings_out) {
    couplings_out->kind = CouplingKind::uniform;
    couplings_out->values.clear();
    if (doc.contains("couplings")) {
      couplings_out->values = doc.at("couplings").get<std::vector<double>>();
      require(couplings_out->values.size() == g.edges.size(),
              "couplings must be index-aligned with edges");
      bool all_equal = std::all_of(couplings_out->values.begin(), couplings_out->values.end(),
                                   [&](double v) { return v == couplings_out->values.front(); });
      couplings_out->kind = all_equal ? CouplingKind::uniform : CouplingKind::disordered;
    }
  }
  return g;
}

}  // namespace quanneal
