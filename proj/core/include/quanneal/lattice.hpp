#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace quanneal {

enum class Geometry { open_chain, periodic_chain, heavy_hex, square };

std::string_view geometry_name(Geometry g);
Geometry geometry_from_name(std::string_view name);

/// Spin lattice: canonical edge list (i < j, lexicographically sorted) plus a
/// proper edge coloring. Edges of one color never share a site, so each color
/// forms one dense layer of simultaneously applicable two-site gates.
struct SiteGraph {
  int n_sites = 0;
  Geometry geometry = Geometry::open_chain;
  std::vector<std::pair<int, int>> edges;
  std::vector<int> colors;  // per edge, 0-based

  int n_edges() const { return static_cast<int>(edges.size()); }
  int n_colors() const;
  /// Edge indices grouped by color, colors ascending.
  std::vector<std::vector<int>> color_layers() const;
  /// Throws std::invalid_argument if any structural invariant is violated.
  void validate() const;
};

SiteGraph open_chain(int n_sites);
SiteGraph periodic_chain(int n_sites);
SiteGraph square_lattice(int rows, int cols);

/// Heavy-hex lattice of cell_rows x cell_cols hexagonal cells in the usual
/// staggered brick arrangement (degree <= 3, edge/site ratio -> 6/5).
SiteGraph heavy_hex_cells(int cell_rows, int cell_cols);

/// Full-device heavy-hex layouts: the 127-site (144 edges) and 133-site
/// (150 edges) processor topologies.
enum class HeavyHexDevice { device_127, device_133 };
SiteGraph heavy_hex_device(HeavyHexDevice device);

struct LatticeSpec {
  Geometry geometry = Geometry::open_chain;
  int n = 0;     // chains
  int rows = 0;  // square / heavy_hex cell grid
  int cols = 0;
  std::optional<HeavyHexDevice> device;  // heavy_hex only
};
SiteGraph build_lattice(const LatticeSpec& spec);

/// Maps chain position k to the index of edge (k, k+1 mod n) in the sorted
/// edge list. Only defined for chain geometries.
std::vector<int> chain_edge_order(const SiteGraph& graph);

enum class CouplingKind { uniform, disordered };

/// Per-edge couplings, index-aligned with SiteGraph::edges.
struct CouplingMap {
  CouplingKind kind = CouplingKind::uniform;
  std::uint64_t seed = 0;  // disordered only
  std::vector<double> values;
};

CouplingMap uniform_couplings(const SiteGraph& graph, double j);
/// I.i.d. uniform draws from [-1, 1] (SplitMix64 keyed by seed, one draw per
/// edge in canonical order), so instances are reproducible across platforms.
CouplingMap disordered_couplings(const SiteGraph& graph, std::uint64_t seed);

/// JSON document {n_sites, geometry, edges, colors, couplings}; arrays are
/// index-aligned with the canonical edge list. couplings may be omitted.
std::string graph_to_json(const SiteGraph& graph, const CouplingMap* couplings = nullptr);
SiteGraph graph_from_json(const std::string& text, CouplingMap* couplings_out = nullptr);

}  // namespace quanneal
