// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hexising {

enum class NodeClass : std::uint8_t { Corner, Bridge };

/// A degree-2 bridge node together with its two corner neighbors,
/// neighbor order fixed by ascending node id.
struct CubicSite {
    int n1 = -1;
    int center = -1;
    int n2 = -1;
    friend auto operator<=>(const CubicSite&, const CubicSite&) = default;
};

/// Grid position of a node in the row/column layout the generators use.
/// Rail nodes live on horizontal lines (rail index, column); rung nodes sit
/// between rails (layer index, column).  Only generated lattices carry this;
/// lattices parsed from files do not.
struct NodePos {
    bool is_rung = false;
    int row = 0; // rail index, or rung layer index (between rails row and row+1)
    int col = 0;
};

/// Heavy-hexagonal device graph: bipartite, corner nodes of degree <= 3 and
/// bridge nodes of degree <= 2.  Node ids are dense from 0.
class HeavyHexLattice {
  public:
    int num_nodes = 0;
    std::vector<NodeClass> node_class;           // indexed by node id
    std::vector<std::pair<int, int>> edges;      // normalized u < v, sorted
    std::string name;                            // identity used in file references

    std::vector<NodePos> positions;              // empty when unknown

    void finalize(); // sorts edges, builds adjacency, validates invariants

    int degree(int v) const { return static_cast<int>(adj_[v].size()); }
    const std::vector<int>& neighbors(int v) const { return adj_[v]; }
    bool has_edge(int u, int v) const;
    bool has_geometry() const { return !positions.empty(); }

  private:
    std::vector<std::vector<int>> adj_;
};

/// Lattice of rows x cols fused heavy hexagons in a brick pattern.
/// (1,1) is a single 12-node ring.
HeavyHexLattice build_heavy_hex(int rows, int cols);

/// The fixed 127-node device graph with the two dead edges (8,9) and
/// (109,114) absent.
HeavyHexLattice load_washington();

/// The 127-node layout completed to a full lattice: the two boundary corner
/// nodes are filled in (ids 127 and 128) and the two dead edges restored.
/// Used as the embedding template; the filler nodes carry no problem terms.
HeavyHexLattice washington_completed();

/// Proper edge coloring with at most 3 colors (1-based), aligned with the
/// lattice edge list.  Deterministic: edges processed in sorted order with
/// lowest-available-color tie breaking; conflicts resolved by alternating-path
/// recoloring on the bipartite graph.
std::vector<int> three_edge_coloring(const HeavyHexLattice& lattice);

/// Checks that `colors` is a proper edge coloring of `lattice` using at most
/// `max_colors` colors.  Returns an explanation on failure.
std::optional<std::string> check_edge_coloring(const HeavyHexLattice& lattice,
                                               const std::vector<int>& colors,
                                               int max_colors = 3);

/// One triple per degree-2 bridge node, sorted by center id.
std::vector<CubicSite> cubic_sites(const HeavyHexLattice& lattice);

// Lattice file format ("heavyhex v1"): header line, then
//   node <id> <CORNER|BRIDGE>
//   edge <id> <id>
void write_lattice(const HeavyHexLattice& lattice, std::ostream& out);
HeavyHexLattice parse_lattice(std::istream& in, const std::string& name = "");

} // namespace hexising
