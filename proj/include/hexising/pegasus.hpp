// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "hexising/reduction.hpp"
#include "hexising/topology.hpp"

namespace hexising {

/// Pegasus qubit coordinate: orientation u (0 vertical, 1 horizontal),
/// perpendicular tile offset w, track k in [0,12), parallel tile offset z.
struct PegasusCoord {
    int u = 0, w = 0, k = 0, z = 0;
    friend auto operator<=>(const PegasusCoord&, const PegasusCoord&) = default;
};

enum class CouplerKind : std::uint8_t { Internal, External, Odd };

inline constexpr int kPegasusVOffset[12] = {2, 2, 2, 2, 6, 6, 6, 6, 10, 10, 10, 10};
inline constexpr int kPegasusHOffset[12] = {6, 6, 6, 6, 10, 10, 10, 10, 2, 2, 2, 2};

/// Pegasus graph P_M built from the coordinate crossing rules, trimmed to the
/// fabric (qubits with at least one internal coupler), minus dead elements.
class PegasusGraph {
  public:
    int m = 0;
    std::vector<int> nodes; // linear ids, sorted

    struct Edge {
        int a, b;
        CouplerKind kind;
    };
    std::vector<Edge> edges;

    bool has_node(int id) const { return present_.count(id) != 0; }
    bool has_coupler(int a, int b) const;
    const std::vector<int>& neighbors(int id) const;

    int linear_id(const PegasusCoord& c) const;
    PegasusCoord coord_of(int id) const;

    // construction helpers (used by build_pegasus)
    void add_node(int id) { present_.insert(id); }
    void add_edge(int a, int b, CouplerKind kind);
    void strip_node(int id);
    void strip_coupler(int a, int b);
    void finalize();

  private:
    std::unordered_set<int> present_;
    std::unordered_set<std::uint64_t> couplers_;
    std::unordered_map<int, std::vector<int>> adj_;
};

PegasusGraph build_pegasus(int m, const std::set<int>& dead_qubits = {},
                           const std::set<std::pair<int, int>>& dead_couplers = {});

/// One problem variable per qubit; every quadratic term must land on a
/// coupler.
struct NativeEmbedding {
    std::map<int, int> map; // variable -> qubit linear id
    int tile = 0;
};

/// nullopt on pass; otherwise the first violation found.
std::optional<std::string> validate_native_embedding(const ReducedIsing& reduced,
                                                     const PegasusGraph& graph,
                                                     const NativeEmbedding& embedding);

/// Layout constants of the translation template.  Candidate copy positions
/// are scanned on a tile-aligned grid; positions whose qubits are already
/// claimed fail placement and are skipped, so the scan packs copies at the
/// densest valid spacing by itself.  -1 means derive from the lattice.
struct TileLayoutParams {
    int c0 = -1;    // corner column of (rail 0, lattice column 0)
    int g0 = 2;     // matching vertical phase
    int dcol = 12;  // position scan steps, multiples of 12
    int drow = 12;
};

/// Greedy placement of up to max_copies translated copies of the structured
/// layout: heavy-hex rows run as diagonal chains of vertical corner qubits
/// and horizontal bridge qubits, rung bridges sit between the chains, slack
/// qubits ride on adjacent couplers.  Copies that collide with dead hardware
/// or fail validation are skipped.
std::vector<NativeEmbedding> tile_embeddings(const HeavyHexLattice& lattice,
                                             const ReducedIsing& reduced,
                                             const PegasusGraph& graph, int max_copies,
                                             const TileLayoutParams& params = {});

/// Annealer problem JSON: qubit-indexed h, coupler-indexed J, energy offset,
/// and a per-tile variable map.  Multiple tiles merge with disjoint supports.
std::string export_annealer_problem(const ReducedIsing& reduced,
                                    const std::vector<NativeEmbedding>& embeddings);

struct AnnealerProblem {
    std::map<int, double> h;
    std::map<std::pair<int, int>, double> j;
    double offset = 0.0;
    std::vector<NativeEmbedding> tiles;
};
AnnealerProblem parse_annealer_problem(const std::string& json_text);

} // namespace hexising
