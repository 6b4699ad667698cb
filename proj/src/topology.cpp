// SPDX-License-Identifier: Apache-2.0

#include "hexising/topology.hpp"

#include <algorithm>
#include <array>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "hexising/errors.hpp"

namespace hexising {

void HeavyHexLattice::finalize() {
    if (num_nodes <= 0)
        throw ValidationError("lattice has no nodes");
    if (static_cast<int>(node_class.size()) != num_nodes)
        throw ValidationError("node class table does not match node count");

    for (auto& [u, v] : edges) {
        if (u == v)
            throw ValidationError("self loop on node " + std::to_string(u));
        if (u > v)
            std::swap(u, v);
        if (u < 0 || v >= num_nodes)
            throw ValidationError("edge references unknown node");
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
        throw ValidationError("duplicate edge");

    adj_.assign(num_nodes, {});
    for (const auto& [u, v] : edges) {
        adj_[u].push_back(v);
        adj_[v].push_back(u);
    }
    for (auto& nbrs : adj_)
        std::sort(nbrs.begin(), nbrs.end());

    for (const auto& [u, v] : edges) {
        if (node_class[u] == node_class[v])
            throw ValidationError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                                  ") joins two nodes of the same class");
    }
    for (int v = 0; v < num_nodes; ++v) {
        const int limit = node_class[v] == NodeClass::Corner ? 3 : 2;
        if (degree(v) > limit)
            throw ValidationError("node " + std::to_string(v) + " exceeds degree bound");
    }
    if (!positions.empty() && static_cast<int>(positions.size()) != num_nodes)
        throw ValidationError("position table does not match node count");
}

bool HeavyHexLattice::has_edge(int u, int v) const {
    if (u > v)
        std::swap(u, v);
    return std::binary_search(edges.begin(), edges.end(), std::make_pair(u, v));
}

namespace {

// Shared builder for the brick-pattern family.  Rails are horizontal lines of
// alternating corner (even column) and bridge (odd column) nodes; rung bridges
// connect rails at columns 0 mod 4 (even layers) or 2 mod 4 (odd layers).
// Node ids run rail 0, rung layer 0, rail 1, rung layer 1, ...
struct RowSpec {
    int col_lo;
    int col_hi;
};

HeavyHexLattice build_from_rows(const std::vector<RowSpec>& rails,
                                const std::string& name) {
    const int num_rails = static_cast<int>(rails.size());
    HeavyHexLattice lat;
    lat.name = name;
    std::map<std::pair<int, int>, int> rail_id; // (rail, col) -> id

    auto add_node = [&](NodeClass cls, bool is_rung, int row, int col) {
        lat.node_class.push_back(cls);
        lat.positions.push_back({is_rung, row, col});
        return lat.num_nodes++;
    };

    for (int r = 0; r < num_rails; ++r) {
        for (int c = rails[r].col_lo; c <= rails[r].col_hi; ++c) {
            const auto cls = (c % 2 == 0) ? NodeClass::Corner : NodeClass::Bridge;
            const int id = add_node(cls, false, r, c);
            rail_id[{r, c}] = id;
            if (c > rails[r].col_lo)
                lat.edges.push_back({id - 1, id});
        }
        if (r + 1 == num_rails)
            break;
        const int phase = (r % 2 == 0) ? 0 : 2;
        const int lo = std::max(rails[r].col_lo, rails[r + 1].col_lo);
        const int hi = std::min(rails[r].col_hi, rails[r + 1].col_hi);
        for (int c = phase; c <= hi; c += 4) {
            if (c < lo)
                continue;
            const int id = add_node(NodeClass::Bridge, true, r, c);
            lat.edges.push_back({rail_id[{r, c}], id});
            // rail r+1 is numbered after this rung layer; remember the hookup
            rail_id[{-(r + 1), c}] = id; // stash rung id keyed by target rail
        }
    }
    // Connect rungs to the rail below (ids exist now).
    for (int r = 1; r < num_rails; ++r) {
        const int phase = ((r - 1) % 2 == 0) ? 0 : 2;
        const int lo = std::max(rails[r - 1].col_lo, rails[r].col_lo);
        const int hi = std::min(rails[r - 1].col_hi, rails[r].col_hi);
        for (int c = phase; c <= hi; c += 4) {
            if (c < lo)
                continue;
            lat.edges.push_back({rail_id[{-r, c}], rail_id[{r, c}]});
        }
    }
    lat.finalize();
    return lat;
}

std::vector<RowSpec> washington_rows(bool completed) {
    std::vector<RowSpec> rows(7, {0, 14});
    if (!completed) {
        rows[0] = {0, 13};  // top right corner absent on the device
        rows[6] = {1, 14};  // lower left corner absent on the device
    }
    return rows;
}

} // namespace

HeavyHexLattice build_heavy_hex(int rows, int cols) {
    if (rows < 1 || cols < 1)
        throw ValidationError("heavy-hex size must be at least 1x1");
    std::vector<RowSpec> rails(rows + 1, {0, 4 * cols});
    return build_from_rows(rails, "heavyhex-" + std::to_string(rows) + "x" +
                                      std::to_string(cols));
}

HeavyHexLattice load_washington() {
    HeavyHexLattice lat = build_from_rows(washington_rows(false), "washington");
    // Two dead edges on the device, qubits 8-9 and 109-114.
    std::erase_if(lat.edges, [](const std::pair<int, int>& e) {
        return e == std::make_pair(8, 9) || e == std::make_pair(109, 114);
    });
    lat.finalize();
    return lat;
}

HeavyHexLattice washington_completed() {
    // Same ids as the device for 0..126; the two filler corners get 127
    // (row 0, column 14) and 128 (row 6, column 0).
    HeavyHexLattice dev = build_from_rows(washington_rows(false), "washington-completed");
    HeavyHexLattice lat = dev;
    lat.node_class.push_back(NodeClass::Corner);
    lat.positions.push_back({false, 0, 14});
    const int top_right = lat.num_nodes++;
    lat.node_class.push_back(NodeClass::Corner);
    lat.positions.push_back({false, 6, 0});
    const int bottom_left = lat.num_nodes++;
    lat.edges.push_back({13, top_right});
    lat.edges.push_back({113, bottom_left});
    lat.finalize();
    return lat;
}

std::vector<CubicSite> cubic_sites(const HeavyHexLattice& lattice) {
    std::vector<CubicSite> sites;
    for (int v = 0; v < lattice.num_nodes; ++v) {
        if (lattice.node_class[v] != NodeClass::Bridge || lattice.degree(v) != 2)
            continue;
        const auto& nb = lattice.neighbors(v);
        sites.push_back({nb[0], v, nb[1]});
    }
    std::sort(sites.begin(), sites.end(),
              [](const CubicSite& a, const CubicSite& b) { return a.center < b.center; });
    return sites;
}

std::vector<int> three_edge_coloring(const HeavyHexLattice& lattice) {
    const int m = static_cast<int>(lattice.edges.size());
    std::vector<int> color(m, 0);
    std::map<std::pair<int, int>, int> edge_index;
    for (int i = 0; i < m; ++i)
        edge_index[lattice.edges[i]] = i;
    auto index_of = [&](int u, int v) {
        if (u > v)
            std::swap(u, v);
        return edge_index.at({u, v});
    };

    constexpr int kColors = 3;
    // at[v][c-1] = neighbor joined to v by color c, or -1
    std::vector<std::array<int, kColors>> at(lattice.num_nodes, {-1, -1, -1});

    auto free_color = [&](int v) {
        for (int c = 1; c <= kColors; ++c)
            if (at[v][c - 1] < 0)
                return c;
        return 0;
    };

    for (int i = 0; i < m; ++i) {
        const auto [u, v] = lattice.edges[i];
        int chosen = 0;
        for (int c = 1; c <= kColors; ++c) {
            if (at[u][c - 1] < 0 && at[v][c - 1] < 0) {
                chosen = c;
                break;
            }
        }
        if (chosen == 0) {
            // Konig recoloring: a free at u but used at v, b free at v but
            // used at u.  Swap a/b along the maximal alternating path from v;
            // in a bipartite graph the path cannot reach u, so a becomes free
            // at both endpoints.
            const int a = free_color(u);
            const int b = free_color(v);
            if (a == 0 || b == 0)
                throw ValidationError("graph is not 3-edge-colorable (degree bound violated)");
            std::vector<int> path;
            int x = v, want = a;
            while (at[x][want - 1] >= 0) {
                const int y = at[x][want - 1];
                path.push_back(index_of(x, y));
                x = y;
                want = (want == a) ? b : a;
            }
            for (int ei : path) {
                const auto [p, q] = lattice.edges[ei];
                at[p][color[ei] - 1] = -1;
                at[q][color[ei] - 1] = -1;
            }
            for (int ei : path) {
                const auto [p, q] = lattice.edges[ei];
                color[ei] = (color[ei] == a) ? b : a;
                at[p][color[ei] - 1] = q;
                at[q][color[ei] - 1] = p;
            }
            chosen = a;
        }
        color[i] = chosen;
        at[u][chosen - 1] = v;
        at[v][chosen - 1] = u;
    }

    if (auto err = check_edge_coloring(lattice, color))
        throw ValidationError("internal coloring failure: " + *err);
    return color;
}

std::optional<std::string> check_edge_coloring(const HeavyHexLattice& lattice,
                                               const std::vector<int>& colors,
                                               int max_colors) {
    if (colors.size() != lattice.edges.size())
        return "color table size mismatch";
    std::set<std::pair<int, int>> seen; // (node, color)
    for (size_t i = 0; i < colors.size(); ++i) {
        if (colors[i] < 1 || colors[i] > max_colors)
            return "edge " + std::to_string(i) + " has color out of range";
        for (int v : {lattice.edges[i].first, lattice.edges[i].second}) {
            if (!seen.insert({v, colors[i]}).second)
                return "node " + std::to_string(v) + " has two edges of color " +
                       std::to_string(colors[i]);
        }
    }
    return std::nullopt;
}

void write_lattice(const HeavyHexLattice& lattice, std::ostream& out) {
    out << "heavyhex v1\n";
    for (int v = 0; v < lattice.num_nodes; ++v)
        out << "node " << v << ' '
            << (lattice.node_class[v] == NodeClass::Corner ? "CORNER" : "BRIDGE") << '\n';
    for (const auto& [u, v] : lattice.edges)
        out << "edge " << u << ' ' << v << '\n';
}

HeavyHexLattice parse_lattice(std::istream& in, const std::string& name) {
    std::string line;
    if (!std::getline(in, line) || line != "heavyhex v1")
        throw ValidationError("expected header 'heavyhex v1'");

    HeavyHexLattice lat;
    lat.name = name;
    std::map<int, NodeClass> classes;
    std::set<std::pair<int, int>> edge_set;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        std::istringstream ls(line);
        std::string kind;
        ls >> kind;
        if (kind == "node") {
            int id;
            std::string cls;
            if (!(ls >> id >> cls))
                throw ValidationError("malformed node line: " + line);
            NodeClass nc;
            if (cls == "CORNER")
                nc = NodeClass::Corner;
            else if (cls == "BRIDGE")
                nc = NodeClass::Bridge;
            else
                throw ValidationError("unknown node class: " + cls);
            if (!classes.emplace(id, nc).second)
                throw ValidationError("duplicate node " + std::to_string(id));
        } else if (kind == "edge") {
            int u, v;
            if (!(ls >> u >> v))
                throw ValidationError("malformed edge line: " + line);
            if (u > v)
                std::swap(u, v);
            if (!edge_set.insert({u, v}).second)
                throw ValidationError("duplicate edge " + std::to_string(u) + " " +
                                      std::to_string(v));
        } else {
            throw ValidationError("unknown line kind: " + kind);
        }
    }
    if (classes.empty())
        throw ValidationError("lattice file has no nodes");
    // ids must be dense 0..n-1
    int expect = 0;
    for (const auto& [id, cls] : classes) {
        if (id != expect++)
            throw ValidationError("node ids must be dense from 0");
        lat.node_class.push_back(cls);
    }
    lat.num_nodes = expect;
    lat.edges.assign(edge_set.begin(), edge_set.end());
    lat.finalize();
    return lat;
}

} // namespace hexising
