#include <doctest.h>

#include <algorithm>
#include <array>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "hexising/errors.hpp"
#include "hexising/topology.hpp"

using namespace hexising;

namespace {

// Second constructor used as an oracle: node/edge sets from closed-form
// coordinate enumeration instead of sequential id assignment.
struct LatticeCounts {
    int nodes, edges, corners, bridges;
    std::map<int, int> degree_hist;
};

LatticeCounts enumerate_by_coordinates(int rows, int cols) {
    using Key = std::tuple<int, int, int>; // kind (0 rail, 1 rung), row, col
    std::set<Key> nodes;
    std::set<std::pair<Key, Key>> edges;
    for (int r = 0; r <= rows; ++r)
        for (int c = 0; c <= 4 * cols; ++c)
            nodes.insert({0, r, c});
    for (int layer = 0; layer < rows; ++layer) {
        const int phase = (layer % 2 == 0) ? 0 : 2;
        for (int c = phase; c <= 4 * cols; c += 4)
            nodes.insert({1, layer, c});
    }
    auto add_edge = [&](Key a, Key b) {
        if (b < a)
            std::swap(a, b);
        edges.insert({a, b});
    };
    for (int r = 0; r <= rows; ++r)
        for (int c = 0; c < 4 * cols; ++c)
            add_edge({0, r, c}, {0, r, c + 1});
    for (int layer = 0; layer < rows; ++layer) {
        const int phase = (layer % 2 == 0) ? 0 : 2;
        for (int c = phase; c <= 4 * cols; c += 4) {
            add_edge({1, layer, c}, {0, layer, c});
            add_edge({1, layer, c}, {0, layer + 1, c});
        }
    }
    std::map<Key, int> degree;
    for (const auto& [a, b] : edges) {
        ++degree[a];
        ++degree[b];
    }
    LatticeCounts out{};
    out.nodes = static_cast<int>(nodes.size());
    out.edges = static_cast<int>(edges.size());
    for (const auto& k : nodes) {
        const auto [kind, r, c] = k;
        const bool corner = kind == 0 && c % 2 == 0;
        corner ? ++out.corners : ++out.bridges;
        ++out.degree_hist[degree[k]];
    }
    return out;
}

HeavyHexLattice lattice_from_parts(int n, const std::vector<NodeClass>& cls,
                                   const std::vector<std::pair<int, int>>& edges) {
    HeavyHexLattice lat;
    lat.num_nodes = n;
    lat.node_class = cls;
    lat.edges = edges;
    lat.finalize();
    return lat;
}

void check_invariants(const HeavyHexLattice& lat) {
    for (const auto& [u, v] : lat.edges)
        CHECK(lat.node_class[u] != lat.node_class[v]); // bipartite corner/bridge
    for (int v = 0; v < lat.num_nodes; ++v) {
        const int limit = lat.node_class[v] == NodeClass::Corner ? 3 : 2;
        CHECK(lat.degree(v) <= limit);
    }
}

} // namespace

TEST_CASE("single heavy hexagon is a 12-ring with six cubic sites") {
    const auto lat = build_heavy_hex(1, 1);
    CHECK(lat.num_nodes == 12);
    CHECK(lat.edges.size() == 12);
    int bridges = 0;
    for (int v = 0; v < lat.num_nodes; ++v)
        if (lat.node_class[v] == NodeClass::Bridge) {
            ++bridges;
            CHECK(lat.degree(v) == 2);
        }
    CHECK(bridges == 6);
    CHECK(cubic_sites(lat).size() == 6);
    check_invariants(lat);
}

TEST_CASE("parametric lattices match the coordinate enumeration oracle") {
    for (const auto& [rows, cols] : {std::pair{2, 2}, {1, 3}, {3, 2}}) {
        const auto lat = build_heavy_hex(rows, cols);
        const auto oracle = enumerate_by_coordinates(rows, cols);
        CHECK(lat.num_nodes == oracle.nodes);
        CHECK(static_cast<int>(lat.edges.size()) == oracle.edges);
        int corners = 0;
        std::map<int, int> hist;
        for (int v = 0; v < lat.num_nodes; ++v) {
            if (lat.node_class[v] == NodeClass::Corner)
                ++corners;
            ++hist[lat.degree(v)];
        }
        CHECK(corners == oracle.corners);
        CHECK(hist == oracle.degree_hist);
        check_invariants(lat);
    }
    CHECK_THROWS_AS(build_heavy_hex(0, 1), ValidationError);
}

TEST_CASE("washington fixture matches the device facts") {
    const auto lat = load_washington();
    CHECK(lat.num_nodes == 127);
    CHECK(lat.edges.size() == 142);
    CHECK(!lat.has_edge(8, 9));
    CHECK(!lat.has_edge(109, 114));
    check_invariants(lat);

    // all intact rung qubits and their rail attachment points
    const std::vector<std::array<int, 3>> rungs = {
        {14, 0, 18},     {15, 4, 22},     {16, 8, 26},     {17, 12, 30},
        {33, 20, 39},    {34, 24, 43},    {35, 28, 47},    {36, 32, 51},
        {52, 37, 56},    {53, 41, 60},    {54, 45, 64},    {55, 49, 68},
        {71, 58, 77},    {72, 62, 81},    {73, 66, 85},    {74, 70, 89},
        {90, 75, 94},    {91, 79, 98},    {92, 83, 102},   {93, 87, 106},
        {110, 100, 118}, {111, 104, 122}, {112, 108, 126}};
    for (const auto& [mid, top, bottom] : rungs) {
        CHECK(lat.has_edge(top, mid));
        CHECK(lat.has_edge(mid, bottom));
        CHECK(lat.node_class[mid] == NodeClass::Bridge);
    }
    // the rung at 109 lost its lower edge on the device
    CHECK(lat.has_edge(96, 109));
    CHECK(lat.degree(109) == 1);
    CHECK(lat.degree(13) == 1);
    CHECK(lat.degree(113) == 1);

    const auto completed = washington_completed();
    CHECK(completed.num_nodes == 129);
    CHECK(completed.edges.size() == 146);
    CHECK(completed.has_edge(8, 9));
    CHECK(completed.has_edge(109, 114));
    CHECK(completed.has_edge(13, 127));
    CHECK(completed.has_edge(113, 128));
    CHECK(cubic_sites(completed).size() == 73);
}

TEST_CASE("washington fixture file matches the loader") {
    const auto lat = load_washington();
    std::ostringstream current;
    write_lattice(lat, current);
    std::ifstream in(std::string(HEXISING_SOURCE_DIR) + "/data/washington.heavyhex");
    REQUIRE(in.good());
    std::stringstream frozen;
    frozen << in.rdbuf();
    CHECK(current.str() == frozen.str());
}

TEST_CASE("cubic sites are the degree-2 bridges with sorted neighbors") {
    const auto lat = build_heavy_hex(1, 1);
    for (const auto& s : cubic_sites(lat)) {
        CHECK(s.n1 < s.n2);
        CHECK(lat.node_class[s.center] == NodeClass::Bridge);
        CHECK(lat.degree(s.center) == 2);
    }

    // a degree-1 bridge yields no triple
    const auto path = lattice_from_parts(
        3, {NodeClass::Corner, NodeClass::Bridge, NodeClass::Corner}, {{0, 1}, {1, 2}});
    CHECK(cubic_sites(path).size() == 1);
    const auto dangling =
        lattice_from_parts(2, {NodeClass::Corner, NodeClass::Bridge}, {{0, 1}});
    CHECK(cubic_sites(dangling).empty());

    // washington: count equals an independent degree scan
    const auto wash = load_washington();
    int expected = 0;
    for (int v = 0; v < wash.num_nodes; ++v)
        if (wash.node_class[v] == NodeClass::Bridge && wash.degree(v) == 2)
            ++expected;
    CHECK(static_cast<int>(cubic_sites(wash).size()) == expected);
    CHECK(expected == 69);
}

TEST_CASE("edge coloring is proper with at most three colors") {
    SUBCASE("hexagon") {
        const auto lat = build_heavy_hex(1, 1);
        const auto colors = three_edge_coloring(lat);
        CHECK(!check_edge_coloring(lat, colors));
    }
    SUBCASE("three-edge star needs three distinct colors") {
        const auto star = lattice_from_parts(
            4,
            {NodeClass::Corner, NodeClass::Bridge, NodeClass::Bridge, NodeClass::Bridge},
            {{0, 1}, {0, 2}, {0, 3}});
        const auto colors = three_edge_coloring(star);
        CHECK(!check_edge_coloring(star, colors));
        CHECK(std::set<int>(colors.begin(), colors.end()).size() == 3);
    }
    SUBCASE("washington") {
        const auto lat = load_washington();
        const auto colors = three_edge_coloring(lat);
        CHECK(!check_edge_coloring(lat, colors));
    }
    SUBCASE("deterministic and valid under relabeling") {
        const auto lat = build_heavy_hex(2, 2);
        const auto c1 = three_edge_coloring(lat);
        const auto c2 = three_edge_coloring(lat);
        CHECK(c1 == c2);

        std::vector<int> perm(lat.num_nodes);
        std::iota(perm.begin(), perm.end(), 0);
        std::mt19937_64 rng(7);
        std::shuffle(perm.begin(), perm.end(), rng);
        HeavyHexLattice shuffled;
        shuffled.num_nodes = lat.num_nodes;
        shuffled.node_class.resize(lat.num_nodes);
        for (int v = 0; v < lat.num_nodes; ++v)
            shuffled.node_class[perm[v]] = lat.node_class[v];
        for (const auto& [u, v] : lat.edges)
            shuffled.edges.push_back({perm[u], perm[v]});
        shuffled.finalize();
        const auto c3 = three_edge_coloring(shuffled);
        CHECK(!check_edge_coloring(shuffled, c3));

        // canonical renaming (colors by first appearance) is idempotent
        auto canonicalize = [](std::vector<int> colors) {
            std::map<int, int> rename;
            for (auto& c : colors) {
                auto [it, fresh] = rename.emplace(c, static_cast<int>(rename.size()) + 1);
                c = it->second;
            }
            return colors;
        };
        CHECK(canonicalize(c3) == canonicalize(canonicalize(c3)));
    }
    SUBCASE("rejects degree violations") {
        HeavyHexLattice bad;
        bad.num_nodes = 5;
        bad.node_class = {NodeClass::Corner, NodeClass::Bridge, NodeClass::Bridge,
                          NodeClass::Bridge, NodeClass::Bridge};
        bad.edges = {{0, 1}, {0, 2}, {0, 3}, {0, 4}};
        CHECK_THROWS_AS(bad.finalize(), ValidationError);
    }
}

TEST_CASE("lattice files round trip and the parser rejects bad input") {
    const auto lat = build_heavy_hex(2, 1);
    std::ostringstream out;
    write_lattice(lat, out);
    std::istringstream in(out.str());
    const auto back = parse_lattice(in, lat.name);
    CHECK(back.num_nodes == lat.num_nodes);
    CHECK(back.edges == lat.edges);
    CHECK(back.node_class == lat.node_class);

    auto parse_text = [](const std::string& text) {
        std::istringstream s(text);
        return parse_lattice(s);
    };
    CHECK_THROWS_AS(parse_text("nonsense\n"), ValidationError);
    CHECK_THROWS_AS(parse_text("heavyhex v1\nnode 0 CORNER\nnode 1 WEIRD\n"),
                    ValidationError);
    CHECK_THROWS_AS(
        parse_text("heavyhex v1\nnode 0 CORNER\nnode 1 BRIDGE\nedge 0 1\nedge 1 0\n"),
        ValidationError);
}
