#include <doctest.h>

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "hexising/errors.hpp"
#include "hexising/pegasus.hpp"
#include "hexising/rng.hpp"

using namespace hexising;

namespace {

// Independent enumeration oracle: tests every qubit pair directly against the
// geometric definitions instead of walking crossings arithmetically.
struct PegasusOracle {
    int nodes = 0;
    int edges = 0;
    std::map<int, int> degree_hist;
};

PegasusOracle enumerate_pegasus(int m) {
    struct Q {
        int u, w, k, z;
    };
    std::vector<Q> all;
    for (int u = 0; u < 2; ++u)
        for (int w = 0; w < m; ++w)
            for (int k = 0; k < 12; ++k)
                for (int z = 0; z + 1 < m; ++z)
                    all.push_back({u, w, k, z});

    auto crosses = [&](const Q& v, const Q& h) {
        // v vertical, h horizontal
        const int col = 12 * v.w + v.k;
        const int row = 12 * h.w + h.k;
        const int ys = 12 * v.z + kPegasusVOffset[v.k];
        const int xs = 12 * h.z + kPegasusHOffset[h.k];
        return col >= xs && col <= xs + 11 && row >= ys && row <= ys + 11;
    };

    const int n = static_cast<int>(all.size());
    std::vector<std::set<int>> adj(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (all[i].u == 0 && all[j].u == 1 && crosses(all[i], all[j])) {
                adj[i].insert(j);
                adj[j].insert(i);
            }
        }
    }
    std::vector<char> keep(n, 0);
    for (int i = 0; i < n; ++i)
        keep[i] = !adj[i].empty();
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (!keep[i] || !keep[j] || all[i].u != all[j].u)
                continue;
            const bool same_track = all[i].w == all[j].w && all[i].k == all[j].k;
            const bool external = same_track && std::abs(all[i].z - all[j].z) == 1;
            const bool odd = all[i].w == all[j].w && all[i].z == all[j].z &&
                             (all[i].k / 2 == all[j].k / 2) && all[i].k != all[j].k;
            if (external || odd) {
                adj[i].insert(j);
                adj[j].insert(i);
            }
        }
    }
    PegasusOracle out;
    for (int i = 0; i < n; ++i) {
        if (!keep[i])
            continue;
        ++out.nodes;
        int deg = 0;
        for (int j : adj[i])
            deg += keep[j];
        ++out.degree_hist[deg];
        for (int j : adj[i])
            if (keep[j] && j > i)
                ++out.edges;
    }
    return out;
}

std::pair<HeavyHexLattice, ReducedIsing> washington_template() {
    auto lat = washington_completed();
    const auto inst = generate_instance(lat, 1);
    auto red = reduce_instance(inst, &lat);
    return {std::move(lat), std::move(red)};
}

} // namespace

TEST_CASE("pegasus generator agrees with the pairwise oracle for small sizes") {
    for (int m : {2, 3, 4}) {
        const auto g = build_pegasus(m);
        const auto oracle = enumerate_pegasus(m);
        CHECK(static_cast<int>(g.nodes.size()) == oracle.nodes);
        CHECK(static_cast<int>(g.edges.size()) == oracle.edges);
        std::map<int, int> hist;
        for (int id : g.nodes)
            ++hist[static_cast<int>(g.neighbors(id).size())];
        CHECK(hist == oracle.degree_hist);
    }
    CHECK_THROWS_AS(build_pegasus(1), ValidationError);
}

TEST_CASE("every internal coupler joins opposite orientations") {
    const auto g = build_pegasus(3);
    for (const auto& e : g.edges) {
        const auto ca = g.coord_of(e.a), cb = g.coord_of(e.b);
        if (e.kind == CouplerKind::Internal)
            CHECK(ca.u != cb.u);
        else
            CHECK(ca.u == cb.u);
        CHECK(g.linear_id(ca) == e.a);
        CHECK(g.linear_id(cb) == e.b);
    }
}

TEST_CASE("dead elements are subtracted and validated") {
    const auto ideal = build_pegasus(16);
    std::set<int> dead(ideal.nodes.begin(), ideal.nodes.begin() + 13);
    const auto g = build_pegasus(16, dead);
    CHECK(g.nodes.size() == ideal.nodes.size() - 13);
    for (int q : dead)
        CHECK(!g.has_node(q));

    CHECK_THROWS_AS(build_pegasus(2, {999999}), ValidationError);
    CHECK_THROWS_AS(build_pegasus(2, {}, {{0, 1}}), ValidationError);

    const auto& e = ideal.edges.front();
    const auto g2 = build_pegasus(16, {}, {{e.a, e.b}});
    CHECK(!g2.has_coupler(e.a, e.b));
    CHECK(g2.edges.size() == ideal.edges.size() - 1);
}

TEST_CASE("embedding validator") {
    const auto g = build_pegasus(2);
    SUBCASE("empty problem passes") {
        ReducedIsing empty;
        CHECK(!validate_native_embedding(empty, g, {}));
    }
    SUBCASE("two variables on one qubit fail") {
        ReducedIsing red;
        red.num_vars = 2;
        red.linear = {1.0, 1.0};
        NativeEmbedding emb;
        emb.map = {{0, g.nodes[0]}, {1, g.nodes[0]}};
        const auto err = validate_native_embedding(red, g, emb);
        REQUIRE(err.has_value());
        CHECK(err->find("twice") != std::string::npos);
    }
    SUBCASE("terms must land on couplers") {
        ReducedIsing red;
        red.num_vars = 2;
        red.linear = {1.0, 1.0};
        red.quadratic[{0, 1}] = -1.0;
        NativeEmbedding emb;
        emb.map = {{0, g.nodes[0]}, {1, g.neighbors(g.nodes[0])[0]}};
        CHECK(!validate_native_embedding(red, g, emb));
        int far = -1;
        for (int q : g.nodes)
            if (q != g.nodes[0] && !g.has_coupler(g.nodes[0], q)) {
                far = q;
                break;
            }
        REQUIRE(far >= 0);
        emb.map[1] = far;
        CHECK(validate_native_embedding(red, g, emb).has_value());
    }
}

TEST_CASE("ideal P16 hosts six disjoint copies of the washington template") {
    const auto [lat, red] = washington_template();
    const auto g = build_pegasus(16);
    const auto tiles = tile_embeddings(lat, red, g, 6);
    REQUIRE(tiles.size() == 6);
    std::set<int> all_qubits;
    for (const auto& t : tiles) {
        CHECK(!validate_native_embedding(red, g, t));
        for (const auto& [v, q] : t.map)
            CHECK(all_qubits.insert(q).second); // pairwise disjoint
    }

    // frozen first-copy fixture
    std::ifstream in(std::string(HEXISING_SOURCE_DIR) + "/data/washington_p16_tile0.json");
    REQUIRE(in.good());
    const auto frozen = nlohmann::json::parse(in);
    CHECK(frozen.size() == tiles[0].map.size());
    for (const auto& [v, q] : tiles[0].map)
        CHECK(frozen.at(std::to_string(v)).get<int>() == q);
}

TEST_CASE("tiling skips copies that touch dead hardware") {
    const auto [lat, red] = washington_template();
    const auto ideal = build_pegasus(16);
    const auto tiles = tile_embeddings(lat, red, ideal, 6);
    REQUIRE(tiles.size() == 6);
    // kill one qubit of the first copy's region
    const int victim = tiles[0].map.begin()->second;
    const auto g = build_pegasus(16, {victim});
    const auto fewer = tile_embeddings(lat, red, g, 6);
    CHECK(fewer.size() <= 5);
    for (const auto& t : fewer)
        CHECK(!validate_native_embedding(red, g, t));
}

TEST_CASE("randomized dead qubits never produce invalid or overlapping tiles") {
    const auto [lat, red] = washington_template();
    const auto ideal = build_pegasus(16);
    Prng rng(31337);
    for (int trial = 0; trial < 25; ++trial) {
        std::set<int> dead;
        const int kills = 1 + static_cast<int>(rng.next_below(40));
        for (int k = 0; k < kills; ++k)
            dead.insert(ideal.nodes[rng.next_below(ideal.nodes.size())]);
        const auto g = build_pegasus(16, dead);
        const auto tiles = tile_embeddings(lat, red, g, 6);
        std::set<int> used;
        for (const auto& t : tiles) {
            CHECK(!validate_native_embedding(red, g, t));
            for (const auto& [v, q] : t.map) {
                CHECK(used.insert(q).second);
                CHECK(dead.count(q) == 0);
            }
        }
    }
}

TEST_CASE("annealer problem export") {
    SUBCASE("empty problem") {
        ReducedIsing empty;
        const auto text = export_annealer_problem(empty, {NativeEmbedding{}});
        const auto back = parse_annealer_problem(text);
        CHECK(back.h.empty());
        CHECK(back.j.empty());
    }
    SUBCASE("round trip and disjoint coupler keys across tiles") {
        const auto lat = build_heavy_hex(1, 1);
        const auto inst = generate_instance(lat, 3);
        const auto red = reduce_instance(inst, &lat);
        const auto g = build_pegasus(6);
        const auto tiles = tile_embeddings(lat, red, g, 2);
        REQUIRE(tiles.size() == 2);
        const auto text = export_annealer_problem(red, tiles);
        const auto back = parse_annealer_problem(text);
        CHECK(back.offset == red.offset);
        CHECK(back.tiles.size() == 2);
        CHECK(back.h.size() == 2 * static_cast<std::size_t>(red.num_vars));
        const auto text2 = export_annealer_problem(red, tiles);
        CHECK(text == text2);

        // energy through the exported maps equals the evaluator, exactly
        Prng rng(5);
        for (int rep = 0; rep < 10; ++rep) {
            std::vector<std::int8_t> spins(red.num_vars);
            for (auto& s : spins)
                s = static_cast<std::int8_t>(rng.next_spin());
            for (const auto& t : back.tiles) {
                std::map<int, int> spin_of_qubit;
                for (const auto& [v, q] : t.map)
                    spin_of_qubit[q] = spins[v];
                double e = back.offset;
                for (const auto& [q, h] : back.h)
                    if (spin_of_qubit.count(q))
                        e += h * spin_of_qubit[q];
                for (const auto& [pr, c] : back.j)
                    if (spin_of_qubit.count(pr.first) && spin_of_qubit.count(pr.second))
                        e += c * spin_of_qubit[pr.first] * spin_of_qubit[pr.second];
                CHECK(e == doctest::Approx(evaluate_reduced(red, spins)).epsilon(1e-12));
            }
        }
    }
    SUBCASE("overlapping embeddings are rejected") {
        const auto lat = build_heavy_hex(1, 1);
        const auto inst = generate_instance(lat, 3);
        const auto red = reduce_instance(inst, &lat);
        const auto g = build_pegasus(6);
        const auto tiles = tile_embeddings(lat, red, g, 1);
        REQUIRE(tiles.size() == 1);
        CHECK_THROWS_AS(export_annealer_problem(red, {tiles[0], tiles[0]}),
                        ValidationError);
    }
}
