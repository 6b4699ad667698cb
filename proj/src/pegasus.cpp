// SPDX-License-Identifier: Apache-2.0

#include "hexising/pegasus.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "hexising/detail/format.hpp"
#include "hexising/errors.hpp"

namespace hexising {

namespace {

inline std::uint64_t pack(int a, int b) {
    if (a > b)
        std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}

inline int mod12(int x) { return ((x % 12) + 12) % 12; }

} // namespace

bool PegasusGraph::has_coupler(int a, int b) const { return couplers_.count(pack(a, b)); }

const std::vector<int>& PegasusGraph::neighbors(int id) const {
    static const std::vector<int> empty;
    auto it = adj_.find(id);
    return it == adj_.end() ? empty : it->second;
}

int PegasusGraph::linear_id(const PegasusCoord& c) const {
    return ((c.u * m + c.w) * 12 + c.k) * (m - 1) + c.z;
}

PegasusCoord PegasusGraph::coord_of(int id) const {
    PegasusCoord c;
    c.z = id % (m - 1);
    id /= (m - 1);
    c.k = id % 12;
    id /= 12;
    c.w = id % m;
    c.u = id / m;
    return c;
}

void PegasusGraph::add_edge(int a, int b, CouplerKind kind) {
    if (!couplers_.insert(pack(a, b)).second)
        return;
    edges.push_back({std::min(a, b), std::max(a, b), kind});
    adj_[a].push_back(b);
    adj_[b].push_back(a);
}

void PegasusGraph::strip_node(int id) {
    present_.erase(id);
    for (int nb : adj_[id]) {
        couplers_.erase(pack(id, nb));
        auto& v = adj_[nb];
        v.erase(std::remove(v.begin(), v.end(), id), v.end());
    }
    adj_.erase(id);
    std::erase_if(edges, [&](const Edge& e) { return e.a == id || e.b == id; });
}

void PegasusGraph::strip_coupler(int a, int b) {
    couplers_.erase(pack(a, b));
    std::erase_if(edges, [&](const Edge& e) {
        return std::min(a, b) == e.a && std::max(a, b) == e.b;
    });
    auto& va = adj_[a];
    va.erase(std::remove(va.begin(), va.end(), b), va.end());
    auto& vb = adj_[b];
    vb.erase(std::remove(vb.begin(), vb.end(), a), vb.end());
}

void PegasusGraph::finalize() {
    nodes.assign(present_.begin(), present_.end());
    std::sort(nodes.begin(), nodes.end());
    for (auto& [id, nbrs] : adj_)
        std::sort(nbrs.begin(), nbrs.end());
    std::sort(edges.begin(), edges.end(), [](const Edge& x, const Edge& y) {
        return std::tie(x.a, x.b) < std::tie(y.a, y.b);
    });
}

PegasusGraph build_pegasus(int m, const std::set<int>& dead_qubits,
                           const std::set<std::pair<int, int>>& dead_couplers) {
    if (m < 2)
        throw ValidationError("Pegasus size must be at least 2");
    PegasusGraph g;
    g.m = m;

    // Internal couplers from segment crossings; a vertical qubit at column
    // 12w+k spans rows [12z+off, 12z+off+11].
    std::vector<char> has_internal(static_cast<std::size_t>(24 * m * (m - 1)), 0);
    auto vid = [&](int w, int k, int z) { return g.linear_id({0, w, k, z}); };
    auto hid = [&](int w, int k, int z) { return g.linear_id({1, w, k, z}); };

    std::vector<PegasusGraph::Edge> internal;
    for (int w = 0; w < m; ++w) {
        for (int k = 0; k < 12; ++k) {
            const int col = 12 * w + k;
            for (int z = 0; z + 1 < m; ++z) {
                const int ystart = 12 * z + kPegasusVOffset[k];
                for (int y = ystart; y < ystart + 12; ++y) {
                    const int wh = y / 12, kh = y % 12;
                    if (wh >= m)
                        break;
                    const int rel = col - kPegasusHOffset[kh];
                    if (rel < 0)
                        continue;
                    const int zh = rel / 12;
                    if (zh + 1 >= m)
                        continue;
                    const int a = vid(w, k, z);
                    const int b = hid(wh, kh, zh);
                    internal.push_back({std::min(a, b), std::max(a, b),
                                        CouplerKind::Internal});
                    has_internal[a] = has_internal[b] = 1;
                }
            }
        }
    }

    // Fabric: keep qubits that cross something.
    for (int id = 0; id < 24 * m * (m - 1); ++id)
        if (has_internal[id])
            g.add_node(id);
    for (const auto& e : internal)
        g.add_edge(e.a, e.b, CouplerKind::Internal);

    for (int u = 0; u < 2; ++u) {
        for (int w = 0; w < m; ++w) {
            for (int k = 0; k < 12; ++k) {
                for (int z = 0; z + 1 < m; ++z) {
                    const int id = g.linear_id({u, w, k, z});
                    if (!g.has_node(id))
                        continue;
                    if (z + 2 < m) {
                        const int ext = g.linear_id({u, w, k, z + 1});
                        if (g.has_node(ext))
                            g.add_edge(id, ext, CouplerKind::External);
                    }
                    if (k % 2 == 0) {
                        const int odd = g.linear_id({u, w, k + 1, z});
                        if (g.has_node(odd))
                            g.add_edge(id, odd, CouplerKind::Odd);
                    }
                }
            }
        }
    }

    for (int q : dead_qubits) {
        if (!g.has_node(q))
            throw ValidationError("dead qubit " + std::to_string(q) + " does not exist");
        g.strip_node(q);
    }
    for (const auto& [a, b] : dead_couplers) {
        if (!g.has_coupler(a, b))
            throw ValidationError("dead coupler (" + std::to_string(a) + "," +
                                  std::to_string(b) + ") does not exist");
        g.strip_coupler(a, b);
    }
    g.finalize();
    return g;
}

std::optional<std::string> validate_native_embedding(const ReducedIsing& reduced,
                                                     const PegasusGraph& graph,
                                                     const NativeEmbedding& embedding) {
    std::set<int> images;
    for (int v = 0; v < reduced.num_vars; ++v) {
        auto it = embedding.map.find(v);
        if (it == embedding.map.end())
            return "variable " + std::to_string(v) + " is unmapped";
        if (!graph.has_node(it->second))
            return "variable " + std::to_string(v) + " maps to a dead or missing qubit";
        if (!images.insert(it->second).second)
            return "qubit " + std::to_string(it->second) + " is used twice";
    }
    for (const auto& [pr, c] : reduced.quadratic) {
        if (c == 0.0)
            continue;
        const int qa = embedding.map.at(pr.first);
        const int qb = embedding.map.at(pr.second);
        if (!graph.has_coupler(qa, qb))
            return "term (" + std::to_string(pr.first) + "," + std::to_string(pr.second) +
                   ") lands on missing coupler (" + std::to_string(qa) + "," +
                   std::to_string(qb) + ")";
    }
    return std::nullopt;
}

namespace {

// One copy of the structured layout.  Corner qubits are vertical, every
// bridge and the variant-A slack are horizontal, the variant-B slack is the
// odd partner of the N1 corner.  All coordinates follow the diagonal rule
// ystart == column (mod 12).
class TilePlacer {
  public:
    TilePlacer(const HeavyHexLattice& lattice, const ReducedIsing& reduced,
               const PegasusGraph& graph, std::set<int>& used)
        : lat_(lattice), red_(reduced), graph_(graph), used_(used) {
        for (const auto& s : red_.slacks)
            site_of_[s.site.center] = s;
    }

    std::optional<NativeEmbedding> place(int c0, int g0, int tile_index) {
        claimed_.clear();
        claimed_local_.clear();
        map_.clear();
        c0_ = c0;
        g0_ = g0;

        for (int v = 0; v < lat_.num_nodes; ++v)
            if (!lat_.positions[v].is_rung && lat_.positions[v].col % 2 == 0)
                if (!place_corner(v))
                    return release();
        // rung bridges first: their row windows are the tightest
        for (int v = 0; v < lat_.num_nodes; ++v)
            if (lat_.positions[v].is_rung)
                if (!place_bridge(v))
                    return release();
        for (int v = 0; v < lat_.num_nodes; ++v)
            if (!lat_.positions[v].is_rung && lat_.positions[v].col % 2 == 1)
                if (!place_bridge(v))
                    return release();

        NativeEmbedding emb;
        emb.tile = tile_index;
        emb.map = map_;
        if (validate_native_embedding(red_, graph_, emb))
            return release();
        used_.insert(claimed_.begin(), claimed_.end());
        return emb;
    }

  private:
    std::optional<NativeEmbedding> release() {
        claimed_.clear();
        claimed_local_.clear();
        map_.clear();
        return std::nullopt;
    }

    int corner_col(int v) const {
        const auto& p = lat_.positions[v];
        return c0_ - 4 * p.row + 2 * p.col;
    }
    int corner_ystart(int v) const {
        const auto& p = lat_.positions[v];
        return g0_ + 8 * p.row + 2 * p.col;
    }

    std::optional<int> v_qubit(int col, int ystart) const {
        if (col < 0 || ystart < 0)
            return std::nullopt;
        const int w = col / 12, k = col % 12;
        if (w >= graph_.m)
            return std::nullopt;
        const int rel = ystart - kPegasusVOffset[k];
        if (rel < 0 || rel % 12 != 0 || rel / 12 + 1 >= graph_.m)
            return std::nullopt;
        const int id = graph_.linear_id({0, w, k, rel / 12});
        return graph_.has_node(id) ? std::optional<int>(id) : std::nullopt;
    }

    std::optional<int> h_qubit(int row, int xstart) const {
        if (row < 0 || xstart < 0)
            return std::nullopt;
        const int w = row / 12, k = row % 12;
        if (w >= graph_.m)
            return std::nullopt;
        const int rel = xstart - kPegasusHOffset[k];
        if (rel < 0 || rel % 12 != 0 || rel / 12 + 1 >= graph_.m)
            return std::nullopt;
        const int id = graph_.linear_id({1, w, k, rel / 12});
        return graph_.has_node(id) ? std::optional<int>(id) : std::nullopt;
    }

    bool is_free(int qubit) const {
        return used_.count(qubit) == 0 && claimed_local_.count(qubit) == 0;
    }

    bool claim(int var, int qubit) {
        if (!is_free(qubit))
            return false;
        claimed_.push_back(qubit);
        claimed_local_.insert(qubit);
        map_[var] = qubit;
        return true;
    }

    bool place_corner(int v) {
        const auto q = v_qubit(corner_col(v), corner_ystart(v));
        return q && claim(v, *q);
    }

    // The unique x-start <= min_col on the row's track alignment, if it also
    // reaches max_col.
    std::optional<int> xstart_for(int row, int min_col, int max_col) const {
        const int k = row % 12;
        const int xs = min_col - mod12(min_col - kPegasusHOffset[k]);
        if (xs < max_col - 11)
            return std::nullopt;
        return xs;
    }

    std::optional<int> bridge_candidate(int row, int min_col, int max_col) const {
        const auto xs = xstart_for(row, min_col, max_col);
        if (!xs)
            return std::nullopt;
        const auto q = h_qubit(row, *xs);
        if (!q || !is_free(*q))
            return std::nullopt;
        return q;
    }

    static int odd_partner_row(int row) {
        const int k = row % 12;
        return row - k + (k ^ 1);
    }

    bool place_bridge(int center) {
        const auto& nbrs = lat_.neighbors(center);
        if (nbrs.empty())
            return false;
        int min_col = 1 << 30, max_col = -(1 << 30);
        int row_lo = -(1 << 30), row_hi = 1 << 30;
        for (int nb : nbrs) {
            const int col = corner_col(nb), ys = corner_ystart(nb);
            min_col = std::min(min_col, col);
            max_col = std::max(max_col, col);
            row_lo = std::max(row_lo, ys);
            row_hi = std::min(row_hi, ys + 11);
        }

        const auto site = site_of_.find(center);
        if (site == site_of_.end()) {
            for (int row = row_lo; row <= row_hi; ++row)
                if (auto q = bridge_candidate(row, min_col, max_col))
                    return claim(center, *q);
            return false;
        }

        const SlackEntry& entry = site->second;
        if (entry.variant == GadgetVariant::B) {
            // slack q is the odd partner of the n1 corner
            const int n1_col = corner_col(entry.site.n1);
            const auto q_slack = v_qubit(n1_col + 1, corner_ystart(entry.site.n1));
            if (!q_slack || !is_free(*q_slack))
                return false;
            for (int row = row_lo; row <= row_hi; ++row) {
                const int prow = odd_partner_row(row);
                if (prow < row_lo || prow > row_hi)
                    continue;
                const auto xs = xstart_for(row, min_col, max_col);
                if (!xs || *xs + 11 < n1_col + 1)
                    continue; // slack q must cross the center and slack p
                const auto qc = h_qubit(row, *xs);
                const auto qp = h_qubit(prow, *xs);
                if (!qc || !qp || !is_free(*qc) || !is_free(*qp) || *qc == *qp)
                    continue;
                claim(center, *qc);
                claim(entry.slack_p, *qp);
                claim(entry.slack_q, *q_slack);
                return true;
            }
            return false;
        }

        // variant A: slack q is a second horizontal qubit across both corners
        for (int row = row_lo; row <= row_hi; ++row) {
            const int prow = odd_partner_row(row);
            if (prow < row_lo || prow > row_hi)
                continue;
            const auto qc = bridge_candidate(row, min_col, max_col);
            if (!qc)
                continue;
            const auto qp = bridge_candidate(prow, min_col, max_col);
            if (!qp || *qp == *qc)
                continue;
            for (int qrow = row_lo; qrow <= row_hi; ++qrow) {
                if (qrow == row || qrow == prow)
                    continue;
                const auto qq = bridge_candidate(qrow, min_col, max_col);
                if (!qq || *qq == *qc || *qq == *qp)
                    continue;
                claim(center, *qc);
                claim(entry.slack_p, *qp);
                claim(entry.slack_q, *qq);
                return true;
            }
        }
        return false;
    }

    const HeavyHexLattice& lat_;
    const ReducedIsing& red_;
    const PegasusGraph& graph_;
    std::set<int>& used_;
    std::map<int, SlackEntry> site_of_;
    std::map<int, int> map_;
    std::vector<int> claimed_;
    std::set<int> claimed_local_;
    int c0_ = 0, g0_ = 0;
};

} // namespace

std::vector<NativeEmbedding> tile_embeddings(const HeavyHexLattice& lattice,
                                             const ReducedIsing& reduced,
                                             const PegasusGraph& graph, int max_copies,
                                             const TileLayoutParams& params) {
    if (!lattice.has_geometry())
        throw ValidationError("tiling needs a lattice with layout positions");
    if (reduced.num_original != lattice.num_nodes)
        throw ValidationError("reduced instance does not match lattice");
    if (max_copies < 1)
        return {};

    int rails_rows = 0;
    for (const auto& p : lattice.positions)
        if (!p.is_rung)
            rails_rows = std::max(rails_rows, p.row);

    int c0 = params.c0;
    if (c0 < 0) {
        c0 = 4 * rails_rows + 13;
        c0 += mod12(2 - c0); // column phase 2 keeps ystart == column (mod 12)
    }
    const int g0 = params.g0;
    const int span = 12 * graph.m;

    std::set<int> used;
    std::vector<NativeEmbedding> tiles;
    TilePlacer placer(lattice, reduced, graph, used);
    int tile_index = 0;
    for (int gy = g0; gy < span; gy += params.drow) {
        for (int cx = c0; cx < span; cx += params.dcol) {
            if (static_cast<int>(tiles.size()) >= max_copies)
                return tiles;
            if (auto emb = placer.place(cx, gy, tile_index)) {
                emb->tile = tile_index;
                tiles.push_back(std::move(*emb));
                ++tile_index;
            }
        }
    }
    return tiles;
}

std::string export_annealer_problem(const ReducedIsing& reduced,
                                    const std::vector<NativeEmbedding>& embeddings) {
    nlohmann::json h = nlohmann::json::object();
    nlohmann::json j = nlohmann::json::object();
    nlohmann::json tiles = nlohmann::json::array();
    std::set<int> seen;
    for (const auto& emb : embeddings) {
        for (int v = 0; v < reduced.num_vars; ++v) {
            auto it = emb.map.find(v);
            if (it == emb.map.end())
                throw ValidationError("embedding is missing variable " + std::to_string(v));
            if (!seen.insert(it->second).second)
                throw ValidationError("embeddings overlap on qubit " +
                                      std::to_string(it->second));
            h[std::to_string(it->second)] = reduced.linear[v];
        }
        for (const auto& [pr, c] : reduced.quadratic) {
            if (c == 0.0)
                continue;
            int qa = emb.map.at(pr.first), qb = emb.map.at(pr.second);
            if (qa > qb)
                std::swap(qa, qb);
            j[std::to_string(qa) + "-" + std::to_string(qb)] = c;
        }
        nlohmann::json vars = nlohmann::json::object();
        for (const auto& [v, q] : emb.map)
            vars[std::to_string(v)] = q;
        tiles.push_back({{"tile", emb.tile}, {"variables", vars}});
    }
    nlohmann::json out;
    out["format"] = "hexising-annealer v1";
    out["offset"] = reduced.offset;
    out["h"] = h;
    out["J"] = j;
    out["tiles"] = tiles;
    return out.dump(2) + "\n";
}

AnnealerProblem parse_annealer_problem(const std::string& json_text) {
    const auto j = nlohmann::json::parse(json_text);
    if (j.at("format").get<std::string>() != "hexising-annealer v1")
        throw ValidationError("unknown annealer problem format");
    AnnealerProblem p;
    p.offset = j.at("offset").get<double>();
    for (const auto& [key, val] : j.at("h").items())
        p.h[static_cast<int>(detail::parse_ll(key))] = val.get<double>();
    for (const auto& [key, val] : j.at("J").items()) {
        const auto dash = key.find('-');
        if (dash == std::string::npos)
            throw ValidationError("bad coupler key: " + key);
        const int a = static_cast<int>(detail::parse_ll(key.substr(0, dash)));
        const int b = static_cast<int>(detail::parse_ll(key.substr(dash + 1)));
        p.j[{std::min(a, b), std::max(a, b)}] = val.get<double>();
    }
    if (j.contains("tiles")) {
        for (const auto& t : j.at("tiles")) {
            NativeEmbedding emb;
            emb.tile = t.at("tile").get<int>();
            for (const auto& [v, q] : t.at("variables").items())
                emb.map[static_cast<int>(detail::parse_ll(v))] = q.get<int>();
            p.tiles.push_back(std::move(emb));
        }
    }
    return p;
}

} // namespace hexising
