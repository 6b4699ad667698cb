// SPDX-License-Identifier: Apache-2.0

#include "hexising/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "hexising/detail/format.hpp"
#include "hexising/errors.hpp"

namespace hexising {

namespace {

// spins of the five roles for a 5-bit state index, bit 0 = N1 ... bit 4 = Q;
// bit value 0 means spin +1 (same convention as measurement decoding)
std::array<int, 5> role_spins(int state) {
    std::array<int, 5> s;
    for (int r = 0; r < 5; ++r)
        s[r] = (state >> r) & 1 ? -1 : +1;
    return s;
}

} // namespace

long long Gadget::energy(const std::array<int, 5>& spins) const {
    long long e = 0;
    for (int r = 0; r < 5; ++r)
        e += static_cast<long long>(linear[r]) * spins[r];
    for (const auto& [pair, c] : quadratic)
        e += static_cast<long long>(c) * spins[pair.first] * spins[pair.second];
    return e;
}

std::vector<std::pair<int, int>> gadget_support(GadgetVariant variant) {
    std::vector<std::pair<int, int>> pairs = {{kRoleN1, kRoleCenter},
                                              {kRoleCenter, kRoleN2},
                                              {kRoleN1, kRoleP},
                                              {kRoleCenter, kRoleP},
                                              {kRoleN2, kRoleP}};
    if (variant == GadgetVariant::A) {
        pairs.push_back({kRoleN1, kRoleQ});
        pairs.push_back({kRoleN2, kRoleQ});
    } else {
        pairs.push_back({kRoleN1, kRoleQ});
        pairs.push_back({kRoleCenter, kRoleQ});
        pairs.push_back({kRoleP, kRoleQ});
    }
    return pairs;
}

GadgetVerification verify_gadget(const Gadget& gadget) {
    GadgetVerification v;
    std::array<long long, 8> g; // min over slack assignments per original state
    for (int x = 0; x < 8; ++x) {
        long long best = 0;
        for (int s = 0; s < 4; ++s) {
            auto spins = role_spins(x | (s << 3));
            const long long e = gadget.energy(spins);
            v.table[x * 4 + s] = e;
            if (s == 0 || e < best)
                best = e;
        }
        g[x] = best;
    }

    auto is_cubic_ground = [&](int x) {
        const auto s = role_spins(x);
        return gadget.sign * s[kRoleN1] * s[kRoleCenter] * s[kRoleN2] == -1;
    };
    long long ground = 0;
    bool have_ground = false;
    for (int x = 0; x < 8; ++x) {
        if (!is_cubic_ground(x))
            continue;
        if (!have_ground) {
            ground = g[x];
            have_ground = true;
        } else if (g[x] != ground) {
            v.reason = "cubic ground states have unequal minima";
            v.witness_state = x;
            return v;
        }
    }
    v.ground_value = ground;
    for (int x = 0; x < 8; ++x) {
        if (is_cubic_ground(x))
            continue;
        if (g[x] <= ground) {
            v.reason = "excited state reaches the ground value";
            v.witness_state = x;
            return v;
        }
    }
    v.pass = true;
    return v;
}

namespace {

// Character component c_S(h) * 8 over the 3 original variables, where S is a
// subset mask of {N1, Center, N2}.
long long char_sum(const std::array<long long, 8>& h, int mask) {
    long long sum = 0;
    for (int x = 0; x < 8; ++x) {
        int sign = 1;
        for (int r = 0; r < 3; ++r)
            if ((mask >> r) & 1)
                sign *= ((x >> r) & 1) ? -1 : +1;
        sum += sign * h[x];
    }
    return sum;
}

} // namespace

std::optional<Gadget> derive_gadget(int sign, int bound, GadgetVariant variant) {
    if (sign != 1 && sign != -1)
        throw ValidationError("gadget sign must be +1 or -1");
    if (bound < 0)
        throw ValidationError("coefficient bound must be nonnegative");

    const auto support = gadget_support(variant);
    std::vector<std::pair<int, int>> slack_pairs;
    std::vector<std::pair<int, int>> orig_pairs;
    for (const auto& pr : support) {
        if (pr.second >= kRoleP)
            slack_pairs.push_back(pr);
        else
            orig_pairs.push_back(pr);
    }
    std::sort(slack_pairs.begin(), slack_pairs.end());
    std::sort(orig_pairs.begin(), orig_pairs.end());

    // Enumerated slots: slack linear terms first (P then Q), then slack pairs
    // in sorted role order; each runs -bound..bound, last slot fastest.
    const int num_slots = 2 + static_cast<int>(slack_pairs.size());
    std::vector<int> coef(num_slots, -bound);
    const bool has_pq =
        std::find(slack_pairs.begin(), slack_pairs.end(),
                  std::make_pair<int, int>(kRoleP, kRoleQ)) != slack_pairs.end();

    auto mask_of_pair = [](int a, int b) { return (1 << a) | (1 << b); };

    for (;;) {
        // m(x) = min over slack assignments of the slack-involving energy
        std::array<long long, 8> m;
        for (int x = 0; x < 8; ++x) {
            const auto xs = role_spins(x);
            long long lp = coef[0], lq = coef[1];
            for (std::size_t i = 0; i < slack_pairs.size(); ++i) {
                const auto [a, b] = slack_pairs[i];
                if (b == kRoleP)
                    lp += static_cast<long long>(coef[2 + i]) * xs[a];
                else if (b == kRoleQ && a < kRoleP)
                    lq += static_cast<long long>(coef[2 + i]) * xs[a];
            }
            long long jpq = 0;
            if (has_pq) {
                for (std::size_t i = 0; i < slack_pairs.size(); ++i)
                    if (slack_pairs[i] == std::make_pair<int, int>(kRoleP, kRoleQ))
                        jpq = coef[2 + i];
            }
            long long best = 0;
            for (int s = 0; s < 4; ++s) {
                const int p = (s & 1) ? -1 : +1;
                const int q = (s & 2) ? -1 : +1;
                const long long e = p * lp + q * lq + jpq * p * q;
                if (s == 0 || e < best)
                    best = e;
            }
            m[x] = best;
        }

        // Solve the original-side coefficients so that
        //   A(x) + m(x) = sign * x1 x2 x3 + K
        // holds identically; reject when a required component is nonintegral,
        // out of bound, or lands on a pair outside the support.
        bool ok = true;
        if (char_sum(m, 0b111) != 8 * sign)
            ok = false;
        std::array<int, 3> lin{};
        if (ok) {
            for (int r = 0; r < 3 && ok; ++r) {
                const long long s = -char_sum(m, 1 << r);
                if (s % 8 != 0 || std::abs(s / 8) > bound)
                    ok = false;
                else
                    lin[r] = static_cast<int>(s / 8);
            }
        }
        std::map<std::pair<int, int>, int> quad;
        if (ok) {
            for (int a = 0; a < 3 && ok; ++a) {
                for (int b = a + 1; b < 3 && ok; ++b) {
                    const long long s = -char_sum(m, mask_of_pair(a, b));
                    const bool allowed =
                        std::find(orig_pairs.begin(), orig_pairs.end(),
                                  std::make_pair(a, b)) != orig_pairs.end();
                    if (s == 0)
                        continue;
                    if (!allowed || s % 8 != 0 || std::abs(s / 8) > bound)
                        ok = false;
                    else
                        quad[{a, b}] = static_cast<int>(s / 8);
                }
            }
        }
        long long k8 = char_sum(m, 0);
        if (ok && k8 % 8 != 0)
            ok = false;

        if (ok) {
            Gadget g;
            g.sign = sign;
            g.variant = variant;
            g.linear = {lin[0], lin[1], lin[2], coef[0], coef[1]};
            g.quadratic = quad;
            for (std::size_t i = 0; i < slack_pairs.size(); ++i)
                if (coef[2 + i] != 0)
                    g.quadratic[slack_pairs[i]] = coef[2 + i];
            g.offset = static_cast<int>(k8 / 8);
            if (verify_gadget(g).pass)
                return g;
        }

        // next candidate in lexicographic order
        int slot = num_slots - 1;
        while (slot >= 0 && coef[slot] == bound)
            coef[slot--] = -bound;
        if (slot < 0)
            return std::nullopt;
        ++coef[slot];
    }
}

Gadget mirror_gadget(const Gadget& gadget) {
    auto mirror_role = [](int r) {
        if (r == kRoleN1)
            return static_cast<int>(kRoleN2);
        if (r == kRoleN2)
            return static_cast<int>(kRoleN1);
        return r;
    };
    Gadget out;
    out.sign = gadget.sign;
    out.variant = gadget.variant;
    out.offset = gadget.offset;
    for (int r = 0; r < 5; ++r)
        out.linear[mirror_role(r)] = gadget.linear[r];
    for (const auto& [pr, c] : gadget.quadratic) {
        int a = mirror_role(pr.first), b = mirror_role(pr.second);
        if (a > b)
            std::swap(a, b);
        out.quadratic[{a, b}] = c;
    }
    return out;
}

const Gadget& builtin_gadget(int sign, GadgetVariant variant) {
    // Frozen from derive_gadget(sign, 2, variant); tests rederive and compare.
    static const auto make = [](int s, GadgetVariant v) {
        auto g = derive_gadget(s, 2, v);
        if (!g)
            throw ValidationError("builtin gadget derivation failed");
        return *g;
    };
    static const Gadget plus_a = make(+1, GadgetVariant::A);
    static const Gadget plus_b = make(+1, GadgetVariant::B);
    static const Gadget minus_a = make(-1, GadgetVariant::A);
    static const Gadget minus_b = make(-1, GadgetVariant::B);
    if (sign > 0)
        return variant == GadgetVariant::A ? plus_a : plus_b;
    return variant == GadgetVariant::A ? minus_a : minus_b;
}

ReducedIsing reduce_instance(const CubicIsing& instance, const HeavyHexLattice* lattice) {
    if (lattice) {
        if (lattice->num_nodes != instance.num_nodes)
            throw ValidationError("lattice does not match instance");
        if (!lattice->has_geometry())
            throw ValidationError("lattice carries no layout positions");
    }
    ReducedIsing red;
    red.num_original = instance.num_nodes;
    red.linear.assign(instance.linear.begin(), instance.linear.end());
    for (const auto& [e, c] : instance.quadratic)
        red.quadratic[e] += c;

    // Realized sites in center-id order; variants alternate by rank, or
    // follow the layout when one is given.
    std::vector<std::pair<CubicSite, double>> sites;
    for (const auto& [site, c] : instance.cubic)
        if (c != 0.0)
            sites.push_back({site, c});
    std::sort(sites.begin(), sites.end(),
              [](const auto& a, const auto& b) { return a.first.center < b.first.center; });

    red.num_vars = red.num_original + 2 * static_cast<int>(sites.size());
    red.linear.resize(red.num_vars, 0.0);

    for (std::size_t j = 0; j < sites.size(); ++j) {
        const auto& [site, c] = sites[j];
        const int sign = c > 0 ? +1 : -1;
        const double scale = std::abs(c);
        const auto variant =
            lattice ? (lattice->positions[site.center].is_rung ? GadgetVariant::B
                                                               : GadgetVariant::A)
                    : (j % 2 == 0 ? GadgetVariant::A : GadgetVariant::B);
        const Gadget& g = builtin_gadget(sign, variant);

        const int sp = red.num_original + 2 * static_cast<int>(j);
        const int sq = sp + 1;
        const std::array<int, 5> var_of = {site.n1, site.center, site.n2, sp, sq};

        for (int r = 0; r < 5; ++r)
            red.linear[var_of[r]] += scale * g.linear[r];
        for (const auto& [pr, coef] : g.quadratic) {
            int u = var_of[pr.first], v = var_of[pr.second];
            if (u > v)
                std::swap(u, v);
            red.quadratic[{u, v}] += scale * coef;
        }
        red.offset -= scale * g.offset;
        red.slacks.push_back({site, sp, sq, variant});
    }
    return red;
}

double evaluate_reduced(const ReducedIsing& reduced, std::span<const std::int8_t> spins) {
    if (static_cast<int>(spins.size()) != reduced.num_vars)
        throw ValidationError("spin vector length does not match reduced instance");
    double e = reduced.offset;
    for (int v = 0; v < reduced.num_vars; ++v)
        e += reduced.linear[v] * spins[v];
    for (const auto& [pr, c] : reduced.quadratic)
        e += c * spins[pr.first] * spins[pr.second];
    return e;
}

namespace {

const char* role_name(int r) {
    switch (r) {
    case kRoleN1: return "n1";
    case kRoleCenter: return "center";
    case kRoleN2: return "n2";
    case kRoleP: return "p";
    case kRoleQ: return "q";
    }
    return "?";
}

int role_from_name(const std::string& s) {
    for (int r = 0; r < 5; ++r)
        if (s == role_name(r))
            return r;
    throw ValidationError("unknown gadget role: " + s);
}

} // namespace

void write_gadget_fixture(const Gadget& gadget, std::ostream& out) {
    out << "gadget v1\n";
    out << "sign " << gadget.sign << '\n';
    out << "variant " << (gadget.variant == GadgetVariant::A ? 'A' : 'B') << '\n';
    out << "offset " << gadget.offset << '\n';
    for (int r = 0; r < 5; ++r)
        out << "lin " << role_name(r) << ' ' << gadget.linear[r] << '\n';
    for (const auto& [pr, c] : gadget.quadratic)
        out << "quad " << role_name(pr.first) << ' ' << role_name(pr.second) << ' ' << c
            << '\n';
    // 32-row verification table: state index, five spins, energy
    const auto v = verify_gadget(gadget);
    for (int s = 0; s < 32; ++s) {
        out << "state " << s;
        const auto spins = role_spins(s);
        for (int r = 0; r < 5; ++r)
            out << ' ' << (spins[r] > 0 ? "+1" : "-1");
        out << ' ' << v.table[s] << '\n';
    }
}

Gadget parse_gadget_fixture(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != "gadget v1")
        throw ValidationError("expected header 'gadget v1'");
    Gadget g;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        std::istringstream ls(line);
        std::string kind;
        ls >> kind;
        if (kind == "sign")
            ls >> g.sign;
        else if (kind == "variant") {
            char v;
            ls >> v;
            g.variant = v == 'A' ? GadgetVariant::A : GadgetVariant::B;
        } else if (kind == "offset")
            ls >> g.offset;
        else if (kind == "lin") {
            std::string role;
            int c;
            ls >> role >> c;
            g.linear[role_from_name(role)] = c;
        } else if (kind == "quad") {
            std::string ra, rb;
            int c;
            ls >> ra >> rb >> c;
            int a = role_from_name(ra), b = role_from_name(rb);
            if (a > b)
                std::swap(a, b);
            g.quadratic[{a, b}] = c;
        } else if (kind == "state") {
            continue; // table rows are derived data
        } else {
            throw ValidationError("unknown gadget line: " + kind);
        }
    }
    return g;
}

void write_reduced(const ReducedIsing& reduced, std::ostream& out) {
    out << "reducedising v1\n";
    out << "originals " << reduced.num_original << '\n';
    out << "offset " << detail::format_double(reduced.offset) << '\n';
    for (int v = 0; v < reduced.num_vars; ++v)
        out << "lin " << v << ' ' << detail::format_double(reduced.linear[v]) << '\n';
    for (const auto& [pr, c] : reduced.quadratic)
        out << "quad " << pr.first << ' ' << pr.second << ' ' << detail::format_double(c)
            << '\n';
}

ReducedIsing parse_reduced(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != "reducedising v1")
        throw ValidationError("expected header 'reducedising v1'");
    ReducedIsing red;
    std::map<int, double> lin;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        std::istringstream ls(line);
        std::string kind;
        ls >> kind;
        if (kind == "originals") {
            ls >> red.num_original;
        } else if (kind == "offset") {
            std::string v;
            ls >> v;
            red.offset = detail::parse_double(v);
        } else if (kind == "lin") {
            int v;
            std::string c;
            if (!(ls >> v >> c))
                throw ValidationError("malformed lin line: " + line);
            lin[v] = detail::parse_double(c);
        } else if (kind == "quad") {
            int u, v;
            std::string c;
            if (!(ls >> u >> v >> c))
                throw ValidationError("malformed quad line: " + line);
            if (u > v)
                std::swap(u, v);
            red.quadratic[{u, v}] = detail::parse_double(c);
        } else {
            throw ValidationError("unknown line kind: " + kind);
        }
    }
    int expect = 0;
    for (const auto& [v, c] : lin) {
        if (v != expect++)
            throw ValidationError("linear terms must cover variables densely");
        red.linear.push_back(c);
    }
    red.num_vars = expect;
    return red;
}

std::string slack_registry_json(const ReducedIsing& reduced) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& s : reduced.slacks) {
        j.push_back({{"n1", s.site.n1},
                     {"center", s.site.center},
                     {"n2", s.site.n2},
                     {"slack_p", s.slack_p},
                     {"slack_q", s.slack_q},
                     {"variant", s.variant == GadgetVariant::A ? "A" : "B"}});
    }
    return j.dump(2) + "\n";
}

std::vector<SlackEntry> parse_slack_registry(const std::string& json_text) {
    const auto j = nlohmann::json::parse(json_text);
    std::vector<SlackEntry> out;
    for (const auto& e : j) {
        SlackEntry s;
        s.site = {e.at("n1").get<int>(), e.at("center").get<int>(), e.at("n2").get<int>()};
        s.slack_p = e.at("slack_p").get<int>();
        s.slack_q = e.at("slack_q").get<int>();
        s.variant = e.at("variant").get<std::string>() == "A" ? GadgetVariant::A
                                                              : GadgetVariant::B;
        out.push_back(s);
    }
    return out;
}

} // namespace hexising
