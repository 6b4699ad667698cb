// SPDX-License-Identifier: Apache-2.0

#include "hexising/instance.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "hexising/detail/format.hpp"
#include "hexising/errors.hpp"
#include "hexising/rng.hpp"

namespace hexising {

CubicIsing generate_instance(const HeavyHexLattice& lattice, std::uint64_t seed) {
    CubicIsing inst;
    inst.num_nodes = lattice.num_nodes;
    inst.lattice_ref = lattice.name;

    Prng lin_rng(derive_seed(seed, 0));
    Prng quad_rng(derive_seed(seed, 1));
    Prng cub_rng(derive_seed(seed, 2));

    inst.linear.resize(lattice.num_nodes);
    for (int v = 0; v < lattice.num_nodes; ++v)
        inst.linear[v] = lin_rng.next_spin();
    for (const auto& e : lattice.edges)
        inst.quadratic.push_back({e, static_cast<double>(quad_rng.next_spin())});
    for (const auto& site : cubic_sites(lattice))
        inst.cubic.push_back({site, static_cast<double>(cub_rng.next_spin())});
    return inst;
}

double evaluate_energy(const CubicIsing& instance, std::span<const std::int8_t> spins) {
    if (static_cast<int>(spins.size()) != instance.num_nodes)
        throw ValidationError("spin vector length does not match instance");
    double e = 0.0;
    for (int v = 0; v < instance.num_nodes; ++v)
        e += instance.linear[v] * spins[v];
    for (const auto& [edge, c] : instance.quadratic)
        e += c * spins[edge.first] * spins[edge.second];
    for (const auto& [site, c] : instance.cubic)
        e += c * spins[site.center] * spins[site.n1] * spins[site.n2];
    return e;
}

SampleSet random_baseline(const CubicIsing& instance, long long shots, std::uint64_t seed) {
    if (shots < 1)
        throw ValidationError("shots must be positive");
    Prng rng(derive_seed(seed, 0));
    // Deduplicate identical draws so multiplicities stay meaningful on tiny
    // problems; order of first appearance is preserved on export via sorting.
    std::map<std::vector<std::int8_t>, long long> counts;
    for (long long i = 0; i < shots; ++i) {
        std::vector<std::int8_t> spins(instance.num_nodes);
        for (auto& s : spins)
            s = static_cast<std::int8_t>(rng.next_spin());
        ++counts[spins];
    }
    SampleSet out;
    out.provenance.method = "random-baseline";
    out.provenance.seed = seed;
    out.provenance.params["shots"] = std::to_string(shots);
    for (auto& [spins, mult] : counts) {
        SampleRecord r;
        r.spins = spins;
        r.multiplicity = mult;
        r.energy = evaluate_energy(instance, r.spins);
        out.records.push_back(std::move(r));
    }
    return out;
}

void write_instance(const CubicIsing& instance, std::ostream& out) {
    out << "cubicising v1\n";
    out << "lattice " << instance.lattice_ref << '\n';
    for (std::size_t v = 0; v < instance.linear.size(); ++v)
        out << "lin " << v << ' ' << detail::format_double(instance.linear[v]) << '\n';
    for (const auto& [e, c] : instance.quadratic)
        out << "quad " << e.first << ' ' << e.second << ' ' << detail::format_double(c)
            << '\n';
    for (const auto& [s, c] : instance.cubic)
        out << "cubic " << s.n1 << ' ' << s.center << ' ' << s.n2 << ' '
            << detail::format_double(c) << '\n';
}

CubicIsing parse_instance(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != "cubicising v1")
        throw ValidationError("expected header 'cubicising v1'");

    CubicIsing inst;
    std::map<int, double> lin;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        std::istringstream ls(line);
        std::string kind;
        ls >> kind;
        if (kind == "lattice") {
            ls >> inst.lattice_ref;
        } else if (kind == "lin") {
            int v;
            std::string c;
            if (!(ls >> v >> c))
                throw ValidationError("malformed lin line: " + line);
            if (!lin.emplace(v, detail::parse_double(c)).second)
                throw ValidationError("duplicate linear term on node " + std::to_string(v));
        } else if (kind == "quad") {
            int u, v;
            std::string c;
            if (!(ls >> u >> v >> c))
                throw ValidationError("malformed quad line: " + line);
            if (u > v)
                std::swap(u, v);
            inst.quadratic.push_back({{u, v}, detail::parse_double(c)});
        } else if (kind == "cubic") {
            int n1, m, n2;
            std::string c;
            if (!(ls >> n1 >> m >> n2 >> c))
                throw ValidationError("malformed cubic line: " + line);
            inst.cubic.push_back({{n1, m, n2}, detail::parse_double(c)});
        } else {
            throw ValidationError("unknown line kind: " + kind);
        }
    }
    if (lin.empty())
        throw ValidationError("instance has no linear terms");
    int expect = 0;
    for (const auto& [v, c] : lin) {
        if (v != expect++)
            throw ValidationError("linear terms must cover nodes densely from 0");
        inst.linear.push_back(c);
    }
    inst.num_nodes = expect;
    std::sort(inst.quadratic.begin(), inst.quadratic.end());
    std::sort(inst.cubic.begin(), inst.cubic.end(),
              [](const auto& a, const auto& b) { return a.first.center < b.first.center; });
    return inst;
}

} // namespace hexising
