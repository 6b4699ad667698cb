// SPDX-License-Identifier: Apache-2.0

#include "hexising/qaoa.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "hexising/detail/format.hpp"
#include "hexising/errors.hpp"

namespace hexising {

int DurationTable::of(GateKind k) const {
    switch (k) {
    case GateKind::H: return h;
    case GateKind::X: return x;
    case GateKind::RX: return rx;
    case GateKind::RZ: return rz;
    case GateKind::CNOT: return cnot;
    case GateKind::Measure: return measure;
    }
    return 0;
}

DurationTable parse_duration_config(const std::string& text) {
    DurationTable t;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ValidationError("expected key=value: " + line);
        const std::string key = line.substr(0, eq);
        const int value = static_cast<int>(detail::parse_ll(line.substr(eq + 1)));
        if (value < 0)
            throw ValidationError("negative duration for " + key);
        if (key == "h") t.h = value;
        else if (key == "x") t.x = value;
        else if (key == "rx") t.rx = value;
        else if (key == "rz") t.rz = value;
        else if (key == "cnot") t.cnot = value;
        else if (key == "measure") t.measure = value;
        else if (key == "alignment") t.alignment = value;
        else throw ValidationError("unknown duration key: " + key);
    }
    if (t.alignment < 1)
        throw ValidationError("alignment must be positive");
    for (int d : {t.h, t.x, t.rx, t.rz, t.cnot, t.measure})
        if (d % t.alignment != 0)
            throw ValidationError("durations must be multiples of the alignment");
    return t;
}

namespace {

struct SeparatorPlan {
    // CNOTs per color layer (1..3), each as (control=corner, target=bridge).
    std::array<std::vector<std::pair<int, int>>, 3> layer_cnots;
    // RZ slots emitted after layer index 1..6: (bridge qubit, coefficient).
    std::array<std::vector<std::pair<int, double>>, 6> slots;
};

SeparatorPlan plan_separator(const HeavyHexLattice& lattice, const CubicIsing& instance) {
    if (instance.num_nodes != lattice.num_nodes)
        throw ValidationError("instance does not match lattice");

    const auto colors = three_edge_coloring(lattice);
    std::map<std::pair<int, int>, double> quad;
    for (const auto& [e, c] : instance.quadratic) {
        if (!lattice.has_edge(e.first, e.second))
            throw ValidationError("instance quadratic term is not a lattice edge");
        quad[e] = c;
    }
    std::map<int, double> cubic_by_center;
    for (const auto& [site, c] : instance.cubic)
        cubic_by_center[site.center] = c;

    std::map<std::pair<int, int>, int> color_of;
    for (std::size_t i = 0; i < lattice.edges.size(); ++i)
        color_of[lattice.edges[i]] = colors[i];

    SeparatorPlan plan;
    for (std::size_t i = 0; i < lattice.edges.size(); ++i) {
        const auto [u, v] = lattice.edges[i];
        const int bridge = lattice.node_class[u] == NodeClass::Bridge ? u : v;
        const int corner = bridge == u ? v : u;
        plan.layer_cnots[colors[i] - 1].push_back({corner, bridge});
    }
    for (auto& layer : plan.layer_cnots)
        std::sort(layer.begin(), layer.end(),
                  [](const auto& a, const auto& b) { return a.second < b.second; });

    // Per bridge: CNOTs run lower-color, higher-color, lower, higher.  The
    // parity on the bridge after each of the first three is x_a x_m, then
    // x_a x_m x_b, then x_b x_m, which hosts the two quadratic terms and the
    // cubic term in that order.
    for (int m = 0; m < lattice.num_nodes; ++m) {
        if (lattice.node_class[m] != NodeClass::Bridge || lattice.degree(m) == 0)
            continue;
        std::vector<std::pair<int, int>> inc; // (color, neighbor)
        for (int nb : lattice.neighbors(m)) {
            auto e = std::minmax(m, nb);
            inc.push_back({color_of.at({e.first, e.second}), nb});
        }
        std::sort(inc.begin(), inc.end());
        const auto quad_coef = [&](int nb) {
            auto e = std::minmax(m, nb);
            auto it = quad.find({e.first, e.second});
            return it == quad.end() ? std::optional<double>{} : std::optional<double>{it->second};
        };
        if (auto c = quad_coef(inc[0].second))
            plan.slots[inc[0].first - 1].push_back({m, *c});
        if (inc.size() == 2) {
            if (auto it = cubic_by_center.find(m); it != cubic_by_center.end())
                plan.slots[inc[1].first - 1].push_back({m, it->second});
            if (auto c = quad_coef(inc[1].second))
                plan.slots[inc[0].first - 1 + 3].push_back({m, *c});
        }
    }
    for (auto& s : plan.slots)
        std::sort(s.begin(), s.end());
    return plan;
}

void emit_separator(Circuit& circuit, const SeparatorPlan& plan,
                    const CubicIsing& instance, double gamma) {
    // Linear terms first: every qubit still holds its own spin, and rz is
    // virtual so this adds no depth.
    for (int v = 0; v < instance.num_nodes; ++v)
        circuit.gates.push_back({GateKind::RZ, v, -1, 2.0 * gamma * instance.linear[v]});
    for (int layer = 0; layer < 6; ++layer) {
        for (const auto& [control, target] : plan.layer_cnots[layer % 3])
            circuit.gates.push_back({GateKind::CNOT, control, target, 0.0});
        for (const auto& [qubit, coef] : plan.slots[layer])
            circuit.gates.push_back({GateKind::RZ, qubit, -1, 2.0 * gamma * coef});
    }
}

} // namespace

Circuit build_phase_separator(const HeavyHexLattice& lattice, const CubicIsing& instance,
                              double gamma) {
    const auto plan = plan_separator(lattice, instance);
    Circuit c;
    c.num_qubits = lattice.num_nodes;
    emit_separator(c, plan, instance, gamma);
    return c;
}

Circuit build_qaoa_circuit(const HeavyHexLattice& lattice, const CubicIsing& instance,
                           const AngleParams& params) {
    if (params.rounds() < 1 || params.betas.size() != params.gammas.size())
        throw ValidationError("angle vectors must be nonempty and of equal length");
    const auto plan = plan_separator(lattice, instance);

    Circuit c;
    c.num_qubits = lattice.num_nodes;
    for (int q = 0; q < c.num_qubits; ++q)
        c.gates.push_back({GateKind::H, q, -1, 0.0});
    for (int k = 0; k < params.rounds(); ++k) {
        emit_separator(c, plan, instance, params.gammas[k]);
        for (int q = 0; q < c.num_qubits; ++q)
            c.gates.push_back({GateKind::RX, q, -1, 2.0 * params.betas[k]});
    }
    for (int q = 0; q < c.num_qubits; ++q)
        c.gates.push_back({GateKind::Measure, q, -1, 0.0});
    return c;
}

int cnot_depth(const Circuit& circuit) {
    std::vector<int> depth(circuit.num_qubits, 0);
    int best = 0;
    for (const auto& g : circuit.gates) {
        if (g.kind != GateKind::CNOT)
            continue;
        const int d = std::max(depth[g.q0], depth[g.q1]) + 1;
        depth[g.q0] = depth[g.q1] = d;
        best = std::max(best, d);
    }
    return best;
}

ScheduledCircuit schedule_alap(const Circuit& circuit, const DurationTable& durations) {
    for (int d : {durations.h, durations.x, durations.rx, durations.rz, durations.cnot,
                  durations.measure})
        if (durations.alignment < 1 || d % durations.alignment != 0)
            throw ValidationError("durations must be multiples of the alignment");

    const auto n = circuit.gates.size();
    std::vector<long long> rend(n, 0);
    std::vector<long long> avail(circuit.num_qubits, 0); // reverse-time availability
    for (std::size_t i = n; i-- > 0;) {
        const auto& g = circuit.gates[i];
        long long start = avail[g.q0];
        if (g.q1 >= 0)
            start = std::max(start, avail[g.q1]);
        const long long end = start + durations.of(g.kind);
        rend[i] = end;
        avail[g.q0] = end;
        if (g.q1 >= 0)
            avail[g.q1] = end;
    }
    long long makespan = 0;
    for (long long t : avail)
        makespan = std::max(makespan, t);

    ScheduledCircuit out;
    out.num_qubits = circuit.num_qubits;
    out.makespan = makespan;
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i)
        order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const long long sa = makespan - rend[a], sb = makespan - rend[b];
        if (sa != sb)
            return sa < sb;
        return a < b;
    });
    for (std::size_t i : order)
        out.gates.push_back({circuit.gates[i], makespan - rend[i],
                             durations.of(circuit.gates[i].kind)});
    return out;
}

Circuit insert_ddd(const Circuit& circuit, const DurationTable& durations) {
    const auto sched = schedule_alap(circuit, durations);
    const long long dx = durations.x;
    const long long align = durations.alignment;
    const auto align_down = [&](long long t) { return t - (t % align); };

    // Idle windows between consecutive operations on each qubit.
    std::vector<std::vector<std::pair<long long, long long>>> busy(circuit.num_qubits);
    for (std::size_t i = 0; i < sched.gates.size(); ++i) {
        const auto& sg = sched.gates[i];
        busy[sg.gate.q0].push_back({sg.start, sg.start + sg.duration});
        if (sg.gate.q1 >= 0)
            busy[sg.gate.q1].push_back({sg.start, sg.start + sg.duration});
    }

    struct Timed {
        long long start;
        long long seq;
        Gate gate;
    };
    std::vector<Timed> all;
    all.reserve(sched.gates.size());
    for (std::size_t i = 0; i < sched.gates.size(); ++i)
        all.push_back({sched.gates[i].start, static_cast<long long>(i), sched.gates[i].gate});

    long long seq = static_cast<long long>(sched.gates.size());
    for (int q = 0; q < circuit.num_qubits; ++q) {
        auto& iv = busy[q];
        std::sort(iv.begin(), iv.end());
        for (std::size_t i = 1; i < iv.size(); ++i) {
            const long long lo = iv[i - 1].second;
            const long long hi = iv[i].first;
            const long long slack = hi - lo - 2 * dx;
            if (slack < 0)
                continue;
            // X pulses at roughly 1/4 and 3/4 of the window, like the usual
            // X-X decoupling spacing.
            const long long t1 = lo + align_down(slack / 4);
            const long long t2 = t1 + dx + align_down(slack / 2);
            all.push_back({t1, seq++, {GateKind::X, q, -1, 0.0}});
            all.push_back({t2, seq++, {GateKind::X, q, -1, 0.0}});
        }
    }
    std::sort(all.begin(), all.end(), [](const Timed& a, const Timed& b) {
        if (a.start != b.start)
            return a.start < b.start;
        return a.seq < b.seq;
    });

    Circuit out;
    out.num_qubits = circuit.num_qubits;
    for (const auto& t : all)
        out.gates.push_back(t.gate);
    return out;
}

std::string to_openqasm(const Circuit& circuit) {
    std::string s;
    s += "OPENQASM 2.0;\n";
    s += "include \"qelib1.inc\";\n";
    s += "qreg q[" + std::to_string(circuit.num_qubits) + "];\n";
    s += "creg c[" + std::to_string(circuit.num_qubits) + "];\n";
    for (const auto& g : circuit.gates) {
        switch (g.kind) {
        case GateKind::H:
            s += "h q[" + std::to_string(g.q0) + "];\n";
            break;
        case GateKind::X:
            s += "x q[" + std::to_string(g.q0) + "];\n";
            break;
        case GateKind::RZ:
            s += "rz(" + detail::format_double(g.angle) + ") q[" + std::to_string(g.q0) +
                 "];\n";
            break;
        case GateKind::RX:
            s += "rx(" + detail::format_double(g.angle) + ") q[" + std::to_string(g.q0) +
                 "];\n";
            break;
        case GateKind::CNOT:
            s += "cx q[" + std::to_string(g.q0) + "],q[" + std::to_string(g.q1) + "];\n";
            break;
        case GateKind::Measure:
            s += "measure q[" + std::to_string(g.q0) + "] -> c[" + std::to_string(g.q0) +
                 "];\n";
            break;
        }
    }
    return s;
}

namespace {

int parse_qref(const std::string& tok, char reg) {
    // q[NN] with optional trailing characters already stripped
    if (tok.size() < 4 || tok[0] != reg || tok[1] != '[' || tok.back() != ']')
        throw ValidationError("bad register reference: " + tok);
    return static_cast<int>(detail::parse_ll(tok.substr(2, tok.size() - 3)));
}

} // namespace

Circuit parse_openqasm(const std::string& text) {
    Circuit c;
    std::istringstream in(text);
    std::string line;
    bool saw_version = false;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
            line.pop_back();
        if (line.empty() || line.rfind("//", 0) == 0)
            continue;
        if (line == "OPENQASM 2.0;") {
            saw_version = true;
            continue;
        }
        if (line.rfind("include", 0) == 0 || line.rfind("creg", 0) == 0)
            continue;
        if (line.rfind("qreg q[", 0) == 0) {
            c.num_qubits = static_cast<int>(
                detail::parse_ll(line.substr(7, line.size() - 9)));
            continue;
        }
        if (line.back() != ';')
            throw ValidationError("missing semicolon: " + line);
        line.pop_back();
        std::istringstream ls(line);
        std::string op;
        ls >> op;
        if (op == "h" || op == "x") {
            std::string ref;
            ls >> ref;
            c.gates.push_back({op == "h" ? GateKind::H : GateKind::X, parse_qref(ref, 'q'),
                               -1, 0.0});
        } else if (op.rfind("rz(", 0) == 0 || op.rfind("rx(", 0) == 0) {
            const auto close = op.find(')');
            if (close == std::string::npos)
                throw ValidationError("bad rotation: " + line);
            const double angle = detail::parse_double(op.substr(3, close - 3));
            std::string ref;
            ls >> ref;
            c.gates.push_back({op[1] == 'z' ? GateKind::RZ : GateKind::RX,
                               parse_qref(ref, 'q'), -1, angle});
        } else if (op == "cx") {
            std::string refs;
            ls >> refs;
            const auto comma = refs.find(',');
            if (comma == std::string::npos)
                throw ValidationError("bad cx operands: " + line);
            c.gates.push_back({GateKind::CNOT, parse_qref(refs.substr(0, comma), 'q'),
                               parse_qref(refs.substr(comma + 1), 'q'), 0.0});
        } else if (op == "measure") {
            std::string qref, arrow, cref;
            ls >> qref >> arrow >> cref;
            if (arrow != "->")
                throw ValidationError("bad measure: " + line);
            c.gates.push_back({GateKind::Measure, parse_qref(qref, 'q'), -1, 0.0});
        } else {
            throw ValidationError("unsupported gate: " + op);
        }
    }
    if (!saw_version || c.num_qubits == 0)
        throw ValidationError("not an OpenQASM 2.0 circuit");
    for (const auto& g : c.gates)
        if (g.q0 >= c.num_qubits || (g.q1 >= 0 && g.q1 >= c.num_qubits))
            throw ValidationError("gate operand out of range");
    return c;
}

SampleSet decode_samples(const std::vector<std::pair<std::string, long long>>& counts,
                         const CubicIsing& instance) {
    SampleSet out;
    out.provenance.method = "decoded";
    for (const auto& [bits, mult] : counts) {
        if (static_cast<int>(bits.size()) != instance.num_nodes)
            throw ValidationError("bitstring length does not match instance");
        SampleRecord r;
        r.spins.reserve(bits.size());
        for (char b : bits) {
            if (b == '0')
                r.spins.push_back(+1);
            else if (b == '1')
                r.spins.push_back(-1);
            else
                throw ValidationError("bad bit character");
        }
        r.multiplicity = mult;
        r.energy = evaluate_energy(instance, r.spins);
        out.records.push_back(std::move(r));
    }
    return out;
}

} // namespace hexising
