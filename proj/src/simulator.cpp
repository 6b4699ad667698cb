// SPDX-License-Identifier: Apache-2.0

#include "hexising/simulator.hpp"

#include <algorithm>
#include <cmath>

#include "hexising/errors.hpp"
#include "hexising/rng.hpp"

namespace hexising {

double StateVector::norm() const {
    double s = 0.0;
    for (const auto& a : amps)
        s += std::norm(a);
    return std::sqrt(s);
}

namespace {

using cd = std::complex<double>;

void apply_1q(std::vector<cd>& amps, int q, cd u00, cd u01, cd u10, cd u11) {
    const std::uint64_t bit = 1ULL << q;
    const std::uint64_t n = amps.size();
    for (std::uint64_t i = 0; i < n; ++i) {
        if (i & bit)
            continue;
        const cd a0 = amps[i];
        const cd a1 = amps[i | bit];
        amps[i] = u00 * a0 + u01 * a1;
        amps[i | bit] = u10 * a0 + u11 * a1;
    }
}

void apply_phase(std::vector<cd>& amps, int q, cd p0, cd p1) {
    const std::uint64_t bit = 1ULL << q;
    const std::uint64_t n = amps.size();
    for (std::uint64_t i = 0; i < n; ++i)
        amps[i] *= (i & bit) ? p1 : p0;
}

void apply_cnot(std::vector<cd>& amps, int control, int target) {
    const std::uint64_t cb = 1ULL << control;
    const std::uint64_t tb = 1ULL << target;
    const std::uint64_t n = amps.size();
    for (std::uint64_t i = 0; i < n; ++i)
        if ((i & cb) && !(i & tb))
            std::swap(amps[i], amps[i | tb]);
}

} // namespace

StateVector run_statevector(const Circuit& circuit, int qubit_cap) {
    if (circuit.num_qubits > qubit_cap)
        throw CapacityError("circuit has " + std::to_string(circuit.num_qubits) +
                            " qubits, cap is " + std::to_string(qubit_cap));
    StateVector sv;
    sv.num_qubits = circuit.num_qubits;
    sv.amps.assign(1ULL << circuit.num_qubits, cd(0.0, 0.0));
    sv.amps[0] = cd(1.0, 0.0);

    constexpr double inv_sqrt2 = 0.70710678118654752440;
    for (const auto& g : circuit.gates) {
        switch (g.kind) {
        case GateKind::H:
            apply_1q(sv.amps, g.q0, cd(inv_sqrt2, 0), cd(inv_sqrt2, 0), cd(inv_sqrt2, 0),
                     cd(-inv_sqrt2, 0));
            break;
        case GateKind::X:
            apply_1q(sv.amps, g.q0, cd(0, 0), cd(1, 0), cd(1, 0), cd(0, 0));
            break;
        case GateKind::RZ:
            // RZ(t) = diag(e^{-it/2}, e^{+it/2})
            apply_phase(sv.amps, g.q0, std::polar(1.0, -g.angle / 2),
                        std::polar(1.0, g.angle / 2));
            break;
        case GateKind::RX: {
            const double c = std::cos(g.angle / 2);
            const double s = std::sin(g.angle / 2);
            apply_1q(sv.amps, g.q0, cd(c, 0), cd(0, -s), cd(0, -s), cd(c, 0));
            break;
        }
        case GateKind::CNOT:
            apply_cnot(sv.amps, g.q0, g.q1);
            break;
        case GateKind::Measure:
            break; // stripped
        }
    }
    return sv;
}

std::string bitstring_of(std::uint64_t basis_index, int num_qubits) {
    std::string s(num_qubits, '0');
    for (int q = 0; q < num_qubits; ++q)
        if (basis_index & (1ULL << q))
            s[q] = '1';
    return s;
}

std::vector<std::pair<std::uint64_t, long long>>
sample_counts(const Circuit& circuit, long long shots, std::uint64_t seed, int qubit_cap) {
    if (shots < 1)
        throw ValidationError("shots must be positive");
    const auto sv = run_statevector(circuit, qubit_cap);
    std::vector<double> cumulative(sv.amps.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < sv.amps.size(); ++i) {
        acc += std::norm(sv.amps[i]);
        cumulative[i] = acc;
    }
    const double total = acc;

    Prng rng(seed);
    std::vector<std::pair<std::uint64_t, long long>> out;
    std::map<std::uint64_t, long long> counts;
    for (long long s = 0; s < shots; ++s) {
        const double u = rng.next_unit() * total;
        const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        const std::uint64_t idx =
            it == cumulative.end() ? cumulative.size() - 1
                                   : static_cast<std::uint64_t>(it - cumulative.begin());
        ++counts[idx];
    }
    out.assign(counts.begin(), counts.end());
    return out;
}

std::vector<std::pair<std::string, long long>>
sample_bitstrings(const Circuit& circuit, long long shots, std::uint64_t seed,
                  int qubit_cap) {
    std::vector<std::pair<std::string, long long>> out;
    for (const auto& [idx, mult] : sample_counts(circuit, shots, seed, qubit_cap))
        out.push_back({bitstring_of(idx, circuit.num_qubits), mult});
    return out;
}

double phase_oracle_check(const HeavyHexLattice& lattice, const CubicIsing& instance,
                          double gamma, int qubit_cap) {
    if (lattice.num_nodes > qubit_cap)
        throw CapacityError("phase oracle limited to " + std::to_string(qubit_cap) +
                            " qubits");
    const Circuit sep = build_phase_separator(lattice, instance, gamma);
    const int n = lattice.num_nodes;
    const std::uint64_t dim = 1ULL << n;

    double max_dev = 0.0;
    cd global(0.0, 0.0);
    std::vector<int> bits(n);
    for (std::uint64_t x = 0; x < dim; ++x) {
        for (int q = 0; q < n; ++q)
            bits[q] = (x >> q) & 1;
        double phase = 0.0;
        for (const auto& g : sep.gates) {
            if (g.kind == GateKind::CNOT)
                bits[g.q1] ^= bits[g.q0];
            else if (g.kind == GateKind::RZ)
                phase += bits[g.q0] ? g.angle / 2 : -g.angle / 2;
            else
                throw ValidationError("phase separator contains a non-diagonal gate");
        }
        for (int q = 0; q < n; ++q)
            if (bits[q] != static_cast<int>((x >> q) & 1))
                throw ValidationError("phase separator does not restore parities");

        std::vector<std::int8_t> spins(n);
        for (int q = 0; q < n; ++q)
            spins[q] = ((x >> q) & 1) ? -1 : +1;
        const double want = -gamma * evaluate_energy(instance, spins);
        const cd got = std::polar(1.0, phase);
        const cd expect = std::polar(1.0, want);
        if (x == 0)
            global = got / expect; // remove one global phase, fixed on the first state
        max_dev = std::max(max_dev, std::abs(got - global * expect));
    }
    return max_dev;
}

double distribution_tvd(const Circuit& a, const Circuit& b, int qubit_cap) {
    if (a.num_qubits != b.num_qubits)
        throw ValidationError("circuits act on different qubit counts");
    const auto sa = run_statevector(a, qubit_cap);
    const auto sb = run_statevector(b, qubit_cap);
    double tvd = 0.0;
    for (std::size_t i = 0; i < sa.amps.size(); ++i)
        tvd += std::abs(std::norm(sa.amps[i]) - std::norm(sb.amps[i]));
    return tvd / 2.0;
}

} // namespace hexising
