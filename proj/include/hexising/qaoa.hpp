// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hexising/instance.hpp"
#include "hexising/sampleset.hpp"
#include "hexising/topology.hpp"

namespace hexising {

enum class GateKind : std::uint8_t { H, X, RZ, RX, CNOT, Measure };

struct Gate {
    GateKind kind;
    int q0 = -1;
    int q1 = -1;       // CNOT target; -1 otherwise
    double angle = 0.0; // RZ/RX only
};

struct Circuit {
    int num_qubits = 0;
    std::vector<Gate> gates;
};

struct AngleParams {
    std::vector<double> gammas;
    std::vector<double> betas;
    int rounds() const { return static_cast<int>(gammas.size()); }
};

/// Gate durations in integer time units.  Only relative magnitudes matter for
/// idle-window detection; rz is virtual and takes no time.
struct DurationTable {
    int h = 2;
    int x = 1;
    int rx = 2;
    int rz = 0;
    int cnot = 4;
    int measure = 16;
    int alignment = 1;

    int of(GateKind k) const;
};

/// Parses `key=value` lines (h, x, rx, rz, cnot, measure, alignment).
DurationTable parse_duration_config(const std::string& text);

struct ScheduledGate {
    Gate gate;
    long long start = 0;
    int duration = 0;
};

struct ScheduledCircuit {
    int num_qubits = 0;
    std::vector<ScheduledGate> gates; // sorted by (start, insertion order)
    long long makespan = 0;
};

/// Full QAOA circuit: H on every qubit, then per round the phase separator
/// for e^{-i gamma_k C(x)} followed by the mixer RX(2 beta_k), and trailing
/// measurements.  CNOTs always target bridge qubits and are laid out in six
/// color layers per round, so CNOT depth is 6 per round on any lattice with a
/// degree-3 corner.
Circuit build_qaoa_circuit(const HeavyHexLattice& lattice, const CubicIsing& instance,
                           const AngleParams& params);

/// Phase separator subcircuit only (no H / mixer / measurement).
Circuit build_phase_separator(const HeavyHexLattice& lattice, const CubicIsing& instance,
                              double gamma);

/// Longest chain of CNOTs under the qubit-sharing dependency order.
int cnot_depth(const Circuit& circuit);

/// As-late-as-possible schedule; gate order within the result is by start
/// time with the original order as tie break.
ScheduledCircuit schedule_alap(const Circuit& circuit, const DurationTable& durations);

/// Schedules ALAP and fills every idle window between a qubit's operations
/// with an X-X pair when the window fits both pulses at the alignment
/// granularity.  The noiseless unitary is unchanged.
Circuit insert_ddd(const Circuit& circuit, const DurationTable& durations);

std::string to_openqasm(const Circuit& circuit);
Circuit parse_openqasm(const std::string& text);

/// Measurement decoding: bit 0 -> spin +1, bit 1 -> spin -1, string position
/// = qubit index.  Energies attached from the instance.
SampleSet decode_samples(const std::vector<std::pair<std::string, long long>>& counts,
                         const CubicIsing& instance);

} // namespace hexising
