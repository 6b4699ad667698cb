// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "hexising/qaoa.hpp"

namespace hexising {

/// Dense statevector.  Qubit 0 is the least significant bit of the basis
/// index; bitstring text is qubit-index order (qubit 0 leftmost).
struct StateVector {
    int num_qubits = 0;
    std::vector<std::complex<double>> amps;

    double norm() const;
};

inline constexpr int kDefaultQubitCap = 26;

/// Exact amplitudes of |0...0> through the gate list.  Measure gates are
/// stripped.  Throws CapacityError above the qubit cap.
StateVector run_statevector(const Circuit& circuit, int qubit_cap = kDefaultQubitCap);

std::string bitstring_of(std::uint64_t basis_index, int num_qubits);

/// Multinomial draw from |amplitude|^2, deterministic given the seed.
/// Returns (basis index, count) sorted by basis index.
std::vector<std::pair<std::uint64_t, long long>>
sample_counts(const Circuit& circuit, long long shots, std::uint64_t seed,
              int qubit_cap = kDefaultQubitCap);

/// Counts in bitstring form, ready for decode_samples.
std::vector<std::pair<std::string, long long>>
sample_bitstrings(const Circuit& circuit, long long shots, std::uint64_t seed,
                  int qubit_cap = kDefaultQubitCap);

/// Builds the phase-separator subcircuit, pushes every basis state through it
/// tracking parities and phases exactly, and compares against e^{-i gamma C(x)}
/// after removing one global phase.  Returns the maximum modulus deviation.
double phase_oracle_check(const HeavyHexLattice& lattice, const CubicIsing& instance,
                          double gamma, int qubit_cap = 14);

/// Total variation distance between the measurement distributions of two
/// circuits (simulated noiselessly).
double distribution_tvd(const Circuit& a, const Circuit& b,
                        int qubit_cap = kDefaultQubitCap);

} // namespace hexising
