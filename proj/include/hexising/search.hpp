// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "hexising/qaoa.hpp"

namespace hexising {

/// Cartesian angle grid.  Combos are enumerated lexicographically over the
/// axes in the order listed (last axis fastest).
struct AngleGrid {
    int p = 0;
    std::vector<std::string> axis_names;      // e.g. gamma1, beta1, ...
    std::vector<std::vector<double>> axes;    // values per axis, endpoints inclusive

    std::size_t combo_count() const;
    std::vector<double> combo(std::size_t index) const;
    AngleParams params_at(std::size_t index) const;
    std::uint64_t spec_hash() const;
};

/// The grids used for the angle search:
///   p=1: gamma 120 points in [0,pi], beta 60 points in [0,pi/2]  -> 7200
///   p=2: gamma1, beta1, gamma2 11 points in [0,pi], beta2 5 in [0,pi/2] -> 6655
AngleGrid angle_grid(int p);

struct GridRecord {
    std::size_t index = 0;
    AngleParams params;
    double mean_energy = 0.0;
    double min_energy = 0.0;
};

struct GridResult {
    std::vector<GridRecord> records;
    std::size_t best_index = 0; // argmin of mean energy, ties by smallest angles
    std::uint64_t seed = 0;
    long long shots = 0;
    bool ddd = false;
    std::uint64_t grid_hash = 0;
};

/// Simulate-and-sample every combo.  Per-combo seed = derive_seed(seed, index),
/// so results are bit-reproducible regardless of thread count.
GridResult run_grid_search(const HeavyHexLattice& lattice, const CubicIsing& instance,
                           const AngleGrid& grid, long long shots, std::uint64_t seed,
                           bool ddd = false, const DurationTable& durations = {},
                           int threads = 1);

/// Argmin of mean energy; ties broken by lexicographically smallest
/// (gamma_1, beta_1, ..., gamma_p, beta_p).
std::size_t select_best(const std::vector<GridRecord>& records);

void write_grid_csv(const GridResult& result, std::ostream& out);
std::string grid_provenance_json(const GridResult& result);

} // namespace hexising
