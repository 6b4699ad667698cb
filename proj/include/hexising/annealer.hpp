// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hexising/reduction.hpp"
#include "hexising/sampleset.hpp"

namespace hexising {

/// Piecewise-linear anneal-fraction schedule: (time in microseconds, s).
/// Starts at (0,0), ends at (T,1); times strictly increasing, s nondecreasing.
struct AnnealSchedule {
    std::vector<std::pair<double, double>> points;

    double total_time() const { return points.back().first; }
    double s_at(double t) const;
    void validate() const;
};

/// Symmetric-pause schedule: breakpoints
///   (0,0), (s_p(T-fT), s_p), (s_p(T-fT)+fT, s_p), (T,1)
/// so the ramp slopes before and after the pause are both 1/(T-fT).
/// f = 0 is allowed and yields the plain linear schedule.
AnnealSchedule build_pause_schedule(double anneal_time_us, double pause_location,
                                    double pause_fraction);

struct QAParams {
    double anneal_time_us = 0.0;
    double pause_location = 0.0; // anneal fraction s_p
    double pause_fraction = 0.0; // of total anneal time
    int reads = 500;
};

/// 9 pause locations x 9 pause fractions x 4 anneal times, reads = 500: the
/// 324-point schedule grid.
std::vector<QAParams> qa_param_grid();

struct AnnealerConfig {
    double sweeps_per_us = 10.0;
    double beta_max = 30.0;
    double eps = 1e-9;
    enum class Mode { Metropolis, SpinVector } mode = Mode::Metropolis;
    // Transverse/problem energy scales; defaults A(s)=1-s, B(s)=s.  Each curve
    // is a two-column CSV (s, value) interpolated linearly when loaded.
    std::vector<std::pair<double, double>> a_curve;
    std::vector<std::pair<double, double>> b_curve;
    int threads = 1;

    double a_of(double s) const;
    double b_of(double s) const;
};

AnnealerConfig parse_annealer_config(const std::string& text);

/// Schedule-driven classical annealing proxy over the reduced Ising.  Each
/// read runs round(T * sweeps_per_us) Metropolis sweeps; sweep j uses the
/// effective inverse temperature
///   beta_eff(s) = min(beta_max, beta_max * B(s) / (A(s) + eps))
/// at s = schedule(t_j).  Reads are seeded independently via
/// derive_seed(seed, read index), so results do not depend on thread count.
SampleSet anneal_sample(const ReducedIsing& reduced, const AnnealSchedule& schedule,
                        int reads, std::uint64_t seed, const AnnealerConfig& config = {});

/// Drops slack spins and re-evaluates energies on the original instance.
SampleSet project_samples(const SampleSet& samples, const CubicIsing& instance,
                          const std::vector<SlackEntry>& registry);

// Schedule CSV: header "time_us,s", one breakpoint per row, re-emitted
// bit-exactly.
void write_schedule_csv(const AnnealSchedule& schedule, std::ostream& out);
AnnealSchedule read_schedule_csv(std::istream& in);

} // namespace hexising
