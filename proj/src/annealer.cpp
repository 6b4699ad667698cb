// SPDX-License-Identifier: Apache-2.0

#include "hexising/annealer.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include "hexising/detail/format.hpp"
#include "hexising/errors.hpp"
#include "hexising/rng.hpp"

namespace hexising {

void AnnealSchedule::validate() const {
    if (points.size() < 2)
        throw ValidationError("schedule needs at least two breakpoints");
    if (points.front() != std::make_pair(0.0, 0.0))
        throw ValidationError("schedule must start at (0,0)");
    if (points.back().second != 1.0)
        throw ValidationError("schedule must end at s=1");
    for (std::size_t i = 1; i < points.size(); ++i) {
        if (points[i].first <= points[i - 1].first)
            throw ValidationError("schedule times must be strictly increasing");
        if (points[i].second < points[i - 1].second)
            throw ValidationError("anneal fraction must be nondecreasing");
    }
}

double AnnealSchedule::s_at(double t) const {
    if (t <= points.front().first)
        return points.front().second;
    if (t >= points.back().first)
        return points.back().second;
    for (std::size_t i = 1; i < points.size(); ++i) {
        if (t <= points[i].first) {
            const auto [t0, s0] = points[i - 1];
            const auto [t1, s1] = points[i];
            return s0 + (s1 - s0) * (t - t0) / (t1 - t0);
        }
    }
    return 1.0;
}

AnnealSchedule build_pause_schedule(double anneal_time_us, double pause_location,
                                    double pause_fraction) {
    if (anneal_time_us <= 0.0)
        throw ValidationError("anneal time must be positive");
    if (pause_location < 0.1 - 1e-12 || pause_location > 0.9 + 1e-12)
        throw ValidationError("pause location must lie in [0.1, 0.9]");
    if (pause_fraction < 0.0 || pause_fraction > 0.9 + 1e-12)
        throw ValidationError("pause fraction must lie in [0, 0.9]");

    AnnealSchedule sched;
    const double ramp = anneal_time_us - pause_fraction * anneal_time_us;
    if (pause_fraction == 0.0) {
        sched.points = {{0.0, 0.0}, {anneal_time_us, 1.0}};
    } else {
        const double t1 = pause_location * ramp;
        sched.points = {{0.0, 0.0},
                        {t1, pause_location},
                        {t1 + pause_fraction * anneal_time_us, pause_location},
                        {anneal_time_us, 1.0}};
    }
    sched.validate();
    return sched;
}

std::vector<QAParams> qa_param_grid() {
    std::vector<QAParams> grid;
    const double times[] = {10.0, 100.0, 1000.0, 2000.0};
    for (double t : times)
        for (int sp = 1; sp <= 9; ++sp)
            for (int f = 1; f <= 9; ++f)
                grid.push_back({t, sp / 10.0, f / 10.0, 500});
    return grid;
}

double AnnealerConfig::a_of(double s) const {
    if (a_curve.empty())
        return 1.0 - s;
    if (s <= a_curve.front().first)
        return a_curve.front().second;
    for (std::size_t i = 1; i < a_curve.size(); ++i)
        if (s <= a_curve[i].first) {
            const auto [s0, v0] = a_curve[i - 1];
            const auto [s1, v1] = a_curve[i];
            return v0 + (v1 - v0) * (s - s0) / (s1 - s0);
        }
    return a_curve.back().second;
}

double AnnealerConfig::b_of(double s) const {
    if (b_curve.empty())
        return s;
    if (s <= b_curve.front().first)
        return b_curve.front().second;
    for (std::size_t i = 1; i < b_curve.size(); ++i)
        if (s <= b_curve[i].first) {
            const auto [s0, v0] = b_curve[i - 1];
            const auto [s1, v1] = b_curve[i];
            return v0 + (v1 - v0) * (s - s0) / (s1 - s0);
        }
    return b_curve.back().second;
}

AnnealerConfig parse_annealer_config(const std::string& text) {
    AnnealerConfig cfg;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ValidationError("expected key=value: " + line);
        const std::string key = line.substr(0, eq);
        const std::string value = line.substr(eq + 1);
        if (key == "sweeps_per_us")
            cfg.sweeps_per_us = detail::parse_double(value);
        else if (key == "beta_max")
            cfg.beta_max = detail::parse_double(value);
        else if (key == "eps")
            cfg.eps = detail::parse_double(value);
        else if (key == "mode") {
            if (value == "metropolis")
                cfg.mode = AnnealerConfig::Mode::Metropolis;
            else if (value == "spinvector")
                cfg.mode = AnnealerConfig::Mode::SpinVector;
            else
                throw ValidationError("unknown sampler mode: " + value);
        } else if (key == "threads")
            cfg.threads = static_cast<int>(detail::parse_ll(value));
        else
            throw ValidationError("unknown sampler key: " + key);
    }
    return cfg;
}

namespace {

struct CompiledIsing {
    int n = 0;
    std::vector<double> h;
    std::vector<std::vector<std::pair<int, double>>> couplings;
};

CompiledIsing compile(const ReducedIsing& reduced) {
    CompiledIsing c;
    c.n = reduced.num_vars;
    c.h = reduced.linear;
    c.couplings.resize(c.n);
    for (const auto& [pr, v] : reduced.quadratic) {
        if (v == 0.0)
            continue;
        c.couplings[pr.first].push_back({pr.second, v});
        c.couplings[pr.second].push_back({pr.first, v});
    }
    return c;
}

double local_field(const CompiledIsing& c, const std::vector<std::int8_t>& s, int i) {
    double f = c.h[i];
    for (const auto& [j, v] : c.couplings[i])
        f += v * s[j];
    return f;
}

std::vector<std::int8_t> run_read_metropolis(const CompiledIsing& c,
                                             const std::vector<double>& beta_per_sweep,
                                             Prng& rng) {
    std::vector<std::int8_t> spins(c.n);
    for (auto& s : spins)
        s = static_cast<std::int8_t>(rng.next_spin());
    for (double beta : beta_per_sweep) {
        for (int i = 0; i < c.n; ++i) {
            const double delta = -2.0 * spins[i] * local_field(c, spins, i);
            if (delta <= 0.0 || rng.next_unit() < std::exp(-beta * delta))
                spins[i] = -spins[i];
        }
    }
    return spins;
}

// Spin-vector mode: continuous angles, transverse term weighted by A(s).
std::vector<std::int8_t> run_read_spinvector(const CompiledIsing& c,
                                             const std::vector<double>& s_per_sweep,
                                             const AnnealerConfig& cfg, Prng& rng) {
    constexpr double pi = 3.14159265358979323846;
    std::vector<double> theta(c.n);
    for (auto& t : theta)
        t = rng.next_unit() * pi;
    for (double s : s_per_sweep) {
        const double a = cfg.a_of(s), b = cfg.b_of(s);
        const double beta = std::min(cfg.beta_max, cfg.beta_max * b / (a + cfg.eps));
        for (int i = 0; i < c.n; ++i) {
            const double old_t = theta[i];
            const double new_t = rng.next_unit() * pi;
            double f = c.h[i];
            for (const auto& [j, v] : c.couplings[i])
                f += v * std::cos(theta[j]);
            const double e_old = -0.5 * a * std::sin(old_t) + 0.5 * b * std::cos(old_t) * f;
            const double e_new = -0.5 * a * std::sin(new_t) + 0.5 * b * std::cos(new_t) * f;
            const double delta = e_new - e_old;
            if (delta <= 0.0 || rng.next_unit() < std::exp(-beta * delta))
                theta[i] = new_t;
        }
    }
    std::vector<std::int8_t> spins(c.n);
    for (int i = 0; i < c.n; ++i)
        spins[i] = std::cos(theta[i]) >= 0.0 ? +1 : -1;
    return spins;
}

} // namespace

SampleSet anneal_sample(const ReducedIsing& reduced, const AnnealSchedule& schedule,
                        int reads, std::uint64_t seed, const AnnealerConfig& config) {
    if (reads < 1)
        throw ValidationError("reads must be positive");
    schedule.validate();
    const CompiledIsing compiled = compile(reduced);

    const double total = schedule.total_time();
    const int sweeps = std::max(1, static_cast<int>(std::lround(total * config.sweeps_per_us)));
    std::vector<double> s_per_sweep(sweeps);
    std::vector<double> beta_per_sweep(sweeps);
    for (int j = 0; j < sweeps; ++j) {
        const double s = schedule.s_at((j + 0.5) * total / sweeps);
        s_per_sweep[j] = s;
        const double a = config.a_of(s), b = config.b_of(s);
        beta_per_sweep[j] = std::min(config.beta_max, config.beta_max * b / (a + config.eps));
    }

    std::vector<std::vector<std::int8_t>> results(reads);
    auto run_range = [&](int lo, int hi) {
        for (int r = lo; r < hi; ++r) {
            Prng rng(derive_seed(seed, static_cast<std::uint64_t>(r)));
            results[r] = config.mode == AnnealerConfig::Mode::Metropolis
                             ? run_read_metropolis(compiled, beta_per_sweep, rng)
                             : run_read_spinvector(compiled, s_per_sweep, config, rng);
        }
    };
    const int nthreads = std::max(1, config.threads);
    if (nthreads == 1) {
        run_range(0, reads);
    } else {
        std::vector<std::thread> pool;
        const int chunk = (reads + nthreads - 1) / nthreads;
        for (int t = 0; t < nthreads; ++t) {
            const int lo = t * chunk, hi = std::min(reads, lo + chunk);
            if (lo < hi)
                pool.emplace_back(run_range, lo, hi);
        }
        for (auto& th : pool)
            th.join();
    }

    std::map<std::vector<std::int8_t>, long long> counts;
    for (const auto& spins : results)
        ++counts[spins];
    SampleSet out;
    out.provenance.method = "anneal-proxy";
    out.provenance.seed = seed;
    out.provenance.params["reads"] = std::to_string(reads);
    out.provenance.params["sweeps"] = std::to_string(sweeps);
    out.provenance.params["anneal_time_us"] = detail::format_double(total);
    for (auto& [spins, mult] : counts) {
        SampleRecord r;
        r.spins = spins;
        r.multiplicity = mult;
        r.energy = evaluate_reduced(reduced, r.spins);
        out.records.push_back(std::move(r));
    }
    return out;
}

SampleSet project_samples(const SampleSet& samples, const CubicIsing& instance,
                          const std::vector<SlackEntry>& registry) {
    const int expected = instance.num_nodes + 2 * static_cast<int>(registry.size());
    for (const auto& e : registry) {
        if (e.slack_p < instance.num_nodes || e.slack_q < instance.num_nodes ||
            e.slack_p >= expected || e.slack_q >= expected)
            throw ValidationError("slack registry does not match instance");
    }
    SampleSet out;
    out.provenance = samples.provenance;
    out.provenance.method = samples.provenance.method + "+projected";
    std::map<std::vector<std::int8_t>, long long> counts;
    for (const auto& r : samples.records) {
        if (static_cast<int>(r.spins.size()) != expected)
            throw ValidationError("sample length does not match instance plus slacks");
        std::vector<std::int8_t> orig(r.spins.begin(), r.spins.begin() + instance.num_nodes);
        counts[orig] += r.multiplicity;
    }
    for (auto& [spins, mult] : counts) {
        SampleRecord rec;
        rec.spins = spins;
        rec.multiplicity = mult;
        rec.energy = evaluate_energy(instance, rec.spins);
        out.records.push_back(std::move(rec));
    }
    return out;
}

void write_schedule_csv(const AnnealSchedule& schedule, std::ostream& out) {
    out << "time_us,s\n";
    for (const auto& [t, s] : schedule.points)
        out << detail::format_double(t) << ',' << detail::format_double(s) << '\n';
}

AnnealSchedule read_schedule_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != "time_us,s")
        throw ValidationError("bad schedule header");
    AnnealSchedule sched;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw ValidationError("bad schedule row: " + line);
        sched.points.push_back({detail::parse_double(line.substr(0, comma)),
                                detail::parse_double(line.substr(comma + 1))});
    }
    sched.validate();
    return sched;
}

} // namespace hexising
