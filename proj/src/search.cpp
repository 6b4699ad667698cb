// SPDX-License-Identifier: Apache-2.0

#include "hexising/search.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstring>
#include <mutex>
#include <numbers>
#include <ostream>
#include <thread>

#include <nlohmann/json.hpp>

#include "hexising/detail/format.hpp"
#include "hexising/errors.hpp"
#include "hexising/rng.hpp"
#include "hexising/simulator.hpp"

namespace hexising {

namespace {

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i)
        v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    return v;
}

} // namespace

std::size_t AngleGrid::combo_count() const {
    std::size_t n = 1;
    for (const auto& a : axes)
        n *= a.size();
    return n;
}

std::vector<double> AngleGrid::combo(std::size_t index) const {
    std::vector<double> values(axes.size());
    for (std::size_t a = axes.size(); a-- > 0;) {
        values[a] = axes[a][index % axes[a].size()];
        index /= axes[a].size();
    }
    return values;
}

AngleParams AngleGrid::params_at(std::size_t index) const {
    const auto v = combo(index);
    AngleParams params;
    for (int k = 0; k < p; ++k) {
        params.gammas.push_back(v[2 * k]);
        params.betas.push_back(v[2 * k + 1]);
    }
    return params;
}

std::uint64_t AngleGrid::spec_hash() const {
    std::uint64_t h = 1469598103934665603ULL; // FNV-1a
    auto mix = [&](std::uint64_t x) {
        h ^= x;
        h *= 1099511628211ULL;
    };
    mix(static_cast<std::uint64_t>(p));
    for (const auto& axis : axes) {
        mix(axis.size());
        for (double v : axis) {
            std::uint64_t bits;
            static_assert(sizeof(bits) == sizeof(v));
            std::memcpy(&bits, &v, sizeof(bits));
            mix(bits);
        }
    }
    return h;
}

AngleGrid angle_grid(int p) {
    constexpr double pi = std::numbers::pi;
    AngleGrid g;
    g.p = p;
    if (p == 1) {
        g.axis_names = {"gamma1", "beta1"};
        g.axes = {linspace(0.0, pi, 120), linspace(0.0, pi / 2, 60)};
    } else if (p == 2) {
        g.axis_names = {"gamma1", "beta1", "gamma2", "beta2"};
        g.axes = {linspace(0.0, pi, 11), linspace(0.0, pi, 11), linspace(0.0, pi, 11),
                  linspace(0.0, pi / 2, 5)};
    } else {
        throw ValidationError("angle grids are defined for p = 1 or 2");
    }
    return g;
}

std::size_t select_best(const std::vector<GridRecord>& records) {
    if (records.empty())
        throw ValidationError("empty grid result");
    auto angle_key = [](const AngleParams& p) {
        std::vector<double> key;
        for (std::size_t k = 0; k < p.gammas.size(); ++k) {
            key.push_back(p.gammas[k]);
            key.push_back(p.betas[k]);
        }
        return key;
    };
    std::size_t best = 0;
    for (std::size_t i = 1; i < records.size(); ++i) {
        if (records[i].mean_energy < records[best].mean_energy ||
            (records[i].mean_energy == records[best].mean_energy &&
             angle_key(records[i].params) < angle_key(records[best].params)))
            best = i;
    }
    return best;
}

GridResult run_grid_search(const HeavyHexLattice& lattice, const CubicIsing& instance,
                           const AngleGrid& grid, long long shots, std::uint64_t seed,
                           bool ddd, const DurationTable& durations, int threads) {
    if (shots < 1)
        throw ValidationError("shots must be positive");
    const std::size_t n = grid.combo_count();
    GridResult result;
    result.records.resize(n);
    result.seed = seed;
    result.shots = shots;
    result.ddd = ddd;
    result.grid_hash = grid.spec_hash();

    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&]() {
        try {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n)
                    return;
                const AngleParams params = grid.params_at(i);
                Circuit circuit = build_qaoa_circuit(lattice, instance, params);
                if (ddd)
                    circuit = insert_ddd(circuit, durations);
                const auto counts =
                    sample_bitstrings(circuit, shots, derive_seed(seed, i));
                const SampleSet samples = decode_samples(counts, instance);
                result.records[i] = {i, params, samples.mean_energy(),
                                     samples.min_energy()};
            }
        } catch (...) {
            const std::lock_guard<std::mutex> lock(error_mutex);
            if (!first_error)
                first_error = std::current_exception();
            next.store(n); // stop the other workers
        }
    };
    const int nthreads = std::max(1, threads);
    if (nthreads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nthreads; ++t)
            pool.emplace_back(worker);
        for (auto& th : pool)
            th.join();
    }
    if (first_error)
        std::rethrow_exception(first_error);
    result.best_index = select_best(result.records);
    return result;
}

void write_grid_csv(const GridResult& result, std::ostream& out) {
    out << "index";
    if (!result.records.empty()) {
        for (std::size_t k = 0; k < result.records[0].params.gammas.size(); ++k)
            out << ",gamma" << (k + 1) << ",beta" << (k + 1);
    }
    out << ",mean_energy,min_energy\n";
    for (const auto& r : result.records) {
        out << r.index;
        for (std::size_t k = 0; k < r.params.gammas.size(); ++k)
            out << ',' << detail::format_double(r.params.gammas[k]) << ','
                << detail::format_double(r.params.betas[k]);
        out << ',' << detail::format_double(r.mean_energy) << ','
            << detail::format_double(r.min_energy) << '\n';
    }
}

std::string grid_provenance_json(const GridResult& result) {
    nlohmann::json j;
    j["seed"] = result.seed;
    j["shots"] = result.shots;
    j["ddd"] = result.ddd;
    j["grid_spec_hash"] = result.grid_hash;
    j["best_index"] = result.best_index;
    return j.dump(2) + "\n";
}

} // namespace hexising
