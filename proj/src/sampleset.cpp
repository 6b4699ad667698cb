// SPDX-License-Identifier: Apache-2.0

#include "hexising/sampleset.hpp"

#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "hexising/detail/format.hpp"
#include "hexising/errors.hpp"

namespace hexising {

long long SampleSet::total_shots() const {
    long long n = 0;
    for (const auto& r : records)
        n += r.multiplicity;
    return n;
}

double SampleSet::mean_energy() const {
    if (records.empty())
        throw ValidationError("mean of empty sample set");
    double sum = 0.0;
    long long n = 0;
    for (const auto& r : records) {
        sum += r.energy * static_cast<double>(r.multiplicity);
        n += r.multiplicity;
    }
    return sum / static_cast<double>(n);
}

double SampleSet::min_energy() const {
    if (records.empty())
        throw ValidationError("min of empty sample set");
    double best = std::numeric_limits<double>::infinity();
    for (const auto& r : records)
        best = std::min(best, r.energy);
    return best;
}

std::string spins_to_string(const std::vector<std::int8_t>& spins) {
    std::string s;
    s.reserve(spins.size());
    for (auto v : spins)
        s.push_back(v > 0 ? '+' : '-');
    return s;
}

std::vector<std::int8_t> spins_from_string(const std::string& text) {
    std::vector<std::int8_t> spins;
    spins.reserve(text.size());
    for (char c : text) {
        if (c == '+')
            spins.push_back(+1);
        else if (c == '-')
            spins.push_back(-1);
        else
            throw ValidationError("bad spin character in '" + text + "'");
    }
    return spins;
}

void write_sampleset_csv(const SampleSet& s, std::ostream& out) {
    out << "spins,multiplicity,energy\n";
    for (const auto& r : s.records)
        out << spins_to_string(r.spins) << ',' << r.multiplicity << ','
            << detail::format_double(r.energy) << '\n';
}

SampleSet read_sampleset_csv(std::istream& in) {
    SampleSet s;
    std::string line;
    if (!std::getline(in, line) || line != "spins,multiplicity,energy")
        throw ValidationError("bad sample set header");
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        std::istringstream ls(line);
        std::string spins, mult, energy;
        if (!std::getline(ls, spins, ',') || !std::getline(ls, mult, ',') ||
            !std::getline(ls, energy))
            throw ValidationError("bad sample row: " + line);
        SampleRecord r;
        r.spins = spins_from_string(spins);
        r.multiplicity = detail::parse_ll(mult);
        r.energy = detail::parse_double(energy);
        s.records.push_back(std::move(r));
    }
    return s;
}

std::string sampleset_sidecar_json(const SampleSet& s) {
    nlohmann::json j;
    j["method"] = s.provenance.method;
    j["seed"] = s.provenance.seed;
    j["params"] = s.provenance.params;
    j["total_shots"] = s.total_shots();
    return j.dump(2) + "\n";
}

Provenance parse_sampleset_sidecar(const std::string& json_text) {
    const auto j = nlohmann::json::parse(json_text);
    Provenance p;
    p.method = j.at("method").get<std::string>();
    p.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("params"))
        p.params = j.at("params").get<std::map<std::string, std::string>>();
    return p;
}

} // namespace hexising
