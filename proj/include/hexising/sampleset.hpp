// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace hexising {

struct SampleRecord {
    std::vector<std::int8_t> spins; // values in {-1,+1}
    long long multiplicity = 0;
    double energy = 0.0;
};

struct Provenance {
    std::string method;
    std::uint64_t seed = 0;
    std::map<std::string, std::string> params;
};

struct SampleSet {
    std::vector<SampleRecord> records;
    Provenance provenance;

    long long total_shots() const;
    double mean_energy() const; // multiplicity weighted
    double min_energy() const;
};

/// CSV columns: spins (string of + and -), multiplicity, energy.
void write_sampleset_csv(const SampleSet& s, std::ostream& out);
SampleSet read_sampleset_csv(std::istream& in);

/// Provenance sidecar (JSON).
std::string sampleset_sidecar_json(const SampleSet& s);
Provenance parse_sampleset_sidecar(const std::string& json_text);

std::string spins_to_string(const std::vector<std::int8_t>& spins);
std::vector<std::int8_t> spins_from_string(const std::string& text);

} // namespace hexising
