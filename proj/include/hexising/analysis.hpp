// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hexising/sampleset.hpp"

namespace hexising {

struct MethodSamples {
    std::string label;
    std::vector<SampleSet> per_instance;
};

/// Pairwise comparison across instances: method i beats j on an instance when
/// its mean energy is strictly lower.
struct ComparisonReport {
    std::vector<std::string> labels;
    int num_instances = 0;
    // stats[m][i] = (mean, min, count) of method m on instance i
    struct Stat {
        double mean, min;
        long long count;
    };
    std::vector<std::vector<Stat>> stats;
    std::vector<std::vector<int>> wins; // wins[i][j]
    std::vector<std::vector<int>> ties;
};

ComparisonReport analyze_comparison(const std::vector<MethodSamples>& methods);
std::string comparison_report_json(const ComparisonReport& report);
void write_comparison_table(const ComparisonReport& report, std::ostream& out);

/// Overlaid histogram of sample energies, one series per label, with dashed
/// mean markers and solid minimum markers.  Writes an SVG and a CSV of bin
/// counts; both byte-deterministic for fixed inputs.
struct HistogramSpec {
    std::vector<std::pair<std::string, const SampleSet*>> series;
    double bin_width = 2.0;
    int width_px = 720;
    int height_px = 420;
};

std::string render_histogram_svg(const HistogramSpec& spec);
std::string histogram_bins_csv(const HistogramSpec& spec);

} // namespace hexising
