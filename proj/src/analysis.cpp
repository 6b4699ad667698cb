// SPDX-License-Identifier: Apache-2.0

#include "hexising/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <nlohmann/json.hpp>

#include "hexising/detail/format.hpp"
#include "hexising/errors.hpp"

namespace hexising {

ComparisonReport analyze_comparison(const std::vector<MethodSamples>& methods) {
    if (methods.empty())
        throw ValidationError("no methods to compare");
    const int n = static_cast<int>(methods[0].per_instance.size());
    if (n == 0)
        throw ValidationError("no instances to compare");
    for (const auto& m : methods)
        if (static_cast<int>(m.per_instance.size()) != n)
            throw ValidationError("methods cover different instance sets");

    ComparisonReport rep;
    rep.num_instances = n;
    const int k = static_cast<int>(methods.size());
    for (const auto& m : methods)
        rep.labels.push_back(m.label);
    rep.stats.resize(k);
    for (int m = 0; m < k; ++m)
        for (int i = 0; i < n; ++i)
            rep.stats[m].push_back({methods[m].per_instance[i].mean_energy(),
                                    methods[m].per_instance[i].min_energy(),
                                    methods[m].per_instance[i].total_shots()});
    rep.wins.assign(k, std::vector<int>(k, 0));
    rep.ties.assign(k, std::vector<int>(k, 0));
    for (int a = 0; a < k; ++a) {
        for (int b = 0; b < k; ++b) {
            if (a == b)
                continue;
            for (int i = 0; i < n; ++i) {
                if (rep.stats[a][i].mean < rep.stats[b][i].mean)
                    ++rep.wins[a][b];
                else if (rep.stats[a][i].mean == rep.stats[b][i].mean)
                    ++rep.ties[a][b];
            }
        }
    }
    return rep;
}

std::string comparison_report_json(const ComparisonReport& report) {
    nlohmann::json j;
    j["labels"] = report.labels;
    j["num_instances"] = report.num_instances;
    nlohmann::json stats = nlohmann::json::array();
    for (std::size_t m = 0; m < report.stats.size(); ++m) {
        nlohmann::json per = nlohmann::json::array();
        for (const auto& s : report.stats[m])
            per.push_back({{"mean", s.mean}, {"min", s.min}, {"count", s.count}});
        stats.push_back(per);
    }
    j["stats"] = stats;
    j["wins"] = report.wins;
    j["ties"] = report.ties;
    return j.dump(2) + "\n";
}

void write_comparison_table(const ComparisonReport& report, std::ostream& out) {
    out << "method";
    for (const auto& l : report.labels)
        out << ",beats " << l;
    out << '\n';
    for (std::size_t a = 0; a < report.labels.size(); ++a) {
        out << report.labels[a];
        for (std::size_t b = 0; b < report.labels.size(); ++b) {
            out << ',';
            if (a == b)
                out << '-';
            else
                out << report.wins[a][b] << '/' << report.num_instances;
        }
        out << '\n';
    }
}

namespace {

struct Binned {
    double lo = 0.0;
    double width = 2.0;
    int nbins = 0;
    std::vector<std::vector<long long>> counts; // per series
};

Binned bin_series(const HistogramSpec& spec) {
    if (spec.series.empty())
        throw ValidationError("histogram needs at least one sample set");
    if (spec.bin_width <= 0.0)
        throw ValidationError("bin width must be positive");
    double emin = 0.0, emax = 0.0;
    bool first = true;
    for (const auto& [label, set] : spec.series) {
        if (set->records.empty())
            throw ValidationError("histogram input '" + label + "' is empty");
        const double lo = set->min_energy();
        double hi = set->records[0].energy;
        for (const auto& r : set->records)
            hi = std::max(hi, r.energy);
        if (first) {
            emin = lo;
            emax = hi;
            first = false;
        } else {
            emin = std::min(emin, lo);
            emax = std::max(emax, hi);
        }
    }
    Binned b;
    b.width = spec.bin_width;
    b.lo = std::floor(emin / b.width) * b.width;
    b.nbins = std::max(1, static_cast<int>(std::floor((emax - b.lo) / b.width)) + 1);
    b.counts.resize(spec.series.size(), std::vector<long long>(b.nbins, 0));
    for (std::size_t s = 0; s < spec.series.size(); ++s) {
        for (const auto& r : spec.series[s].second->records) {
            int idx = static_cast<int>(std::floor((r.energy - b.lo) / b.width));
            idx = std::clamp(idx, 0, b.nbins - 1);
            b.counts[s][idx] += r.multiplicity;
        }
    }
    return b;
}

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string fmt(double v) { return detail::format_double(v); }

} // namespace

std::string histogram_bins_csv(const HistogramSpec& spec) {
    const Binned b = bin_series(spec);
    std::string out = "bin_lo,bin_hi";
    for (const auto& [label, set] : spec.series)
        out += "," + label;
    out += "\n";
    for (int i = 0; i < b.nbins; ++i) {
        out += fmt(b.lo + i * b.width) + "," + fmt(b.lo + (i + 1) * b.width);
        for (std::size_t s = 0; s < spec.series.size(); ++s)
            out += "," + std::to_string(b.counts[s][i]);
        out += "\n";
    }
    return out;
}

std::string render_histogram_svg(const HistogramSpec& spec) {
    const Binned b = bin_series(spec);
    const int W = spec.width_px, H = spec.height_px;
    const int ml = 50, mr = 16, mt = 28, mb = 36;
    const double plot_w = W - ml - mr, plot_h = H - mt - mb;

    long long cmax = 1;
    for (const auto& series : b.counts)
        for (long long c : series)
            cmax = std::max(cmax, c);

    const double xlo = b.lo, xhi = b.lo + b.nbins * b.width;
    auto xpos = [&](double e) { return ml + (e - xlo) / (xhi - xlo) * plot_w; };
    auto ypos = [&](long long c) {
        return mt + plot_h * (1.0 - static_cast<double>(c) / static_cast<double>(cmax));
    };

    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(W) +
         "\" height=\"" + std::to_string(H) + "\">\n";
    s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    // axes
    s += "<line x1=\"" + fmt(ml) + "\" y1=\"" + fmt(mt + plot_h) + "\" x2=\"" +
         fmt(ml + plot_w) + "\" y2=\"" + fmt(mt + plot_h) +
         "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    s += "<line x1=\"" + fmt(ml) + "\" y1=\"" + fmt(mt) + "\" x2=\"" + fmt(ml) +
         "\" y2=\"" + fmt(mt + plot_h) + "\" stroke=\"black\" stroke-width=\"1\"/>\n";

    for (std::size_t m = 0; m < spec.series.size(); ++m) {
        const char* color = kPalette[m % 8];
        for (int i = 0; i < b.nbins; ++i) {
            if (b.counts[m][i] == 0)
                continue;
            const double x0 = xpos(xlo + i * b.width);
            const double x1 = xpos(xlo + (i + 1) * b.width);
            const double y = ypos(b.counts[m][i]);
            s += "<rect x=\"" + fmt(x0) + "\" y=\"" + fmt(y) + "\" width=\"" +
                 fmt(x1 - x0) + "\" height=\"" + fmt(mt + plot_h - y) + "\" fill=\"" +
                 color + "\" fill-opacity=\"0.35\"/>\n";
        }
        const double mean = spec.series[m].second->mean_energy();
        const double mn = spec.series[m].second->min_energy();
        s += "<line x1=\"" + fmt(xpos(mean)) + "\" y1=\"" + fmt(mt) + "\" x2=\"" +
             fmt(xpos(mean)) + "\" y2=\"" + fmt(mt + plot_h) + "\" stroke=\"" + color +
             "\" stroke-width=\"1.5\" stroke-dasharray=\"6,4\"/>\n";
        s += "<line x1=\"" + fmt(xpos(mn)) + "\" y1=\"" + fmt(mt) + "\" x2=\"" +
             fmt(xpos(mn)) + "\" y2=\"" + fmt(mt + plot_h) + "\" stroke=\"" + color +
             "\" stroke-width=\"1.5\"/>\n";
        s += "<text x=\"" + fmt(ml + plot_w - 4) + "\" y=\"" + fmt(mt + 14 + 16.0 * m) +
             "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\" fill=\"" +
             color + "\">" + spec.series[m].first + "</text>\n";
    }
    // x tick labels at the plot ends
    s += "<text x=\"" + fmt(ml) + "\" y=\"" + fmt(mt + plot_h + 16) +
         "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">" +
         fmt(xlo) + "</text>\n";
    s += "<text x=\"" + fmt(ml + plot_w) + "\" y=\"" + fmt(mt + plot_h + 16) +
         "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">" +
         fmt(xhi) + "</text>\n";
    s += "<text x=\"" + fmt(ml + plot_w / 2) + "\" y=\"" + fmt(mt + plot_h + 30) +
         "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">energy"
         "</text>\n";
    s += "<text x=\"" + fmt(14) + "\" y=\"" + fmt(mt + plot_h / 2) +
         "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\" "
         "transform=\"rotate(-90 14 " +
         fmt(mt + plot_h / 2) + ")\">samples</text>\n";
    s += "</svg>\n";
    return s;
}

} // namespace hexising
