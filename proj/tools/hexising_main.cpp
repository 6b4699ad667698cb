// SPDX-License-Identifier: Apache-2.0

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "hexising/analysis.hpp"
#include "hexising/annealer.hpp"
#include "hexising/errors.hpp"
#include "hexising/pegasus.hpp"
#include "hexising/qaoa.hpp"
#include "hexising/reduction.hpp"
#include "hexising/search.hpp"
#include "hexising/simulator.hpp"

namespace fs = std::filesystem;
using namespace hexising;

namespace {

struct GlobalOpts {
    std::uint64_t seed = 0;
    int threads = 1;
    std::string out_dir = ".";
    std::vector<std::string> outputs;
};

fs::path out_path(const GlobalOpts& g, const std::string& name) {
    return fs::path(g.out_dir) / name;
}

void write_file(GlobalOpts& g, const std::string& name, const std::string& content) {
    const auto path = out_path(g, name);
    fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ValidationError("cannot write " + path.string());
    out << content;
    g.outputs.push_back(path.string());
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ValidationError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_manifest(const GlobalOpts& g, const std::string& subcommand,
                    const std::vector<std::string>& argv_tail) {
    nlohmann::json j;
    j["tool"] = "hexising";
    j["subcommand"] = subcommand;
    j["arguments"] = argv_tail;
    j["seed"] = g.seed;
    j["threads"] = g.threads;
    j["outputs"] = g.outputs;
    const auto path = out_path(g, "manifest.json");
    std::ofstream out(path, std::ios::binary);
    out << j.dump(2) << "\n";
}

// Lattice specs: "washington", "RxC", or a heavyhex file path.  The first two
// carry layout geometry; files do not.
HeavyHexLattice load_lattice_spec(const std::string& spec) {
    if (spec == "washington")
        return load_washington();
    if (spec == "washington-completed")
        return washington_completed();
    const auto x = spec.find('x');
    if (x != std::string::npos && spec.find('.') == std::string::npos) {
        try {
            const int rows = std::stoi(spec.substr(0, x));
            const int cols = std::stoi(spec.substr(x + 1));
            return build_heavy_hex(rows, cols);
        } catch (const std::invalid_argument&) {
        }
    }
    std::ifstream in(spec);
    if (!in)
        throw ValidationError("cannot open lattice '" + spec + "'");
    return parse_lattice(in, spec);
}

CubicIsing load_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ValidationError("cannot open instance '" + path + "'");
    return parse_instance(in);
}

ReducedIsing load_reduced_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ValidationError("cannot open reduced instance '" + path + "'");
    auto red = parse_reduced(in);
    const auto sidecar = path + ".slacks.json";
    if (fs::exists(sidecar))
        red.slacks = parse_slack_registry(read_file(sidecar));
    return red;
}

std::set<int> load_id_file(const std::string& path) {
    std::set<int> ids;
    if (path.empty())
        return ids;
    std::ifstream in(path);
    if (!in)
        throw ValidationError("cannot open id list '" + path + "'");
    long long v;
    while (in >> v)
        ids.insert(static_cast<int>(v));
    return ids;
}

DurationTable load_durations(const std::string& path) {
    if (path.empty())
        return {};
    return parse_duration_config(read_file(path));
}

std::string sampleset_files(GlobalOpts& g, const SampleSet& set, const std::string& stem) {
    std::ostringstream csv;
    write_sampleset_csv(set, csv);
    write_file(g, stem + ".csv", csv.str());
    write_file(g, stem + ".json", sampleset_sidecar_json(set));
    return stem + ".csv";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"heavy-hex cubic Ising toolkit: instances, depth-6 QAOA, order "
                 "reduction, Pegasus tiling and an annealing proxy"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--seed", g.seed, "master seed");
    app.add_option("--threads", g.threads, "worker threads where supported");
    app.add_option("--out-dir", g.out_dir, "output directory");

    // lattice
    auto* lattice_cmd = app.add_subcommand("lattice", "emit a lattice file");
    std::string lat_spec = "washington";
    std::string lat_out = "lattice.heavyhex";
    lattice_cmd->add_option("--spec", lat_spec, "washington | RxC");
    lattice_cmd->add_option("-o,--output", lat_out);

    // instance
    auto* instance_cmd = app.add_subcommand("instance", "generate a random instance");
    std::string inst_lattice = "washington";
    std::string inst_out = "instance.cubicising";
    instance_cmd->add_option("--lattice", inst_lattice);
    instance_cmd->add_option("-o,--output", inst_out);

    // compile-qaoa
    auto* compile_cmd = app.add_subcommand("compile-qaoa", "emit an OpenQASM circuit");
    std::string cq_lattice = "washington", cq_instance, cq_out = "circuit.qasm";
    std::vector<double> cq_gammas, cq_betas;
    int cq_rounds = 1;
    bool cq_ddd = false;
    std::string cq_durations;
    compile_cmd->add_option("--lattice", cq_lattice);
    compile_cmd->add_option("--instance", cq_instance)->required();
    compile_cmd->add_option("--rounds", cq_rounds);
    compile_cmd->add_option("--gamma", cq_gammas, "one angle per round");
    compile_cmd->add_option("--beta", cq_betas, "one angle per round");
    compile_cmd->add_flag("--ddd", cq_ddd, "insert X-X decoupling pairs");
    compile_cmd->add_option("--durations", cq_durations, "key=value duration table");
    compile_cmd->add_option("-o,--output", cq_out);

    // simulate
    auto* sim_cmd = app.add_subcommand("simulate", "sample a circuit with the statevector");
    std::string sim_circuit, sim_instance, sim_out = "samples";
    long long sim_shots = 10000;
    int sim_cap = kDefaultQubitCap;
    sim_cmd->add_option("--circuit", sim_circuit)->required();
    sim_cmd->add_option("--instance", sim_instance)->required();
    sim_cmd->add_option("--shots", sim_shots);
    sim_cmd->add_option("--qubit-cap", sim_cap);
    sim_cmd->add_option("-o,--output", sim_out, "stem for .csv/.json");

    // grid-search
    auto* grid_cmd = app.add_subcommand("grid-search", "angle grid search by simulation");
    std::string gs_lattice, gs_instance, gs_out = "grid", gs_durations;
    int gs_rounds = 1;
    long long gs_shots = 10000;
    bool gs_ddd = false;
    grid_cmd->add_option("--lattice", gs_lattice)->required();
    grid_cmd->add_option("--instance", gs_instance)->required();
    grid_cmd->add_option("--rounds", gs_rounds);
    grid_cmd->add_option("--shots", gs_shots);
    grid_cmd->add_flag("--ddd", gs_ddd);
    grid_cmd->add_option("--durations", gs_durations);
    grid_cmd->add_option("-o,--output", gs_out, "stem for .csv/.json");

    // reduce
    auto* reduce_cmd = app.add_subcommand("reduce", "order-reduce cubic terms");
    std::string rd_instance, rd_lattice, rd_out = "reduced.ising";
    reduce_cmd->add_option("--instance", rd_instance)->required();
    reduce_cmd->add_option("--lattice", rd_lattice,
                           "layout-aware variant assignment (washington | RxC)");
    reduce_cmd->add_option("-o,--output", rd_out);

    // pegasus build / tile / export
    auto* peg_cmd = app.add_subcommand("pegasus", "Pegasus graphs and embeddings");
    peg_cmd->require_subcommand(1);
    auto* peg_build = peg_cmd->add_subcommand("build", "emit graph statistics");
    int pg_m = 16;
    std::string pg_dead_q, pg_dead_c, pg_out = "pegasus.json";
    peg_build->add_option("--m", pg_m);
    peg_build->add_option("--dead-qubits", pg_dead_q, "newline-delimited ids");
    peg_build->add_option("--dead-couplers", pg_dead_c, "pairs, two ids per line");
    peg_build->add_option("-o,--output", pg_out);

    auto* peg_tile = peg_cmd->add_subcommand("tile", "parallel native embeddings");
    std::string pt_lattice = "washington-completed", pt_reduced, pt_dead_q,
                pt_out = "tiling.json";
    int pt_m = 16, pt_copies = 6;
    peg_tile->add_option("--lattice", pt_lattice);
    peg_tile->add_option("--reduced", pt_reduced)->required();
    peg_tile->add_option("--m", pt_m);
    peg_tile->add_option("--max-copies", pt_copies);
    peg_tile->add_option("--dead-qubits", pt_dead_q);
    peg_tile->add_option("-o,--output", pt_out);

    auto* peg_export = peg_cmd->add_subcommand("export", "annealer problem file");
    std::string px_reduced, px_tiling, px_out = "problem.json";
    peg_export->add_option("--reduced", px_reduced)->required();
    peg_export->add_option("--tiling", px_tiling)->required();
    peg_export->add_option("-o,--output", px_out);

    // anneal
    auto* anneal_cmd = app.add_subcommand("anneal", "schedule-driven proxy sampling");
    std::string an_reduced, an_schedule, an_config, an_instance, an_out = "anneal";
    double an_time = 2000, an_sp = 0.5, an_f = 0.5;
    int an_reads = 500;
    anneal_cmd->add_option("--reduced", an_reduced)->required();
    anneal_cmd->add_option("--schedule", an_schedule, "breakpoint csv (overrides flags)");
    anneal_cmd->add_option("--anneal-time", an_time, "microseconds");
    anneal_cmd->add_option("--pause-location", an_sp);
    anneal_cmd->add_option("--pause-fraction", an_f);
    anneal_cmd->add_option("--reads", an_reads);
    anneal_cmd->add_option("--config", an_config, "sampler key=value file");
    anneal_cmd->add_option("--instance", an_instance,
                           "project samples back onto this instance");
    anneal_cmd->add_option("-o,--output", an_out, "stem for .csv/.json");

    // baseline
    auto* base_cmd = app.add_subcommand("baseline", "uniform random sampling");
    std::string bl_instance, bl_out = "baseline";
    long long bl_shots = 10000;
    base_cmd->add_option("--instance", bl_instance)->required();
    base_cmd->add_option("--shots", bl_shots);
    base_cmd->add_option("-o,--output", bl_out, "stem for .csv/.json");

    // analyze
    auto* analyze_cmd = app.add_subcommand("analyze", "pairwise win table across methods");
    std::vector<std::string> az_methods;
    std::string az_out = "comparison";
    analyze_cmd->add_option("--method", az_methods,
                            "label=samples1.csv,samples2.csv,... (one per method)")
        ->required();
    analyze_cmd->add_option("-o,--output", az_out, "stem for .json/.csv");

    // plot
    auto* plot_cmd = app.add_subcommand("plot", "energy histograms with mean/min markers");
    std::vector<std::string> pl_series;
    std::string pl_out = "histogram";
    double pl_bin = 2.0;
    plot_cmd->add_option("--series", pl_series, "label=samples.csv (repeatable)")
        ->required();
    plot_cmd->add_option("--bin-width", pl_bin);
    plot_cmd->add_option("-o,--output", pl_out, "stem for .svg/.csv");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    std::vector<std::string> argv_tail(argv + 1, argv + argc);
    try {
        if (*lattice_cmd) {
            const auto lat = load_lattice_spec(lat_spec);
            std::ostringstream out;
            write_lattice(lat, out);
            write_file(g, lat_out, out.str());
        } else if (*instance_cmd) {
            const auto lat = load_lattice_spec(inst_lattice);
            const auto inst = generate_instance(lat, g.seed);
            std::ostringstream out;
            write_instance(inst, out);
            write_file(g, inst_out, out.str());
        } else if (*compile_cmd) {
            const auto lat = load_lattice_spec(cq_lattice);
            const auto inst = load_instance_file(cq_instance);
            if (cq_gammas.empty() || cq_betas.empty())
                throw ValidationError("compile-qaoa needs --gamma and --beta");
            if (static_cast<int>(cq_gammas.size()) != cq_rounds ||
                static_cast<int>(cq_betas.size()) != cq_rounds)
                throw ValidationError("need one gamma and one beta per round");
            auto circuit = build_qaoa_circuit(lat, inst, {cq_gammas, cq_betas});
            if (cq_ddd)
                circuit = insert_ddd(circuit, load_durations(cq_durations));
            write_file(g, cq_out, to_openqasm(circuit));
        } else if (*sim_cmd) {
            const auto circuit = parse_openqasm(read_file(sim_circuit));
            const auto inst = load_instance_file(sim_instance);
            const auto counts = sample_bitstrings(circuit, sim_shots, g.seed, sim_cap);
            auto samples = decode_samples(counts, inst);
            samples.provenance.method = "qaoa-simulated";
            samples.provenance.seed = g.seed;
            samples.provenance.params["shots"] = std::to_string(sim_shots);
            sampleset_files(g, samples, sim_out);
        } else if (*grid_cmd) {
            const auto lat = load_lattice_spec(gs_lattice);
            const auto inst = load_instance_file(gs_instance);
            const auto grid = angle_grid(gs_rounds);
            const auto result =
                run_grid_search(lat, inst, grid, gs_shots, g.seed, gs_ddd,
                                load_durations(gs_durations), g.threads);
            std::ostringstream csv;
            write_grid_csv(result, csv);
            write_file(g, gs_out + ".csv", csv.str());
            write_file(g, gs_out + ".json", grid_provenance_json(result));
        } else if (*reduce_cmd) {
            const auto inst = load_instance_file(rd_instance);
            std::optional<HeavyHexLattice> lat;
            if (!rd_lattice.empty())
                lat = load_lattice_spec(rd_lattice);
            const auto red = reduce_instance(inst, lat ? &*lat : nullptr);
            std::ostringstream out;
            write_reduced(red, out);
            write_file(g, rd_out, out.str());
            write_file(g, rd_out + ".slacks.json", slack_registry_json(red));
        } else if (*peg_build) {
            std::set<std::pair<int, int>> dead_c;
            if (!pg_dead_c.empty()) {
                std::istringstream in(read_file(pg_dead_c));
                int a, b;
                while (in >> a >> b)
                    dead_c.insert({std::min(a, b), std::max(a, b)});
            }
            const auto graph = build_pegasus(pg_m, load_id_file(pg_dead_q), dead_c);
            nlohmann::json j;
            j["m"] = graph.m;
            j["qubits"] = graph.nodes.size();
            j["couplers"] = graph.edges.size();
            int internal = 0, external = 0, odd = 0;
            for (const auto& e : graph.edges) {
                internal += e.kind == CouplerKind::Internal;
                external += e.kind == CouplerKind::External;
                odd += e.kind == CouplerKind::Odd;
            }
            j["internal"] = internal;
            j["external"] = external;
            j["odd"] = odd;
            write_file(g, pg_out, j.dump(2) + "\n");
        } else if (*peg_tile) {
            const auto lat = load_lattice_spec(pt_lattice);
            const auto red = load_reduced_file(pt_reduced);
            const auto graph = build_pegasus(pt_m, load_id_file(pt_dead_q));
            const auto tiles = tile_embeddings(lat, red, graph, pt_copies);
            nlohmann::json j;
            j["m"] = pt_m;
            j["copies"] = tiles.size();
            nlohmann::json arr = nlohmann::json::array();
            for (const auto& t : tiles) {
                nlohmann::json vars = nlohmann::json::object();
                for (const auto& [v, q] : t.map)
                    vars[std::to_string(v)] = q;
                arr.push_back({{"tile", t.tile}, {"variables", vars}});
            }
            j["tiles"] = arr;
            write_file(g, pt_out, j.dump(2) + "\n");
        } else if (*peg_export) {
            const auto red = load_reduced_file(px_reduced);
            const auto tiling = nlohmann::json::parse(read_file(px_tiling));
            std::vector<NativeEmbedding> tiles;
            for (const auto& t : tiling.at("tiles")) {
                NativeEmbedding emb;
                emb.tile = t.at("tile").get<int>();
                for (const auto& [v, q] : t.at("variables").items())
                    emb.map[std::stoi(v)] = q.get<int>();
                tiles.push_back(std::move(emb));
            }
            write_file(g, px_out, export_annealer_problem(red, tiles));
        } else if (*anneal_cmd) {
            const auto red = load_reduced_file(an_reduced);
            AnnealSchedule sched;
            if (!an_schedule.empty()) {
                std::istringstream in(read_file(an_schedule));
                sched = read_schedule_csv(in);
            } else {
                sched = build_pause_schedule(an_time, an_sp, an_f);
            }
            AnnealerConfig cfg;
            if (!an_config.empty())
                cfg = parse_annealer_config(read_file(an_config));
            if (g.threads > 1)
                cfg.threads = g.threads;
            auto samples = anneal_sample(red, sched, an_reads, g.seed, cfg);
            if (!an_instance.empty()) {
                const auto inst = load_instance_file(an_instance);
                samples = project_samples(samples, inst, red.slacks);
            }
            std::ostringstream sch;
            write_schedule_csv(sched, sch);
            write_file(g, an_out + ".schedule.csv", sch.str());
            sampleset_files(g, samples, an_out);
        } else if (*base_cmd) {
            const auto inst = load_instance_file(bl_instance);
            const auto samples = random_baseline(inst, bl_shots, g.seed);
            sampleset_files(g, samples, bl_out);
        } else if (*analyze_cmd) {
            std::vector<MethodSamples> methods;
            for (const auto& m : az_methods) {
                const auto eq = m.find('=');
                if (eq == std::string::npos)
                    throw ValidationError("expected label=files: " + m);
                MethodSamples ms;
                ms.label = m.substr(0, eq);
                std::string files = m.substr(eq + 1);
                std::istringstream fin(files);
                std::string f;
                while (std::getline(fin, f, ',')) {
                    std::istringstream csv(read_file(f));
                    ms.per_instance.push_back(read_sampleset_csv(csv));
                }
                methods.push_back(std::move(ms));
            }
            const auto report = analyze_comparison(methods);
            write_file(g, az_out + ".json", comparison_report_json(report));
            std::ostringstream table;
            write_comparison_table(report, table);
            write_file(g, az_out + ".csv", table.str());
        } else if (*plot_cmd) {
            std::vector<SampleSet> sets;
            sets.reserve(pl_series.size());
            HistogramSpec spec;
            spec.bin_width = pl_bin;
            std::vector<std::string> labels;
            for (const auto& s : pl_series) {
                const auto eq = s.find('=');
                if (eq == std::string::npos)
                    throw ValidationError("expected label=file: " + s);
                labels.push_back(s.substr(0, eq));
                std::istringstream csv(read_file(s.substr(eq + 1)));
                sets.push_back(read_sampleset_csv(csv));
            }
            for (std::size_t i = 0; i < sets.size(); ++i)
                spec.series.push_back({labels[i], &sets[i]});
            write_file(g, pl_out + ".svg", render_histogram_svg(spec));
            write_file(g, pl_out + ".csv", histogram_bins_csv(spec));
        }
        write_manifest(g, app.get_subcommands().front()->get_name(), argv_tail);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const CapacityError& e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
