// Drives the command line tool through the full pipeline on a 10-node
// lattice and checks that every intermediate file re-parses and that a rerun
// reproduces all outputs byte for byte.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "hexising/annealer.hpp"
#include "hexising/instance.hpp"
#include "hexising/qaoa.hpp"
#include "hexising/reduction.hpp"
#include "hexising/topology.hpp"

namespace fs = std::filesystem;

namespace {

int failures = 0;

void expect(bool ok, const std::string& what) {
    if (!ok) {
        ++failures;
        std::cerr << "FAIL: " << what << "\n";
    }
}

int run(const std::string& cmd) { return std::system(cmd.c_str()); }

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// 10-node lattice: a hexagon with one bridge/corner pair trimmed off
void write_small_lattice(const fs::path& path) {
    const auto hex = hexising::build_heavy_hex(1, 1);
    hexising::HeavyHexLattice lat;
    lat.num_nodes = 10;
    for (int v = 0; v < 10; ++v)
        lat.node_class.push_back(hex.node_class[v]);
    for (const auto& [u, v] : hex.edges)
        if (u < 10 && v < 10)
            lat.edges.push_back({u, v});
    lat.finalize();
    std::ofstream out(path);
    hexising::write_lattice(lat, out);
}

void run_pipeline(const std::string& cli, const fs::path& dir) {
    fs::create_directories(dir);
    write_small_lattice(dir / "lat.heavyhex");
    // relative paths from inside the directory keep reruns byte-identical
    const std::string base = "cd " + dir.string() + " && " + cli;
    expect(run(base + " --seed 11 instance --lattice lat.heavyhex -o inst.txt") == 0,
           "instance");
    expect(run(base + " compile-qaoa --lattice lat.heavyhex --instance inst.txt"
               " --rounds 1 --gamma 0.8 --beta 0.4 --ddd -o circ.qasm") == 0,
           "compile-qaoa");
    expect(run(base + " --seed 5 simulate --circuit circ.qasm --instance inst.txt"
               " --shots 3000 -o samples") == 0,
           "simulate");
    expect(run(base + " --seed 6 baseline --instance inst.txt --shots 3000 -o base") == 0,
           "baseline");
    expect(run(base + " reduce --instance inst.txt -o red.ising") == 0, "reduce");
    expect(run(base + " --seed 8 anneal --reduced red.ising"
               " --anneal-time 50 --pause-location 0.5 --pause-fraction 0.3"
               " --reads 100 --instance inst.txt -o ann") == 0,
           "anneal");
    expect(run(base + " analyze --method qaoa=samples.csv --method random=base.csv"
               " --method anneal=ann.csv -o cmp") == 0,
           "analyze");
    expect(run(base + " plot --series qaoa=samples.csv --series random=base.csv"
               " -o hist") == 0,
           "plot");
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: hexising_cli_pipeline <path-to-cli>\n";
        return 2;
    }
    const std::string cli = argv[1];
    const fs::path root = fs::temp_directory_path() / "hexising_cli_pipeline";
    fs::remove_all(root);

    run_pipeline(cli, root / "a");
    run_pipeline(cli, root / "b");

    // every intermediate re-parses
    {
        std::ifstream in(root / "a" / "inst.txt");
        const auto inst = hexising::parse_instance(in);
        expect(inst.num_nodes == 10, "instance re-parse");
        const auto circuit = hexising::parse_openqasm(slurp(root / "a" / "circ.qasm"));
        expect(circuit.num_qubits == 10, "circuit re-parse");
        std::ifstream rin(root / "a" / "red.ising");
        const auto red = hexising::parse_reduced(rin);
        expect(red.num_original == 10, "reduced re-parse");
        std::ifstream sin(root / "a" / "ann.schedule.csv");
        const auto sched = hexising::read_schedule_csv(sin);
        expect(sched.points.size() == 4, "schedule re-parse");
        std::ifstream cin2(root / "a" / "samples.csv");
        const auto samples = hexising::read_sampleset_csv(cin2);
        expect(samples.total_shots() == 3000, "samples re-parse");
    }

    // reruns reproduce every output byte for byte
    for (const auto& entry : fs::directory_iterator(root / "a")) {
        const auto name = entry.path().filename();
        expect(slurp(entry.path()) == slurp(root / "b" / name),
               "deterministic output " + name.string());
    }

    // validation failures exit with code 2
    const int rc = run(cli + " --out-dir " + (root / "a").string() +
                       " instance --lattice /nonexistent.heavyhex -o x.txt 2>/dev/null");
    expect(WEXITSTATUS(rc) == 2, "validation exit code");

    if (failures == 0)
        std::cout << "cli pipeline ok\n";
    return failures == 0 ? 0 : 1;
}
