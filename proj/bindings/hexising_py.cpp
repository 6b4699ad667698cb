// SPDX-License-Identifier: Apache-2.0

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "hexising/analysis.hpp"
#include "hexising/annealer.hpp"
#include "hexising/errors.hpp"
#include "hexising/pegasus.hpp"
#include "hexising/qaoa.hpp"
#include "hexising/reduction.hpp"
#include "hexising/search.hpp"
#include "hexising/simulator.hpp"

namespace py = pybind11;
using namespace hexising;

PYBIND11_MODULE(hexising, m) {
    m.doc() = "Heavy-hex cubic Ising toolkit: instance generation, depth-6 QAOA "
              "compilation and simulation, order reduction, Pegasus tiling and a "
              "schedule-driven annealing proxy.";

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<CapacityError>(m, "CapacityError", PyExc_RuntimeError);

    // topology
    py::enum_<NodeClass>(m, "NodeClass")
        .value("CORNER", NodeClass::Corner)
        .value("BRIDGE", NodeClass::Bridge);
    py::class_<CubicSite>(m, "CubicSite")
        .def_readonly("n1", &CubicSite::n1)
        .def_readonly("center", &CubicSite::center)
        .def_readonly("n2", &CubicSite::n2)
        .def("__repr__", [](const CubicSite& s) {
            std::ostringstream o;
            o << "CubicSite(" << s.n1 << ", " << s.center << ", " << s.n2 << ")";
            return o.str();
        });
    py::class_<HeavyHexLattice>(m, "HeavyHexLattice")
        .def_readonly("num_nodes", &HeavyHexLattice::num_nodes)
        .def_readonly("edges", &HeavyHexLattice::edges)
        .def_readonly("name", &HeavyHexLattice::name)
        .def("node_class", [](const HeavyHexLattice& l, int v) { return l.node_class.at(v); })
        .def("degree", &HeavyHexLattice::degree)
        .def("neighbors", &HeavyHexLattice::neighbors)
        .def("has_geometry", &HeavyHexLattice::has_geometry)
        .def("to_text", [](const HeavyHexLattice& l) {
            std::ostringstream out;
            write_lattice(l, out);
            return out.str();
        });
    m.def("build_heavy_hex", &build_heavy_hex, py::arg("rows"), py::arg("cols"));
    m.def("load_washington", &load_washington);
    m.def("washington_completed", &washington_completed);
    m.def("three_edge_coloring", &three_edge_coloring);
    m.def("cubic_sites", &cubic_sites);
    m.def("parse_lattice", [](const std::string& text, const std::string& name) {
        std::istringstream in(text);
        return parse_lattice(in, name);
    }, py::arg("text"), py::arg("name") = "");

    // instances and samples
    py::class_<CubicIsing>(m, "CubicIsing")
        .def_readonly("num_nodes", &CubicIsing::num_nodes)
        .def_readonly("lattice_ref", &CubicIsing::lattice_ref)
        .def_readonly("linear", &CubicIsing::linear)
        .def_readonly("quadratic", &CubicIsing::quadratic)
        .def_readonly("cubic", &CubicIsing::cubic)
        .def("term_count", &CubicIsing::term_count)
        .def("to_text", [](const CubicIsing& inst) {
            std::ostringstream out;
            write_instance(inst, out);
            return out.str();
        });
    m.def("generate_instance", &generate_instance, py::arg("lattice"), py::arg("seed"));
    m.def("parse_instance", [](const std::string& text) {
        std::istringstream in(text);
        return parse_instance(in);
    });
    m.def("evaluate_energy", [](const CubicIsing& inst, const std::vector<std::int8_t>& s) {
        return evaluate_energy(inst, s);
    });

    py::class_<SampleRecord>(m, "SampleRecord")
        .def_readonly("spins", &SampleRecord::spins)
        .def_readonly("multiplicity", &SampleRecord::multiplicity)
        .def_readonly("energy", &SampleRecord::energy);
    py::class_<SampleSet>(m, "SampleSet")
        .def_readonly("records", &SampleSet::records)
        .def("total_shots", &SampleSet::total_shots)
        .def("mean_energy", &SampleSet::mean_energy)
        .def("min_energy", &SampleSet::min_energy)
        .def("to_csv", [](const SampleSet& s) {
            std::ostringstream out;
            write_sampleset_csv(s, out);
            return out.str();
        });
    m.def("random_baseline", &random_baseline, py::arg("instance"), py::arg("shots"),
          py::arg("seed"));

    // circuits
    py::class_<AngleParams>(m, "AngleParams")
        .def(py::init([](std::vector<double> gammas, std::vector<double> betas) {
                 return AngleParams{std::move(gammas), std::move(betas)};
             }),
             py::arg("gammas"), py::arg("betas"))
        .def_readonly("gammas", &AngleParams::gammas)
        .def_readonly("betas", &AngleParams::betas);
    py::class_<Circuit>(m, "Circuit")
        .def_readonly("num_qubits", &Circuit::num_qubits)
        .def("num_gates", [](const Circuit& c) { return c.gates.size(); });
    py::class_<DurationTable>(m, "DurationTable").def(py::init<>());
    m.def("build_qaoa_circuit", &build_qaoa_circuit, py::arg("lattice"),
          py::arg("instance"), py::arg("params"));
    m.def("build_phase_separator", &build_phase_separator, py::arg("lattice"),
          py::arg("instance"), py::arg("gamma"));
    m.def("cnot_depth", &cnot_depth);
    m.def("insert_ddd", &insert_ddd, py::arg("circuit"),
          py::arg("durations") = DurationTable{});
    m.def("to_openqasm", &to_openqasm);
    m.def("parse_openqasm", &parse_openqasm);
    m.def("decode_samples", &decode_samples, py::arg("counts"), py::arg("instance"));

    // simulator
    py::class_<StateVector>(m, "StateVector")
        .def_readonly("num_qubits", &StateVector::num_qubits)
        .def_readonly("amps", &StateVector::amps)
        .def("norm", &StateVector::norm);
    m.def("run_statevector", &run_statevector, py::arg("circuit"),
          py::arg("qubit_cap") = kDefaultQubitCap);
    m.def("sample_bitstrings", &sample_bitstrings, py::arg("circuit"), py::arg("shots"),
          py::arg("seed"), py::arg("qubit_cap") = kDefaultQubitCap);
    m.def("phase_oracle_check", &phase_oracle_check, py::arg("lattice"),
          py::arg("instance"), py::arg("gamma"), py::arg("qubit_cap") = 14);
    m.def("distribution_tvd", &distribution_tvd, py::arg("a"), py::arg("b"),
          py::arg("qubit_cap") = kDefaultQubitCap);

    // angle search
    py::class_<AngleGrid>(m, "AngleGrid")
        .def_readonly("p", &AngleGrid::p)
        .def_readonly("axis_names", &AngleGrid::axis_names)
        .def_readonly("axes", &AngleGrid::axes)
        .def("combo_count", &AngleGrid::combo_count)
        .def("params_at", &AngleGrid::params_at);
    py::class_<GridRecord>(m, "GridRecord")
        .def_readonly("index", &GridRecord::index)
        .def_readonly("params", &GridRecord::params)
        .def_readonly("mean_energy", &GridRecord::mean_energy)
        .def_readonly("min_energy", &GridRecord::min_energy);
    py::class_<GridResult>(m, "GridResult")
        .def_readonly("records", &GridResult::records)
        .def_readonly("best_index", &GridResult::best_index);
    m.def("angle_grid", &angle_grid, py::arg("p"));
    m.def("run_grid_search", &run_grid_search, py::arg("lattice"), py::arg("instance"),
          py::arg("grid"), py::arg("shots"), py::arg("seed"), py::arg("ddd") = false,
          py::arg("durations") = DurationTable{}, py::arg("threads") = 1);

    // order reduction
    py::enum_<GadgetVariant>(m, "GadgetVariant")
        .value("A", GadgetVariant::A)
        .value("B", GadgetVariant::B);
    py::class_<Gadget>(m, "Gadget")
        .def_readonly("sign", &Gadget::sign)
        .def_readonly("variant", &Gadget::variant)
        .def_readonly("linear", &Gadget::linear)
        .def_readonly("quadratic", &Gadget::quadratic)
        .def_readonly("offset", &Gadget::offset);
    py::class_<GadgetVerification>(m, "GadgetVerification")
        .def_readonly("pass_", &GadgetVerification::pass)
        .def_readonly("reason", &GadgetVerification::reason)
        .def_readonly("witness_state", &GadgetVerification::witness_state)
        .def_readonly("ground_value", &GadgetVerification::ground_value);
    py::class_<SlackEntry>(m, "SlackEntry")
        .def_readonly("site", &SlackEntry::site)
        .def_readonly("slack_p", &SlackEntry::slack_p)
        .def_readonly("slack_q", &SlackEntry::slack_q)
        .def_readonly("variant", &SlackEntry::variant);
    py::class_<ReducedIsing>(m, "ReducedIsing")
        .def_readonly("num_original", &ReducedIsing::num_original)
        .def_readonly("num_vars", &ReducedIsing::num_vars)
        .def_readonly("linear", &ReducedIsing::linear)
        .def_readonly("quadratic", &ReducedIsing::quadratic)
        .def_readonly("offset", &ReducedIsing::offset)
        .def_readonly("slacks", &ReducedIsing::slacks);
    m.def("verify_gadget", &verify_gadget);
    m.def("derive_gadget", &derive_gadget, py::arg("sign"), py::arg("bound"),
          py::arg("variant"));
    m.def("builtin_gadget", &builtin_gadget, py::arg("sign"), py::arg("variant"),
          py::return_value_policy::reference);
    m.def("reduce_instance",
          [](const CubicIsing& inst) { return reduce_instance(inst); });
    m.def("reduce_instance",
          [](const CubicIsing& inst, const HeavyHexLattice& lat) {
              return reduce_instance(inst, &lat);
          });
    m.def("evaluate_reduced",
          [](const ReducedIsing& red, const std::vector<std::int8_t>& s) {
              return evaluate_reduced(red, s);
          });

    // pegasus
    py::class_<PegasusGraph>(m, "PegasusGraph")
        .def_readonly("m", &PegasusGraph::m)
        .def_readonly("nodes", &PegasusGraph::nodes)
        .def("num_couplers", [](const PegasusGraph& g) { return g.edges.size(); })
        .def("has_node", &PegasusGraph::has_node)
        .def("has_coupler", &PegasusGraph::has_coupler)
        .def("neighbors", &PegasusGraph::neighbors);
    py::class_<NativeEmbedding>(m, "NativeEmbedding")
        .def_readonly("map", &NativeEmbedding::map)
        .def_readonly("tile", &NativeEmbedding::tile);
    m.def("build_pegasus", &build_pegasus, py::arg("m"),
          py::arg("dead_qubits") = std::set<int>{},
          py::arg("dead_couplers") = std::set<std::pair<int, int>>{});
    m.def("validate_native_embedding",
          [](const ReducedIsing& red, const PegasusGraph& g, const NativeEmbedding& e)
              -> std::optional<std::string> { return validate_native_embedding(red, g, e); });
    m.def("tile_embeddings",
          [](const HeavyHexLattice& lat, const ReducedIsing& red, const PegasusGraph& g,
             int max_copies) { return tile_embeddings(lat, red, g, max_copies); },
          py::arg("lattice"), py::arg("reduced"), py::arg("graph"), py::arg("max_copies"));
    m.def("export_annealer_problem", &export_annealer_problem, py::arg("reduced"),
          py::arg("embeddings"));

    // annealing proxy
    py::class_<AnnealSchedule>(m, "AnnealSchedule")
        .def_readonly("points", &AnnealSchedule::points)
        .def("total_time", &AnnealSchedule::total_time)
        .def("s_at", &AnnealSchedule::s_at);
    py::class_<QAParams>(m, "QAParams")
        .def_readonly("anneal_time_us", &QAParams::anneal_time_us)
        .def_readonly("pause_location", &QAParams::pause_location)
        .def_readonly("pause_fraction", &QAParams::pause_fraction)
        .def_readonly("reads", &QAParams::reads);
    py::class_<AnnealerConfig>(m, "AnnealerConfig")
        .def(py::init<>())
        .def_readwrite("sweeps_per_us", &AnnealerConfig::sweeps_per_us)
        .def_readwrite("beta_max", &AnnealerConfig::beta_max)
        .def_readwrite("threads", &AnnealerConfig::threads);
    m.def("build_pause_schedule", &build_pause_schedule, py::arg("anneal_time_us"),
          py::arg("pause_location"), py::arg("pause_fraction"));
    m.def("qa_param_grid", &qa_param_grid);
    m.def("anneal_sample", &anneal_sample, py::arg("reduced"), py::arg("schedule"),
          py::arg("reads"), py::arg("seed"), py::arg("config") = AnnealerConfig{});
    m.def("project_samples", &project_samples, py::arg("samples"), py::arg("instance"),
          py::arg("registry"));

    // analysis
    m.def("render_histogram_svg",
          [](const std::vector<std::pair<std::string, SampleSet>>& series,
             double bin_width) {
              HistogramSpec spec;
              spec.bin_width = bin_width;
              for (const auto& [label, set] : series)
                  spec.series.push_back({label, &set});
              return render_histogram_svg(spec);
          },
          py::arg("series"), py::arg("bin_width") = 2.0);
    m.def("histogram_bins_csv",
          [](const std::vector<std::pair<std::string, SampleSet>>& series,
             double bin_width) {
              HistogramSpec spec;
              spec.bin_width = bin_width;
              for (const auto& [label, set] : series)
                  spec.series.push_back({label, &set});
              return histogram_bins_csv(spec);
          },
          py::arg("series"), py::arg("bin_width") = 2.0);
}
