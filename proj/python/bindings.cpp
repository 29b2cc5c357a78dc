#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tdma/algorithms.hpp"
#include "tdma/bench.hpp"
#include "tdma/instance.hpp"
#include "tdma/oracle.hpp"
#include "tdma/schedule.hpp"

namespace py = pybind11;
using namespace tdma;

namespace {

Algorithm algorithm_from(const std::string& name) {
    const auto a = parse_algorithm(name);
    if (!a) {
        throw py::value_error("unknown algorithm '" + name + "'");
    }
    return *a;
}

py::list frames_to_python(const Schedule& s) {
    py::list frames;
    for (const auto& f : s.frames) {
        py::list entries;
        for (const auto& e : f.entries) {
            entries.append(py::make_tuple(e.sender, e.receiver, e.amount));
        }
        frames.append(entries);
    }
    return frames;
}

Schedule frames_from_python(const std::vector<std::vector<std::tuple<std::size_t, std::size_t, Weight>>>& frames) {
    Schedule s;
    for (const auto& f : frames) {
        Frame frame;
        for (const auto& [i, j, w] : f) {
            frame.entries.push_back({i, j, w});
        }
        s.frames.push_back(std::move(frame));
    }
    return s;
}

}  // namespace

PYBIND11_MODULE(_tdmasched, m) {
    m.doc() = "Preemptive TDMA schedulers with setup delay.";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<OracleLimitError>(m, "OracleLimitError", PyExc_RuntimeError);
    py::register_exception<AlgorithmError>(m, "AlgorithmError", PyExc_RuntimeError);

    py::class_<InstanceStats>(m, "InstanceStats")
        .def_readonly("delta", &InstanceStats::delta)
        .def_readonly("workload", &InstanceStats::workload)
        .def_readonly("lower_bound", &InstanceStats::lower_bound)
        .def("__repr__", [](const InstanceStats& s) {
            return "InstanceStats(delta=" + std::to_string(s.delta) + ", workload=" + std::to_string(s.workload) +
                   ", lower_bound=" + std::to_string(s.lower_bound) + ")";
        });

    py::class_<TrafficInstance>(m, "TrafficInstance")
        .def(py::init(&TrafficInstance::from_rows), py::arg("rows"), py::arg("setup_delay"))
        .def_static("parse", &parse_instance, py::arg("text"))
        .def_property_readonly("senders", &TrafficInstance::senders)
        .def_property_readonly("receivers", &TrafficInstance::receivers)
        .def_property_readonly("setup_delay", &TrafficInstance::setup_delay)
        .def("rows", &TrafficInstance::rows)
        .def("with_setup_delay", &TrafficInstance::with_setup_delay, py::arg("d"))
        .def("stats", &compute_stats)
        .def("format", &format_instance)
        .def(py::self == py::self);

    m.def(
        "schedule",
        [](const TrafficInstance& inst, const std::string& algorithm) {
            const auto r = run_algorithm(algorithm_from(algorithm), inst);
            py::dict out;
            out["frames"] = frames_to_python(r.schedule);
            out["cost"] = r.cost;
            out["lower_bound"] = r.stats.lower_bound;
            out["text"] = format_schedule(r.schedule);
            return out;
        },
        py::arg("instance"), py::arg("algorithm"),
        "Run one of 'mga', 'imga', 'gwa', 'apbs'. Frames are lists of (sender, receiver, amount).");

    m.def(
        "validate",
        [](const TrafficInstance& inst, const std::vector<std::vector<std::tuple<std::size_t, std::size_t, Weight>>>& frames) {
            std::vector<std::string> out;
            for (const auto& v : validate(frames_from_python(frames), inst).violations) {
                out.push_back(v.describe());
            }
            return out;
        },
        py::arg("instance"), py::arg("frames"), "Violation descriptions; empty when the schedule is valid.");

    m.def(
        "makespan",
        [](const std::vector<std::vector<std::tuple<std::size_t, std::size_t, Weight>>>& frames, Weight d) {
            return makespan(frames_from_python(frames), d);
        },
        py::arg("frames"), py::arg("d"));

    m.def(
        "optimal_cost",
        [](const TrafficInstance& inst) { return optimal_cost(inst).cost; }, py::arg("instance"));

    m.def(
        "generate",
        [](std::size_t senders, std::size_t receivers, Weight wmin, Weight wmax, double density, std::uint64_t seed,
           Weight d) { return generate(GenConfig{senders, receivers, wmin, wmax, density, seed}, d); },
        py::arg("senders") = 50, py::arg("receivers") = 50, py::arg("weight_min") = 1, py::arg("weight_max") = 200,
        py::arg("density") = 1.0, py::arg("seed") = 0, py::arg("d") = 0);

    m.def(
        "bench",
        [](std::vector<Weight> ds, std::vector<std::string> algorithms, std::size_t trials, std::size_t senders,
           std::size_t receivers, Weight wmin, Weight wmax, double density, std::uint64_t seed) {
            std::vector<Algorithm> algs;
            for (const auto& a : algorithms) {
                algs.push_back(algorithm_from(a));
            }
            const GenConfig cfg{senders, receivers, wmin, wmax, density, seed};
            const auto result = run_experiment(cfg, ds, algs, trials);
            return py::make_tuple(records_csv(result.records), aggregates_csv(result.aggregates));
        },
        py::arg("ds"), py::arg("algorithms"), py::arg("trials"), py::arg("senders") = 50, py::arg("receivers") = 50,
        py::arg("weight_min") = 1, py::arg("weight_max") = 200, py::arg("density") = 1.0, py::arg("seed") = 0,
        "Returns (records_csv, aggregates_csv).");

#ifdef VERSION_INFO
#define TDMA_STR_(x) #x
#define TDMA_STR(x) TDMA_STR_(x)
    m.attr("__version__") = TDMA_STR(VERSION_INFO);
#else
    m.attr("__version__") = "dev";
#endif
}
