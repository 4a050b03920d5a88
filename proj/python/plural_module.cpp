#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "plural/comm.hpp"
#include "plural/errors.hpp"
#include "plural/et2.hpp"
#include "plural/graph_io.hpp"
#include "plural/report_io.hpp"
#include "plural/scaling.hpp"
#include "plural/simulator.hpp"
#include "plural/task_graph.hpp"

namespace py = pybind11;
using namespace plural;

PYBIND11_MODULE(_plural, mod) {
  mod.doc() = "Many-core scaling model, energy-time calculus and plural-architecture simulator";

  // Exceptions: one Python class per library error, all under PluralError.
  static py::exception<Error> base(mod, "PluralError", PyExc_ValueError);
  static py::exception<ValidationError> validation(mod, "ValidationError", base.ptr());
  static py::exception<DomainError> domain(mod, "DomainError", base.ptr());
  static py::exception<GraphError> graph(mod, "GraphError", base.ptr());
  static py::exception<ConfigError> config(mod, "ConfigError", base.ptr());
  static py::exception<DegenerateInputError> degenerate(mod, "DegenerateInputError", base.ptr());
  static py::exception<ParseError> parse(mod, "ParseError", base.ptr());
  static py::exception<UsageError> usage(mod, "UsageError", base.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ValidationError& e) {
      validation(e.what());
    } catch (const DomainError& e) {
      domain(e.what());
    } catch (const GraphError& e) {
      graph(e.what());
    } catch (const ConfigError& e) {
      config(e.what());
    } catch (const DegenerateInputError& e) {
      degenerate(e.what());
    } catch (const ParseError& e) {
      parse(e.what());
    } catch (const UsageError& e) {
      usage(e.what());
    } catch (const Error& e) {
      base(e.what());
    }
  });

  // ------------------------------------------------------------- scaling
  py::class_<ChipSpec>(mod, "ChipSpec")
      .def(py::init([](double area, double work, double cpi, double pollack_exponent,
                       bool static_power_enabled) {
             return ChipSpec{area, work, cpi, pollack_exponent, static_power_enabled};
           }),
           py::arg("area") = 1e6, py::arg("work") = 1.0, py::arg("cpi") = 1.0,
           py::arg("pollack_exponent") = 0.5, py::arg("static_power_enabled") = false)
      .def_readwrite("area", &ChipSpec::area)
      .def_readwrite("work", &ChipSpec::work)
      .def_readwrite("cpi", &ChipSpec::cpi)
      .def_readwrite("pollack_exponent", &ChipSpec::pollack_exponent)
      .def_readwrite("static_power_enabled", &ChipSpec::static_power_enabled)
      .def("validate", &ChipSpec::validate);

  py::class_<EnsembleMetrics> em(mod, "EnsembleMetrics");
  em.def_readonly("m", &EnsembleMetrics::m);
  em.def_readonly("single_freq", &EnsembleMetrics::single_freq);
  em.def_readonly("single_perf", &EnsembleMetrics::single_perf);
  em.def_readonly("single_time", &EnsembleMetrics::single_time);
  em.def_readonly("single_power", &EnsembleMetrics::single_power);
  em.def_readonly("single_energy", &EnsembleMetrics::single_energy);
  em.def_readonly("core_area", &EnsembleMetrics::core_area);
  em.def_readonly("core_freq", &EnsembleMetrics::core_freq);
  em.def_readonly("core_perf", &EnsembleMetrics::core_perf);
  em.def_readonly("core_work", &EnsembleMetrics::core_work);
  em.def_readonly("core_power", &EnsembleMetrics::core_power);
  em.def_readonly("core_energy", &EnsembleMetrics::core_energy);
  em.def_readonly("ensemble_perf", &EnsembleMetrics::ensemble_perf);
  em.def_readonly("compute_time", &EnsembleMetrics::compute_time);
  em.def_readonly("power", &EnsembleMetrics::power);
  em.def_readonly("energy", &EnsembleMetrics::energy);
  em.def_readonly("speedup", &EnsembleMetrics::speedup);
  em.def_readonly("energydown", &EnsembleMetrics::energydown);
  em.def_readonly("powerdown", &EnsembleMetrics::powerdown);
  em.def_readonly("es", &EnsembleMetrics::es);
  em.def_readonly("es2", &EnsembleMetrics::es2);
  em.def_readonly("perf_per_power", &EnsembleMetrics::perf_per_power);

  mod.def("single_metrics", &single_metrics, py::arg("spec"));
  mod.def("ensemble_metrics", &ensemble_metrics, py::arg("spec"), py::arg("m"));
  mod.def(
      "sweep",
      [](const ChipSpec& spec, const std::vector<std::uint64_t>& ms) { return sweep(spec, ms); },
      py::arg("spec"), py::arg("ms"));

  // ----------------------------------------------------------------- et2
  auto et2 = mod.def_submodule("et2", "energy-time trade-off calculus");
  py::class_<et2::State>(et2, "State")
      .def_readonly("energy", &et2::State::energy)
      .def_readonly("time", &et2::State::time)
      .def_readonly("theta", &et2::State::theta)
      .def_property_readonly("power", &et2::State::power)
      .def("__repr__", [](const et2::State& s) {
        return "State(energy=" + format_number(s.energy) + ", time=" + format_number(s.time) +
               ", theta=" + format_number(s.theta) + ")";
      });
  py::class_<et2::ParallelResult>(et2, "ParallelResult")
      .def_readonly("per_core", &et2::ParallelResult::per_core)
      .def_readonly("ensemble_energy", &et2::ParallelResult::ensemble_energy)
      .def_readonly("ensemble_power", &et2::ParallelResult::ensemble_power)
      .def_readonly("ensemble_time", &et2::ParallelResult::ensemble_time);
  et2.def("make_state", &et2::make_state, py::arg("energy"), py::arg("time"));
  et2.def(
      "stretch_time",
      [](const et2::State& s, double factor) {
        // factors <= 1 surface as a Python UserWarning
        return et2::stretch_time(s, factor, [](std::string_view msg) {
          PyErr_WarnEx(PyExc_UserWarning, std::string(msg).c_str(), 2);
        });
      },
      py::arg("state"), py::arg("factor"));
  et2.def("shrink_work", &et2::shrink_work, py::arg("state"), py::arg("fraction"));
  et2.def("iso_time_energy", &et2::iso_time_energy, py::arg("state"), py::arg("fraction"));
  et2.def("iso_energy_time", &et2::iso_energy_time, py::arg("state"), py::arg("fraction"));
  et2.def("parallelize", &et2::parallelize, py::arg("state"), py::arg("m"));
  et2.def("at_energy", &et2::at_energy, py::arg("state"), py::arg("energy"));
  et2.def("at_time", &et2::at_time, py::arg("state"), py::arg("time"));
  et2.def("at_power", &et2::at_power, py::arg("state"), py::arg("power"));

  // ---------------------------------------------------------------- comm
  auto comm = mod.def_submodule("comm", "communication cost model");
  py::class_<comm::CommMetrics>(comm, "CommMetrics")
      .def_readonly("m", &comm::CommMetrics::m)
      .def_readonly("sched_msg_energy", &comm::CommMetrics::sched_msg_energy)
      .def_readonly("sched_power", &comm::CommMetrics::sched_power)
      .def_readonly("mem_access_energy", &comm::CommMetrics::mem_access_energy)
      .def_readonly("mem_power", &comm::CommMetrics::mem_power)
      .def_readonly("compute_power", &comm::CommMetrics::compute_power)
      .def_readonly("total_power", &comm::CommMetrics::total_power)
      .def_readonly("ensemble_perf", &comm::CommMetrics::ensemble_perf)
      .def_readonly("perf_per_total_power", &comm::CommMetrics::perf_per_total_power);
  comm.def("sched_msg_energy", &comm::sched_msg_energy, py::arg("area"));
  comm.def("sched_power", &comm::sched_power, py::arg("area"), py::arg("m"));
  comm.def("mem_access_energy", &comm::mem_access_energy, py::arg("area"), py::arg("m"));
  comm.def("mem_power", &comm::mem_power, py::arg("area"), py::arg("m"));
  comm.def("comm_metrics", &comm::comm_metrics, py::arg("spec"), py::arg("m"));

  // --------------------------------------------------------------- graph
  py::class_<Task>(mod, "Task")
      .def_readonly("id", &Task::id)
      .def_readonly("entry_point", &Task::entry_point)
      .def_readonly("instruction_count", &Task::instruction_count)
      .def_readonly("read_set", &Task::read_set)
      .def_readonly("write_set", &Task::write_set)
      .def_readonly("instance", &Task::instance)
      .def_property_readonly("kind",
                             [](const Task& t) -> std::string {
                               if (t.is_duplicable()) return "duplicable";
                               if (t.is_control()) return "control";
                               return "singular";
                             })
      .def_property_readonly("instances",
                             [](const Task& t) -> std::uint32_t {
                               return t.is_duplicable() ? std::get<Duplicable>(t.kind).instances : 1;
                             })
      .def_static("singular", &Task::singular, py::arg("id"), py::arg("entry"),
                  py::arg("instructions"), py::arg("reads") = std::set<std::string>{},
                  py::arg("writes") = std::set<std::string>{})
      .def_static("duplicable", &Task::duplicable, py::arg("id"), py::arg("d"), py::arg("entry"),
                  py::arg("instructions"), py::arg("reads") = std::set<std::string>{},
                  py::arg("writes") = std::set<std::string>{})
      .def_static(
          "control",
          [](std::string id, const std::string& kind) {
            const auto k = control_kind_from_string(kind);
            if (!k) throw UsageError("unknown control kind '" + kind + "'");
            return Task::control(std::move(id), *k);
          },
          py::arg("id"), py::arg("control_kind"));

  py::class_<TaskGraph>(mod, "TaskGraph")
      .def(py::init<>())
      .def("add_task", &TaskGraph::add_task, py::arg("task"))
      .def("add_edge", &TaskGraph::add_edge, py::arg("pred"), py::arg("succ"))
      .def_property_readonly("tasks", &TaskGraph::tasks)
      .def_property_readonly("edges", &TaskGraph::edges)
      .def("successors", &TaskGraph::successors)
      .def("predecessors", &TaskGraph::predecessors)
      .def("total_work", &TaskGraph::total_work)
      .def("__len__", [](const TaskGraph& g) { return g.tasks().size(); })
      .def("__eq__", [](const TaskGraph& a, const TaskGraph& b) { return a == b; });

  mod.def("parse_graph", &parse_graph, py::arg("text"));
  mod.def("load_graph", &load_graph, py::arg("path"));
  mod.def("dump_graph", &dump_graph, py::arg("graph"));
  mod.def(
      "validate_dag",
      [](const TaskGraph& g) -> py::object {
        const auto r = validate_dag(g);
        if (r.ok) return py::none();
        return py::cast(r.cycle);
      },
      py::arg("graph"), "None for a DAG, else a witness cycle [a, b, ..., a]");
  mod.def("expand_duplicables", &expand_duplicables, py::arg("graph"));
  mod.def("concurrent_pairs", &concurrent_pairs, py::arg("graph"));

  py::class_<CrewViolation>(mod, "CrewViolation")
      .def_readonly("task_a", &CrewViolation::task_a)
      .def_readonly("task_b", &CrewViolation::task_b)
      .def_readonly("variable", &CrewViolation::variable)
      .def_property_readonly("kind", [](const CrewViolation& v) { return std::string(to_string(v.kind)); })
      .def("__repr__", [](const CrewViolation& v) {
        return std::string("CrewViolation(") + to_string(v.kind) + ", '" + v.variable + "', '" +
               v.task_a + "', '" + v.task_b + "')";
      });
  mod.def("check_crew", &check_crew, py::arg("graph"));

  // ----------------------------------------------------------- simulator
  auto sim = mod.def_submodule("sim", "plural architecture simulator");
  py::class_<sim::SimConfig>(sim, "SimConfig")
      .def(py::init<>())
      .def_readwrite("chip", &sim::SimConfig::chip)
      .def_readwrite("m", &sim::SimConfig::m)
      .def_readwrite("mem_access_stride", &sim::SimConfig::mem_access_stride)
      .def_readwrite("prealloc_depth", &sim::SimConfig::prealloc_depth)
      .def_readwrite("comm_costs_enabled", &sim::SimConfig::comm_costs_enabled)
      .def_readwrite("seed", &sim::SimConfig::seed)
      .def_readwrite("conditional_outcomes", &sim::SimConfig::conditional_outcomes);

  py::class_<sim::SimReport>(sim, "SimReport")
      .def_readonly("m", &sim::SimReport::m)
      .def_readonly("slot_time", &sim::SimReport::slot_time)
      .def_readonly("makespan_slots", &sim::SimReport::makespan_slots)
      .def_readonly("makespan", &sim::SimReport::makespan)
      .def_readonly("total_instructions", &sim::SimReport::total_instructions)
      .def_readonly("executed_instances", &sim::SimReport::executed_instances)
      .def_readonly("skipped_instances", &sim::SimReport::skipped_instances)
      .def_readonly("compute_energy", &sim::SimReport::compute_energy)
      .def_readonly("static_energy", &sim::SimReport::static_energy)
      .def_readonly("sched_msg_energy_total", &sim::SimReport::sched_msg_energy_total)
      .def_readonly("mem_msg_energy_total", &sim::SimReport::mem_msg_energy_total)
      .def_readonly("total_energy", &sim::SimReport::total_energy)
      .def_readonly("avg_power", &sim::SimReport::avg_power)
      .def_readonly("per_core_busy_time", &sim::SimReport::per_core_busy_time)
      .def_readonly("utilization", &sim::SimReport::utilization)
      .def_readonly("sched_msg_count", &sim::SimReport::sched_msg_count)
      .def_readonly("mem_access_count", &sim::SimReport::mem_access_count)
      .def_readonly("mem_conflict_stalls", &sim::SimReport::mem_conflict_stalls)
      .def_readonly("reference_makespan", &sim::SimReport::reference_makespan)
      .def_readonly("reference_energy", &sim::SimReport::reference_energy)
      .def_readonly("empirical_speedup", &sim::SimReport::empirical_speedup)
      .def("to_yaml", [](const sim::SimReport& r) { return report_to_yaml(r); })
      .def("__eq__", [](const sim::SimReport& a, const sim::SimReport& b) { return a == b; });

  py::class_<sim::ModelDeviation>(sim, "ModelDeviation")
      .def_readonly("speedup_measured", &sim::ModelDeviation::speedup_measured)
      .def_readonly("speedup_model", &sim::ModelDeviation::speedup_model)
      .def_readonly("speedup_deviation", &sim::ModelDeviation::speedup_deviation)
      .def_readonly("energy_ratio_measured", &sim::ModelDeviation::energy_ratio_measured)
      .def_readonly("energy_ratio_model", &sim::ModelDeviation::energy_ratio_model)
      .def_readonly("energy_deviation", &sim::ModelDeviation::energy_deviation)
      .def_readonly("power_ratio_measured", &sim::ModelDeviation::power_ratio_measured)
      .def_readonly("power_ratio_model", &sim::ModelDeviation::power_ratio_model)
      .def_readonly("power_deviation", &sim::ModelDeviation::power_deviation);

  // Runs are pure and share nothing, so the GIL is released while they execute.
  sim.def("run", &sim::run, py::arg("graph"), py::arg("config"), py::call_guard<py::gil_scoped_release>());
  sim.def("compare_to_model", &sim::compare_to_model, py::arg("report"), py::arg("config"));
}
