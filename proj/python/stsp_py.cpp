#include <pybind11/pybind11.h>
#include <pybind11/operators.h>
#include <pybind11/stl.h>

#include "stsp/annealer.hpp"
#include "stsp/bench.hpp"
#include "stsp/decoder.hpp"
#include "stsp/error.hpp"
#include "stsp/generator.hpp"
#include "stsp/instance.hpp"
#include "stsp/model.hpp"
#include "stsp/oracle.hpp"
#include "stsp/pmra.hpp"
#include "stsp/qubo.hpp"

namespace py = pybind11;
using namespace stsp;

namespace {

AnnealParams make_params(int reads, int sweeps, std::uint64_t seed, std::optional<std::pair<double, double>> beta,
                         int threads, std::optional<double> time_limit) {
  AnnealParams p;
  p.num_reads = reads;
  p.sweeps = sweeps;
  p.seed = seed;
  p.threads = threads;
  p.time_limit = time_limit;
  if (beta) p.beta_range = BetaRange{beta->first, beta->second};
  return p;
}

}  // namespace

PYBIND11_MODULE(_stsp, m) {
  m.doc() = "Steiner TSP toolkit: instances, PMRA, time-indexed model, QUBO, annealing";

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<InvalidArgument>(m, "InvalidArgument", base.ptr());
  py::register_exception<InfeasibleError>(m, "InfeasibleError", base.ptr());

  py::class_<Instance>(m, "Instance")
      .def_property_readonly("num_nodes", &Instance::num_nodes)
      .def_property_readonly("num_arcs", &Instance::num_arcs)
      .def_property_readonly("terminals", &Instance::terminals)
      .def_property_readonly("arcs",
                             [](const Instance& inst) {
                               std::vector<std::tuple<ArcId, NodeId, NodeId, double>> out;
                               for (const Arc& a : inst.arcs()) out.emplace_back(a.id, a.tail, a.head, a.cost);
                               return out;
                             })
      .def("save", &save_instance)
      .def_static("load", [](const std::string& text) { return load_instance(text); })
      .def(py::self == py::self);

  m.def(
      "generate_instance",
      [](int n, std::uint64_t seed, double density, bool euclidean) {
        GeneratorConfig cfg;
        cfg.density = density;
        cfg.cost_mode = euclidean ? CostMode::euclidean : CostMode::uniform;
        return generate_instance(n, seed, cfg);
      },
      py::arg("n"), py::arg("seed") = 0, py::arg("density") = 0.3, py::arg("euclidean") = false,
      "Depot plus n nodes; the first floor(0.7 n) non-depot nodes are terminals.");

  m.def(
      "reduce",
      [](const Instance& inst) {
        Reduction r = reduce(inst);
        return py::make_tuple(std::move(r.instance), format_report(r.report));
      },
      py::arg("instance"), "PMRA reduction; returns (reduced instance, report text).");

  py::class_<ConstrainedModel>(m, "Model")
      .def_property_readonly("num_variables", &ConstrainedModel::num_variables)
      .def_property_readonly("num_constraints", &ConstrainedModel::num_constraints)
      .def_property_readonly("labels", &ConstrainedModel::labels)
      .def_property_readonly("objective", &ConstrainedModel::objective)
      .def_property_readonly("horizon", [](const ConstrainedModel& mod) { return mod.time_indexing()->horizon; })
      .def("export_lp", &export_lp)
      .def("evaluate", [](const ConstrainedModel& mod, const Assignment& x) {
        const Evaluation ev = evaluate_assignment(mod, x);
        std::vector<std::string> tags;
        for (const Violation& v : ev.violations) tags.push_back(v.tag);
        return py::make_tuple(ev.objective, tags);
      });

  m.def(
      "build_model",
      [](const Instance& inst, std::optional<int> horizon) { return build_model(inst, BuildOptions{horizon}); },
      py::arg("instance"), py::arg("horizon") = std::nullopt);

  py::class_<Qubo>(m, "Qubo")
      .def_property_readonly("num_variables", &Qubo::num_variables)
      .def_property_readonly("num_decision", &Qubo::num_decision)
      .def_readonly("labels", &Qubo::labels)
      .def_readonly("linear", &Qubo::linear)
      .def_property_readonly("quadratic",
                             [](const Qubo& q) {
                               std::vector<std::tuple<VarIndex, VarIndex, double>> out;
                               for (const QuadTerm& t : q.quadratic) out.emplace_back(t.i, t.j, t.coeff);
                               return out;
                             })
      .def_readonly("offset", &Qubo::offset)
      .def_readonly("penalty", &Qubo::penalty)
      .def("energy", [](const Qubo& q, const Assignment& x) { return energy(q, x); })
      .def("export", &export_qubo)
      .def("export_varmap", &export_varmap)
      .def_static(
          "parse", [](const std::string& text, const std::string& varmap) { return parse_qubo(text, varmap); },
          py::arg("text"), py::arg("varmap") = "")
      .def(py::self == py::self);

  m.def(
      "to_qubo",
      [](const ConstrainedModel& mod, std::optional<double> penalty) {
        return to_qubo(mod, penalty ? PenaltySpec::fixed(*penalty) : PenaltySpec::automatic_weight());
      },
      py::arg("model"), py::arg("penalty") = std::nullopt, "Penalty defaults to twice the objective bound.");

  m.def(
      "anneal",
      [](const Qubo& q, int reads, int sweeps, std::uint64_t seed, std::optional<std::pair<double, double>> beta,
         int threads, std::optional<double> time_limit) {
        SampleSet s;
        {
          py::gil_scoped_release release;
          s = anneal(q, make_params(reads, sweeps, seed, beta, threads, time_limit));
        }
        std::vector<std::pair<Assignment, double>> out;
        for (const SampleRecord& r : s.records) out.emplace_back(r.assignment, r.energy);
        return out;
      },
      py::arg("qubo"), py::arg("reads") = 1000, py::arg("sweeps") = 1000, py::arg("seed") = 0,
      py::arg("beta") = std::nullopt, py::arg("threads") = 1, py::arg("time_limit") = std::nullopt,
      "Samples as (assignment, energy) pairs, lowest energy first.");

  m.def(
      "decode",
      [](const Assignment& x, const ConstrainedModel& mod, const Instance& inst) {
        const DecodeReport rep = decode(x, mod, inst);
        py::dict d;
        d["feasible"] = rep.feasible();
        d["violations"] = rep.violations;
        d["cost"] = rep.feasible() ? py::object(py::float_(rep.true_cost)) : py::none();
        d["route"] = rep.route ? py::object(py::cast(rep.route->arcs)) : py::none();
        return d;
      },
      py::arg("assignment"), py::arg("model"), py::arg("instance"));

  m.def(
      "optimal_cost",
      [](const Instance& inst) {
        const OracleResult r = optimal_cost(inst);
        return py::make_tuple(r.cost, r.route.arcs);
      },
      py::arg("instance"), "Exact optimum as (cost, arc ids of the route).");

  m.def(
      "gap_csv",
      [](const std::vector<int>& sizes, const std::vector<std::uint64_t>& seeds, double density) {
        GeneratorConfig cfg;
        cfg.density = density;
        return emit_gap_csv(gap_table(sizes, seeds, cfg));
      },
      py::arg("sizes"), py::arg("seeds"), py::arg("density") = 0.3);
}
