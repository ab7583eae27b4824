#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <tuple>

#include "msel/baselines.hpp"
#include "msel/dataio.hpp"
#include "msel/dcsel.hpp"
#include "msel/error.hpp"
#include "msel/oracle.hpp"
#include "msel/peel.hpp"
#include "msel/similarity.hpp"

namespace py = pybind11;
using namespace msel;

namespace {

std::vector<WeightedEdge> to_edges(const std::vector<std::tuple<NodeId, NodeId, double>>& in) {
  std::vector<WeightedEdge> out;
  out.reserve(in.size());
  for (const auto& [u, v, w] : in) out.push_back({u, v, w});
  return out;
}

py::list edge_tuples(const SimGraph& g) {
  py::list out;
  for (const auto& e : g.edges()) out.append(py::make_tuple(e.u, e.v, e.weight));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "member selection core";

  auto base = py::register_exception<Error>(m, "Error", PyExc_ValueError);
  py::register_exception<FormatError>(m, "FormatError", base.ptr());

  py::class_<ConstraintPair>(m, "ConstraintPair")
      .def(py::init([](double s, long long p) { return ConstraintPair::checked(s, p); }),
           py::arg("s"), py::arg("p"))
      .def_readonly("s", &ConstraintPair::s)
      .def_readonly("p", &ConstraintPair::p)
      .def("__repr__", [](const ConstraintPair& c) {
        return "ConstraintPair(s=" + py::repr(py::float_(c.s)).cast<std::string>() +
               ", p=" + std::to_string(c.p) + ")";
      });

  py::class_<SimGraph>(m, "SimGraph")
      .def(py::init([](std::size_t n, const std::vector<std::tuple<NodeId, NodeId, double>>& e) {
             return SimGraph(n, to_edges(e));
           }),
           py::arg("n"), py::arg("edges"))
      .def_property_readonly("node_count", &SimGraph::node_count)
      .def_property_readonly("edge_count", &SimGraph::edge_count)
      .def("weight", &SimGraph::weight)
      .def("degree", &SimGraph::degree)
      .def("edges", &edge_tuples)
      .def("__len__", &SimGraph::node_count)
      .def("__eq__", [](const SimGraph& a, const SimGraph& b) { return a == b; });

  py::class_<Solution>(m, "Solution")
      .def_readonly("members", &Solution::members)
      .def_readonly("total_weight", &Solution::total_weight)
      .def_readonly("alpha", &Solution::alpha)
      .def("__len__", &Solution::size)
      .def("__bool__", [](const Solution& s) { return !s.empty(); })
      .def("__repr__", [](const Solution& s) {
        return "Solution(size=" + std::to_string(s.size()) +
               ", alpha=" + py::repr(py::float_(s.alpha)).cast<std::string>() + ")";
      });

  using Ids = std::vector<NodeId>;
  m.def("total_weight", [](const Ids& f, const SimGraph& g) { return total_weight(f, g); },
        py::arg("members"), py::arg("graph"));
  m.def("avg_similarity", [](const Ids& f, const SimGraph& g) { return avg_similarity(f, g); },
        py::arg("members"), py::arg("graph"));
  m.def("incident_weight",
        [](NodeId u, const Ids& f, const SimGraph& g) { return incident_weight(u, f, g); },
        py::arg("u"), py::arg("members"), py::arg("graph"));
  m.def("cross_weight",
        [](const Ids& a, const Ids& b, const SimGraph& g) { return cross_weight(a, b, g); },
        py::arg("a"), py::arg("b"), py::arg("graph"));
  m.def("is_feasible",
        [](const Ids& f, const SimGraph& g, const ConstraintPair& c) {
          return is_feasible(f, g, c);
        },
        py::arg("members"), py::arg("graph"), py::arg("c"));
  m.def("pair_weight", [](const std::vector<double>& x, const std::vector<double>& y) {
    return pair_weight(x, y);
  });

  m.def("modified_sgsel", [](const SimGraph& g, const ConstraintPair& c) {
    PeelResult r = modified_sgsel(g, c);
    py::dict profile;
    for (const auto& [k, e] : r.profile.entries()) profile[py::int_(k)] = e.alpha;
    return py::make_tuple(r.best, profile);
  }, py::arg("graph"), py::arg("c"),
     "Returns (best solution, {size: best alpha at that size}).");
  m.def("sgsel", &sgsel, py::arg("graph"), py::arg("c"));
  m.def("random_peel", &random_peel, py::arg("graph"), py::arg("c"), py::arg("seed") = 0);
  m.def("degree_peel", &degree_peel, py::arg("graph"), py::arg("c"));
  m.def("average_peel", &average_peel, py::arg("graph"), py::arg("c"));

  m.def("exact_msp", [](const SimGraph& g, const ConstraintPair& c) {
    OracleResult r = exact_msp(g, c);
    if (!r.feasible) return py::object(py::none());
    return py::cast(Solution::from_members(r.opt_set, g));
  }, py::arg("graph"), py::arg("c"), "Optimal solution, or None when infeasible.");

  m.def("read_msg1", [](const std::filesystem::path& p) { return read_msg1(p); });
  m.def("write_msg1", [](const SimGraph& g, const std::filesystem::path& p) { write_msg1(g, p); });

  py::class_<Session>(m, "Session")
      .def(py::init<SimGraph, const ConstraintPair&>(), py::arg("graph"), py::arg("c"))
      .def_property_readonly("current", &Session::current)
      .def_property_readonly("constraints", &Session::constraints)
      .def_property_readonly("feasible", &Session::feasible)
      .def_property_readonly("graph", &Session::graph, py::return_value_policy::copy)
      .def_property_readonly("history", [](const Session& s) {
        py::list out;
        for (const auto& h : s.history()) {
          out.append(py::make_tuple(h.event, h.alpha, h.size, h.feasible, h.wall_ns));
        }
        return out;
      })
      .def("apply_size_delta", &Session::apply_size_delta, py::arg("dp"))
      .def("set_size", &Session::set_size, py::arg("p"))
      .def("apply_similarity_delta", &Session::apply_similarity_delta, py::arg("ds"))
      .def("set_similarity", &Session::set_similarity, py::arg("s"))
      .def("expand_greedy", &Session::expand_greedy)
      .def("augment",
           [](Session& s, const SimGraph& extra,
              const std::vector<std::tuple<NodeId, NodeId, double>>& bridges) {
             return s.augment(extra, to_edges(bridges));
           },
           py::arg("extra"), py::arg("bridges") = std::vector<std::tuple<NodeId, NodeId, double>>{});
}
