#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "treesearch/bounded_dp.hpp"
#include "treesearch/diameter.hpp"
#include "treesearch/errors.hpp"
#include "treesearch/exact.hpp"
#include "treesearch/fptas.hpp"
#include "treesearch/generate.hpp"
#include "treesearch/greedy.hpp"
#include "treesearch/reduction.hpp"

namespace py = pybind11;
using namespace treesearch;

namespace {

// Weights cross the boundary as Python ints via their decimal form.
Weight to_weight(const py::handle& h) { return parse_weight(py::str(h).cast<std::string>()); }
py::int_ to_py(const Weight& w) { return py::int_(py::str(to_string(w))); }

std::vector<Weight> to_weights(const py::sequence& seq) {
  std::vector<Weight> out;
  for (const auto& h : seq) out.push_back(to_weight(h));
  return out;
}

Rational to_rational(const py::handle& h) {
  if (py::isinstance<py::str>(h)) return parse_rational(h.cast<std::string>());
  py::object frac = py::module_::import("fractions").attr("Fraction")(h);
  return parse_rational(py::str(frac).cast<std::string>());
}

py::tuple result(const Weight& c, const DecisionTree& d) { return py::make_tuple(to_py(c), d); }

X3CInstance x3c_of(int n, const std::vector<std::array<int, 3>>& sets) { return X3CInstance{n, sets}; }

Variant variant_of(const std::string& v) {
  if (v == "diam4") return Variant::Diameter4;
  if (v == "deg16") return Variant::Degree16;
  throw ValidationError("unknown variant '" + v + "' (expected diam4 or deg16)");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Search strategies for node-weighted trees with edge queries";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<ResourceError>(m, "ResourceError", PyExc_RuntimeError);

  py::class_<InputTree>(m, "InputTree")
      .def(py::init([](std::vector<NodeId> parent, const py::sequence& weight) {
             return InputTree(std::move(parent), to_weights(weight));
           }),
           py::arg("parent"), py::arg("weight"))
      .def_static("from_text", &parse_instance_string)
      .def("to_text", &format_instance)
      .def_property_readonly("size", &InputTree::size)
      .def_property_readonly("root", &InputTree::root)
      .def_property_readonly("parents", &InputTree::parents)
      .def("children", &InputTree::children)
      .def("weight", [](const InputTree& t, NodeId v) { return to_py(t.weight(v)); })
      .def_property_readonly("total_weight", [](const InputTree& t) { return to_py(t.total_weight()); })
      .def("diameter", &InputTree::diameter)
      .def("max_degree", &InputTree::max_degree)
      .def("__len__", &InputTree::size)
      .def("__eq__", [](const InputTree& a, const InputTree& b) { return a == b; });

  py::class_<DecisionTree>(m, "DecisionTree")
      .def_static("leaf", &DecisionTree::leaf)
      .def_static("query", &DecisionTree::query, py::arg("v"), py::arg("no"), py::arg("yes"))
      .def_static("from_json", &parse_tree_string)
      .def("to_json", &format_tree)
      .def("height", &DecisionTree::height)
      .def("node_count", &DecisionTree::node_count)
      .def("__eq__", [](const DecisionTree& a, const DecisionTree& b) { return a == b; })
      .def("__repr__", [](const DecisionTree& d) { return "DecisionTree(" + format_tree(d) + ")"; });

  m.def("cost", [](const DecisionTree& d, const InputTree& t) { return to_py(cost(d, t)); });
  m.def("validate", [](const DecisionTree& d, const InputTree& t) { return validate(d, t).violations; });

  m.def("greedy", &greedy);
  m.def("opt_cost", [](const InputTree& t, int limit) {
    auto r = opt_cost(t, limit);
    return result(r.cost, r.tree);
  }, py::arg("tree"), py::arg("max_nodes") = kDefaultExactLimit);
  m.def("optimal_bounded", [](const InputTree& t, std::optional<int> height, int cap) {
    auto r = optimal_bounded(t, BoundedOptions{height, cap});
    return result(r.cost, r.tree);
  }, py::arg("tree"), py::arg("height") = py::none(), py::arg("cap") = kDefaultDpCap);
  m.def("fptas", [](const InputTree& t, const py::object& eps, std::optional<int> height, int cap) {
    auto r = fptas(t, to_rational(eps), BoundedOptions{height, cap});
    return result(r.cost, r.tree);
  }, py::arg("tree"), py::arg("eps"), py::arg("height") = py::none(), py::arg("cap") = kDefaultDpCap);
  m.def("scale_weights", [](const InputTree& t, const py::object& eps) {
    return scale_weights(t, to_rational(eps));
  });
  m.def("height_bound", &height_bound);
  m.def("dp_height", &dp_height);
  m.def("solve_star", [](const InputTree& t) {
    auto r = solve_star(t);
    return result(r.cost, r.tree);
  });
  m.def("solve_diam3", [](const InputTree& t) {
    auto r = solve_diam3(t);
    return result(r.cost, r.tree);
  });

  m.def("generate", [](const std::string& kind, int n, std::uint64_t seed, const std::string& weights, int arity) {
    return generate(parse_shape(kind), n, seed, parse_weight_range(weights), arity);
  }, py::arg("kind"), py::arg("n"), py::arg("seed") = 1, py::arg("weights") = "1..10", py::arg("arity") = 2);

  m.def("pi_sequence", [](int n, const std::vector<std::array<int, 3>>& sets) {
    return pi_sequence(x3c_of(n, sets)).str();
  });
  m.def("x3c_brute", [](int n, const std::vector<std::array<int, 3>>& sets) {
    return x3c_brute(x3c_of(n, sets));
  });
  m.def("reduce", [](int n, const std::vector<std::array<int, 3>>& sets, const std::string& variant) {
    const auto r = build_reduction(x3c_of(n, sets), variant_of(variant));
    return r.tree;
  }, py::arg("n"), py::arg("sets"), py::arg("variant") = "diam4");
  m.def("decide_cover", [](int n, const std::vector<std::array<int, 3>>& sets, const std::string& variant) {
    const auto r = build_reduction(x3c_of(n, sets), variant_of(variant));
    const auto d = decide_cover(r);
    std::vector<int> best;
    for (int i = 0; i < r.m(); ++i)
      if (d.best[i]) best.push_back(i + 1);
    py::dict out;
    out["cover"] = d.cover;
    out["base_cost"] = to_py(d.base_cost);
    out["best_cost"] = to_py(d.best_cost);
    out["best"] = best;
    out["oracle_cost"] = d.oracle_checked ? py::object(to_py(d.oracle_cost)) : py::none();
    return out;
  }, py::arg("n"), py::arg("sets"), py::arg("variant") = "diam4");
}
