#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "expwalk/clt.hpp"
#include "expwalk/decomp.hpp"
#include "expwalk/error.hpp"
#include "expwalk/spectral.hpp"
#include "expwalk/walks.hpp"

namespace py = pybind11;
using namespace expwalk;

namespace {

py::dict law_dict(const IntDistribution& law) {
  py::dict d;
  d["offset"] = law.offset();
  d["probabilities"] = std::vector<double>(law.probabilities().begin(), law.probabilities().end());
  return d;
}

}  // namespace

PYBIND11_MODULE(_expwalk, m) {
  m.doc() = "Exact and Monte Carlo statistics of random-walk label sums on regular graphs";

  // The module keeps the exception type alive.
  static PyObject* error = py::exception<Error>(m, "ExpwalkError", PyExc_ValueError).ptr();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetString(error, (std::string(to_string(e.kind())) + ": " + e.what()).c_str());
    }
  });

  py::class_<RegularGraph>(m, "RegularGraph")
      .def_property_readonly("n", &RegularGraph::n)
      .def_property_readonly("d", &RegularGraph::d)
      .def("neighbors",
           [](const RegularGraph& g, Vertex v) {
             if (v >= g.n()) throw py::index_error("vertex out of range");
             const auto s = g.neighbors(v);
             return std::vector<Vertex>(s.begin(), s.end());
           })
      .def("edges", &RegularGraph::edges)
      .def("__repr__", [](const RegularGraph& g) {
        return "<RegularGraph n=" + std::to_string(g.n()) + " d=" + std::to_string(g.d()) + ">";
      });

  py::class_<Labelling>(m, "Labelling")
      .def(py::init(&Labelling::from_string), py::arg("bits"))
      .def_property_readonly("alpha", &Labelling::alpha)
      .def_property_readonly("balanced", &Labelling::balanced)
      .def("__len__", &Labelling::size)
      .def("__str__", &Labelling::to_string);

  m.def("complete", &build_complete, py::arg("n"));
  m.def("cycle", &build_cycle, py::arg("n"));
  m.def("random_regular", &build_random_regular, py::arg("n"), py::arg("d"), py::arg("seed"));
  m.def("parse_graph", [](const std::string& text) { return parse_graph(text); });
  m.def("random_balanced_labelling", &random_balanced_labelling, py::arg("graph"),
        py::arg("seed"));

  m.def(
      "spectrum",
      [](const RegularGraph& g) {
        const auto s = spectrum(g);
        py::dict d;
        d["eigenvalues"] = s.eigenvalues;
        d["lambda_star"] = s.lambda_star;
        return d;
      },
      py::arg("graph"));

  m.def(
      "weight_law",
      [](const RegularGraph& g, const Labelling& lab, int t) {
        return law_dict(exact_weight_law(walk_chain(g, lab), t));
      },
      py::arg("graph"), py::arg("labels"), py::arg("t"));
  m.def(
      "sticky_law", [](double p, int t) { return law_dict(exact_weight_law(sticky_chain(p), t)); },
      py::arg("p"), py::arg("t"));

  m.def(
      "variance",
      [](const RegularGraph& g, const Labelling& lab, int t) {
        return variance_formula(g, lab, t, spectrum(g));
      },
      py::arg("graph"), py::arg("labels"), py::arg("t"));
  m.def(
      "sigma2",
      [](const RegularGraph& g, const Labelling& lab) {
        return asymptotic_sigma2(g, lab, spectrum(g));
      },
      py::arg("graph"), py::arg("labels"));
  m.def("sticky_sigma2", &sticky_sigma2, py::arg("p"));
  m.def("matching_sticky_p", &matching_sticky_p, py::arg("sigma2"));

  m.def(
      "lclt_error",
      [](const RegularGraph& g, const Labelling& lab, int t) {
        return lclt_error(walk_chain(g, lab), t, asymptotic_sigma2(g, lab, spectrum(g)),
                          lab.alpha());
      },
      py::arg("graph"), py::arg("labels"), py::arg("t"));
  m.def(
      "tv_to_normal",
      [](const RegularGraph& g, const Labelling& lab, int t) {
        return tv_to_discretized_normal(walk_chain(g, lab), t,
                                        asymptotic_sigma2(g, lab, spectrum(g)), lab.alpha());
      },
      py::arg("graph"), py::arg("labels"), py::arg("t"));
  m.def("tv_to_sticky", &tv_to_sticky, py::arg("graph"), py::arg("labels"), py::arg("t"));
  m.def("tv_to_iid", &tv_to_iid, py::arg("graph"), py::arg("labels"), py::arg("t"));

  m.def(
      "kstar",
      [](const RegularGraph& g, const Labelling& lab) {
        const auto k = find_kstar(g, lab, lab.balanced());
        py::dict d;
        d["k_star"] = k.k_star;
        d["side"] = to_string(k.side);
        d["class_size"] = k.class_size;
        d["threshold"] = k.threshold;
        return d;
      },
      py::arg("graph"), py::arg("labels"));
}
