#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "gcdc/anomaly.hpp"
#include "gcdc/canonical.hpp"
#include "gcdc/coders.hpp"
#include "gcdc/errors.hpp"
#include "gcdc/container.hpp"
#include "gcdc/generators.hpp"
#include "gcdc/graph_io.hpp"
#include "gcdc/model.hpp"

namespace py = pybind11;
using namespace gcdc;

namespace {

Graph graph_from(std::size_t n, const std::vector<Edge>& edges) { return Graph::from_edges(n, edges); }

py::bytes container_bytes(const EncodedGraph& e) {
  std::ostringstream out;
  write_container(out, {e.coder, e.mode, e.node_count, e.stream});
  return py::bytes(out.str());
}

}  // namespace

PYBIND11_MODULE(_gcdc, m) {
  m.doc() = "Graph structure coding and atypicality scoring";

  py::enum_<CoderId>(m, "Coder")
      .value("LABELED_IID", CoderId::LabeledIid)
      .value("STRUCT_IID", CoderId::StructIid)
      .value("STRUCT_DEGREE", CoderId::StructDegree)
      .value("STRUCT_TRIANGLE", CoderId::StructTriangle);
  py::enum_<CodingMode>(m, "Mode").value("LEARNED", CodingMode::Learned).value("UNIVERSAL", CodingMode::Universal);

  py::class_<Graph>(m, "Graph")
      .def(py::init<std::size_t>(), py::arg("n") = 0)
      .def(py::init(&graph_from), py::arg("n"), py::arg("edges"))
      .def("add_edge", &Graph::add_edge)
      .def("has_edge", &Graph::has_edge)
      .def("degree", &Graph::degree)
      .def("degrees", &Graph::degrees)
      .def("edges", &Graph::edges)
      .def_property_readonly("node_count", &Graph::node_count)
      .def_property_readonly("edge_count", &Graph::edge_count)
      .def("permuted", [](const Graph& g, const std::vector<NodeId>& order) { return g.permuted(order); })
      .def("__eq__", [](const Graph& a, const Graph& b) { return a == b; })
      .def("__repr__", [](const Graph& g) {
        return "Graph(n=" + std::to_string(g.node_count()) + ", edges=" + std::to_string(g.edge_count()) + ")";
      });

  m.def("load_graph", [](const std::string& path, const std::string& format) {
    return load_graph(path, format.empty() ? guess_graph_format(path) : parse_graph_format(format));
  }, py::arg("path"), py::arg("format") = "");
  m.def("save_graph", [](const std::string& path, const Graph& g, const std::string& format) {
    save_graph(path, g, format.empty() ? guess_graph_format(path) : parse_graph_format(format));
  }, py::arg("path"), py::arg("graph"), py::arg("format") = "");
  m.def("sorted_matrix", &sorted_matrix);
  m.def("degree_histogram", &degree_histogram);

  m.def("generate", [](const std::string& spec, std::uint64_t seed) {
    GenSpec s = GenSpec::parse(spec);
    s.seed = seed;
    return generate(s);
  }, py::arg("spec"), py::arg("seed") = 0);

  py::class_<LearnedParams>(m, "LearnedParams")
      .def_readonly("edge_probability", &LearnedParams::edge_probability)
      .def_property_readonly("p_tri", [](const LearnedParams& p) { return p.triangle.p_tri; })
      .def_property_readonly("p_check", [](const LearnedParams& p) { return p.triangle.p_check; });

  py::class_<TypicalModel>(m, "TypicalModel")
      .def_readonly("coder", &TypicalModel::coder)
      .def_readonly("params", &TypicalModel::params)
      .def_readonly("training_bits", &TypicalModel::training_bits)
      .def("save", [](const TypicalModel& mdl) {
        std::ostringstream out;
        write_model(out, mdl);
        return out.str();
      })
      .def_static("load", [](const std::string& text) {
        std::istringstream in(text);
        return read_model(in);
      });

  m.def("ideal_codelength", [](const Graph& g, CoderId c, CodingMode mode, const TypicalModel* model) {
    return ideal_codelength(g, c, mode, model ? &model->params : nullptr);
  }, py::arg("graph"), py::arg("coder"), py::arg("mode") = CodingMode::Universal, py::arg("model") = nullptr);
  m.def("universal_overhead", &universal_overhead);

  m.def("encode", [](const Graph& g, CoderId c, CodingMode mode, const TypicalModel* model) {
    const auto e = encode(g, c, mode, model ? &model->params : nullptr);
    py::dict out;
    out["ideal_bits"] = e.ideal_bits;
    out["header_bits"] = e.header_bits;
    out["actual_bits"] = e.stream.size();
    out["container"] = container_bytes(e);
    return out;
  }, py::arg("graph"), py::arg("coder"), py::arg("mode") = CodingMode::Universal, py::arg("model") = nullptr);
  m.def("decode", [](const py::bytes& data, const TypicalModel* model) {
    std::istringstream in{std::string(data)};
    const Container c = read_container(in);
    return decode(c.stream, c.node_count, c.coder, c.mode, model ? &model->params : nullptr);
  }, py::arg("container"), py::arg("model") = nullptr);

  m.def("train_typical", [](const std::vector<Graph>& graphs, double alpha) { return train_typical(graphs, alpha); },
        py::arg("graphs"), py::arg("alpha") = kDefaultAlpha);
  m.def("score", [](const TypicalModel& model, const Graph& g) {
    const auto s = score_graph(model, g);
    py::dict out;
    out["L_T"] = s.typical_bits;
    out["L_A"] = s.atypical_bits;
    out["winner"] = s.winner;
    out["score"] = s.score;
    return out;
  });
  m.def("score_batch", [](const TypicalModel& model, const std::vector<Graph>& graphs) {
    std::vector<double> out;
    for (const auto& s : score_batch(model, graphs)) out.push_back(s.score);
    return out;
  });
  m.def("equal_error_rate", [](const std::vector<double>& typical, const std::vector<double>& test) {
    const auto r = evaluate(typical, test);
    return py::make_tuple(r.equal_error_rate, r.eer_tau);
  });

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<DecodeError>(m, "DecodeError", PyExc_ValueError);
}
