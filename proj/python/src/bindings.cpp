#include "zen/classifier.hpp"
#include "zen/error.hpp"
#include "zen/harness.hpp"
#include "zen/hypergraph.hpp"
#include "zen/propagation.hpp"
#include "zen/rsi_approx.hpp"

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;

namespace {

zen::NormalizationKind norm(const std::string& s) { return zen::parse_normalization(s); }

zen::LabelSet to_labels(const std::vector<std::int32_t>& labels) {
  std::int32_t c = 0;
  for (auto y : labels) c = std::max(c, y + 1);
  return zen::LabelSet(labels, c);
}

zen::Split split_from_nodes(std::int64_t n, const std::vector<std::int64_t>& train, const zen::LabelSet& labels) {
  zen::Split s;
  s.train_mask.assign(static_cast<std::size_t>(n), 0);
  s.val_mask.assign(static_cast<std::size_t>(n), 0);
  s.test_mask.assign(static_cast<std::size_t>(n), 0);
  for (auto v : train) {
    if (v < 0 || v >= n) throw zen::ConfigError("training node out of range");
    s.train_mask[static_cast<std::size_t>(v)] = 1;
  }
  s.num_classes = labels.num_classes();
  return s;
}

std::string matrix_names = "H, A1_hat, A1_star, A2_hat, A2_star";

}  // namespace

PYBIND11_MODULE(_zen, m) {
  m.doc() = "Parameter-free linear hypergraph node classification";

  py::register_exception<zen::ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<zen::ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<zen::IoError>(m, "IoError", PyExc_OSError);
  py::register_exception<zen::GuardError>(m, "GuardError", PyExc_MemoryError);
  py::register_exception<zen::ComputationError>(m, "ComputationError", PyExc_ArithmeticError);

  py::class_<zen::Hypergraph>(m, "Hypergraph")
      .def(py::init<std::int64_t, std::vector<std::vector<zen::NodeId>>>(), py::arg("num_nodes"), py::arg("edges"))
      .def_property_readonly("num_nodes", &zen::Hypergraph::num_nodes)
      .def_property_readonly("num_edges", &zen::Hypergraph::num_edges)
      .def_property_readonly("nnz", &zen::Hypergraph::nnz)
      .def_property_readonly("edges", &zen::Hypergraph::edges)
      .def("node_degrees", [](const zen::Hypergraph& hg) { return zen::degrees(hg).node_degrees; })
      .def("edge_sizes", [](const zen::Hypergraph& hg) { return zen::degrees(hg).edge_sizes; })
      .def("isolated_nodes", &zen::Hypergraph::isolated_nodes)
      .def("serialize", &zen::serialize_hypergraph)
      .def("__eq__", &zen::Hypergraph::operator==)
      .def("__repr__", [](const zen::Hypergraph& hg) {
        return "<Hypergraph nodes=" + std::to_string(hg.num_nodes()) + " edges=" + std::to_string(hg.num_edges()) +
               ">";
      });

  m.def("parse_hypergraph", [](const std::string& text) { return zen::parse_hypergraph(text); }, py::arg("text"));
  m.def("read_hypergraph", &zen::read_hypergraph, py::arg("path"));

  m.def(
      "matrix",
      [](const zen::Hypergraph& hg, const std::string& which, const std::string& kind) {
        if (which == "H") return zen::incidence_matrix(hg).storage();
        const auto b = zen::PropagationBasis::build(hg, norm(kind));
        if (which == "A1_hat") return b.A1_hat.storage();
        if (which == "A1_star") return b.A1_star.storage();
        if (which == "A2_hat") return b.A2_hat.storage();
        if (which == "A2_star") return b.A2_star.storage();
        throw zen::ConfigError("unknown matrix '" + which + "'; expected one of " + matrix_names);
      },
      py::arg("hypergraph"), py::arg("which"), py::arg("norm") = "sym",
      "Sparse propagation matrix as scipy.sparse.csr_matrix");

  m.def(
      "p_star",
      [](const zen::Hypergraph& hg, std::array<double, 3> alphas, const std::string& kind, bool rap) {
        zen::PropagationConfig cfg;
        cfg.alphas = alphas;
        cfg.normalization = norm(kind);
        cfg.rap_enabled = rap;
        return zen::build_P_star(hg, cfg).storage();
      },
      py::arg("hypergraph"), py::arg("alphas"), py::arg("norm") = "sym", py::arg("rap") = true);

  m.def("rsi_diag_1", [](const zen::Hypergraph& hg, const std::string& k) { return zen::rsi_diag_1(hg, norm(k)); },
        py::arg("hypergraph"), py::arg("norm") = "sym");
  m.def("rsi_diag_2", [](const zen::Hypergraph& hg, const std::string& k) { return zen::rsi_diag_2(hg, norm(k)); },
        py::arg("hypergraph"), py::arg("norm") = "sym");
  m.def("rsi_diag_2_per_edge", &zen::rsi_diag_2_per_edge, py::arg("hypergraph"));

  m.def(
      "random_walk_return_prob",
      [](const zen::Hypergraph& hg, zen::NodeId node, int l, std::int64_t trials, std::uint64_t seed, int threads) {
        py::gil_scoped_release release;
        return zen::random_walk_return_prob(hg, node, {l, trials, seed}, threads);
      },
      py::arg("hypergraph"), py::arg("node"), py::arg("l") = 1, py::arg("trials") = 100000, py::arg("seed") = 0,
      py::arg("threads") = 1);

  m.def(
      "hutchinson_diag",
      [](const zen::Matvec& matvec, std::int64_t n, std::int64_t probes, std::uint64_t seed) {
        return zen::hutchinson_diag(matvec, n, {probes, seed});
      },
      py::arg("matvec"), py::arg("n"), py::arg("probes") = 100, py::arg("seed") = 0,
      "Diagonal estimate of the operator behind `matvec` (a callable on 1-D arrays)");

  m.def(
      "dense_diag_oracle",
      [](const zen::Hypergraph& hg, const std::string& kind, int l, const std::string& target) {
        zen::DiagTarget t = zen::DiagTarget::RapHat;
        if (target == "walk_matrix") t = zen::DiagTarget::WalkMatrix;
        else if (target != "rap_hat") throw zen::ConfigError("target must be rap_hat or walk_matrix");
        return zen::dense_diag_oracle(hg, norm(kind), l, t);
      },
      py::arg("hypergraph"), py::arg("norm") = "sym", py::arg("l") = 1, py::arg("target") = "rap_hat");

  m.def(
      "tcs_weights",
      [](const Eigen::MatrixXd& Z, const std::vector<std::int32_t>& labels, const std::vector<std::int64_t>& train) {
        const auto ls = to_labels(labels);
        return zen::tcs_weights({Z}, split_from_nodes(Z.rows(), train, ls), ls).values;
      },
      py::arg("Z"), py::arg("labels"), py::arg("train_nodes"));
  m.def(
      "exact_weights",
      [](const Eigen::MatrixXd& Z, const std::vector<std::int32_t>& labels, const std::vector<std::int64_t>& train) {
        const auto ls = to_labels(labels);
        return zen::exact_weights({Z}, split_from_nodes(Z.rows(), train, ls), ls).values;
      },
      py::arg("Z"), py::arg("labels"), py::arg("train_nodes"));
  m.def(
      "predict", [](const Eigen::MatrixXd& Z, const Eigen::MatrixXd& W) { return zen::predict({Z}, {W}).hard_labels; },
      py::arg("Z"), py::arg("W"));
  m.def("normalize_rows", &zen::normalize_rows, py::arg("m"));
  m.def("normalize_cols", &zen::normalize_cols, py::arg("m"));
  m.def("tcs_error_bound", &zen::tcs_error_bound, py::arg("epsilon"), py::arg("k"), py::arg("c"),
        "Relative error of the closed-form weights, in percent");

  m.def(
      "simplex_grid", [](int q) { return zen::simplex_grid(q).alphas; }, py::arg("denominator") = 9);

  m.def(
      "run",
      [](const std::string& edges, const std::string& features, const std::string& labels, int k,
         const std::vector<std::uint64_t>& seeds, int denominator, const std::string& variant, const std::string& kind,
         int threads) {
        const auto ds = zen::load_dataset(edges, features, labels);
        zen::GridOptions opts;
        opts.variant = zen::parse_variant(variant);
        opts.kind = norm(kind);
        opts.threads = threads;
        py::gil_scoped_release release;
        return zen::grid_search(ds, zen::simplex_grid(denominator), k, seeds, opts).to_json().dump();
      },
      py::arg("edges"), py::arg("features"), py::arg("labels"), py::arg("k") = 5,
      py::arg("seeds") = std::vector<std::uint64_t>{0, 1, 2, 3, 4, 5, 6, 7, 8, 9}, py::arg("grid_denominator") = 9,
      py::arg("variant") = "full", py::arg("norm") = "sym", py::arg("threads") = 1,
      "k-shot grid search; returns the result document as a JSON string");
}
