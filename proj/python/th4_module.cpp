#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "th4/cli.hpp"
#include "th4/decompose.hpp"
#include "th4/error.hpp"
#include "th4/infocalc.hpp"
#include "th4/ingest.hpp"
#include "th4/maxent.hpp"
#include "th4/output.hpp"
#include "th4/tables.hpp"

namespace py = pybind11;
using namespace th4;

namespace {

// Dimensions may be given as letters ("wxz") or as a sequence of indices.
DimSet to_dims(const py::object& dims) {
  if (py::isinstance<py::str>(dims)) return DimSet::parse(dims.cast<std::string>());
  DimSet out;
  for (const auto& item : dims) {
    const auto d = item.cast<std::size_t>();
    out = out | DimSet{d};
  }
  return out;
}

std::size_t to_dim(const py::object& dim) {
  if (py::isinstance<py::str>(dim)) {
    const auto s = dim.cast<std::string>();
    if (s.size() != 1) throw UsageError("expected a single dimension letter, got '" + s + "'");
    return dim_index(s.front());
  }
  return dim.cast<std::size_t>();
}

py::dict cells_dict(const ContingencyTable& t) {
  py::dict out;
  for (const auto& [key, n] : t.cells()) out[py::tuple(py::cast(t.labels_of(key)))] = n;
  return out;
}

py::dict marginal_dict(const ContingencyTable& t, DimSet subset) {
  const auto m = marginal(t, subset);
  const auto dims = subset.indices();
  py::dict out;
  for (const auto& [key, n] : m.counts) {
    py::tuple labels(dims.size());
    for (std::size_t i = 0; i < dims.size(); ++i) labels[i] = m.alphabets[dims[i]].label(key[dims[i]]);
    out[labels] = n;
  }
  return out;
}

py::dict named(const EntropyReport& r, bool transmissions) {
  py::dict out;
  for (DimSet s : report_order()) {
    if (!transmissions) out[py::str(s.name())] = r.entropy(s);
    else if (s.size() >= 2) out[py::str(s.name())] = r.transmission(s);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Entropies and signed multivariate transmissions for nominal case records";

  py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);
  py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);
  py::register_exception<EmptyDatasetError>(m, "EmptyDatasetError", PyExc_ValueError);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);

  py::class_<CaseRecord>(m, "CaseRecord")
      .def_readonly("id", &CaseRecord::id)
      .def_readonly("labels", &CaseRecord::labels)
      .def_readonly("line_number", &CaseRecord::line_number)
      .def("__repr__", [](const CaseRecord& r) { return "CaseRecord(" + format_record(r) + ")"; });

  py::class_<Dataset>(m, "Dataset")
      .def_readonly("records", &Dataset::records)
      .def_readonly("arity", &Dataset::arity)
      .def_readonly("source_label", &Dataset::source_label)
      .def("__len__", &Dataset::size);

  m.def("parse_line", &parse_line, py::arg("text"), py::arg("line_number") = 1);
  m.def(
      "parse_dataset",
      [](const std::string& text, std::string source_label) {
        std::istringstream in(text);
        return parse_dataset(in, std::move(source_label));
      },
      py::arg("text"), py::arg("source_label") = "input", "Parse case records from a string.");
  m.def("read_dataset", &read_dataset, py::arg("path"));
  m.def("drop_empty_labels", &drop_empty_labels, py::arg("dataset"));

  py::class_<ContingencyTable>(m, "ContingencyTable")
      .def_property_readonly("arity", &ContingencyTable::arity)
      .def_property_readonly("total", &ContingencyTable::total)
      .def("alphabet", [](const ContingencyTable& t, std::size_t d) { return t.alphabet(d).labels(); })
      .def("cells", &cells_dict, "Mapping of label tuple to count.")
      .def("count", [](const ContingencyTable& t, const std::vector<std::string>& labels) { return t.count(labels); })
      .def("same_counts", &ContingencyTable::same_counts);

  m.def("build_table", &build_table, py::arg("dataset"));
  m.def("build_table_parallel", &build_table_parallel, py::arg("dataset"), py::arg("shards"),
        py::call_guard<py::gil_scoped_release>());
  m.def("merge", &merge, py::arg("a"), py::arg("b"));
  m.def("marginal", [](const ContingencyTable& t, const py::object& dims) { return marginal_dict(t, to_dims(dims)); },
        py::arg("table"), py::arg("dims"));
  m.def("project", [](const ContingencyTable& t, const py::object& dims) { return project(t, to_dims(dims)); },
        py::arg("table"), py::arg("dims"));

  m.def("entropy", [](const ContingencyTable& t, const py::object& dims) { return entropy(t, to_dims(dims)); },
        py::arg("table"), py::arg("dims"), "Shannon entropy in bits of the marginal over `dims`.");
  m.def("transmission",
        [](const ContingencyTable& t, const py::object& dims) { return transmission(t, to_dims(dims)); },
        py::arg("table"), py::arg("dims"), "Signed mutual information in bits among 2-4 dimensions.");
  m.def(
      "conditional_transmission",
      [](const ContingencyTable& t, const py::object& a, const py::object& b, const py::object& given) {
        return conditional_transmission(t, to_dim(a), to_dim(b), to_dim(given));
      },
      py::arg("table"), py::arg("a"), py::arg("b"), py::arg("given"));

  py::class_<EntropyReport>(m, "EntropyReport")
      .def_readonly("arity", &EntropyReport::arity)
      .def_readonly("n_cases", &EntropyReport::n_cases)
      .def_property_readonly("entropies", [](const EntropyReport& r) { return named(r, false); })
      .def_property_readonly("transmissions", [](const EntropyReport& r) { return named(r, true); })
      .def("listing", &format_listing, py::arg("precision") = 2);
  m.def("full_report", &full_report, py::arg("table"));

  py::class_<IpfResult>(m, "IpfResult")
      .def_readonly("iterations", &IpfResult::iterations)
      .def_readonly("max_margin_error", &IpfResult::max_margin_error)
      .def_readonly("converged", &IpfResult::converged)
      .def_readonly("interaction_bits", &IpfResult::interaction_bits)
      .def_readonly("alphabets", &IpfResult::alphabets)
      .def("fitted", [](const IpfResult& r) {
        py::dict out;
        for (std::size_t a = 0; a < r.shape[0]; ++a)
          for (std::size_t b = 0; b < r.shape[1]; ++b)
            for (std::size_t c = 0; c < r.shape[2]; ++c)
              out[py::make_tuple(r.alphabets[0][a], r.alphabets[1][b], r.alphabets[2][c])] =
                  r.fitted[r.index(a, b, c)];
        return out;
      });
  m.def(
      "ipf_fit",
      [](const ContingencyTable& t, double tolerance, std::size_t max_iterations) {
        return ipf_fit(t, IpfOptions{tolerance, max_iterations});
      },
      py::arg("table"), py::arg("tolerance") = IpfOptions{}.tolerance,
      py::arg("max_iterations") = IpfOptions{}.max_iterations);
  m.def("krippendorff_interaction", &krippendorff_interaction, py::arg("table"), py::arg("ipf"));
  m.def("interaction_entropy_difference", &interaction_entropy_difference, py::arg("table"), py::arg("ipf"));

  py::class_<GroupContribution>(m, "GroupContribution")
      .def_readonly("group_label", &GroupContribution::group_label)
      .def_readonly("n_cases", &GroupContribution::n_cases)
      .def_readonly("weight", &GroupContribution::weight)
      .def_readonly("transmission", &GroupContribution::transmission)
      .def_readonly("contribution", &GroupContribution::contribution)
      .def_property_readonly("synergy", &GroupContribution::synergy);

  py::class_<DecompositionResult>(m, "DecompositionResult")
      .def_property_readonly("subset", [](const DecompositionResult& r) { return r.subset.name(); })
      .def_readonly("n_cases", &DecompositionResult::n_cases)
      .def_readonly("groups", &DecompositionResult::groups)
      .def_readonly("t_pooled", &DecompositionResult::t_pooled)
      .def_readonly("t_between", &DecompositionResult::t_between)
      .def("within_total", &DecompositionResult::within_total);

  m.def(
      "decompose_by_dimension",
      [](const Dataset& d, const py::object& group_dim, const py::object& subset) {
        return decompose_by_dimension(d, to_dim(group_dim), to_dims(subset));
      },
      py::arg("dataset"), py::arg("group_dim"), py::arg("subset"));
  m.def(
      "decompose_external",
      [](const std::vector<std::pair<std::string, Dataset>>& groups, const py::object& subset) {
        return decompose_external(groups, to_dims(subset));
      },
      py::arg("groups"), py::arg("subset"));

  m.def("csv_header", &csv_header);
  m.def(
      "csv_row",
      [](const std::string& label, const EntropyReport& r, std::optional<int> precision) {
        return csv_row(RunRow{label, r}, precision);
      },
      py::arg("label"), py::arg("report"), py::arg("precision") = 2);

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run the command-line tool in-process; returns (exit_code, stdout, stderr).");

#ifdef TH4_VERSION
  m.attr("__version__") = TH4_VERSION;
#else
  m.attr("__version__") = "dev";
#endif
}
