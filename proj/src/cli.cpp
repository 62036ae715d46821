#include "th4/cli.hpp"

#include <glob.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <functional>
#include <future>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "th4/decompose.hpp"
#include "th4/error.hpp"
#include "th4/infocalc.hpp"
#include "th4/ingest.hpp"
#include "th4/maxent.hpp"
#include "th4/output.hpp"
#include "th4/tables.hpp"

namespace th4::cli {
namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

struct CommonOptions {
  int precision = 2;
  bool full_precision = false;
  bool drop_empty = false;

  std::optional<int> csv_precision() const {
    return full_precision ? std::nullopt : std::optional<int>(precision);
  }
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--precision", o.precision, "Decimals shown (default 2)")->check(CLI::Range(0, 15));
  cmd->add_flag("--full-precision", o.full_precision, "Write unrounded values to CSV output");
  cmd->add_flag("--drop-empty-labels", o.drop_empty, "Skip cases that have an empty label");
}

Dataset load(const fs::path& path, const CommonOptions& o) {
  Dataset d = read_dataset(path);
  return o.drop_empty ? drop_empty_labels(std::move(d)) : d;
}

// Runs `body`, mapping library exceptions to exit codes and diagnostics.
int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const FormatError& e) {
    err << "error: " << e.what() << "\n";
    return kParseError;
  } catch (const EmptyDatasetError& e) {
    err << "error: " << e.what() << "\n";
    return kParseError;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << "\n";
    return kNotConverged;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  }
}

ordered_json report_json(const std::string& label, const EntropyReport& r) {
  ordered_json j;
  j["label"] = label;
  j["n_cases"] = r.n_cases;
  j["arity"] = r.arity;
  ordered_json h = ordered_json::object(), t = ordered_json::object();
  for (DimSet s : report_order()) {
    h[s.name()] = r.entropy(s);
    if (s.size() >= 2) t[s.name()] = r.transmission(s);
  }
  j["entropies"] = std::move(h);
  j["transmissions"] = std::move(t);
  return j;
}

void write_text_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  if (!out.flush()) throw IoError("write to " + path.string() + " failed");
}

bool has_glob_chars(const std::string& s) { return s.find_first_of("*?[") != std::string::npos; }

std::vector<fs::path> expand_inputs(const std::vector<std::string>& inputs) {
  std::vector<fs::path> files;
  for (const auto& in : inputs) {
    std::error_code ec;
    if (fs::is_directory(in, ec)) {
      for (const auto& entry : fs::directory_iterator(in))
        if (entry.is_regular_file()) files.push_back(entry.path());
    } else if (has_glob_chars(in)) {
      glob_t g{};
      if (::glob(in.c_str(), 0, nullptr, &g) == 0)
        for (std::size_t i = 0; i < g.gl_pathc; ++i)
          if (fs::is_regular_file(g.gl_pathv[i], ec)) files.emplace_back(g.gl_pathv[i]);
      ::globfree(&g);
    } else {
      files.emplace_back(in);
    }
  }
  std::sort(files.begin(), files.end(), [](const fs::path& a, const fs::path& b) {
    const auto fa = a.filename().string(), fb = b.filename().string();
    return fa != fb ? fa < fb : a.string() < b.string();
  });
  files.erase(std::unique(files.begin(), files.end()), files.end());
  return files;
}

// report ---------------------------------------------------------------------

struct ReportOptions {
  CommonOptions common;
  std::string input = "data.txt";
  std::string output = "th4.csv";
  std::string label;
  bool json = false;
};

int cmd_report(const ReportOptions& o, std::ostream& out) {
  const Dataset data = load(o.input, o.common);
  const EntropyReport report = full_report(build_table(data));
  const RunRow row{o.label.empty() ? fs::path(o.input).filename().string() : o.label, report};
  append_row(o.output, row, o.common.csv_precision());
  if (o.json)
    out << report_json(row.label, report).dump(2) << "\n";
  else
    out << format_listing(report, o.common.precision);
  return kOk;
}

// batch ----------------------------------------------------------------------

struct BatchOptions {
  CommonOptions common;
  std::vector<std::string> inputs;
  std::string output = "th4.csv";
  bool keep_going = false;
  std::size_t jobs = 1;
};

int cmd_batch(const BatchOptions& o, std::ostream& out, std::ostream& err) {
  const auto files = expand_inputs(o.inputs);
  if (files.empty()) {
    err << "error: no input files matched\n";
    return kUsageError;
  }

  auto compute = [&o](const fs::path& file) {
    return full_report(build_table(load(file, o.common)));
  };

  // Reports may be computed concurrently; rows are appended strictly in order.
  const std::size_t jobs = std::max<std::size_t>(1, o.jobs);
  int status = kOk;
  std::size_t written = 0;
  for (std::size_t start = 0; start < files.size(); start += jobs) {
    const std::size_t stop = std::min(files.size(), start + jobs);
    std::vector<std::future<EntropyReport>> pending;
    for (std::size_t i = start; i < stop; ++i)
      pending.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred, compute, files[i]));

    for (std::size_t i = start; i < stop; ++i) {
      const fs::path& file = files[i];
      const int rc = guarded(err, [&] {
        const RunRow row{file.filename().string(), pending[i - start].get()};
        append_row(o.output, row, o.common.csv_precision());
        ++written;
        out << row.label << "\t" << row.report.n_cases << " cases\tarity " << row.report.arity << "\n";
        return kOk;
      });
      if (rc != kOk) {
        if (!o.keep_going) {
          err << "batch aborted at " << file.string() << " after " << written << " row(s)\n";
          return rc;
        }
        err << "warning: skipped " << file.string() << "\n";
        status = rc;
      }
    }
  }
  out << written << " row(s) appended to " << o.output << "\n";
  return o.keep_going && written > 0 ? kOk : status;
}

// decompose ------------------------------------------------------------------

struct DecomposeOptions {
  CommonOptions common;
  std::string input = "data.txt";
  std::string group_by;
  std::vector<std::string> group_files;
  std::string subset;
  std::string output;
};

int cmd_decompose(const DecomposeOptions& o, std::ostream& out) {
  const DimSet subset = DimSet::parse(o.subset);
  DecompositionResult result;
  if (!o.group_files.empty()) {
    if (!o.group_by.empty()) throw UsageError("--group-by and --group-files are exclusive");
    std::vector<std::pair<std::string, Dataset>> groups;
    for (const auto& file : expand_inputs(o.group_files))
      groups.emplace_back(file.filename().string(), load(file, o.common));
    if (groups.empty()) throw UsageError("no group files matched");
    result = decompose_external(groups, subset);
  } else {
    if (o.group_by.size() != 1) throw UsageError("--group-by takes one of w, x, y, z");
    result = decompose_by_dimension(load(o.input, o.common), dim_index(o.group_by.front()), subset);
  }

  if (!o.output.empty()) write_text_file(o.output, decomposition_csv(result, o.common.csv_precision()));

  const int p = o.common.precision;
  out << "Decomposition of T(" << subset.name() << ") over " << result.groups.size() << " group(s), "
      << result.n_cases << " cases\n";
  out << "group\tn\tweight\tT\tcontribution\t-contribution\n";
  for (const auto& g : result.groups)
    out << g.group_label << "\t" << g.n_cases << "\t" << format_fixed(g.weight, p) << "\t"
        << format_fixed(g.transmission, p) << "\t" << format_fixed(g.contribution, p) << "\t"
        << format_fixed(g.synergy(), p) << "\n";
  out << "t_pooled\t" << format_fixed(result.t_pooled, p) << "\n";
  out << "t_between\t" << format_fixed(result.t_between, p) << "\n";
  return kOk;
}

// ipf ------------------------------------------------------------------------

struct IpfCliOptions {
  CommonOptions common;
  std::string input = "data.txt";
  std::string subset = "wxy";
  IpfOptions fit;
  std::string json_path;
};

int cmd_ipf(const IpfCliOptions& o, std::ostream& out, std::ostream& err) {
  const DimSet subset = DimSet::parse(o.subset);
  if (subset.size() != 3) throw UsageError("--subset must name exactly three dimensions");
  const ContingencyTable full = build_table(load(o.input, o.common));
  validate_subset(full.arity(), subset);
  const ContingencyTable table = project(full, subset);
  const IpfResult fit = ipf_fit(table, o.fit);

  const int p = o.common.precision;
  char margin[32];
  std::snprintf(margin, sizeof margin, "%.3e", fit.max_margin_error);
  out << "Interaction information over " << subset.name() << " (maximum-entropy fit to two-way margins)\n";
  out << "iterations\t" << fit.iterations << "\n";
  out << "max_margin_error\t" << margin << "\n";
  out << "converged\t" << (fit.converged ? "yes" : "no") << "\n";
  if (!fit.converged) {
    err << "error: IPF did not converge within " << fit.iterations << " iterations; max margin error "
        << margin << " exceeds tolerance " << o.fit.tolerance << "\n";
    return kNotConverged;
  }

  const InteractionSummary s = summarize_interaction(table, fit);
  out << "interaction_bits\t" << format_fixed(s.interaction_bits, p) << "\n";
  out << "transmission_bits\t" << format_fixed(s.transmission_bits, p) << "\n";
  out << "redundancy_bits\t" << format_fixed(s.redundancy_bits, p) << "\t(experimental)\n";

  if (!o.json_path.empty()) {
    ordered_json j;
    j["subset"] = subset.name();
    j["n_cases"] = table.total();
    j["interaction_bits"] = s.interaction_bits;
    j["transmission_bits"] = s.transmission_bits;
    j["redundancy_bits"] = s.redundancy_bits;
    j["redundancy_experimental"] = true;
    j["iterations"] = fit.iterations;
    j["max_margin_error"] = fit.max_margin_error;
    j["converged"] = fit.converged;
    j["tolerance"] = o.fit.tolerance;
    write_text_file(o.json_path, j.dump(2) + "\n");
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entropies and multivariate transmissions (Triple/Quadruple-Helix indicator) for nominal case data",
               "th4"};
  app.require_subcommand(1);

  ReportOptions report;
  auto* report_cmd = app.add_subcommand("report", "Compute all entropies and transmissions for one file and append a row");
  report_cmd->add_option("--input", report.input, "Case file (default data.txt)");
  report_cmd->add_option("--output", report.output, "CSV file to append to (default th4.csv)");
  report_cmd->add_option("--label", report.label, "Row label (default: input file name)");
  report_cmd->add_flag("--json", report.json, "Print the full-precision report as JSON");
  add_common(report_cmd, report.common);

  BatchOptions batch;
  auto* batch_cmd = app.add_subcommand("batch", "Append one row per input file, in file-name order");
  batch_cmd->add_option("inputs", batch.inputs, "Files, directories, or glob patterns")->required();
  batch_cmd->add_option("--output", batch.output, "CSV file to append to (default th4.csv)");
  batch_cmd->add_flag("--keep-going", batch.keep_going, "Warn and continue when a file fails");
  batch_cmd->add_option("--jobs", batch.jobs, "Files processed concurrently")->check(CLI::PositiveNumber);
  add_common(batch_cmd, batch.common);

  DecomposeOptions decomp;
  auto* decomp_cmd = app.add_subcommand("decompose", "Split a transmission into per-group contributions");
  decomp_cmd->add_option("--input", decomp.input, "Case file (default data.txt)");
  decomp_cmd->add_option("--group-by", decomp.group_by, "Dimension whose labels define the groups (w|x|y|z)");
  decomp_cmd->add_option("--group-files", decomp.group_files, "One case file per group instead of --group-by");
  decomp_cmd->add_option("--subset", decomp.subset, "Dimensions of the transmission, e.g. wxz")->required();
  decomp_cmd->add_option("--output", decomp.output, "Write the decomposition table as CSV");
  add_common(decomp_cmd, decomp.common);

  IpfCliOptions ipf;
  auto* ipf_cmd = app.add_subcommand("ipf", "Three-way interaction information via iterative proportional fitting");
  ipf_cmd->add_option("--input", ipf.input, "Case file (default data.txt)");
  ipf_cmd->add_option("--subset", ipf.subset, "Three dimensions (default wxy)");
  ipf_cmd->add_option("--tolerance", ipf.fit.tolerance, "Largest allowed two-way margin error")
      ->check(CLI::PositiveNumber);
  ipf_cmd->add_option("--max-iter", ipf.fit.max_iterations, "Iteration cap")->check(CLI::PositiveNumber);
  ipf_cmd->add_option("--json", ipf.json_path, "Also write the summary as JSON to this path");
  add_common(ipf_cmd, ipf.common);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kOk : kUsageError;
  }

  return guarded(err, [&] {
    if (report_cmd->parsed()) return cmd_report(report, out);
    if (batch_cmd->parsed()) return cmd_batch(batch, out, err);
    if (decomp_cmd->parsed()) return cmd_decompose(decomp, out);
    return cmd_ipf(ipf, out, err);
  });
}

}  // namespace th4::cli
