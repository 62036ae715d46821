#include "th4/output.hpp"

#include <fcntl.h>
#include <sys/stat.h>
#include <unistd.h>

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>

#include "th4/dims.hpp"
#include "th4/error.hpp"

namespace th4 {
namespace {

std::string column_name(char prefix, DimSet s) { return std::string(1, prefix) + "_" + s.name(); }

std::string format_value(double v, std::optional<int> precision) {
  return precision ? format_fixed(v, *precision) : format_exact(v);
}

}  // namespace

std::string format_fixed(double value, int precision) {
  if (precision < 0 || precision > 15) throw UsageError("precision must be 0..15");
  const double scale = std::pow(10.0, precision);
  double rounded = std::round(value * scale) / scale;  // half away from zero
  if (rounded == 0.0) rounded = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, rounded);
  return buf;
}

std::string format_exact(double value) {
  if (value == 0.0) value = 0.0;
  char buf[32];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, end);
}

std::string csv_quote(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_header() {
  std::string out = "label,n_cases,arity";
  for (DimSet s : report_order()) out += "," + column_name('H', s);
  for (DimSet s : report_order())
    if (s.size() >= 2) out += "," + column_name('T', s);
  return out;
}

std::string csv_row(const RunRow& row, std::optional<int> precision) {
  const auto& r = row.report;
  std::string out = csv_quote(row.label) + "," + std::to_string(r.n_cases) + "," + std::to_string(r.arity);
  for (DimSet s : report_order()) out += "," + format_value(r.entropy(s), precision);
  for (DimSet s : report_order())
    if (s.size() >= 2) out += "," + format_value(r.transmission(s), precision);
  return out + "\n";
}

void append_row(const std::filesystem::path& path, const RunRow& row, std::optional<int> precision) {
  const int fd = ::open(path.c_str(), O_WRONLY | O_CREAT | O_APPEND, 0644);
  if (fd < 0) throw IoError("cannot open " + path.string() + " for appending: " + std::strerror(errno));

  std::string payload;
  struct stat st {};
  if (::fstat(fd, &st) == 0 && st.st_size == 0) payload = csv_header() + "\n";
  payload += csv_row(row, precision);

  const char* p = payload.data();
  std::size_t left = payload.size();
  while (left > 0) {
    const ssize_t n = ::write(fd, p, left);
    if (n < 0) {
      if (errno == EINTR) continue;
      const std::string msg = std::strerror(errno);
      ::close(fd);
      throw IoError("write to " + path.string() + " failed: " + msg);
    }
    p += n;
    left -= static_cast<std::size_t>(n);
  }
  if (::close(fd) != 0) throw IoError("close of " + path.string() + " failed");
}

std::string format_listing(const EntropyReport& report, int precision) {
  std::string out = "Entropy and Transmission values in bits of information\n";
  for (DimSet s : report_order())
    out += "H(" + s.name() + ")\t" + format_fixed(report.entropy(s), precision) + "\n";
  for (DimSet s : report_order())
    if (s.size() >= 2) out += "T(" + s.name() + ")\t" + format_fixed(report.transmission(s), precision) + "\n";
  return out;
}

std::string decomposition_csv(const DecompositionResult& result, std::optional<int> precision) {
  std::string out = "group,n_cases,weight,T_" + result.subset.name() + ",contribution,synergy\n";
  for (const auto& g : result.groups) {
    out += csv_quote(g.group_label) + "," + std::to_string(g.n_cases) + "," +
           format_value(g.weight, precision) + "," + format_value(g.transmission, precision) + "," +
           format_value(g.contribution, precision) + "," + format_value(g.synergy(), precision) + "\n";
  }
  out += "t_pooled," + std::to_string(result.n_cases) + ",1," + format_value(result.t_pooled, precision) +
         ",,\n";
  out += "t_between,,,," + format_value(result.t_between, precision) + "," +
         format_value(-result.t_between, precision) + "\n";
  return out;
}

}  // namespace th4
