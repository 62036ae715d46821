#pragma once

// Text renderings of reports: the fixed-column CSV row appended per run and
// the two-column listing printed to the terminal.

#include <filesystem>
#include <optional>
#include <string>

#include "th4/decompose.hpp"
#include "th4/infocalc.hpp"

namespace th4 {

struct RunRow {
  std::string label;
  EntropyReport report;
};

/// Rounds half away from zero to `precision` decimals; never prints "-0.00".
std::string format_fixed(double value, int precision);
/// Shortest representation that round-trips to the same double.
std::string format_exact(double value);

/// "label,n_cases,arity,H_W,...,H_WXYZ,T_WX,...,T_WXYZ"
std::string csv_header();
/// One LF-terminated line. `precision` of nullopt writes full precision.
std::string csv_row(const RunRow& row, std::optional<int> precision);
std::string csv_quote(const std::string& field);

/// Appends one row, writing the header first if the file is missing or
/// empty. Header and row go out in a single write call.
void append_row(const std::filesystem::path& path, const RunRow& row,
                std::optional<int> precision);

/// "H(W)\t0.81" style listing in report column order.
std::string format_listing(const EntropyReport& report, int precision);

std::string decomposition_csv(const DecompositionResult& result, std::optional<int> precision);

}  // namespace th4
