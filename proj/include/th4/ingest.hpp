#pragma once

// Parsing of case-record files: one case per line, an identifier followed by
// three or four nominal variables (w, x, y and optionally z), comma-separated,
// each field optionally wrapped in double quotes.
//
//   "id1", "1", "b", "region1", "2"
//   459695,1901,5,3

#include <cstddef>
#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace th4 {

struct CaseRecord {
  std::string id;
  std::vector<std::string> labels;  // 3 or 4 entries
  std::size_t line_number = 0;

  bool operator==(const CaseRecord&) const = default;
};

struct Dataset {
  std::vector<CaseRecord> records;
  std::size_t arity = 0;
  std::string source_label;

  std::size_t size() const noexcept { return records.size(); }
  bool empty() const noexcept { return records.empty(); }
};

/// Parses one physical line. Returns nullopt for whitespace-only lines.
/// Throws FormatError on a bad field count, an unterminated quote, trailing
/// text after a closing quote, or invalid UTF-8.
std::optional<CaseRecord> parse_line(std::string_view text, std::size_t line_number);

/// Reads every line of `in`. Accepts LF and CRLF terminators.
/// Throws FormatError on mixed arity, EmptyDatasetError if no case remains.
Dataset parse_dataset(std::istream& in, std::string source_label);
Dataset parse_dataset(const std::vector<std::string>& lines, std::string source_label);
Dataset read_dataset(const std::filesystem::path& path);

/// Removes records carrying an empty-string label. Throws EmptyDatasetError
/// when nothing is left.
Dataset drop_empty_labels(Dataset dataset);

/// Formats a record with every field quoted, as in the sample input files.
std::string format_record(const CaseRecord& record);

/// Checks that `text` is well-formed UTF-8.
bool is_valid_utf8(std::string_view text) noexcept;

}  // namespace th4
