#include "th4/ingest.hpp"

#include <fstream>
#include <sstream>
#include <utility>

#include "th4/error.hpp"

namespace th4 {
namespace {

constexpr std::string_view kWhitespace = " \t\r\f\v";

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(kWhitespace);
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(kWhitespace);
  return s.substr(first, last - first + 1);
}

std::string unquote(std::string_view field, std::size_t line_number) {
  field = trim(field);
  if (field.empty() || field.front() != '"') return std::string(field);
  const auto close = field.find('"', 1);
  if (close == std::string_view::npos)
    throw FormatError("unmatched opening quote in field '" + std::string(field) + "'",
                      line_number);
  if (close + 1 != field.size())
    throw FormatError("unexpected text after closing quote in field '" + std::string(field) + "'",
                      line_number);
  return std::string(field.substr(1, close - 1));
}

}  // namespace

bool is_valid_utf8(std::string_view text) noexcept {
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    const auto c = static_cast<unsigned char>(text[i]);
    std::size_t len = 0;
    std::uint32_t cp = 0;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xE0) == 0xC0) {
      len = 2;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      len = 3;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      len = 4;
      cp = c & 0x07;
    } else {
      return false;
    }
    if (i + len > n) return false;
    for (std::size_t k = 1; k < len; ++k) {
      const auto cc = static_cast<unsigned char>(text[i + k]);
      if ((cc & 0xC0) != 0x80) return false;
      cp = (cp << 6) | (cc & 0x3F);
    }
    // overlong forms, surrogates, out of range
    if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) || (len == 4 && cp < 0x10000) ||
        (cp >= 0xD800 && cp <= 0xDFFF) || cp > 0x10FFFF)
      return false;
    i += len;
  }
  return true;
}

std::optional<CaseRecord> parse_line(std::string_view text, std::size_t line_number) {
  if (!text.empty() && text.back() == '\r') text.remove_suffix(1);
  if (!is_valid_utf8(text)) throw FormatError("invalid UTF-8", line_number);
  if (trim(text).empty()) return std::nullopt;

  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    fields.push_back(unquote(text.substr(start, comma - start), line_number));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (fields.size() < 4 || fields.size() > 5)
    throw FormatError("expected an identifier and 3 or 4 variables (4 or 5 fields), found " +
                          std::to_string(fields.size()) + " field(s)",
                      line_number);

  CaseRecord record;
  record.id = std::move(fields.front());
  record.labels.assign(std::make_move_iterator(fields.begin() + 1),
                       std::make_move_iterator(fields.end()));
  record.line_number = line_number;
  return record;
}

namespace {

class DatasetBuilder {
 public:
  explicit DatasetBuilder(std::string source_label) { dataset_.source_label = std::move(source_label); }

  void feed(std::string_view line, std::size_t line_number) {
    auto record = parse_line(line, line_number);
    if (!record) return;
    if (dataset_.records.empty()) {
      dataset_.arity = record->labels.size();
    } else if (record->labels.size() != dataset_.arity) {
      throw FormatError("line " + std::to_string(line_number) + " has " +
                        std::to_string(record->labels.size()) + " variables but line " +
                        std::to_string(dataset_.records.front().line_number) + " has " +
                        std::to_string(dataset_.arity));
    }
    dataset_.records.push_back(std::move(*record));
  }

  Dataset finish() && {
    if (dataset_.records.empty())
      throw EmptyDatasetError("no cases found in " +
                              (dataset_.source_label.empty() ? std::string("input")
                                                             : dataset_.source_label));
    return std::move(dataset_);
  }

 private:
  Dataset dataset_;
};

}  // namespace

Dataset parse_dataset(std::istream& in, std::string source_label) {
  DatasetBuilder builder(std::move(source_label));
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) builder.feed(line, ++line_number);
  if (in.bad()) throw IoError("read failure");
  return std::move(builder).finish();
}

Dataset parse_dataset(const std::vector<std::string>& lines, std::string source_label) {
  DatasetBuilder builder(std::move(source_label));
  std::size_t line_number = 0;
  for (const auto& line : lines) builder.feed(line, ++line_number);
  return std::move(builder).finish();
}

Dataset read_dataset(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return parse_dataset(in, path.filename().string());
  } catch (const FormatError& e) {
    throw FormatError(e.detail(), e.line(), path.string());
  }
}

Dataset drop_empty_labels(Dataset dataset) {
  std::erase_if(dataset.records, [](const CaseRecord& r) {
    for (const auto& l : r.labels)
      if (l.empty()) return true;
    return false;
  });
  if (dataset.records.empty())
    throw EmptyDatasetError("every case in " + dataset.source_label + " has an empty label");
  return dataset;
}

std::string format_record(const CaseRecord& record) {
  std::string out = "\"" + record.id + "\"";
  for (const auto& l : record.labels) out += ", \"" + l + "\"";
  return out;
}

}  // namespace th4
