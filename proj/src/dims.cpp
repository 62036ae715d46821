#include "th4/dims.hpp"

#include <algorithm>
#include <cctype>

namespace th4 {

DimSet DimSet::parse(std::string_view names) {
  DimSet out;
  for (char ch : names) {
    if (ch == ',' || std::isspace(static_cast<unsigned char>(ch))) continue;
    const std::size_t d = dim_index(ch);
    if (out.contains(d)) throw UsageError(std::string("dimension listed twice: ") + ch);
    out = out | DimSet(static_cast<std::uint8_t>(1u << d));
  }
  if (out.empty()) throw UsageError("no dimensions given");
  return out;
}

std::vector<std::size_t> DimSet::indices() const {
  std::vector<std::size_t> out;
  for (std::size_t d = 0; d < kMaxDims; ++d)
    if (contains(d)) out.push_back(d);
  return out;
}

std::string DimSet::name() const {
  std::string out;
  for (std::size_t d = 0; d < kMaxDims; ++d)
    if (contains(d)) out.push_back(dim_letter(d));
  return out;
}

char dim_letter(std::size_t d) {
  static constexpr char kLetters[] = {'W', 'X', 'Y', 'Z'};
  if (d >= kMaxDims) throw UsageError("dimension index out of range: " + std::to_string(d));
  return kLetters[d];
}

std::size_t dim_index(char letter) {
  switch (std::tolower(static_cast<unsigned char>(letter))) {
    case 'w': return 0;
    case 'x': return 1;
    case 'y': return 2;
    case 'z': return 3;
  }
  throw UsageError(std::string("unknown dimension '") + letter + "' (expected w, x, y or z)");
}

const std::vector<DimSet>& report_order() {
  static const std::vector<DimSet> order = [] {
    std::vector<DimSet> out;
    for (std::size_t size = 1; size <= kMaxDims; ++size) {
      std::vector<DimSet> level;
      for (unsigned mask = 1; mask < 16; ++mask) {
        DimSet s(static_cast<std::uint8_t>(mask));
        if (s.size() == size) level.push_back(s);
      }
      std::sort(level.begin(), level.end(),
                [](DimSet a, DimSet b) { return a.name() < b.name(); });
      out.insert(out.end(), level.begin(), level.end());
    }
    return out;
  }();
  return order;
}

}  // namespace th4
