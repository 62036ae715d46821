#include "th4/infocalc.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "th4/error.hpp"

namespace th4 {

double entropy_of_counts(std::span<const std::uint64_t> counts, std::uint64_t total) {
  if (total == 0) throw UsageError("entropy of an empty distribution");
  std::vector<std::uint64_t> sorted(counts.begin(), counts.end());
  std::sort(sorted.begin(), sorted.end());

  const double n = static_cast<double>(total);
  double h = 0.0;
  // Equal counts are accumulated as one multiplied term.
  for (std::size_t i = 0; i < sorted.size();) {
    const std::uint64_t c = sorted[i];
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == c) ++j;
    if (c != 0) {
      const double p = static_cast<double>(c) / n;
      h -= static_cast<double>(j - i) * (p * std::log2(p));
    }
    i = j;
  }
  return h == 0.0 ? 0.0 : h;  // no negative zero
}

double entropy(const MarginalTable& marginal) {
  std::vector<std::uint64_t> counts;
  counts.reserve(marginal.counts.size());
  for (const auto& [key, n] : marginal.counts) counts.push_back(n);
  return entropy_of_counts(counts, marginal.total);
}

double entropy(const ContingencyTable& table, DimSet subset) {
  return entropy(marginal(table, subset));
}

double transmission_from_entropies(const std::array<double, 16>& h, DimSet subset) {
  double t = 0.0;
  // Non-empty sub-masks of subset, ascending.
  for (unsigned m = 1; m < 16; ++m) {
    const DimSet u(static_cast<std::uint8_t>(m));
    if (!u.subset_of(subset)) continue;
    t += (u.size() % 2 == 1 ? 1.0 : -1.0) * h[m];
  }
  return t;
}

double transmission(const ContingencyTable& table, DimSet subset) {
  validate_subset(table.arity(), subset);
  if (subset.size() < 2)
    throw UsageError("transmission needs at least two dimensions, got " + subset.name());
  std::array<double, 16> h{};
  for (unsigned m = 1; m < 16; ++m) {
    const DimSet u(static_cast<std::uint8_t>(m));
    if (u.subset_of(subset)) h[m] = entropy(table, u);
  }
  return transmission_from_entropies(h, subset);
}

double conditional_transmission(const ContingencyTable& table, std::size_t a, std::size_t b,
                                std::size_t c) {
  if (a == b || a == c || b == c)
    throw UsageError("conditional transmission needs three distinct dimensions");
  const DimSet all{a, b, c};
  validate_subset(table.arity(), all);
  return entropy(table, DimSet{a, c}) + entropy(table, DimSet{b, c}) - entropy(table, DimSet{c}) -
         entropy(table, all);
}

EntropyReport full_report(const ContingencyTable& table) {
  if (table.empty()) throw EmptyDatasetError("cannot report on an empty table");
  EntropyReport report;
  report.arity = table.arity();
  report.n_cases = table.total();
  const DimSet present = DimSet::all(table.arity());
  for (unsigned m = 1; m < 16; ++m) {
    const DimSet s(static_cast<std::uint8_t>(m));
    if (s.subset_of(present)) report.h[m] = entropy(table, s);
  }
  for (unsigned m = 1; m < 16; ++m) {
    const DimSet s(static_cast<std::uint8_t>(m));
    if (s.size() >= 2 && s.subset_of(present)) report.t[m] = transmission_from_entropies(report.h, s);
  }
  return report;
}

}  // namespace th4
