#include "th4/decompose.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "th4/error.hpp"
#include "th4/infocalc.hpp"

namespace th4 {
namespace {

void check_subset(std::size_t arity, DimSet subset) {
  validate_subset(arity, subset);
  if (subset.size() < 2)
    throw UsageError("decomposition needs at least two dimensions in the subset, got " + subset.name());
}

DecompositionResult assemble(std::vector<std::pair<std::string, const ContingencyTable*>> groups,
                             double t_pooled, std::uint64_t n_total, DimSet subset) {
  std::sort(groups.begin(), groups.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  DecompositionResult out;
  out.subset = subset;
  out.n_cases = n_total;
  out.t_pooled = t_pooled;
  const double n = static_cast<double>(n_total);
  for (const auto& [label, table] : groups) {
    GroupContribution g;
    g.group_label = label;
    g.n_cases = table->total();
    g.weight = static_cast<double>(g.n_cases) / n;
    g.transmission = transmission(*table, subset);
    g.contribution = g.weight * g.transmission;
    out.groups.push_back(std::move(g));
  }
  out.t_between = out.t_pooled - out.within_total();

  if (std::abs(out.t_pooled - (out.t_between + out.within_total())) > kReconstructionTolerance)
    throw std::logic_error("decomposition does not reconstruct the pooled transmission");
  return out;
}

}  // namespace

double DecompositionResult::within_total() const noexcept {
  double sum = 0.0;
  for (const auto& g : groups) sum += g.contribution;
  return sum;
}

DecompositionResult decompose_by_dimension(const ContingencyTable& table, std::size_t group_dim,
                                           DimSet subset) {
  check_subset(table.arity(), subset);
  if (group_dim >= table.arity())
    throw UsageError("group dimension out of range for arity " + std::to_string(table.arity()));
  if (subset.contains(group_dim))
    throw UsageError(std::string("group dimension ") + dim_letter(group_dim) + " is part of subset " +
                     subset.name());

  // Partition cells by their label on group_dim.
  std::map<std::uint32_t, ContingencyTable> parts;
  std::vector<std::string> labels;
  for (const auto& [key, n] : table.cells()) {
    auto it = parts.try_emplace(key[group_dim], table.arity()).first;
    labels = table.labels_of(key);
    it->second.add(labels, n);
  }
  std::vector<std::pair<std::string, const ContingencyTable*>> groups;
  for (const auto& [code, part] : parts)
    groups.emplace_back(table.alphabet(group_dim).label(code), &part);
  return assemble(std::move(groups), transmission(table, subset), table.total(), subset);
}

DecompositionResult decompose_by_dimension(const Dataset& dataset, std::size_t group_dim,
                                           DimSet subset) {
  return decompose_by_dimension(build_table(dataset), group_dim, subset);
}

DecompositionResult decompose_tables(
    const std::vector<std::pair<std::string, ContingencyTable>>& groups, DimSet subset) {
  if (groups.empty()) throw UsageError("decomposition needs at least one group");
  const std::size_t arity = groups.front().second.arity();
  check_subset(arity, subset);

  std::vector<std::string> seen;
  ContingencyTable pooled(arity);
  std::vector<std::pair<std::string, const ContingencyTable*>> refs;
  for (const auto& [label, table] : groups) {
    if (table.arity() != arity)
      throw UsageError("group '" + label + "' has arity " + std::to_string(table.arity()) +
                       ", expected " + std::to_string(arity));
    if (table.empty()) throw UsageError("group '" + label + "' is empty");
    if (std::find(seen.begin(), seen.end(), label) != seen.end())
      throw UsageError("duplicate group label '" + label + "'");
    seen.push_back(label);
    pooled = merge(pooled, table);
    refs.emplace_back(label, &table);
  }
  return assemble(std::move(refs), transmission(pooled, subset), pooled.total(), subset);
}

DecompositionResult decompose_external(const std::vector<std::pair<std::string, Dataset>>& groups,
                                       DimSet subset) {
  std::vector<std::pair<std::string, ContingencyTable>> tables;
  tables.reserve(groups.size());
  for (const auto& [label, dataset] : groups) {
    if (dataset.empty()) throw UsageError("group '" + label + "' is empty");
    tables.emplace_back(label, build_table(dataset));
  }
  return decompose_tables(tables, subset);
}

}  // namespace th4
