#pragma once

// Splits a pooled transmission into weighted within-group transmissions plus
// a between-group residual:
//
//   T_pooled = T_between + sum_g (n_g / N) * T_g

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "th4/dims.hpp"
#include "th4/ingest.hpp"
#include "th4/tables.hpp"

namespace th4 {

struct GroupContribution {
  std::string group_label;
  std::uint64_t n_cases = 0;
  double weight = 0.0;
  double transmission = 0.0;
  double contribution = 0.0;  // weight * transmission

  /// Display sign for synergy maps: positive when the group reduces uncertainty.
  double synergy() const noexcept { return -contribution; }
};

struct DecompositionResult {
  DimSet subset;
  std::uint64_t n_cases = 0;
  std::vector<GroupContribution> groups;  // sorted by group_label
  double t_pooled = 0.0;
  double t_between = 0.0;

  double within_total() const noexcept;
};

inline constexpr double kReconstructionTolerance = 1e-12;

DecompositionResult decompose_by_dimension(const ContingencyTable& table, std::size_t group_dim,
                                           DimSet subset);
DecompositionResult decompose_by_dimension(const Dataset& dataset, std::size_t group_dim,
                                           DimSet subset);

/// Each entry is one group; the pooled table is the merge of all groups.
/// Group labels must be distinct.
DecompositionResult decompose_external(const std::vector<std::pair<std::string, Dataset>>& groups,
                                       DimSet subset);
DecompositionResult decompose_tables(
    const std::vector<std::pair<std::string, ContingencyTable>>& groups, DimSet subset);

}  // namespace th4
