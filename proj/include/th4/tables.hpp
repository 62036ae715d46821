#pragma once

// Sparse contingency tables over nominal labels.
//
// Labels are interned per dimension into dense codes (first-observation
// order); a cell is the tuple of codes. Only populated cells are stored, so
// NACE x region x size style cross-products cost memory proportional to the
// number of distinct observed tuples.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "th4/dims.hpp"
#include "th4/ingest.hpp"

namespace th4 {

/// Ordered set of labels seen in one dimension.
class Alphabet {
 public:
  /// Returns the code for `label`, adding it if new.
  std::uint32_t intern(std::string_view label);
  /// Returns size() when the label is absent.
  std::uint32_t find(std::string_view label) const;

  const std::string& label(std::uint32_t code) const { return labels_.at(code); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::size_t size() const noexcept { return labels_.size(); }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, std::uint32_t> index_;
};

using CellKey = std::array<std::uint32_t, kMaxDims>;

struct CellKeyHash {
  std::size_t operator()(const CellKey& key) const noexcept;
};

using CellCounts = std::unordered_map<CellKey, std::uint64_t, CellKeyHash>;

/// Joint frequency table. Arity is 1..4; datasets produce 3 or 4, projections
/// may produce fewer. Unused trailing key slots are always zero.
class ContingencyTable {
 public:
  explicit ContingencyTable(std::size_t arity);

  /// Adds `count` cases with the given labels (one per dimension).
  void add(std::span<const std::string> labels, std::uint64_t count = 1);

  std::size_t arity() const noexcept { return arity_; }
  std::uint64_t total() const noexcept { return total_; }
  bool empty() const noexcept { return total_ == 0; }
  const Alphabet& alphabet(std::size_t dim) const { return alphabets_.at(dim); }
  const CellCounts& cells() const noexcept { return cells_; }

  /// Count for a label tuple; 0 when any label or the cell is absent.
  std::uint64_t count(std::span<const std::string> labels) const;
  std::vector<std::string> labels_of(const CellKey& key) const;

  /// True when both tables hold the same labelled counts, regardless of the
  /// order in which labels were first observed.
  bool same_counts(const ContingencyTable& other) const;

 private:
  friend ContingencyTable merge(const ContingencyTable& a, const ContingencyTable& b);
  friend ContingencyTable project(const ContingencyTable& table, DimSet subset);

  void add_code(const CellKey& key, std::uint64_t count);

  std::size_t arity_;
  std::uint64_t total_ = 0;
  std::array<Alphabet, kMaxDims> alphabets_;
  CellCounts cells_;
};

/// Counts of a table projected onto a subset of its dimensions. Keys keep the
/// parent's dimension positions; positions outside the subset are zero.
struct MarginalTable {
  DimSet subset;
  CellCounts counts;
  std::uint64_t total = 0;
  std::array<Alphabet, kMaxDims> alphabets;  // populated for dimensions in subset

  /// Count for labels given in ascending dimension order of `subset`.
  std::uint64_t count(std::span<const std::string> labels) const;
};

ContingencyTable build_table(const Dataset& dataset);

/// Builds per-shard tables on `shards` threads and merges them in shard
/// order. Counts equal build_table(dataset).
ContingencyTable build_table_parallel(const Dataset& dataset, std::size_t shards);

/// Throws UsageError for an empty subset or an index >= arity.
MarginalTable marginal(const ContingencyTable& table, DimSet subset);

/// Collapses the table onto `subset`, renumbering the kept dimensions
/// 0..|subset|-1 in ascending order.
ContingencyTable project(const ContingencyTable& table, DimSet subset);

/// Cellwise sum; alphabets are unioned with `a`'s labels first.
/// Throws UsageError on arity mismatch.
ContingencyTable merge(const ContingencyTable& a, const ContingencyTable& b);

void validate_subset(std::size_t arity, DimSet subset);

}  // namespace th4
