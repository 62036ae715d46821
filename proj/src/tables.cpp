#include "th4/tables.hpp"

#include <algorithm>
#include <thread>

#include "th4/error.hpp"

namespace th4 {

std::uint32_t Alphabet::intern(std::string_view label) {
  auto [it, inserted] = index_.try_emplace(std::string(label), static_cast<std::uint32_t>(labels_.size()));
  if (inserted) labels_.push_back(it->first);
  return it->second;
}

std::uint32_t Alphabet::find(std::string_view label) const {
  const auto it = index_.find(std::string(label));
  return it == index_.end() ? static_cast<std::uint32_t>(labels_.size()) : it->second;
}

std::size_t CellKeyHash::operator()(const CellKey& key) const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL;
  for (auto code : key) {
    h ^= code + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h = (h ^ (h >> 31)) * 0xbf58476d1ce4e5b9ULL;
  }
  return static_cast<std::size_t>(h ^ (h >> 29));
}

ContingencyTable::ContingencyTable(std::size_t arity) : arity_(arity) {
  if (arity < 1 || arity > kMaxDims)
    throw UsageError("table arity must be 1..4, got " + std::to_string(arity));
}

void ContingencyTable::add(std::span<const std::string> labels, std::uint64_t count) {
  if (labels.size() != arity_)
    throw UsageError("expected " + std::to_string(arity_) + " labels, got " +
                     std::to_string(labels.size()));
  if (count == 0) return;
  CellKey key{};
  for (std::size_t d = 0; d < arity_; ++d) key[d] = alphabets_[d].intern(labels[d]);
  add_code(key, count);
}

void ContingencyTable::add_code(const CellKey& key, std::uint64_t count) {
  cells_[key] += count;
  total_ += count;
}

std::uint64_t ContingencyTable::count(std::span<const std::string> labels) const {
  if (labels.size() != arity_) throw UsageError("label tuple does not match table arity");
  CellKey key{};
  for (std::size_t d = 0; d < arity_; ++d) {
    key[d] = alphabets_[d].find(labels[d]);
    if (key[d] == alphabets_[d].size()) return 0;
  }
  const auto it = cells_.find(key);
  return it == cells_.end() ? 0 : it->second;
}

std::vector<std::string> ContingencyTable::labels_of(const CellKey& key) const {
  std::vector<std::string> out;
  out.reserve(arity_);
  for (std::size_t d = 0; d < arity_; ++d) out.push_back(alphabets_[d].label(key[d]));
  return out;
}

bool ContingencyTable::same_counts(const ContingencyTable& other) const {
  if (arity_ != other.arity_ || total_ != other.total_ || cells_.size() != other.cells_.size())
    return false;
  for (std::size_t d = 0; d < arity_; ++d)
    if (alphabets_[d].size() != other.alphabets_[d].size()) return false;
  for (const auto& [key, n] : cells_)
    if (other.count(labels_of(key)) != n) return false;
  return true;
}

std::uint64_t MarginalTable::count(std::span<const std::string> labels) const {
  const auto dims = subset.indices();
  if (labels.size() != dims.size()) throw UsageError("label tuple does not match marginal subset");
  CellKey key{};
  for (std::size_t i = 0; i < dims.size(); ++i) {
    const auto& alpha = alphabets[dims[i]];
    key[dims[i]] = alpha.find(labels[i]);
    if (key[dims[i]] == alpha.size()) return 0;
  }
  const auto it = counts.find(key);
  return it == counts.end() ? 0 : it->second;
}

void validate_subset(std::size_t arity, DimSet subset) {
  if (subset.empty()) throw UsageError("empty dimension subset");
  if (subset.span() > arity)
    throw UsageError("subset " + subset.name() + " exceeds table arity " + std::to_string(arity));
}

ContingencyTable build_table(const Dataset& dataset) {
  if (dataset.empty()) throw EmptyDatasetError("cannot build a table from an empty dataset");
  ContingencyTable table(dataset.arity);
  for (const auto& r : dataset.records) table.add(r.labels);
  return table;
}

ContingencyTable build_table_parallel(const Dataset& dataset, std::size_t shards) {
  if (dataset.empty()) throw EmptyDatasetError("cannot build a table from an empty dataset");
  shards = std::clamp<std::size_t>(shards, 1, dataset.size());
  if (shards == 1) return build_table(dataset);

  std::vector<ContingencyTable> parts(shards, ContingencyTable(dataset.arity));
  const std::size_t n = dataset.size();
  {
    std::vector<std::jthread> workers;
    workers.reserve(shards);
    for (std::size_t s = 0; s < shards; ++s) {
      workers.emplace_back([&, s] {
        const std::size_t lo = n * s / shards, hi = n * (s + 1) / shards;
        for (std::size_t i = lo; i < hi; ++i) parts[s].add(dataset.records[i].labels);
      });
    }
  }
  ContingencyTable out = std::move(parts.front());
  for (std::size_t s = 1; s < shards; ++s) out = merge(out, parts[s]);
  return out;
}

MarginalTable marginal(const ContingencyTable& table, DimSet subset) {
  validate_subset(table.arity(), subset);
  MarginalTable out;
  out.subset = subset;
  out.total = table.total();
  for (std::size_t d = 0; d < table.arity(); ++d)
    if (subset.contains(d)) out.alphabets[d] = table.alphabet(d);

  if (subset == DimSet::all(table.arity())) {
    out.counts = table.cells();
    return out;
  }
  out.counts.reserve(table.cells().size());
  for (const auto& [key, n] : table.cells()) {
    CellKey projected{};
    for (std::size_t d = 0; d < kMaxDims; ++d)
      if (subset.contains(d)) projected[d] = key[d];
    out.counts[projected] += n;
  }
  return out;
}

ContingencyTable project(const ContingencyTable& table, DimSet subset) {
  validate_subset(table.arity(), subset);
  const auto dims = subset.indices();
  ContingencyTable out(dims.size());
  for (std::size_t i = 0; i < dims.size(); ++i) out.alphabets_[i] = table.alphabet(dims[i]);
  for (const auto& [key, n] : table.cells()) {
    CellKey projected{};
    for (std::size_t i = 0; i < dims.size(); ++i) projected[i] = key[dims[i]];
    out.add_code(projected, n);
  }
  return out;
}

ContingencyTable merge(const ContingencyTable& a, const ContingencyTable& b) {
  if (a.arity() != b.arity())
    throw UsageError("cannot merge tables of arity " + std::to_string(a.arity()) + " and " +
                     std::to_string(b.arity()));
  ContingencyTable out = a;
  std::array<std::vector<std::uint32_t>, kMaxDims> remap;
  for (std::size_t d = 0; d < b.arity(); ++d) {
    const auto& labels = b.alphabet(d).labels();
    remap[d].reserve(labels.size());
    for (const auto& l : labels) remap[d].push_back(out.alphabets_[d].intern(l));
  }
  out.cells_.reserve(a.cells().size() + b.cells().size());
  for (const auto& [key, n] : b.cells()) {
    CellKey mapped{};
    for (std::size_t d = 0; d < b.arity(); ++d) mapped[d] = remap[d][key[d]];
    out.add_code(mapped, n);
  }
  return out;
}

}  // namespace th4
