#pragma once

#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "th4/ingest.hpp"

namespace th4::test {

inline const std::vector<std::string> kTable1Lines = {
    R"("id1", "1", "b", "region1", "2")",
    R"("id2", "2", "a", "region2", "1")",
    R"("id3", "1", "a", "region2", "2")",
    R"("id4", "1", "b", "region5", "1")",
};

inline const std::vector<std::string> kTable3Lines = {
    "459695,1901,5,3",  "459696,1901,5,5",  "459697,1901,11,1",
    "459698,1901,11,2", "459699,1901,11,2", "459700,1901,11,2",
};

inline Dataset table1() { return parse_dataset(kTable1Lines, "table1"); }
inline Dataset table3() { return parse_dataset(kTable3Lines, "table3"); }

inline Dataset make_dataset(const std::vector<std::vector<std::string>>& rows, std::string label = "synthetic") {
  Dataset d;
  d.source_label = std::move(label);
  d.arity = rows.empty() ? 0 : rows.front().size();
  std::size_t line = 0;
  for (const auto& r : rows) d.records.push_back({"c" + std::to_string(line), r, ++line});
  return d;
}

/// Random dataset: `arity` dimensions, alphabet sizes drawn from
/// [min_alpha, max_alpha], n cases with labels "d<dim>v<k>".
inline Dataset random_dataset(std::mt19937_64& rng, std::size_t arity, std::size_t n,
                              std::size_t min_alpha = 2, std::size_t max_alpha = 4) {
  std::uniform_int_distribution<std::size_t> alpha_dist(min_alpha, max_alpha);
  std::vector<std::size_t> alpha(arity);
  for (auto& a : alpha) a = alpha_dist(rng);
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::string> row;
    for (std::size_t d = 0; d < arity; ++d) {
      std::uniform_int_distribution<std::size_t> pick(0, alpha[d] - 1);
      row.push_back("d" + std::to_string(d) + "v" + std::to_string(pick(rng)));
    }
    rows.push_back(std::move(row));
  }
  return make_dataset(rows);
}

/// Exact product table: every combination of per-dimension labels appears
/// count_0[i] * count_1[j] * ... times.
inline Dataset product_dataset(const std::vector<std::vector<std::size_t>>& per_dim_counts) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> idx(per_dim_counts.size(), 0);
  while (true) {
    std::size_t mult = 1;
    std::vector<std::string> row;
    for (std::size_t d = 0; d < idx.size(); ++d) {
      mult *= per_dim_counts[d][idx[d]];
      row.push_back("p" + std::to_string(d) + "_" + std::to_string(idx[d]));
    }
    for (std::size_t k = 0; k < mult; ++k) rows.push_back(row);
    std::size_t d = 0;
    while (d < idx.size() && ++idx[d] == per_dim_counts[d].size()) idx[d++] = 0;
    if (d == idx.size()) break;
  }
  return make_dataset(rows, "product");
}

/// Counts 1 on the four even-parity cells of a 2x2x2 cube, `copies` each.
inline Dataset parity_dataset(std::size_t copies = 1) {
  std::vector<std::vector<std::string>> rows;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        if ((a + b + c) % 2 == 0)
          for (std::size_t k = 0; k < copies; ++k)
            rows.push_back({std::to_string(a), std::to_string(b), std::to_string(c)});
  return make_dataset(rows, "parity");
}

}  // namespace th4::test
