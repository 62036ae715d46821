#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>

#include "th4/dims.hpp"
#include "th4/tables.hpp"

namespace th4 {

/// Shannon entropy in bits of a frequency vector with the given total.
/// Zero counts contribute nothing. The sum is taken over counts in sorted
/// order, so the result does not depend on the order of `counts`.
double entropy_of_counts(std::span<const std::uint64_t> counts, std::uint64_t total);

double entropy(const MarginalTable& marginal);
double entropy(const ContingencyTable& table, DimSet subset);

/// Signed mutual information among the dimensions in `subset` (2..4 of them):
/// the alternating sum of H(U) over every non-empty U within the subset.
double transmission(const ContingencyTable& table, DimSet subset);

/// T(a,b | c) = H(ac) + H(bc) - H(c) - H(abc).
double conditional_transmission(const ContingencyTable& table, std::size_t a, std::size_t b,
                                std::size_t c);

/// All entropies and transmissions on the fixed four-dimensional schema.
/// Values are indexed by DimSet mask; entries involving dimensions beyond the
/// table's arity are zero.
struct EntropyReport {
  std::size_t arity = 0;
  std::uint64_t n_cases = 0;
  std::array<double, 16> h{};
  std::array<double, 16> t{};

  double entropy(DimSet s) const { return h[s.mask()]; }
  double transmission(DimSet s) const { return t[s.mask()]; }
};

EntropyReport full_report(const ContingencyTable& table);

/// Inclusion-exclusion over entropies already computed for every subset.
double transmission_from_entropies(const std::array<double, 16>& h, DimSet subset);

}  // namespace th4
