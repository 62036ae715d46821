#pragma once

// Maximum-entropy joint distribution over three nominal dimensions subject to
// the three observed two-way margins, fitted by iterative proportional
// fitting (IPF). The divergence of the observed joint from that fit is the
// information contributed by the three-way interaction alone.

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "th4/tables.hpp"

namespace th4 {

struct IpfOptions {
  double tolerance = 1e-10;  // on the largest two-way margin deviation (probability scale)
  std::size_t max_iterations = 1000;
};

struct IpfResult {
  std::array<std::size_t, 3> shape{};
  std::array<std::vector<std::string>, 3> alphabets;
  std::vector<double> fitted;    // row-major over shape
  std::vector<double> observed;  // same layout
  std::size_t iterations = 0;
  double max_margin_error = 0.0;
  bool converged = false;
  double interaction_bits = 0.0;

  std::size_t index(std::size_t a, std::size_t b, std::size_t c) const {
    return (a * shape[1] + b) * shape[2] + c;
  }
  /// Fitted probability of a label triple; 0 for labels never observed.
  double fitted_probability(const std::array<std::string, 3>& labels) const;
};

/// Requires an arity-3 table (use project() first) and tolerance > 0.
/// A run that exhausts max_iterations returns with converged == false.
IpfResult ipf_fit(const ContingencyTable& table, const IpfOptions& options = {});

/// KL divergence (bits) of the observed joint from the fitted joint.
/// Throws ConvergenceError when `ipf` did not converge, UsageError when it was
/// fitted to a differently shaped table.
double krippendorff_interaction(const ContingencyTable& table, const IpfResult& ipf);

/// Same quantity as H(fitted) - H(observed); equal to the KL form when the
/// fit matches every two-way margin.
double interaction_entropy_difference(const ContingencyTable& table, const IpfResult& ipf);

struct InteractionSummary {
  double interaction_bits = 0.0;
  double transmission_bits = 0.0;  // T over the same three dimensions
  // Experimental: interaction_bits - transmission_bits, read as the redundancy
  // generated beyond the interaction's own information.
  double redundancy_bits = 0.0;
};

InteractionSummary summarize_interaction(const ContingencyTable& table, const IpfResult& ipf);

}  // namespace th4
