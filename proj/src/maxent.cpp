#include "th4/maxent.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "th4/error.hpp"
#include "th4/infocalc.hpp"

namespace th4 {
namespace {

constexpr std::size_t kMaxDenseCells = std::size_t{1} << 26;

// The three two-way margins of a dense A x B x C array.
struct Margins {
  std::vector<double> ab, ac, bc;
};

Margins margins_of(const std::vector<double>& p, const std::array<std::size_t, 3>& shape) {
  const auto [na, nb, nc] = shape;
  Margins m{std::vector<double>(na * nb), std::vector<double>(na * nc), std::vector<double>(nb * nc)};
  std::size_t i = 0;
  for (std::size_t a = 0; a < na; ++a)
    for (std::size_t b = 0; b < nb; ++b)
      for (std::size_t c = 0; c < nc; ++c, ++i) {
        m.ab[a * nb + b] += p[i];
        m.ac[a * nc + c] += p[i];
        m.bc[b * nc + c] += p[i];
      }
  return m;
}

double max_abs_diff(const std::vector<double>& x, const std::vector<double>& y) {
  double out = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) out = std::max(out, std::abs(x[i] - y[i]));
  return out;
}

double kl_bits(const std::vector<double>& observed, const std::vector<double>& fitted) {
  double kl = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (observed[i] <= 0.0) continue;
    if (fitted[i] <= 0.0)
      throw std::logic_error("fitted probability vanished on an observed cell");
    kl += observed[i] * std::log2(observed[i] / fitted[i]);
  }
  return kl;
}

double entropy_bits(const std::vector<double>& p) {
  double h = 0.0;
  for (double v : p)
    if (v > 0.0) h -= v * std::log2(v);
  return h;
}

// Observed joint of `table` laid out like `ipf`.
std::vector<double> observed_joint(const ContingencyTable& table, const IpfResult& ipf) {
  if (table.arity() != 3) throw UsageError("interaction measure needs an arity-3 table");
  for (std::size_t d = 0; d < 3; ++d)
    if (table.alphabet(d).labels() != ipf.alphabets[d])
      throw UsageError("IPF result was fitted to a different table");
  std::vector<double> p(ipf.fitted.size(), 0.0);
  const double n = static_cast<double>(table.total());
  for (const auto& [key, count] : table.cells())
    p[ipf.index(key[0], key[1], key[2])] = static_cast<double>(count) / n;
  return p;
}

}  // namespace

double IpfResult::fitted_probability(const std::array<std::string, 3>& labels) const {
  std::array<std::size_t, 3> pos{};
  for (std::size_t d = 0; d < 3; ++d) {
    const auto it = std::find(alphabets[d].begin(), alphabets[d].end(), labels[d]);
    if (it == alphabets[d].end()) return 0.0;
    pos[d] = static_cast<std::size_t>(it - alphabets[d].begin());
  }
  return fitted[index(pos[0], pos[1], pos[2])];
}

IpfResult ipf_fit(const ContingencyTable& table, const IpfOptions& options) {
  if (table.arity() != 3)
    throw UsageError("IPF needs exactly three dimensions, got arity " + std::to_string(table.arity()));
  if (table.empty()) throw EmptyDatasetError("cannot fit an empty table");
  if (!(options.tolerance > 0.0)) throw UsageError("IPF tolerance must be positive");

  IpfResult r;
  for (std::size_t d = 0; d < 3; ++d) {
    r.alphabets[d] = table.alphabet(d).labels();
    r.shape[d] = r.alphabets[d].size();
  }
  const auto [na, nb, nc] = r.shape;
  const std::size_t cells = na * nb * nc;
  if (cells > kMaxDenseCells)
    throw UsageError("alphabet cross-product too large for IPF (" + std::to_string(cells) + " cells)");

  r.observed.assign(cells, 0.0);
  const double n = static_cast<double>(table.total());
  for (const auto& [key, count] : table.cells())
    r.observed[r.index(key[0], key[1], key[2])] = static_cast<double>(count) / n;
  const Margins target = margins_of(r.observed, r.shape);

  // Start uniform over cells whose three two-way margins are all positive;
  // cells under a zero margin are structural zeros.
  r.fitted.assign(cells, 0.0);
  std::size_t support = 0;
  for (std::size_t a = 0; a < na; ++a)
    for (std::size_t b = 0; b < nb; ++b)
      for (std::size_t c = 0; c < nc; ++c)
        if (target.ab[a * nb + b] > 0 && target.ac[a * nc + c] > 0 && target.bc[b * nc + c] > 0) {
          r.fitted[r.index(a, b, c)] = 1.0;
          ++support;
        }
  for (double& v : r.fitted) v /= static_cast<double>(support);

  auto scale = [&](const std::vector<double>& goal, auto margin_index) {
    std::vector<double> current(goal.size(), 0.0);
    for (std::size_t a = 0; a < na; ++a)
      for (std::size_t b = 0; b < nb; ++b)
        for (std::size_t c = 0; c < nc; ++c) current[margin_index(a, b, c)] += r.fitted[r.index(a, b, c)];
    for (std::size_t a = 0; a < na; ++a)
      for (std::size_t b = 0; b < nb; ++b)
        for (std::size_t c = 0; c < nc; ++c) {
          const std::size_t m = margin_index(a, b, c);
          double& v = r.fitted[r.index(a, b, c)];
          v = current[m] > 0.0 ? v * (goal[m] / current[m]) : 0.0;
        }
  };

  while (r.iterations < options.max_iterations) {
    scale(target.ab, [&](std::size_t a, std::size_t b, std::size_t) { return a * nb + b; });
    scale(target.ac, [&](std::size_t a, std::size_t, std::size_t c) { return a * nc + c; });
    scale(target.bc, [&](std::size_t, std::size_t b, std::size_t c) { return b * nc + c; });
    ++r.iterations;

    const Margins now = margins_of(r.fitted, r.shape);
    r.max_margin_error = std::max({max_abs_diff(now.ab, target.ab), max_abs_diff(now.ac, target.ac),
                                   max_abs_diff(now.bc, target.bc)});
    if (r.max_margin_error <= options.tolerance) {
      r.converged = true;
      break;
    }
  }
  r.interaction_bits = kl_bits(r.observed, r.fitted);
  return r;
}

double krippendorff_interaction(const ContingencyTable& table, const IpfResult& ipf) {
  const auto observed = observed_joint(table, ipf);
  if (!ipf.converged)
    throw ConvergenceError("IPF did not converge after " + std::to_string(ipf.iterations) +
                               " iterations (max margin error " + std::to_string(ipf.max_margin_error) + ")",
                           ipf.max_margin_error);
  return kl_bits(observed, ipf.fitted);
}

double interaction_entropy_difference(const ContingencyTable& table, const IpfResult& ipf) {
  return entropy_bits(ipf.fitted) - entropy_bits(observed_joint(table, ipf));
}

InteractionSummary summarize_interaction(const ContingencyTable& table, const IpfResult& ipf) {
  InteractionSummary s;
  s.interaction_bits = krippendorff_interaction(table, ipf);
  s.transmission_bits = transmission(table, DimSet::all(3));
  s.redundancy_bits = s.interaction_bits - s.transmission_bits;
  return s;
}

}  // namespace th4
