#include "sigbpe/pair_stats.hpp"

#include <cmath>

#include "sigbpe/errors.hpp"

namespace sigbpe {

PairStatistics count(const SymbolSequence& seq) {
  PairStatistics stats;
  stats.token_count = static_cast<std::int64_t>(seq.size());
  stats.n_positions = std::max<std::int64_t>(stats.token_count - 1, 1);
  stats.marginals.reserve(256);
  for (std::size_t i = 0; i < seq.size(); ++i) {
    ++stats.marginals[seq[i]];
    if (i + 1 < seq.size()) ++stats.pairs[pack_pair(seq[i], seq[i + 1])];
  }
  return stats;
}

namespace {

std::int64_t marginal_or_throw(const PairStatistics& stats, SymbolId x) {
  auto it = stats.marginals.find(x);
  if (it == stats.marginals.end()) {
    throw Error("symbol " + std::to_string(x) + " has no marginal count");
  }
  return it->second;
}

}  // namespace

double expected_count(const PairStatistics& stats, SymbolId x, SymbolId y) {
  const double cx = static_cast<double>(marginal_or_throw(stats, x));
  const double cy = static_cast<double>(marginal_or_throw(stats, y));
  return cx * cy / static_cast<double>(stats.n_positions);
}

double z_score(const PairStatistics& stats, SymbolId x, SymbolId y,
               double epsilon) {
  const double expected = expected_count(stats, x, y);
  const double observed = static_cast<double>(stats.pair_count(x, y));
  return (observed - expected) / std::sqrt(expected + epsilon);
}

double pmi_check(const PairStatistics& stats, SymbolId x, SymbolId y) {
  const std::int64_t cxy = stats.pair_count(x, y);
  const std::int64_t cx = marginal_or_throw(stats, x);
  const std::int64_t cy = marginal_or_throw(stats, y);
  if (cxy <= 0 || cx <= 0 || cy <= 0) {
    throw Error("pmi_check requires positive counts");
  }
  const double expected = expected_count(stats, x, y);
  const double pmi = std::log(static_cast<double>(cxy) *
                              static_cast<double>(stats.n_positions) /
                              (static_cast<double>(cx) * static_cast<double>(cy)));
  return std::sqrt(expected) * (std::exp(pmi) - 1.0);
}

}  // namespace sigbpe
