#pragma once

#include <cstdint>
#include <unordered_map>

#include "sigbpe/symbols.hpp"

namespace sigbpe {

// Count snapshot of one symbol sequence: marginal counts c_x, adjacent pair
// counts c_xy, sequence length T and adjacency-position count N = max(T-1,1).
// Immutable once built; safe to share across threads.
struct PairStatistics {
  std::unordered_map<SymbolId, std::int64_t> marginals;
  std::unordered_map<std::uint64_t, std::int64_t> pairs;  // key = pack_pair
  std::int64_t token_count = 0;
  std::int64_t n_positions = 1;

  std::int64_t marginal(SymbolId x) const {
    auto it = marginals.find(x);
    return it == marginals.end() ? 0 : it->second;
  }
  std::int64_t pair_count(SymbolId x, SymbolId y) const {
    auto it = pairs.find(pack_pair(x, y));
    return it == pairs.end() ? 0 : it->second;
  }
};

// Single deterministic scan over the sequence.
PairStatistics count(const SymbolSequence& seq);

// Expected adjacency count under the independence null: c_x * c_y / N.
// Throws Error if x or y is not in the marginals.
double expected_count(const PairStatistics& stats, SymbolId x, SymbolId y);

// Standardized residual (c_xy - E) / sqrt(E + epsilon). Absent pairs count
// as c_xy = 0, which yields a negative z.
double z_score(const PairStatistics& stats, SymbolId x, SymbolId y,
               double epsilon);

// Cross-check oracle for z_score: sqrt(E) * (e^PMI - 1), with
// PMI = ln(c_xy * N / (c_x * c_y)). Agrees with z_score up to the epsilon
// term. Throws Error when any involved count is zero.
double pmi_check(const PairStatistics& stats, SymbolId x, SymbolId y);

}  // namespace sigbpe
