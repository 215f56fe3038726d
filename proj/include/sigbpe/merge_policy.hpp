#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "sigbpe/pair_stats.hpp"
#include "sigbpe/symbols.hpp"

namespace sigbpe {

enum class MergeMode { kFrequency, kSignificanceGain };

const char* merge_mode_name(MergeMode mode);
MergeMode merge_mode_from_name(const std::string& name);  // throws ConfigError

// Scoring parameters. Defaults are the main operating configuration:
// gain-weighted significance with alpha 0.25, no rare penalty, c_min 5.
struct MergePolicyConfig {
  MergeMode mode = MergeMode::kSignificanceGain;
  bool use_gain = true;
  double alpha_count = 0.25;
  double lambda_rare = 0.0;
  std::int64_t c_min = 5;
  double epsilon = 1e-9;

  void validate() const;  // throws ConfigError
};

struct ScoredPair {
  SymbolId left = 0;
  SymbolId right = 0;
  std::int64_t count = 0;
  double score = 0.0;
};

// Significance-gain score of one candidate pair:
//   (use_gain ? c_xy : 1) * z(x,y) * c_xy^alpha - lambda_rare / sqrt(c_xy + eps)
// With use_gain=false, alpha=0, lambda_rare=0 this reduces to the raw z.
double score_pair(const PairStatistics& stats, SymbolId x, SymbolId y,
                  const MergePolicyConfig& cfg);

// Picks the best candidate with c_xy >= c_min: highest score (score = c_xy in
// frequency mode), ties broken by larger c_xy, then by lexicographically
// smallest (left string, right string). Returns nullopt when no candidate
// qualifies. Deterministic regardless of map iteration order.
std::optional<ScoredPair> select_merge(const PairStatistics& stats,
                                       const SymbolTable& table,
                                       const MergePolicyConfig& cfg);

}  // namespace sigbpe
