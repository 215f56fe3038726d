#include "sigbpe/merge_policy.hpp"

#include <cmath>

#include "sigbpe/errors.hpp"

namespace sigbpe {

const char* merge_mode_name(MergeMode mode) {
  return mode == MergeMode::kFrequency ? "frequency" : "significance_gain";
}

MergeMode merge_mode_from_name(const std::string& name) {
  if (name == "frequency" || name == "freq") return MergeMode::kFrequency;
  if (name == "significance_gain" || name == "siggain") {
    return MergeMode::kSignificanceGain;
  }
  throw ConfigError("unknown merge mode: " + name);
}

void MergePolicyConfig::validate() const {
  if (alpha_count < 0.0 || alpha_count > 1.0) {
    throw ConfigError("alpha_count must be in [0,1]");
  }
  if (lambda_rare < 0.0) throw ConfigError("lambda_rare must be >= 0");
  if (c_min < 1) throw ConfigError("c_min must be >= 1");
  if (!(epsilon > 0.0)) throw ConfigError("epsilon must be > 0");
}

double score_pair(const PairStatistics& stats, SymbolId x, SymbolId y,
                  const MergePolicyConfig& cfg) {
  const double cxy = static_cast<double>(stats.pair_count(x, y));
  const double z = z_score(stats, x, y, cfg.epsilon);
  const double gain = cfg.use_gain ? cxy : 1.0;
  return gain * z * std::pow(cxy, cfg.alpha_count) -
         cfg.lambda_rare / std::sqrt(cxy + cfg.epsilon);
}

std::optional<ScoredPair> select_merge(const PairStatistics& stats,
                                       const SymbolTable& table,
                                       const MergePolicyConfig& cfg) {
  cfg.validate();
  std::optional<ScoredPair> best;
  for (const auto& [key, cnt] : stats.pairs) {
    if (cnt < cfg.c_min) continue;
    const SymbolId left = pair_left(key);
    const SymbolId right = pair_right(key);
    const double score = cfg.mode == MergeMode::kFrequency
                             ? static_cast<double>(cnt)
                             : score_pair(stats, left, right, cfg);
    if (!best) {
      best = ScoredPair{left, right, cnt, score};
      continue;
    }
    // Strict total order: score, then count, then pair strings.
    if (score > best->score) {
      best = ScoredPair{left, right, cnt, score};
    } else if (score == best->score) {
      if (cnt > best->count) {
        best = ScoredPair{left, right, cnt, score};
      } else if (cnt == best->count) {
        const std::string& ls = table.str(left);
        const std::string& bl = table.str(best->left);
        if (ls < bl || (ls == bl && table.str(right) < table.str(best->right))) {
          best = ScoredPair{left, right, cnt, score};
        }
      }
    }
  }
  return best;
}

}  // namespace sigbpe
