#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "sigbpe/pair_stats.hpp"
#include "sigbpe/symbols.hpp"

namespace sigbpe {

// Incremental merge machinery shared by train_incremental() and encode().
//
// The sequence lives in a doubly-linked node array; pair counts and marginals
// are kept current by editing only the neighborhood of each replacement site,
// so one merge costs O(occurrences), not O(sequence length). A per-pair list
// of candidate left-node positions drives replacement; entries can go stale
// when a neighboring merge rewrites a node and are revalidated against the
// live sequence before use.
class MergeEngine {
 public:
  explicit MergeEngine(const SymbolSequence& seq);

  // Replaces every adjacent (left, right) with merged, leftmost-first and
  // non-overlapping, identically to apply_merge(). Returns the number of
  // replacements performed.
  std::int64_t merge_all(SymbolId left, SymbolId right, SymbolId merged);

  // Current counts; equal to count(sequence()) at all times.
  const PairStatistics& stats() const { return stats_; }

  std::uint64_t sequence_vocab() const { return stats_.marginals.size(); }
  std::uint64_t length() const {
    return static_cast<std::uint64_t>(stats_.token_count);
  }

  SymbolSequence sequence() const;

 private:
  void add_pair(std::int32_t left_node, SymbolId l, SymbolId r);
  void remove_pair_count(SymbolId l, SymbolId r);
  void add_marginal(SymbolId s);
  void remove_marginal(SymbolId s);

  std::vector<SymbolId> sym_;
  std::vector<std::int32_t> prev_;
  std::vector<std::int32_t> next_;
  std::vector<char> alive_;
  std::int32_t head_ = -1;
  PairStatistics stats_;
  // pair key -> left-node positions where the pair has occurred (may contain
  // stale entries; validated on use)
  std::unordered_map<std::uint64_t, std::vector<std::int32_t>> positions_;
};

}  // namespace sigbpe
