#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "sigbpe/merge_policy.hpp"
#include "sigbpe/symbols.hpp"

namespace sigbpe {

// One learned merge: replace adjacent (left, right) with their concatenation.
struct MergeRule {
  std::string left;
  std::string right;
  std::string merged;
  std::uint32_t rank = 0;
};

struct TrainingMeta {
  std::string corpus_hash;          // FNV-1a 64 of the training text
  std::uint64_t target_vocab = 0;
  std::uint64_t sequence_vocab = 0; // distinct symbols left in the sequence
  std::uint64_t model_vocab = 0;    // base chars + distinct merged symbols
  std::uint64_t merge_count = 0;
};

// The serialized artifact of training: ordered merges over a character base.
struct TokenizerModel {
  std::vector<std::string> base_vocab;  // sorted single-character strings
  std::vector<MergeRule> merges;
  MergePolicyConfig config;
  TrainingMeta meta;

  // base chars + distinct merged symbol strings
  std::uint64_t vocab_size() const;
};

// Per-merge training log record, emitted after the merge is applied.
struct MergeEvent {
  std::uint32_t rank = 0;
  std::string left;
  std::string right;
  std::string merged;
  std::int64_t count = 0;        // c_xy at selection time
  double score = 0.0;            // selection score
  std::uint64_t vocab_size = 0;  // base chars + distinct merged symbols so far
  std::uint64_t sequence_length = 0;
};

using MergeLogger = std::function<void(const MergeEvent&)>;

// Reference trainer: greedy merge loop with a full statistics recount on the
// working sequence every iteration. Stops when the vocabulary (base characters
// plus distinct merged symbols) reaches target_vocab or no candidate reaches
// c_min.
TokenizerModel train(const std::string& text, const MergePolicyConfig& cfg,
                     std::uint32_t target_vocab, const MergeLogger& log = {});

// Fast trainer: maintains pair counts and a pair-position index incrementally,
// touching only the neighborhoods of replacement sites. Produces a model
// bit-identical to train() on every input.
TokenizerModel train_incremental(const std::string& text,
                                 const MergePolicyConfig& cfg,
                                 std::uint32_t target_vocab,
                                 const MergeLogger& log = {});

// One left-to-right pass replacing adjacent (left, right) with merged,
// leftmost occurrences first, non-overlapping.
SymbolSequence apply_merge(const SymbolSequence& seq, SymbolId left,
                           SymbolId right, SymbolId merged);

}  // namespace sigbpe
