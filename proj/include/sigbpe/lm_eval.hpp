#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "sigbpe/codec.hpp"

namespace sigbpe {

// Interpolated add-k n-gram model over token ids. Orders 1..order are mixed
// bottom-up: p_o = lambda * f_o + (1 - lambda) * p_{o-1} with
// lambda = ctx_total / (ctx_total + 1) and f_o the add-k estimate for the
// context, so every conditional distribution is proper. One reserved unknown
// id absorbs tokens unseen at fit time (and OOV sentinels).
//
// Contexts are packed exactly into 64-bit keys (16 bits per id), which bounds
// order to 5 and the internal vocabulary to 65535 types.
class NgramModel {
 public:
  static constexpr int kMaxOrder = 5;

  // Deterministic fit over `train`. Throws ConfigError on empty input,
  // order outside [1, kMaxOrder], k < 0, or too many distinct token types.
  static NgramModel fit(const TokenIds& train, int order, double add_k);

  // Uniform distribution over `vocab_size` outcomes; baseline and test aid.
  static NgramModel uniform(std::uint32_t vocab_size);

  // Mean of -ln p(token | preceding context) over all positions of `tokens`.
  // Throws ConfigError on empty input.
  double nll_per_token(const TokenIds& tokens) const;

  int order() const { return order_; }
  double add_k() const { return add_k_; }
  std::uint32_t vocab_size() const { return vocab_size_; }
  std::uint32_t unk_id() const { return vocab_size_ - 1; }

  // Internal id for an external token id (unknowns map to unk_id).
  std::uint32_t internalize(std::uint32_t external_id) const;

  // p(w | history), both in internal ids; history uses the last order-1
  // entries at most. Exposed for normalization checks.
  double conditional(std::span<const std::uint32_t> history,
                     std::uint32_t w) const;

 private:
  struct ContextCounts {
    std::int64_t total = 0;
    std::unordered_map<std::uint32_t, std::int64_t> next;
  };

  int order_ = 1;
  double add_k_ = 0.01;
  std::uint32_t vocab_size_ = 1;
  std::unordered_map<std::uint32_t, std::uint32_t> remap_;
  std::vector<std::int64_t> unigram_;
  std::int64_t unigram_total_ = 0;
  // contexts_[o - 2] holds order-o contexts (o >= 2), keyed by packed ids
  std::vector<std::unordered_map<std::uint64_t, ContextCounts>> contexts_;
};

}  // namespace sigbpe
