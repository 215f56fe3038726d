#pragma once

#include <cstdint>

#include "sigbpe/codec.hpp"

namespace sigbpe {

struct TokenizerMetrics {
  double tpc = 0.0;          // token_count / char_count
  double vocab_used = 0.0;   // distinct in-vocab ids / vocab_size
  std::uint64_t token_count = 0;
  std::uint64_t char_count = 0;
  std::uint64_t oov_count = 0;
};

struct LmMetrics {
  double nll_per_token = 0.0;  // nats
  double ppl = 0.0;            // exp(nll_per_token)
  double nll_per_char = 0.0;   // nll_per_token * tpc
  double bpc = 0.0;            // nll_per_char / ln 2
};

// Tokens per character. Throws ConfigError when char_count is zero.
double tpc(std::uint64_t token_count, std::uint64_t char_count);

// Fraction of the vocabulary that occurs in `tokens`; OOV sentinels are
// excluded from the numerator but still occupy sequence positions.
double vocab_utilization(const TokenIds& tokens, std::uint64_t vocab_size);

TokenizerMetrics tokenizer_metrics(const TokenIds& tokens,
                                   std::uint64_t char_count,
                                   std::uint64_t vocab_size);

// Converts token-level NLL (nats) into the tokenizer-invariant quantities.
LmMetrics lm_metrics(double nll_per_token, double tpc);

}  // namespace sigbpe
