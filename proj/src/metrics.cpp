#include "sigbpe/metrics.hpp"

#include <cmath>
#include <unordered_set>

#include "sigbpe/errors.hpp"

namespace sigbpe {

double tpc(std::uint64_t token_count, std::uint64_t char_count) {
  if (char_count == 0) throw ConfigError("tpc undefined for char_count 0");
  return static_cast<double>(token_count) / static_cast<double>(char_count);
}

double vocab_utilization(const TokenIds& tokens, std::uint64_t vocab_size) {
  if (vocab_size == 0) throw ConfigError("vocab_size must be positive");
  std::unordered_set<std::uint32_t> seen;
  for (const std::uint32_t id : tokens.ids) {
    if (!is_oov_id(id) && id < vocab_size) seen.insert(id);
  }
  return static_cast<double>(seen.size()) / static_cast<double>(vocab_size);
}

TokenizerMetrics tokenizer_metrics(const TokenIds& tokens,
                                   std::uint64_t char_count,
                                   std::uint64_t vocab_size) {
  TokenizerMetrics m;
  m.token_count = tokens.ids.size();
  m.char_count = char_count;
  m.oov_count = tokens.oov_count;
  m.tpc = tpc(m.token_count, char_count);
  m.vocab_used = vocab_utilization(tokens, vocab_size);
  return m;
}

LmMetrics lm_metrics(double nll_per_token, double tpc) {
  if (!(tpc > 0.0)) throw ConfigError("tpc must be positive");
  LmMetrics m;
  m.nll_per_token = nll_per_token;
  m.ppl = std::exp(nll_per_token);
  m.nll_per_char = nll_per_token * tpc;
  m.bpc = m.nll_per_char / std::log(2.0);
  return m;
}

}  // namespace sigbpe
