#include "sigbpe/lm_eval.hpp"

#include <cmath>

#include "sigbpe/errors.hpp"

namespace sigbpe {

namespace {

constexpr std::uint32_t kMaxInternalVocab = 0xFFFF;

std::uint64_t pack_context(std::span<const std::uint32_t> ctx) {
  std::uint64_t key = 0;
  for (const std::uint32_t id : ctx) key = (key << 16) | id;
  return key;
}

}  // namespace

NgramModel NgramModel::fit(const TokenIds& train, int order, double add_k) {
  if (train.ids.empty()) throw ConfigError("cannot fit LM on empty tokens");
  if (order < 1 || order > kMaxOrder) {
    throw ConfigError("lm order must be in [1, " + std::to_string(kMaxOrder) +
                      "]");
  }
  if (add_k < 0.0) throw ConfigError("add_k must be >= 0");

  NgramModel model;
  model.order_ = order;
  model.add_k_ = add_k;

  // Dense internal ids in first-occurrence order; OOV sentinels fold into the
  // reserved unknown id.
  std::vector<std::uint32_t> seq;
  seq.reserve(train.ids.size());
  std::uint32_t next_internal = 0;
  for (const std::uint32_t ext : train.ids) {
    if (is_oov_id(ext)) {
      seq.push_back(kMaxInternalVocab);  // placeholder, fixed up below
      continue;
    }
    auto [it, inserted] = model.remap_.emplace(ext, next_internal);
    if (inserted) {
      ++next_internal;
      if (next_internal >= kMaxInternalVocab) {
        throw ConfigError("too many token types for the n-gram evaluator");
      }
    }
    seq.push_back(it->second);
  }
  model.vocab_size_ = next_internal + 1;  // + unknown
  for (std::uint32_t& id : seq) {
    if (id == kMaxInternalVocab) id = model.unk_id();
  }

  model.unigram_.assign(model.vocab_size_, 0);
  model.unigram_total_ = static_cast<std::int64_t>(seq.size());
  for (const std::uint32_t id : seq) ++model.unigram_[id];

  model.contexts_.resize(order >= 2 ? order - 1 : 0);
  for (int o = 2; o <= order; ++o) {
    auto& table = model.contexts_[o - 2];
    const std::size_t ctx_len = o - 1;
    for (std::size_t t = ctx_len; t < seq.size(); ++t) {
      const std::uint64_t key =
          pack_context({seq.data() + t - ctx_len, ctx_len});
      ContextCounts& cc = table[key];
      ++cc.total;
      ++cc.next[seq[t]];
    }
  }
  return model;
}

NgramModel NgramModel::uniform(std::uint32_t vocab_size) {
  if (vocab_size == 0) throw ConfigError("vocab_size must be positive");
  NgramModel model;
  model.order_ = 1;
  model.add_k_ = 1.0;
  model.vocab_size_ = vocab_size;
  model.unigram_.assign(vocab_size, 0);
  model.unigram_total_ = 0;
  return model;
}

std::uint32_t NgramModel::internalize(std::uint32_t external_id) const {
  if (is_oov_id(external_id)) return unk_id();
  auto it = remap_.find(external_id);
  return it == remap_.end() ? unk_id() : it->second;
}

double NgramModel::conditional(std::span<const std::uint32_t> history,
                               std::uint32_t w) const {
  const double v = static_cast<double>(vocab_size_);
  double p = (static_cast<double>(unigram_[w]) + add_k_) /
             (static_cast<double>(unigram_total_) + add_k_ * v);

  for (int o = 2; o <= order_; ++o) {
    const std::size_t ctx_len = o - 1;
    if (history.size() < ctx_len) break;
    const auto& table = contexts_[o - 2];
    const std::uint64_t key =
        pack_context(history.subspan(history.size() - ctx_len, ctx_len));
    const auto it = table.find(key);
    if (it == table.end()) break;  // higher-order contexts are unseen too

    const ContextCounts& cc = it->second;
    const auto nit = cc.next.find(w);
    const double c = nit == cc.next.end() ? 0.0 : static_cast<double>(nit->second);
    const double total = static_cast<double>(cc.total);
    const double f = (c + add_k_) / (total + add_k_ * v);
    const double lambda = total / (total + 1.0);
    p = lambda * f + (1.0 - lambda) * p;
  }
  return p;
}

double NgramModel::nll_per_token(const TokenIds& tokens) const {
  if (tokens.ids.empty()) throw ConfigError("cannot evaluate empty tokens");

  std::vector<std::uint32_t> seq;
  seq.reserve(tokens.ids.size());
  for (const std::uint32_t ext : tokens.ids) seq.push_back(internalize(ext));

  double total = 0.0;
  const std::size_t max_ctx = static_cast<std::size_t>(order_) - 1;
  for (std::size_t t = 0; t < seq.size(); ++t) {
    const std::size_t ctx_len = std::min(max_ctx, t);
    const double p =
        conditional({seq.data() + t - ctx_len, ctx_len}, seq[t]);
    total -= std::log(p);
  }
  return total / static_cast<double>(seq.size());
}

}  // namespace sigbpe
