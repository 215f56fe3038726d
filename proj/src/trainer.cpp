#include "sigbpe/trainer.hpp"

#include <set>
#include <unordered_set>

#include "sigbpe/errors.hpp"
#include "sigbpe/merge_engine.hpp"
#include "sigbpe/unicode.hpp"

namespace sigbpe {

std::uint64_t TokenizerModel::vocab_size() const {
  std::unordered_set<std::string> merged;
  for (const MergeRule& rule : merges) merged.insert(rule.merged);
  return base_vocab.size() + merged.size();
}

namespace {

struct TrainSetup {
  SymbolTable table;
  SymbolSequence seq;
  std::vector<std::string> base_vocab;
};

// Character-base initialization: the sequence is the list of characters of
// the training text; base symbols are interned in code-point order so ids
// are reproducible.
TrainSetup make_setup(const std::string& text, const MergePolicyConfig& cfg,
                      std::uint32_t target_vocab) {
  cfg.validate();
  if (text.empty()) throw ConfigError("training text is empty");

  const std::vector<std::string> chars = utf8_chars(text);
  const std::set<std::string> distinct(chars.begin(), chars.end());
  if (target_vocab < distinct.size()) {
    throw ConfigError("target vocabulary " + std::to_string(target_vocab) +
                      " is below the base character vocabulary (" +
                      std::to_string(distinct.size()) + ")");
  }

  TrainSetup setup;
  setup.base_vocab.assign(distinct.begin(), distinct.end());
  for (const std::string& c : setup.base_vocab) setup.table.intern(c);
  setup.seq.reserve(chars.size());
  for (const std::string& c : chars) setup.seq.push_back(*setup.table.find(c));
  return setup;
}

TokenizerModel finish_model(TrainSetup&& setup, std::vector<MergeRule>&& merges,
                            const std::string& text,
                            const MergePolicyConfig& cfg,
                            std::uint32_t target_vocab,
                            std::uint64_t sequence_vocab) {
  TokenizerModel model;
  model.base_vocab = std::move(setup.base_vocab);
  model.merges = std::move(merges);
  model.config = cfg;
  model.meta.corpus_hash = fnv1a64_hex(text);
  model.meta.target_vocab = target_vocab;
  model.meta.sequence_vocab = sequence_vocab;
  model.meta.model_vocab = model.vocab_size();
  model.meta.merge_count = model.merges.size();
  return model;
}

}  // namespace

SymbolSequence apply_merge(const SymbolSequence& seq, SymbolId left,
                           SymbolId right, SymbolId merged) {
  SymbolSequence out;
  out.reserve(seq.size());
  std::size_t i = 0;
  while (i < seq.size()) {
    if (i + 1 < seq.size() && seq[i] == left && seq[i + 1] == right) {
      out.push_back(merged);
      i += 2;
    } else {
      out.push_back(seq[i]);
      ++i;
    }
  }
  return out;
}

TokenizerModel train(const std::string& text, const MergePolicyConfig& cfg,
                     std::uint32_t target_vocab, const MergeLogger& log) {
  TrainSetup setup = make_setup(text, cfg, target_vocab);
  SymbolSequence seq = std::move(setup.seq);
  std::vector<MergeRule> merges;

  // Vocabulary for the loop condition: base characters plus every distinct
  // merged symbol created so far. A symbol merged away later still counts.
  std::uint64_t vocab_size = setup.base_vocab.size();
  std::unordered_set<std::string> created;

  PairStatistics stats = count(seq);
  while (vocab_size < target_vocab) {
    const auto best = select_merge(stats, setup.table, cfg);
    if (!best) break;  // no admissible merges remain

    const std::string left = setup.table.str(best->left);
    const std::string right = setup.table.str(best->right);
    const std::string merged = left + right;
    const SymbolId merged_id = setup.table.intern(merged);
    if (created.insert(merged).second) ++vocab_size;

    seq = apply_merge(seq, best->left, best->right, merged_id);
    stats = count(seq);

    const auto rank = static_cast<std::uint32_t>(merges.size());
    merges.push_back(MergeRule{left, right, merged, rank});
    if (log) {
      log(MergeEvent{rank, left, right, merged, best->count, best->score,
                     vocab_size, seq.size()});
    }
  }

  const std::uint64_t seq_vocab = stats.marginals.size();
  return finish_model(std::move(setup), std::move(merges), text, cfg,
                      target_vocab, seq_vocab);
}

TokenizerModel train_incremental(const std::string& text,
                                 const MergePolicyConfig& cfg,
                                 std::uint32_t target_vocab,
                                 const MergeLogger& log) {
  TrainSetup setup = make_setup(text, cfg, target_vocab);
  MergeEngine engine(setup.seq);
  std::vector<MergeRule> merges;

  std::uint64_t vocab_size = setup.base_vocab.size();
  std::unordered_set<std::string> created;

  while (vocab_size < target_vocab) {
    const auto best = select_merge(engine.stats(), setup.table, cfg);
    if (!best) break;

    const std::string left = setup.table.str(best->left);
    const std::string right = setup.table.str(best->right);
    const std::string merged = left + right;
    const SymbolId merged_id = setup.table.intern(merged);
    if (created.insert(merged).second) ++vocab_size;

    engine.merge_all(best->left, best->right, merged_id);

    const auto rank = static_cast<std::uint32_t>(merges.size());
    merges.push_back(MergeRule{left, right, merged, rank});
    if (log) {
      log(MergeEvent{rank, left, right, merged, best->count, best->score,
                     vocab_size, engine.length()});
    }
  }

  return finish_model(std::move(setup), std::move(merges), text, cfg,
                      target_vocab, engine.sequence_vocab());
}

}  // namespace sigbpe
