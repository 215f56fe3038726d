#include "sigbpe/trainer.hpp"

#include <random>
#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "sigbpe/errors.hpp"
#include "sigbpe/merge_engine.hpp"
#include "sigbpe/pair_stats.hpp"
#include "sigbpe/unicode.hpp"

using namespace sigbpe;

namespace {

MergePolicyConfig freq_cfg(std::int64_t c_min) {
  MergePolicyConfig cfg;
  cfg.mode = MergeMode::kFrequency;
  cfg.c_min = c_min;
  return cfg;
}

MergePolicyConfig sig_defaults(std::int64_t c_min) {
  MergePolicyConfig cfg;  // significance-gain defaults
  cfg.c_min = c_min;
  return cfg;
}

bool same_merges(const TokenizerModel& a, const TokenizerModel& b) {
  if (a.merges.size() != b.merges.size()) return false;
  for (std::size_t i = 0; i < a.merges.size(); ++i) {
    if (a.merges[i].left != b.merges[i].left ||
        a.merges[i].right != b.merges[i].right) {
      return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("apply_merge replaces leftmost non-overlapping occurrences") {
  // [a,a,a] + (a,a -> m) => [m, a]
  CHECK(apply_merge({0, 0, 0}, 0, 0, 9) == SymbolSequence{9, 0});
  // no occurrences: unchanged
  CHECK(apply_merge({0, 1, 2}, 7, 8, 9) == SymbolSequence{0, 1, 2});
  // disjoint replacements
  CHECK(apply_merge({0, 1, 0, 1}, 0, 1, 9) == SymbolSequence{9, 9});
  CHECK(apply_merge({0, 0, 0, 0}, 0, 0, 9) == SymbolSequence{9, 9});
  CHECK(apply_merge({}, 0, 1, 9) == SymbolSequence{});
}

TEST_CASE("train on aaabaaab merges (a,a) first") {
  const auto model = train("aaabaaab", freq_cfg(1), 3);
  REQUIRE(model.merges.size() == 1);
  CHECK(model.merges[0].left == "a");
  CHECK(model.merges[0].right == "a");
  CHECK(model.merges[0].merged == "aa");
  CHECK(model.merges[0].rank == 0);
  CHECK(model.base_vocab == std::vector<std::string>{"a", "b"});
  CHECK(model.meta.sequence_vocab == 3);
  CHECK(model.vocab_size() == 3);
}

TEST_CASE("train stops immediately when no pair reaches c_min") {
  const auto model = train("ab", sig_defaults(5), 3);
  CHECK(model.merges.empty());
  CHECK(model.base_vocab == std::vector<std::string>{"a", "b"});
  CHECK(model.meta.sequence_vocab == 2);
}

TEST_CASE("train with significance-gain defaults merges (a,b) on abab") {
  const auto model = train("abab", sig_defaults(1), 3);
  REQUIRE(model.merges.size() == 1);
  CHECK(model.merges[0].left == "a");
  CHECK(model.merges[0].right == "b");
}

TEST_CASE("train rejects a target below the base vocabulary") {
  CHECK_THROWS_AS(train("abcabc", sig_defaults(1), 2), ConfigError);
  CHECK_THROWS_AS(train("", sig_defaults(1), 10), ConfigError);
  CHECK_THROWS_AS(train_incremental("abcabc", sig_defaults(1), 2), ConfigError);
}

TEST_CASE("training log reports count, score and sequence state per merge") {
  std::vector<MergeEvent> events;
  const auto model = train(
      "aaabaaab", freq_cfg(1), 4,
      [&](const MergeEvent& e) { events.push_back(e); });
  REQUIRE(events.size() == model.merges.size());
  CHECK(events[0].rank == 0);
  CHECK(events[0].left == "a");
  CHECK(events[0].right == "a");
  CHECK(events[0].count == 4);
  CHECK(events[0].score == 4.0);
  CHECK(events[0].vocab_size == 3);   // {aa, a, b}
  CHECK(events[0].sequence_length == 6);  // aa a b aa a b
}

TEST_CASE("the working sequence decodes to the input after every iteration") {
  std::mt19937_64 rng(71);
  for (int i = 0; i < 15; ++i) {
    const std::string text = test_helpers::random_corpus(rng, 300, 8);
    const auto cfg = (i % 2 == 0) ? freq_cfg(1) : sig_defaults(1);

    // run the greedy loop through the public ops, checking conservation
    SymbolTable table;
    const auto chars = utf8_chars(text);
    std::set<std::string> base(chars.begin(), chars.end());
    for (const auto& c : base) table.intern(c);
    SymbolSequence seq;
    for (const auto& c : chars) seq.push_back(*table.find(c));

    for (int step = 0; step < 10; ++step) {
      const auto stats = count(seq);
      const auto best = select_merge(stats, table, cfg);
      if (!best) break;
      const std::string merged = table.str(best->left) + table.str(best->right);
      seq = apply_merge(seq, best->left, best->right, table.intern(merged));
      CHECK(decode_sequence(seq, table) == text);
    }
  }
}

TEST_CASE("decoding the working state reproduces the text and rules chain") {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 40; ++i) {
    const std::string text = test_helpers::random_corpus(rng, 400, 10);
    const auto cfg = (i % 2 == 0) ? freq_cfg(2) : sig_defaults(2);
    const std::uint64_t base = utf8_chars(text).size();
    const auto model = train(text, cfg, static_cast<std::uint32_t>(base + 12));

    // every rule's components are base chars or earlier merges
    SymbolTable known;
    for (const auto& c : model.base_vocab) known.intern(c);
    for (const auto& rule : model.merges) {
      CHECK(known.find(rule.left).has_value());
      CHECK(known.find(rule.right).has_value());
      CHECK(rule.merged == rule.left + rule.right);
      known.intern(rule.merged);
    }
  }
}

TEST_CASE("merge engine stats match a fresh recount after every merge") {
  std::mt19937_64 rng(43);
  for (int i = 0; i < 50; ++i) {
    SymbolTable table;
    auto seq = test_helpers::random_sequence(rng, table, 2, 300, 5);
    MergeEngine engine(seq);
    SymbolId next_id = 100;

    for (int step = 0; step < 12; ++step) {
      const auto recount = count(seq);
      const auto& inc = engine.stats();
      REQUIRE(inc.token_count == recount.token_count);
      REQUIRE(inc.n_positions == recount.n_positions);
      REQUIRE(inc.marginals == recount.marginals);
      REQUIRE(inc.pairs == recount.pairs);

      if (recount.pairs.empty()) break;
      // pick a random existing pair to merge
      auto it = recount.pairs.begin();
      std::advance(it, std::uniform_int_distribution<std::size_t>(
                           0, recount.pairs.size() - 1)(rng));
      const SymbolId l = pair_left(it->first), r = pair_right(it->first);
      const SymbolId m = next_id++;
      const auto replaced = engine.merge_all(l, r, m);
      seq = apply_merge(seq, l, r, m);
      CHECK(engine.sequence() == seq);
      CHECK(replaced >= 1);
    }
  }
}

TEST_CASE("token count decreases by the number of replacements") {
  std::mt19937_64 rng(47);
  for (int i = 0; i < 60; ++i) {
    SymbolTable table;
    const auto seq = test_helpers::random_sequence(rng, table, 2, 200, 4);
    const auto stats = count(seq);
    if (stats.pairs.empty()) continue;
    auto it = stats.pairs.begin();
    std::advance(it, std::uniform_int_distribution<std::size_t>(
                         0, stats.pairs.size() - 1)(rng));
    const SymbolId l = pair_left(it->first), r = pair_right(it->first);
    const auto out = apply_merge(seq, l, r, 99);
    const auto replaced =
        static_cast<std::int64_t>(seq.size()) - static_cast<std::int64_t>(out.size());
    CHECK(replaced >= 1);
    CHECK(replaced <= it->second);  // overlaps can only reduce replacements
    if (l != r) CHECK(replaced == it->second);
  }
}

TEST_CASE("train_incremental equals train on random corpora") {
  std::mt19937_64 rng(53);
  for (int i = 0; i < 30; ++i) {
    const std::string text = test_helpers::random_corpus(rng, 600, 12);
    for (const std::int64_t c_min : {1, 2, 5}) {
      for (const bool sig : {false, true}) {
        const auto cfg = sig ? sig_defaults(c_min) : freq_cfg(c_min);
        const std::uint64_t base = utf8_chars(text).size();
        const auto target = static_cast<std::uint32_t>(base + 20);
        const auto a = train(text, cfg, target);
        const auto b = train_incremental(text, cfg, target);
        REQUIRE(same_merges(a, b));
        CHECK(a.meta.sequence_vocab == b.meta.sequence_vocab);
        CHECK(a.meta.model_vocab == b.meta.model_vocab);
      }
    }
  }
}

TEST_CASE("vocabulary growth is bounded by the target") {
  std::vector<MergeEvent> events;
  const std::string text = "the cat sat on the mat and the cat ran fast";
  const auto model =
      train(text, freq_cfg(1), 30,
            [&](const MergeEvent& e) { events.push_back(e); });
  for (const auto& e : events) CHECK(e.vocab_size <= 30);
  CHECK(model.meta.sequence_vocab <= 30);
}
