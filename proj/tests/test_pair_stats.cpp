#include "sigbpe/pair_stats.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "sigbpe/errors.hpp"

using namespace sigbpe;

namespace {

// ids: a=0, b=1, ...
SymbolSequence seq_of(const char* letters) {
  SymbolSequence s;
  for (const char* p = letters; *p; ++p) {
    s.push_back(static_cast<SymbolId>(*p - 'a'));
  }
  return s;
}

}  // namespace

TEST_CASE("count tallies marginals, pairs and N") {
  const auto stats = count(seq_of("abab"));
  CHECK(stats.token_count == 4);
  CHECK(stats.n_positions == 3);
  CHECK(stats.marginal(0) == 2);
  CHECK(stats.marginal(1) == 2);
  CHECK(stats.pair_count(0, 1) == 2);
  CHECK(stats.pair_count(1, 0) == 1);
  CHECK(stats.pairs.size() == 2);

  const auto single = count(seq_of("a"));
  CHECK(single.marginal(0) == 1);
  CHECK(single.pairs.empty());
  CHECK(single.n_positions == 1);

  const auto empty = count(SymbolSequence{});
  CHECK(empty.marginals.empty());
  CHECK(empty.pairs.empty());
  CHECK(empty.n_positions == 1);
}

TEST_CASE("count sums match sequence length") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 200; ++i) {
    SymbolTable table;
    const auto seq =
        test_helpers::random_sequence(rng, table, 0, 200, 12);
    const auto stats = count(seq);
    std::int64_t marg = 0, pairs = 0;
    for (const auto& [id, c] : stats.marginals) marg += c;
    for (const auto& [key, c] : stats.pairs) pairs += c;
    CHECK(marg == static_cast<std::int64_t>(seq.size()));
    CHECK(pairs == std::max<std::int64_t>(
                       static_cast<std::int64_t>(seq.size()) - 1, 0));
    for (const auto& [key, c] : stats.pairs) {
      CHECK(stats.marginal(pair_left(key)) >= 1);
      CHECK(stats.marginal(pair_right(key)) >= 1);
    }
  }
}

TEST_CASE("count is order-sensitive in pairs but not marginals") {
  const auto fwd = count(seq_of("aab"));
  auto rev_seq = seq_of("aab");
  std::reverse(rev_seq.begin(), rev_seq.end());
  const auto rev = count(rev_seq);
  CHECK(fwd.marginals == rev.marginals);
  CHECK(fwd.pairs != rev.pairs);
}

TEST_CASE("expected_count is c_x*c_y/N") {
  const auto stats = count(seq_of("abab"));
  CHECK(expected_count(stats, 0, 1) == doctest::Approx(4.0 / 3.0).epsilon(1e-12));

  PairStatistics unit;
  unit.marginals = {{0, 1}, {1, 1}};
  unit.token_count = 2;
  unit.n_positions = 1;
  CHECK(expected_count(unit, 0, 1) == 1.0);

  const auto aa = count(seq_of("aa"));
  CHECK(expected_count(aa, 0, 0) == 4.0);

  CHECK_THROWS_AS(expected_count(stats, 0, 99), Error);
}

TEST_CASE("z_score matches hand arithmetic") {
  const auto stats = count(seq_of("abab"));
  CHECK(z_score(stats, 0, 1, 1e-9) ==
        doctest::Approx(0.5773502689731195).epsilon(1e-12));
  CHECK(z_score(stats, 1, 0, 1e-9) ==
        doctest::Approx(-0.2886751344865596).epsilon(1e-12));

  // c_xy == E exactly: z vanishes up to the epsilon term
  PairStatistics fixed;
  fixed.marginals = {{0, 2}, {1, 2}};
  fixed.pairs = {{pack_pair(0, 1), 2}};
  fixed.token_count = 5;
  fixed.n_positions = 2;  // E = 2*2/2 = 2 = c_xy
  CHECK(std::fabs(z_score(fixed, 0, 1, 1e-9)) < 1e-9);

  // absent pair counts as zero and yields a negative z
  CHECK(z_score(stats, 0, 0, 1e-9) < 0.0);
}

TEST_CASE("pmi_check matches hand arithmetic") {
  const auto stats = count(seq_of("abab"));
  CHECK(pmi_check(stats, 0, 1) ==
        doctest::Approx(0.5773502691896257).epsilon(1e-12));

  // c_xy == E gives PMI = 0 hence 0
  PairStatistics fixed;
  fixed.marginals = {{0, 2}, {1, 2}};
  fixed.pairs = {{pack_pair(0, 1), 2}};
  fixed.token_count = 5;
  fixed.n_positions = 2;
  CHECK(pmi_check(fixed, 0, 1) == doctest::Approx(0.0));

  // "aa": c_a=2, N=1, c_aa=1, E=4 -> sqrt(4)*(1/4 - 1) = -1.5
  const auto aa = count(seq_of("aa"));
  CHECK(pmi_check(aa, 0, 0) == doctest::Approx(-1.5).epsilon(1e-12));

  CHECK_THROWS_AS(pmi_check(stats, 0, 0), Error);  // c_xy = 0
}

TEST_CASE("z_score agrees with pmi_check on random sequences") {
  // |z - pmi| <= eps * N^1.5 / 2 for sequence-derived stats, so desk-scale
  // lengths keep the 1e-6 bound with eps = 1e-9.
  std::mt19937_64 rng(23);
  for (int i = 0; i < 500; ++i) {
    SymbolTable table;
    const auto seq = test_helpers::random_sequence(rng, table, 2, 100, 12);
    const auto stats = count(seq);
    for (const auto& [key, c] : stats.pairs) {
      if (c < 1) continue;
      const SymbolId x = pair_left(key), y = pair_right(key);
      if (expected_count(stats, x, y) < 1e-6) continue;
      CHECK(std::fabs(z_score(stats, x, y, 1e-9) - pmi_check(stats, x, y)) <
            1e-6);
    }
  }
}
