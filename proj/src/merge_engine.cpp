#include "sigbpe/merge_engine.hpp"

#include <algorithm>

namespace sigbpe {

MergeEngine::MergeEngine(const SymbolSequence& seq) {
  const std::size_t n = seq.size();
  sym_ = seq;
  prev_.resize(n);
  next_.resize(n);
  alive_.assign(n, 1);
  head_ = n == 0 ? -1 : 0;

  stats_.token_count = static_cast<std::int64_t>(n);
  stats_.n_positions = std::max<std::int64_t>(stats_.token_count - 1, 1);
  for (std::size_t i = 0; i < n; ++i) {
    prev_[i] = static_cast<std::int32_t>(i) - 1;
    next_[i] = i + 1 < n ? static_cast<std::int32_t>(i) + 1 : -1;
    ++stats_.marginals[seq[i]];
    if (i + 1 < n) {
      const std::uint64_t key = pack_pair(seq[i], seq[i + 1]);
      ++stats_.pairs[key];
      positions_[key].push_back(static_cast<std::int32_t>(i));
    }
  }
}

void MergeEngine::add_pair(std::int32_t left_node, SymbolId l, SymbolId r) {
  const std::uint64_t key = pack_pair(l, r);
  ++stats_.pairs[key];
  positions_[key].push_back(left_node);
}

void MergeEngine::remove_pair_count(SymbolId l, SymbolId r) {
  const std::uint64_t key = pack_pair(l, r);
  auto it = stats_.pairs.find(key);
  if (--it->second == 0) {
    stats_.pairs.erase(it);
    positions_.erase(key);
  }
}

void MergeEngine::add_marginal(SymbolId s) { ++stats_.marginals[s]; }

void MergeEngine::remove_marginal(SymbolId s) {
  auto it = stats_.marginals.find(s);
  if (--it->second == 0) stats_.marginals.erase(it);
}

std::int64_t MergeEngine::merge_all(SymbolId left, SymbolId right,
                                    SymbolId merged) {
  const std::uint64_t key = pack_pair(left, right);
  auto pos_it = positions_.find(key);
  if (pos_it == positions_.end()) return 0;

  // Take the candidate sites out of the index; surviving occurrences of the
  // pair cannot exist once every site is processed.
  std::vector<std::int32_t> sites = std::move(pos_it->second);
  positions_.erase(pos_it);
  std::sort(sites.begin(), sites.end());

  std::int64_t replacements = 0;
  for (const std::int32_t u : sites) {
    // Revalidate: the site may be stale (node rewritten or consumed by the
    // previous replacement, e.g. overlapping "aaa").
    if (!alive_[u] || sym_[u] != left) continue;
    const std::int32_t v = next_[u];
    if (v < 0 || sym_[v] != right) continue;

    const std::int32_t p = prev_[u];
    const std::int32_t n = next_[v];

    remove_pair_count(left, right);
    if (p >= 0) {
      remove_pair_count(sym_[p], left);
      add_pair(p, sym_[p], merged);
    }
    if (n >= 0) {
      remove_pair_count(right, sym_[n]);
      add_pair(u, merged, sym_[n]);
    }

    sym_[u] = merged;
    alive_[v] = 0;
    next_[u] = n;
    if (n >= 0) prev_[n] = u;

    remove_marginal(left);
    remove_marginal(right);
    add_marginal(merged);
    --stats_.token_count;
    ++replacements;
  }

  stats_.n_positions = std::max<std::int64_t>(stats_.token_count - 1, 1);
  return replacements;
}

SymbolSequence MergeEngine::sequence() const {
  SymbolSequence out;
  out.reserve(static_cast<std::size_t>(stats_.token_count));
  for (std::int32_t u = head_; u >= 0; u = next_[u]) out.push_back(sym_[u]);
  return out;
}

}  // namespace sigbpe
