#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "sigbpe/symbols.hpp"
#include "sigbpe/unicode.hpp"

namespace test_helpers {

// Random corpus over a small alphabet, whitespace included so merges cross
// word-ish boundaries.
inline std::string random_corpus(std::mt19937_64& rng, std::size_t max_len,
                                 int max_alphabet) {
  static const char32_t pool[] = {U'a', U'b', U'c', U'd', U'e', U'f', U'g',
                                  U'h', U'i', U'j', U'k', U'l', U'm', U'n',
                                  U' ', U'\n', U'.', U',', U'é', U'あ'};
  const int alphabet =
      std::uniform_int_distribution<int>(1, max_alphabet)(rng);
  const std::size_t len =
      std::uniform_int_distribution<std::size_t>(1, max_len)(rng);
  std::string out;
  std::uniform_int_distribution<int> pick(0, alphabet - 1);
  for (std::size_t i = 0; i < len; ++i) {
    sigbpe::utf8_append(out, pool[pick(rng)]);
  }
  return out;
}

// Random symbol sequence (ids into a fresh table of single letters).
inline sigbpe::SymbolSequence random_sequence(std::mt19937_64& rng,
                                              sigbpe::SymbolTable& table,
                                              std::size_t min_len,
                                              std::size_t max_len,
                                              int max_alphabet) {
  const int alphabet =
      std::uniform_int_distribution<int>(1, max_alphabet)(rng);
  for (int i = 0; i < alphabet; ++i) {
    table.intern(std::string(1, static_cast<char>('a' + i)));
  }
  const std::size_t len =
      std::uniform_int_distribution<std::size_t>(min_len, max_len)(rng);
  sigbpe::SymbolSequence seq;
  std::uniform_int_distribution<int> pick(0, alphabet - 1);
  for (std::size_t i = 0; i < len; ++i) {
    seq.push_back(static_cast<sigbpe::SymbolId>(pick(rng)));
  }
  return seq;
}

// Random Unicode string drawing from several scalar ranges (ASCII, Latin-1,
// BMP, astral), skipping surrogates.
inline std::string random_unicode(std::mt19937_64& rng, std::size_t max_len) {
  const std::size_t len =
      std::uniform_int_distribution<std::size_t>(0, max_len)(rng);
  std::string out;
  std::uniform_int_distribution<int> range_pick(0, 3);
  for (std::size_t i = 0; i < len; ++i) {
    char32_t cp = 0;
    switch (range_pick(rng)) {
      case 0:
        cp = std::uniform_int_distribution<char32_t>(0x20, 0x7E)(rng);
        break;
      case 1:
        cp = std::uniform_int_distribution<char32_t>(0xA0, 0x2FF)(rng);
        break;
      case 2:
        do {
          cp = std::uniform_int_distribution<char32_t>(0x300, 0xFFFD)(rng);
        } while (cp >= 0xD800 && cp <= 0xDFFF);
        break;
      default:
        cp = std::uniform_int_distribution<char32_t>(0x10000, 0x10FFFF)(rng);
        break;
    }
    sigbpe::utf8_append(out, cp);
  }
  return out;
}

}  // namespace test_helpers
