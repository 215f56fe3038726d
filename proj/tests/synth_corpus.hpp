#pragma once

#include <cmath>
#include <random>
#include <string>
#include <vector>

namespace test_helpers {

// Deterministic word-soup corpus: Zipf-weighted vocabulary of syllabic words,
// sentence punctuation and paragraph breaks. Rich enough in bigram structure
// that a c_min=5 trainer finds merges well past vocabulary size 1200 at a few
// hundred thousand characters.
inline std::string synthetic_corpus(std::size_t min_chars,
                                    std::uint64_t seed = 20240817) {
  static const char* kOnsets[] = {"b", "br", "c", "ch", "d", "f", "g",
                                  "gr", "h", "j", "k", "l", "m", "n",
                                  "p", "pl", "r", "s", "st", "t", "th",
                                  "tr", "v", "w", "qu", "z"};
  static const char* kNuclei[] = {"a", "e", "i", "o", "u", "ai",
                                  "ea", "ee", "io", "ou", "oo"};
  static const char* kCodas[] = {"",  "n", "r", "s", "t",  "l",
                                 "m", "d", "ng", "rd", "st", "ck"};

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> onset(0, std::size(kOnsets) - 1);
  std::uniform_int_distribution<std::size_t> nucleus(0, std::size(kNuclei) - 1);
  std::uniform_int_distribution<std::size_t> coda(0, std::size(kCodas) - 1);
  std::uniform_int_distribution<int> syllables(1, 3);

  std::vector<std::string> words;
  for (int i = 0; i < 400; ++i) {
    std::string w;
    const int n = syllables(rng);
    for (int s = 0; s < n; ++s) {
      w += kOnsets[onset(rng)];
      w += kNuclei[nucleus(rng)];
      w += kCodas[coda(rng)];
    }
    words.push_back(w);
  }

  // Zipf weights over the word list.
  std::vector<double> weights(words.size());
  for (std::size_t i = 0; i < words.size(); ++i) {
    weights[i] = 1.0 / std::pow(static_cast<double>(i + 1), 1.1);
  }
  std::discrete_distribution<std::size_t> pick_word(weights.begin(),
                                                    weights.end());
  std::uniform_int_distribution<int> sentence_len(4, 14);
  std::uniform_int_distribution<int> sentences_per_para(2, 6);
  std::uniform_int_distribution<int> comma(0, 5);

  std::string text;
  text.reserve(min_chars + 128);
  while (text.size() < min_chars) {
    const int n_sent = sentences_per_para(rng);
    for (int s = 0; s < n_sent; ++s) {
      const int n_words = sentence_len(rng);
      for (int w = 0; w < n_words; ++w) {
        if (w > 0) text += (comma(rng) == 0 ? ", " : " ");
        text += words[pick_word(rng)];
      }
      text += ". ";
    }
    text.back() = '\n';
  }
  return text;
}

}  // namespace test_helpers
