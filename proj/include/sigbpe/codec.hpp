#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sigbpe/symbols.hpp"
#include "sigbpe/trainer.hpp"

namespace sigbpe {

// Encoded text. Entries are vocabulary indices except OOV sentinels, which
// have the high bit set and carry the raw code point (see symbols.hpp).
struct TokenIds {
  std::vector<std::uint32_t> ids;
  std::uint64_t oov_count = 0;
};

struct EncodeOptions {
  bool strict_oov = false;  // error on the first OOV character
};

// Splits text into characters and replays the model's merges in rank order
// (same replacement semantics as training). Characters outside the base
// vocabulary pass through as OOV sentinels unless strict_oov is set, in which
// case the first one raises an Error carrying its character offset.
TokenIds encode(const TokenizerModel& model, const std::string& text,
                const EncodeOptions& opts = {});

// Inverse of encode: concatenates token strings; OOV sentinels reproduce
// their raw character. Throws Error on ids outside the vocabulary.
std::string decode(const TokenizerModel& model, const TokenIds& tokens);

// Model file: a single JSON document (.tokmodel.json) with format_version,
// checksum, and a payload holding mode, config, base_vocab, merges (array of
// [left, right]; rank = index) and training_meta. load() reports malformed
// files, unsupported versions, and checksum mismatches distinctly.
void save_model(const TokenizerModel& model, const std::string& path);
TokenizerModel load_model(const std::string& path);
std::string model_to_json(const TokenizerModel& model);      // full document
TokenizerModel model_from_json(const std::string& document);

// Token stream files: newline-delimited decimal ids, or little-endian
// 32-bit ids when binary is set.
void write_tokens(const TokenIds& tokens, const std::string& path, bool binary);
TokenIds read_tokens(const std::string& path, bool binary);

// Id <-> string mapping derived from a model: base symbols in code-point
// order, then merged symbols in first-creation order.
struct Vocabulary {
  std::vector<std::string> id_to_string;
  SymbolTable table;

  static Vocabulary from_model(const TokenizerModel& model);
};

}  // namespace sigbpe
