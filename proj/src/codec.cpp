#include "sigbpe/codec.hpp"

#include <fstream>
#include "json.hpp"
#include <sstream>

#include "sigbpe/errors.hpp"
#include "sigbpe/merge_engine.hpp"
#include "sigbpe/unicode.hpp"

namespace sigbpe {

using nlohmann::json;

namespace {

constexpr int kFormatVersion = 1;

}  // namespace

Vocabulary Vocabulary::from_model(const TokenizerModel& model) {
  Vocabulary vocab;
  for (const std::string& c : model.base_vocab) {
    vocab.table.intern(c);
    vocab.id_to_string.push_back(c);
  }
  for (const MergeRule& rule : model.merges) {
    const SymbolId id = vocab.table.intern(rule.merged);
    if (id == vocab.id_to_string.size()) vocab.id_to_string.push_back(rule.merged);
  }
  return vocab;
}

TokenIds encode(const TokenizerModel& model, const std::string& text,
                const EncodeOptions& opts) {
  const Vocabulary vocab = Vocabulary::from_model(model);

  TokenIds out;
  SymbolSequence seq;
  std::size_t pos = 0;
  std::uint64_t char_index = 0;
  while (pos < text.size()) {
    const std::size_t start = pos;
    const char32_t cp = utf8_decode_next(text, pos);
    const auto id = vocab.table.find(text.substr(start, pos - start));
    if (id && *id < model.base_vocab.size()) {
      seq.push_back(*id);
    } else {
      if (opts.strict_oov) {
        throw OovError("out-of-vocabulary character", char_index);
      }
      seq.push_back(make_oov_id(cp));
      ++out.oov_count;
    }
    ++char_index;
  }

  MergeEngine engine(seq);
  for (const MergeRule& rule : model.merges) {
    const auto left = vocab.table.find(rule.left);
    const auto right = vocab.table.find(rule.right);
    const auto merged = vocab.table.find(rule.merged);
    if (!left || !right || !merged) {
      throw ModelFormatError("merge rule references unknown symbol: " +
                             rule.left + " + " + rule.right);
    }
    engine.merge_all(*left, *right, *merged);
  }

  out.ids = engine.sequence();
  return out;
}

std::string decode(const TokenizerModel& model, const TokenIds& tokens) {
  const Vocabulary vocab = Vocabulary::from_model(model);
  std::string out;
  for (const std::uint32_t id : tokens.ids) {
    if (is_oov_id(id)) {
      utf8_append(out, oov_code_point(id));
    } else if (id < vocab.id_to_string.size()) {
      out += vocab.id_to_string[id];
    } else {
      throw Error("token id " + std::to_string(id) +
                  " outside vocabulary of size " +
                  std::to_string(vocab.id_to_string.size()));
    }
  }
  return out;
}

namespace {

// The checksum covers the whole document minus the checksum field itself,
// serialized compactly with nlohmann's sorted keys.
std::string document_checksum(json doc) {
  doc.erase("checksum");
  return fnv1a64_hex(doc.dump());
}

}  // namespace

std::string model_to_json(const TokenizerModel& model) {
  json merges = json::array();
  for (const MergeRule& rule : model.merges) {
    merges.push_back(json::array({rule.left, rule.right}));
  }
  json doc{
      {"format_version", kFormatVersion},
      {"mode", merge_mode_name(model.config.mode)},
      {"config",
       {{"use_gain", model.config.use_gain},
        {"alpha_count", model.config.alpha_count},
        {"lambda_rare", model.config.lambda_rare},
        {"c_min", model.config.c_min},
        {"epsilon", model.config.epsilon}}},
      {"base_vocab", model.base_vocab},
      {"merges", merges},
      {"training_meta",
       {{"corpus_hash", model.meta.corpus_hash},
        {"target_vocab", model.meta.target_vocab},
        {"sequence_vocab", model.meta.sequence_vocab},
        {"model_vocab", model.meta.model_vocab},
        {"merge_count", model.meta.merge_count}}}};
  doc["checksum"] = document_checksum(doc);
  return doc.dump(2) + "\n";
}

TokenizerModel model_from_json(const std::string& document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::exception& e) {
    throw ModelFormatError(std::string("model file is not valid JSON: ") +
                           e.what());
  }

  try {
    if (!doc.is_object() || !doc.contains("format_version")) {
      throw ModelFormatError("model file missing format_version");
    }
    const int version = doc.at("format_version").get<int>();
    if (version != kFormatVersion) {
      throw ModelVersionError("unsupported model format_version " +
                              std::to_string(version) + " (expected " +
                              std::to_string(kFormatVersion) + ")");
    }
    const std::string checksum = doc.at("checksum").get<std::string>();
    if (checksum != document_checksum(doc)) {
      throw ModelChecksumError("model checksum mismatch");
    }

    TokenizerModel model;
    model.config.mode = merge_mode_from_name(doc.at("mode").get<std::string>());
    const json& cfg = doc.at("config");
    model.config.use_gain = cfg.at("use_gain").get<bool>();
    model.config.alpha_count = cfg.at("alpha_count").get<double>();
    model.config.lambda_rare = cfg.at("lambda_rare").get<double>();
    model.config.c_min = cfg.at("c_min").get<std::int64_t>();
    model.config.epsilon = cfg.at("epsilon").get<double>();
    model.base_vocab = doc.at("base_vocab").get<std::vector<std::string>>();

    // Rebuild merge rules; each side must be a base character or an earlier
    // merged symbol.
    SymbolTable known;
    for (const std::string& c : model.base_vocab) known.intern(c);
    std::uint32_t rank = 0;
    for (const json& entry : doc.at("merges")) {
      if (!entry.is_array() || entry.size() != 2) {
        throw ModelFormatError("merge entry " + std::to_string(rank) +
                               " is not a [left, right] pair");
      }
      MergeRule rule;
      rule.left = entry[0].get<std::string>();
      rule.right = entry[1].get<std::string>();
      rule.merged = rule.left + rule.right;
      rule.rank = rank++;
      if (!known.find(rule.left) || !known.find(rule.right)) {
        throw ModelFormatError("merge rule " + std::to_string(rule.rank) +
                               " references unknown symbol");
      }
      known.intern(rule.merged);
      model.merges.push_back(std::move(rule));
    }

    const json& meta = doc.at("training_meta");
    model.meta.corpus_hash = meta.at("corpus_hash").get<std::string>();
    model.meta.target_vocab = meta.at("target_vocab").get<std::uint64_t>();
    model.meta.sequence_vocab = meta.at("sequence_vocab").get<std::uint64_t>();
    model.meta.model_vocab = meta.at("model_vocab").get<std::uint64_t>();
    model.meta.merge_count = meta.at("merge_count").get<std::uint64_t>();
    return model;
  } catch (const json::exception& e) {
    throw ModelFormatError(std::string("malformed model document: ") + e.what());
  }
}

void save_model(const TokenizerModel& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << model_to_json(model);
  if (!out) throw IoError("write failure: " + path);
}

TokenizerModel load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return model_from_json(ss.str());
}

void write_tokens(const TokenIds& tokens, const std::string& path,
                  bool binary) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  if (binary) {
    for (const std::uint32_t id : tokens.ids) {
      const unsigned char bytes[4] = {
          static_cast<unsigned char>(id & 0xFF),
          static_cast<unsigned char>((id >> 8) & 0xFF),
          static_cast<unsigned char>((id >> 16) & 0xFF),
          static_cast<unsigned char>((id >> 24) & 0xFF)};
      out.write(reinterpret_cast<const char*>(bytes), 4);
    }
  } else {
    for (const std::uint32_t id : tokens.ids) out << id << '\n';
  }
  if (!out) throw IoError("write failure: " + path);
}

TokenIds read_tokens(const std::string& path, bool binary) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open file: " + path);
  TokenIds tokens;
  if (binary) {
    char bytes[4];
    while (in.read(bytes, 4)) {
      const auto b = reinterpret_cast<const unsigned char*>(bytes);
      tokens.ids.push_back(static_cast<std::uint32_t>(b[0]) |
                           (static_cast<std::uint32_t>(b[1]) << 8) |
                           (static_cast<std::uint32_t>(b[2]) << 16) |
                           (static_cast<std::uint32_t>(b[3]) << 24));
    }
    if (in.gcount() != 0) throw IoError("truncated binary token file: " + path);
  } else {
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty()) continue;
      try {
        tokens.ids.push_back(static_cast<std::uint32_t>(std::stoul(line)));
      } catch (const std::exception&) {
        throw IoError("bad token id at " + path + ":" + std::to_string(lineno));
      }
    }
  }
  for (const std::uint32_t id : tokens.ids) {
    if (is_oov_id(id)) ++tokens.oov_count;
  }
  return tokens;
}

}  // namespace sigbpe
