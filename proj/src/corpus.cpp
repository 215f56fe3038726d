#include "sigbpe/corpus.hpp"

#include <fstream>
#include <sstream>

#include "sigbpe/errors.hpp"
#include "sigbpe/unicode.hpp"

namespace sigbpe {

std::string normalize(std::string_view raw) {
  utf8_validate(raw);

  // Newline and tab canonicalization. The affected bytes are all ASCII, so a
  // byte-level pass is safe on valid UTF-8.
  std::string pass1;
  pass1.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const char c = raw[i];
    if (c == '\r') {
      if (i + 1 < raw.size() && raw[i + 1] == '\n') continue;  // \r\n -> \n
      pass1.push_back('\n');
    } else if (c == '\t') {
      pass1.push_back(' ');
    } else {
      pass1.push_back(c);
    }
  }

  // Collapse space runs and drop spaces that directly precede a newline.
  std::string out;
  out.reserve(pass1.size());
  bool pending_space = false;
  for (const char c : pass1) {
    if (c == ' ') {
      pending_space = true;
      continue;
    }
    if (pending_space && c != '\n') out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  if (pending_space) out.push_back(' ');
  return out;
}

CorpusSlices slice(std::string_view text, const SliceSpec& spec) {
  const std::uint64_t requested =
      spec.train_chars + spec.val_chars + spec.test_chars;

  // Walk to the byte offset of each split boundary.
  std::size_t offsets[4] = {0, 0, 0, 0};
  const std::uint64_t bounds[3] = {
      spec.train_chars, spec.train_chars + spec.val_chars, requested};
  std::uint64_t chars = 0;
  std::size_t pos = 0;
  int next_bound = 0;
  while (next_bound < 3 && chars == bounds[next_bound]) {
    offsets[next_bound + 1] = pos;
    ++next_bound;
  }
  while (pos < text.size() && next_bound < 3) {
    utf8_decode_next(text, pos);
    ++chars;
    while (next_bound < 3 && chars == bounds[next_bound]) {
      offsets[next_bound + 1] = pos;
      ++next_bound;
    }
  }
  if (next_bound < 3) {
    // Count what remains for the error message.
    while (pos < text.size()) {
      utf8_decode_next(text, pos);
      ++chars;
    }
    throw ConfigError("insufficient text: requested " +
                      std::to_string(requested) + " chars, only " +
                      std::to_string(chars) + " available");
  }

  const auto make = [&](const char* name, int i, std::uint64_t n) {
    return CorpusSplit{
        name, std::string(text.substr(offsets[i], offsets[i + 1] - offsets[i])),
        n};
  };
  return CorpusSlices{make("train", 0, spec.train_chars),
                      make("val", 1, spec.val_chars),
                      make("test", 2, spec.test_chars)};
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("read failure: " + path);
  return ss.str();
}

}  // namespace sigbpe
