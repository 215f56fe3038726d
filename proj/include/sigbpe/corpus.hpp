#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace sigbpe {

// One contiguous character slice of the normalized corpus.
struct CorpusSplit {
  std::string name;         // "train", "val" or "test"
  std::string text;         // normalized UTF-8
  std::uint64_t char_count = 0;  // Unicode scalar values in `text`
};

// Requested character counts for the three contiguous splits, in document
// order: train = [0, train_chars), val and test follow.
struct SliceSpec {
  std::uint64_t train_chars = 0;
  std::uint64_t val_chars = 0;
  std::uint64_t test_chars = 0;
};

struct CorpusSlices {
  CorpusSplit train;
  CorpusSplit val;
  CorpusSplit test;
};

// Whitespace normalization applied before any counting or training:
//   \r\n and \r become \n; tabs become single spaces; runs of two or more
//   spaces collapse to one; spaces immediately before a newline are dropped.
// Idempotent. Throws Utf8Error (with byte offset) on invalid input.
std::string normalize(std::string_view raw);

// Cuts the three requested character ranges out of `text`. Character counts
// are Unicode scalar values. Throws ConfigError when `text` is too short,
// reporting available vs. requested.
CorpusSlices slice(std::string_view text, const SliceSpec& spec);

// Reads a whole file as bytes. Throws IoError.
std::string read_text_file(const std::string& path);

}  // namespace sigbpe
