#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace sigbpe {

// Decodes the UTF-8 sequence starting at byte `pos` and advances `pos` past
// it. Rejects overlong forms, surrogates, out-of-range scalars, and truncated
// sequences. Throws Utf8Error with the offending byte offset.
char32_t utf8_decode_next(std::string_view text, std::size_t& pos);

// Appends the UTF-8 encoding of `cp` to `out`. Throws ConfigError for
// surrogates or code points above U+10FFFF.
void utf8_append(std::string& out, char32_t cp);

std::string utf8_encode(char32_t cp);

// Number of Unicode scalar values in `text`. Throws Utf8Error on bad input.
std::uint64_t utf8_length(std::string_view text);

// Validates the whole string; throws Utf8Error on the first bad byte.
void utf8_validate(std::string_view text);

// Splits `text` into one std::string per Unicode scalar value.
std::vector<std::string> utf8_chars(std::string_view text);

}  // namespace sigbpe
