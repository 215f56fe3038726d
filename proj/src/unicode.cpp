#include "sigbpe/unicode.hpp"

#include "sigbpe/errors.hpp"

namespace sigbpe {

namespace {

bool is_continuation(unsigned char b) { return (b & 0xC0) == 0x80; }

}  // namespace

char32_t utf8_decode_next(std::string_view text, std::size_t& pos) {
  const std::size_t start = pos;
  const auto bad = [start](const char* what) -> char32_t {
    throw Utf8Error(what, start);
  };

  const unsigned char b0 = static_cast<unsigned char>(text[pos]);
  if (b0 < 0x80) {
    ++pos;
    return b0;
  }

  int len;
  char32_t cp;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    return bad("invalid UTF-8 lead byte");
  }

  if (pos + len > text.size()) return bad("truncated UTF-8 sequence");
  for (int i = 1; i < len; ++i) {
    const unsigned char b = static_cast<unsigned char>(text[pos + i]);
    if (!is_continuation(b)) return bad("invalid UTF-8 continuation byte");
    cp = (cp << 6) | (b & 0x3F);
  }

  static constexpr char32_t kMinForLen[5] = {0, 0, 0x80, 0x800, 0x10000};
  if (cp < kMinForLen[len]) return bad("overlong UTF-8 encoding");
  if (cp >= 0xD800 && cp <= 0xDFFF) return bad("UTF-8 encoded surrogate");
  if (cp > 0x10FFFF) return bad("code point out of range");

  pos += len;
  return cp;
}

void utf8_append(std::string& out, char32_t cp) {
  if ((cp >= 0xD800 && cp <= 0xDFFF) || cp > 0x10FFFF) {
    throw ConfigError("cannot encode invalid code point " +
                      std::to_string(static_cast<std::uint32_t>(cp)));
  }
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

std::string utf8_encode(char32_t cp) {
  std::string s;
  utf8_append(s, cp);
  return s;
}

std::uint64_t utf8_length(std::string_view text) {
  std::uint64_t n = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    utf8_decode_next(text, pos);
    ++n;
  }
  return n;
}

void utf8_validate(std::string_view text) {
  std::size_t pos = 0;
  while (pos < text.size()) utf8_decode_next(text, pos);
}

std::vector<std::string> utf8_chars(std::string_view text) {
  std::vector<std::string> chars;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t start = pos;
    utf8_decode_next(text, pos);
    chars.emplace_back(text.substr(start, pos - start));
  }
  return chars;
}

}  // namespace sigbpe
