#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace sigbpe {

using SymbolId = std::uint32_t;

// Bit flag marking a token id that carries a raw out-of-vocabulary code point
// instead of a vocabulary index.
inline constexpr SymbolId kOovFlag = 0x80000000u;

inline bool is_oov_id(SymbolId id) { return (id & kOovFlag) != 0; }
inline char32_t oov_code_point(SymbolId id) { return id & ~kOovFlag; }
inline SymbolId make_oov_id(char32_t cp) {
  return kOovFlag | static_cast<SymbolId>(cp);
}

// The working sequence Algorithm-style training mutates: ids resolve to
// character strings through a SymbolTable.
using SymbolSequence = std::vector<SymbolId>;

// Packs an adjacent pair into a single map key.
inline std::uint64_t pack_pair(SymbolId left, SymbolId right) {
  return (static_cast<std::uint64_t>(left) << 32) | right;
}
inline SymbolId pair_left(std::uint64_t key) {
  return static_cast<SymbolId>(key >> 32);
}
inline SymbolId pair_right(std::uint64_t key) {
  return static_cast<SymbolId>(key & 0xFFFFFFFFu);
}

// Interning table mapping symbol strings to dense ids. Symbol identity is the
// string: interning an existing string returns the existing id.
class SymbolTable {
 public:
  SymbolId intern(std::string_view s);
  std::optional<SymbolId> find(std::string_view s) const;
  const std::string& str(SymbolId id) const;
  std::size_t size() const { return strings_.size(); }

 private:
  std::vector<std::string> strings_;
  std::unordered_map<std::string, SymbolId> ids_;
};

// Concatenates the symbol strings of `seq` in order.
std::string decode_sequence(const SymbolSequence& seq, const SymbolTable& table);

// 64-bit FNV-1a, used for corpus fingerprints and model checksums.
std::uint64_t fnv1a64(std::string_view data);
std::string fnv1a64_hex(std::string_view data);

}  // namespace sigbpe
