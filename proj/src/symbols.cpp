#include "sigbpe/symbols.hpp"

#include <cstdio>

#include "sigbpe/errors.hpp"

namespace sigbpe {

SymbolId SymbolTable::intern(std::string_view s) {
  auto it = ids_.find(std::string(s));
  if (it != ids_.end()) return it->second;
  const SymbolId id = static_cast<SymbolId>(strings_.size());
  strings_.emplace_back(s);
  ids_.emplace(strings_.back(), id);
  return id;
}

std::optional<SymbolId> SymbolTable::find(std::string_view s) const {
  auto it = ids_.find(std::string(s));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

const std::string& SymbolTable::str(SymbolId id) const {
  if (id >= strings_.size()) {
    throw Error("symbol id " + std::to_string(id) + " not in table");
  }
  return strings_[id];
}

std::string decode_sequence(const SymbolSequence& seq,
                            const SymbolTable& table) {
  std::string out;
  for (SymbolId id : seq) out += table.str(id);
  return out;
}

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string fnv1a64_hex(std::string_view data) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a64(data)));
  return buf;
}

}  // namespace sigbpe
