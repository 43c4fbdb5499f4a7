#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>

namespace leadmine::snowball::detail {

/// One row of a suffix table: the suffix and the rule it selects.
struct Suffix {
  std::u32string_view text;
  int rule;
};

inline bool ends_with(std::u32string_view w, std::u32string_view s) {
  return w.size() >= s.size() && w.substr(w.size() - s.size()) == s;
}

inline bool starts_with(std::u32string_view w, std::u32string_view s) {
  return w.size() >= s.size() && w.substr(0, s.size()) == s;
}

/// Longest table entry that is a suffix of `w` and starts at or after
/// `floor`. Returns nullptr when nothing matches.
inline const Suffix* longest_suffix(std::u32string_view w, std::span<const Suffix> table,
                                    std::size_t floor = 0) {
  const Suffix* best = nullptr;
  for (const auto& s : table) {
    if (w.size() < s.text.size() || w.size() - s.text.size() < floor) continue;
    if (!ends_with(w, s.text)) continue;
    if (!best || s.text.size() > best->text.size()) best = &s;
  }
  return best;
}

inline const Suffix* longest_prefix(std::u32string_view w, std::span<const Suffix> table) {
  const Suffix* best = nullptr;
  for (const auto& s : table) {
    if (starts_with(w, s.text) && (!best || s.text.size() > best->text.size())) best = &s;
  }
  return best;
}

inline void replace_suffix(std::u32string& w, std::size_t len, std::u32string_view with) {
  w.replace(w.size() - len, len, with);
}

}  // namespace leadmine::snowball::detail
