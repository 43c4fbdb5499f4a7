#pragma once

#include <string>
#include <string_view>

#include "leadmine/error.hpp"
#include "leadmine/snowball_english.hpp"
#include "leadmine/snowball_italian.hpp"
#include "leadmine/unicode.hpp"

namespace leadmine {

enum class Language { italian, english };

/// Parses an ISO-639-1 code. Only "it" and "en" are supported.
inline Language parse_language(std::string_view code) {
  if (code == "it") return Language::italian;
  if (code == "en") return Language::english;
  throw UnsupportedLanguage(std::string(code));
}

inline std::string_view language_code(Language lang) {
  return lang == Language::italian ? "it" : "en";
}

/// Snowball stem of a lowercase token.
inline std::string stem(std::string_view token, Language lang) {
  std::u32string w = unicode::to_u32(token);
  w = lang == Language::italian ? snowball::stem_italian(std::move(w))
                                : snowball::stem_english(std::move(w));
  return unicode::to_utf8(w);
}

inline std::string stem(std::string_view token, std::string_view lang_code) {
  return stem(token, parse_language(lang_code));
}

}  // namespace leadmine
