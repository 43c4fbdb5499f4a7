#pragma once

// Tweet text -> stemmed, stopword-free token list.

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "leadmine/stem.hpp"
#include "leadmine/stopwords.hpp"
#include "leadmine/unicode.hpp"

namespace leadmine {

/// Ordered lowercase tokens of one document.
using TokenList = std::vector<std::string>;

namespace textprep_detail {

inline bool starts_with_ci(std::u32string_view s, std::u32string_view prefix) {
  if (s.size() < prefix.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i)
    if (unicode::to_lower(s[i]) != prefix[i]) return false;
  return true;
}

inline bool is_url_start(std::u32string_view s) {
  return starts_with_ci(s, U"http://") || starts_with_ci(s, U"https://") ||
         starts_with_ci(s, U"www.");
}

inline bool is_handle_char(char32_t c) {
  return c == U'_' || (c < 0x80 && (std::isalnum(static_cast<int>(c)) != 0));
}

}  // namespace textprep_detail

/// Splits text into lowercase letter-only tokens.
///
/// The text is NFC-normalized first. URLs (http://, https://, www.) are
/// dropped up to the next whitespace, @-mentions are dropped, and hashtags
/// keep their body. Any character that is not a letter (punctuation, digits,
/// apostrophes, symbols) separates tokens; combining marks left over after
/// NFC are discarded.
inline TokenList tokenize(std::string_view text) {
  using namespace textprep_detail;
  const std::u32string s = unicode::to_u32(unicode::nfc(text));
  TokenList out;
  std::u32string cur;
  auto flush = [&] {
    if (!cur.empty()) out.push_back(unicode::to_utf8(cur));
    cur.clear();
  };
  std::size_t i = 0;
  while (i < s.size()) {
    const char32_t c = s[i];
    if (unicode::is_space(c)) {
      flush();
      ++i;
    } else if (is_url_start(std::u32string_view(s).substr(i))) {
      flush();
      while (i < s.size() && !unicode::is_space(s[i])) ++i;
    } else if (c == U'@') {
      flush();
      ++i;
      while (i < s.size() && is_handle_char(s[i])) ++i;
    } else if (unicode::is_letter(c)) {
      cur.push_back(unicode::to_lower(c));
      ++i;
    } else if (unicode::is_mark(c)) {
      ++i;
    } else {
      flush();
      ++i;
    }
  }
  flush();
  return out;
}

inline TokenList remove_stopwords(const TokenList& tokens, const StopwordSet& stopwords) {
  TokenList out;
  out.reserve(tokens.size());
  for (const auto& t : tokens)
    if (!stopwords.contains(t)) out.push_back(t);
  return out;
}

/// Full pipeline: tokenize, drop stopwords, stem each remaining token.
inline TokenList preprocess(std::string_view text, Language lang, const StopwordSet& stopwords) {
  TokenList tokens = remove_stopwords(tokenize(text), stopwords);
  for (auto& t : tokens) t = stem(t, lang);
  return tokens;
}

/// Preprocessing settings bundled with a trained model so classification
/// reuses the exact training-time pipeline.
struct PreprocessConfig {
  Language language = Language::italian;
  StopwordSet stopwords = default_stopwords(Language::italian);

  static PreprocessConfig defaults(Language lang) { return {lang, default_stopwords(lang)}; }

  TokenList operator()(std::string_view text) const { return preprocess(text, language, stopwords); }
};

}  // namespace leadmine
