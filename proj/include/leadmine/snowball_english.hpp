#pragma once

// Snowball English ("Porter2") stemmer, Snowball 3.x rule set.

#include <array>
#include <string>

#include "leadmine/snowball_common.hpp"

namespace leadmine::snowball {

namespace english_detail {

using detail::ends_with;
using detail::longest_suffix;
using detail::replace_suffix;
using detail::Suffix;

inline bool is_vowel(char32_t c) {
  return c == U'a' || c == U'e' || c == U'i' || c == U'o' || c == U'u' || c == U'y';
}

// Vowels plus w, x and the marked consonant Y.
inline bool is_vowel_wxy(char32_t c) {
  return is_vowel(c) || c == U'w' || c == U'x' || c == U'Y';
}

inline bool is_valid_li(char32_t c) {
  switch (c) {
    case U'c': case U'd': case U'e': case U'g': case U'h':
    case U'k': case U'm': case U'n': case U'r': case U't':
      return true;
    default:
      return false;
  }
}

inline constexpr std::array<Suffix, 15> kExceptions{{
    {U"andes", 0}, {U"atlas", 0}, {U"bias", 0}, {U"cosmos", 0}, {U"early", 6},
    {U"gently", 4}, {U"howe", 0}, {U"idly", 3}, {U"news", 0}, {U"only", 7},
    {U"singly", 8}, {U"skies", 2}, {U"skis", 1}, {U"sky", 0}, {U"ugly", 5},
}};
inline constexpr std::array<std::u32string_view, 9> kExceptionForms{
    U"", U"ski", U"sky", U"idl", U"gentl", U"ugli", U"earli", U"onli", U"singl"};

inline constexpr std::array<Suffix, 9> kR1Prefixes{{
    {U"arsen", 0}, {U"commun", 0}, {U"emerg", 0}, {U"gener", 0}, {U"inter", 0},
    {U"later", 0}, {U"organ", 0}, {U"past", 0}, {U"univers", 0},
}};

inline constexpr std::array<Suffix, 6> kStep1a{{
    {U"ied", 2}, {U"s", 3}, {U"ies", 2}, {U"sses", 1}, {U"ss", 0}, {U"us", 0},
}};

inline constexpr std::array<Suffix, 6> kStep1b{{
    {U"ed", 2}, {U"eed", 1}, {U"ing", 3}, {U"edly", 2}, {U"eedly", 1}, {U"ingly", 2},
}};

inline constexpr std::array<Suffix, 7> kIngStems{{
    {U"even", 2}, {U"cann", 2}, {U"inn", 2}, {U"earr", 2}, {U"herr", 2}, {U"out", 2}, {U"y", 1},
}};

inline constexpr std::array<Suffix, 12> kStep1bTail{{
    {U"bb", 2}, {U"dd", 2}, {U"ff", 2}, {U"gg", 2}, {U"bl", 1}, {U"mm", 2},
    {U"nn", 2}, {U"pp", 2}, {U"rr", 2}, {U"at", 1}, {U"tt", 2}, {U"iz", 1},
}};

inline constexpr std::array<Suffix, 25> kStep2{{
    {U"anci", 3}, {U"enci", 2}, {U"ogi", 14}, {U"li", 16}, {U"bli", 12},
    {U"abli", 4}, {U"alli", 8}, {U"fulli", 9}, {U"lessli", 15}, {U"ousli", 10},
    {U"entli", 5}, {U"aliti", 8}, {U"biliti", 12}, {U"iviti", 11}, {U"tional", 1},
    {U"ational", 7}, {U"alism", 8}, {U"ation", 7}, {U"ization", 6}, {U"izer", 6},
    {U"ator", 7}, {U"iveness", 11}, {U"fulness", 9}, {U"ousness", 10}, {U"ogist", 13},
}};
inline constexpr std::array<std::u32string_view, 16> kStep2Forms{
    U"",    U"tion", U"ence", U"ance", U"able", U"ent", U"ize", U"ate",
    U"al",  U"ful",  U"ous",  U"ive",  U"ble",  U"og",  U"og",  U"less"};

inline constexpr std::array<Suffix, 9> kStep3{{
    {U"icate", 4}, {U"ative", 6}, {U"alize", 3}, {U"iciti", 4}, {U"ical", 4},
    {U"tional", 1}, {U"ational", 2}, {U"ful", 5}, {U"ness", 5},
}};
inline constexpr std::array<std::u32string_view, 5> kStep3Forms{U"", U"tion", U"ate", U"al",
                                                                U"ic"};

inline constexpr std::array<Suffix, 18> kStep4{{
    {U"ic", 1}, {U"ance", 1}, {U"ence", 1}, {U"able", 1}, {U"ible", 1}, {U"ate", 1},
    {U"ive", 1}, {U"ize", 1}, {U"iti", 1}, {U"al", 1}, {U"ism", 1}, {U"ion", 2},
    {U"er", 1}, {U"ous", 1}, {U"ant", 1}, {U"ent", 1}, {U"ment", 1}, {U"ement", 1},
}};

/// Short syllable ending exactly at `end`.
inline bool ends_short_syllable(const std::u32string& w, std::size_t end) {
  if (end >= 3 && !is_vowel_wxy(w[end - 1]) && is_vowel(w[end - 2]) && !is_vowel(w[end - 3]))
    return true;
  if (end == 2 && !is_vowel(w[1]) && is_vowel(w[0])) return true;
  return ends_with(std::u32string_view(w).substr(0, end), U"past");
}

inline bool has_vowel(const std::u32string& w, std::size_t end) {
  for (std::size_t i = 0; i < end; ++i)
    if (is_vowel(w[i])) return true;
  return false;
}

class Stemmer {
 public:
  explicit Stemmer(std::u32string word) : w_(std::move(word)) {}

  std::u32string run() {
    if (const Suffix* e = detail::longest_prefix(w_, kExceptions); e && e->text.size() == w_.size()) {
      if (e->rule) w_ = std::u32string(kExceptionForms[static_cast<std::size_t>(e->rule)]);
      return w_;
    }
    if (w_.size() < 3) return w_;
    prelude();
    mark_regions();
    step_1a();
    step_1b();
    step_1c();
    step_2();
    step_3();
    step_4();
    step_5();
    if (y_found_)
      for (auto& c : w_)
        if (c == U'Y') c = U'y';
    return w_;
  }

 private:
  void prelude() {
    if (!w_.empty() && w_[0] == U'\'') w_.erase(0, 1);
    if (!w_.empty() && w_[0] == U'y') {
      w_[0] = U'Y';
      y_found_ = true;
    }
    for (std::size_t i = 1; i < w_.size(); ++i) {
      if (w_[i] == U'y' && is_vowel(w_[i - 1])) {
        w_[i] = U'Y';
        y_found_ = true;
      }
    }
  }

  // Position just past the first vowel-then-non-vowel at or after `from`.
  std::size_t region_after(std::size_t from) const {
    std::size_t i = from;
    while (i < w_.size() && !is_vowel(w_[i])) ++i;
    if (i == w_.size()) return w_.size();
    while (i < w_.size() && is_vowel(w_[i])) ++i;
    if (i == w_.size()) return w_.size();
    return i + 1;
  }

  void mark_regions() {
    if (const Suffix* p = detail::longest_prefix(w_, kR1Prefixes)) {
      p1_ = p->text.size();
    } else {
      p1_ = region_after(0);
    }
    p2_ = p1_ < w_.size() ? region_after(p1_) : w_.size();
  }

  bool in_r1(std::size_t pos) const { return pos >= p1_; }
  bool in_r2(std::size_t pos) const { return pos >= p2_; }

  void step_1a() {
    if (ends_with(w_, U"'s'")) {
      w_.resize(w_.size() - 3);
    } else if (ends_with(w_, U"'s")) {
      w_.resize(w_.size() - 2);
    } else if (ends_with(w_, U"'")) {
      w_.resize(w_.size() - 1);
    }
    const Suffix* s = longest_suffix(w_, kStep1a);
    if (!s) return;
    const std::size_t start = w_.size() - s->text.size();
    switch (s->rule) {
      case 1:
        replace_suffix(w_, s->text.size(), U"ss");
        break;
      case 2:
        replace_suffix(w_, s->text.size(), start >= 2 ? U"i" : U"ie");
        break;
      case 3:
        // Delete the s when a vowel occurs before the letter preceding it.
        if (start >= 1 && has_vowel(w_, start - 1)) w_.pop_back();
        break;
      default:
        break;
    }
  }

  void step_1b() {
    const Suffix* s = longest_suffix(w_, kStep1b);
    if (!s) return;
    const std::size_t start = w_.size() - s->text.size();
    if (s->rule == 1) {
      if (!in_r1(start)) return;
      const std::u32string_view stem = std::u32string_view(w_).substr(0, start);
      if (stem == U"succ" || stem == U"proc" || stem == U"exc") return;
      replace_suffix(w_, s->text.size(), U"ee");
      return;
    }
    if (s->rule == 3) {
      const std::u32string_view stem = std::u32string_view(w_).substr(0, start);
      if (const Suffix* t = longest_suffix(stem, kIngStems)) {
        const std::size_t tstart = start - t->text.size();
        if (t->rule == 1) {
          if (tstart == 1 && !is_vowel(w_[0])) {
            w_.replace(tstart, std::u32string::npos, U"ie");
            return;
          }
        } else if (tstart == 0) {
          return;
        }
      }
    }
    if (!has_vowel(w_, start)) return;
    w_.resize(start);
    const Suffix* t = longest_suffix(w_, kStep1bTail);
    if (!t) {
      if (p1_ == w_.size() && ends_short_syllable(w_, w_.size())) w_.push_back(U'e');
      return;
    }
    if (t->rule == 1) {
      w_.push_back(U'e');
      return;
    }
    // Double consonant: undouble unless the whole word is [aeo] + double.
    if (w_.size() == 3 && (w_[0] == U'a' || w_[0] == U'e' || w_[0] == U'o')) return;
    w_.pop_back();
  }

  void step_1c() {
    const std::size_t n = w_.size();
    if (n < 3) return;
    if (w_[n - 1] != U'y' && w_[n - 1] != U'Y') return;
    if (is_vowel(w_[n - 2])) return;
    w_[n - 1] = U'i';
  }

  void step_2() {
    const Suffix* s = longest_suffix(w_, kStep2);
    if (!s) return;
    const std::size_t start = w_.size() - s->text.size();
    if (!in_r1(start)) return;
    switch (s->rule) {
      case 14:
        if (start == 0 || w_[start - 1] != U'l') return;
        break;
      case 16:
        if (start == 0 || !is_valid_li(w_[start - 1])) return;
        w_.resize(start);
        return;
      default:
        break;
    }
    replace_suffix(w_, s->text.size(), kStep2Forms[static_cast<std::size_t>(s->rule)]);
  }

  void step_3() {
    const Suffix* s = longest_suffix(w_, kStep3);
    if (!s) return;
    const std::size_t start = w_.size() - s->text.size();
    if (!in_r1(start)) return;
    if (s->rule == 5) {
      w_.resize(start);
    } else if (s->rule == 6) {
      if (in_r2(start)) w_.resize(start);
    } else {
      replace_suffix(w_, s->text.size(), kStep3Forms[static_cast<std::size_t>(s->rule)]);
    }
  }

  void step_4() {
    const Suffix* s = longest_suffix(w_, kStep4);
    if (!s) return;
    const std::size_t start = w_.size() - s->text.size();
    if (!in_r2(start)) return;
    if (s->rule == 2 && (start == 0 || (w_[start - 1] != U's' && w_[start - 1] != U't'))) return;
    w_.resize(start);
  }

  void step_5() {
    if (w_.empty()) return;
    const std::size_t start = w_.size() - 1;
    if (w_.back() == U'e') {
      if (in_r2(start) || (in_r1(start) && !ends_short_syllable(w_, start))) w_.pop_back();
    } else if (w_.back() == U'l') {
      if (in_r2(start) && start > 0 && w_[start - 1] == U'l') w_.pop_back();
    }
  }

  std::u32string w_;
  std::size_t p1_ = 0;
  std::size_t p2_ = 0;
  bool y_found_ = false;
};

}  // namespace english_detail

/// Stems one lowercase English word.
inline std::u32string stem_english(std::u32string word) {
  return english_detail::Stemmer(std::move(word)).run();
}

}  // namespace leadmine::snowball
