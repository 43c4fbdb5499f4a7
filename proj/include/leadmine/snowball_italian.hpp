#pragma once

// Snowball Italian stemmer, Snowball 3.x rule set (elision stripping
// included).

#include <array>
#include <string>

#include "leadmine/snowball_common.hpp"

namespace leadmine::snowball {

namespace italian_detail {

using detail::ends_with;
using detail::longest_suffix;
using detail::replace_suffix;
using detail::Suffix;

inline bool is_vowel(char32_t c) {
  switch (c) {
    case U'a': case U'e': case U'i': case U'o': case U'u':
    case U'à': case U'è': case U'ì': case U'ò': case U'ù':
      return true;
    default:
      return false;
  }
}

inline bool is_aeio(char32_t c) {
  switch (c) {
    case U'a': case U'e': case U'i': case U'o':
    case U'à': case U'è': case U'ì': case U'ò':
      return true;
    default:
      return false;
  }
}

inline constexpr std::array<Suffix, 16> kElisions{{
    {U"all'", 0}, {U"d'", 0}, {U"dall'", 0}, {U"dell'", 0}, {U"gl'", 0}, {U"l'", 0},
    {U"m'", 0}, {U"nell'", 0}, {U"quell'", 0}, {U"quest'", 0}, {U"s'", 0}, {U"sull'", 0},
    {U"t'", 0}, {U"tutt'", 0}, {U"un'", 0}, {U"v'", 0},
}};

inline constexpr std::array<Suffix, 37> kPronouns{{
    {U"la", 0},     {U"cela", 0},   {U"gliela", 0}, {U"mela", 0},   {U"tela", 0},
    {U"vela", 0},   {U"le", 0},     {U"cele", 0},   {U"gliele", 0}, {U"mele", 0},
    {U"tele", 0},   {U"vele", 0},   {U"ne", 0},     {U"cene", 0},   {U"gliene", 0},
    {U"mene", 0},   {U"sene", 0},   {U"tene", 0},   {U"vene", 0},   {U"ci", 0},
    {U"li", 0},     {U"celi", 0},   {U"glieli", 0}, {U"meli", 0},   {U"teli", 0},
    {U"veli", 0},   {U"gli", 0},    {U"mi", 0},     {U"si", 0},     {U"ti", 0},
    {U"vi", 0},     {U"lo", 0},     {U"celo", 0},   {U"glielo", 0}, {U"melo", 0},
    {U"telo", 0},   {U"velo", 0},
}};

inline constexpr std::array<Suffix, 5> kPronounHosts{{
    {U"ando", 1}, {U"endo", 1}, {U"ar", 2}, {U"er", 2}, {U"ir", 2},
}};

inline constexpr std::array<Suffix, 51> kStandard{{
    {U"ica", 1},    {U"logia", 3},  {U"osa", 1},    {U"ista", 1},   {U"iva", 9},
    {U"anza", 1},   {U"enza", 5},   {U"ice", 1},    {U"atrice", 1}, {U"iche", 1},
    {U"logie", 3},  {U"abile", 1},  {U"ibile", 1},  {U"usione", 4}, {U"azione", 2},
    {U"uzione", 4}, {U"atore", 2},  {U"ose", 1},    {U"ante", 1},   {U"mente", 1},
    {U"amente", 7}, {U"iste", 1},   {U"ive", 9},    {U"anze", 1},   {U"enze", 5},
    {U"ici", 1},    {U"atrici", 1}, {U"ichi", 1},   {U"abili", 1},  {U"ibili", 1},
    {U"ismi", 1},   {U"usioni", 4}, {U"azioni", 2}, {U"uzioni", 4}, {U"atori", 2},
    {U"osi", 1},    {U"anti", 1},   {U"amenti", 6}, {U"imenti", 6}, {U"isti", 1},
    {U"ivi", 9},    {U"ico", 1},    {U"ismo", 1},   {U"oso", 1},    {U"amento", 6},
    {U"imento", 6}, {U"ivo", 9},    {U"ità", 8},    {U"istà", 1},   {U"istè", 1},
    {U"istì", 1},
}};

inline constexpr std::array<Suffix, 4> kAfterAmente{{
    {U"ic", 0}, {U"abil", 0}, {U"os", 0}, {U"iv", 1},
}};

inline constexpr std::array<Suffix, 3> kAfterIta{{
    {U"ic", 0}, {U"abil", 0}, {U"iv", 0},
}};

inline constexpr std::array<Suffix, 87> kVerb{{
    {U"isca", 1},     {U"enda", 1},     {U"ata", 1},      {U"ita", 1},      {U"uta", 1},
    {U"ava", 1},      {U"eva", 1},      {U"iva", 1},      {U"erebbe", 1},   {U"irebbe", 1},
    {U"isce", 1},     {U"ende", 1},     {U"are", 1},      {U"ere", 1},      {U"ire", 1},
    {U"asse", 1},     {U"ate", 1},      {U"avate", 1},    {U"evate", 1},    {U"ivate", 1},
    {U"ete", 1},      {U"erete", 1},    {U"irete", 1},    {U"ite", 1},      {U"ereste", 1},
    {U"ireste", 1},   {U"ute", 1},      {U"erai", 1},     {U"irai", 1},     {U"isci", 1},
    {U"endi", 1},     {U"erei", 1},     {U"irei", 1},     {U"assi", 1},     {U"ati", 1},
    {U"iti", 1},      {U"eresti", 1},   {U"iresti", 1},   {U"uti", 1},      {U"avi", 1},
    {U"evi", 1},      {U"ivi", 1},      {U"isco", 1},     {U"ando", 1},     {U"endo", 1},
    {U"Yamo", 1},     {U"iamo", 1},     {U"avamo", 1},    {U"evamo", 1},    {U"ivamo", 1},
    {U"eremo", 1},    {U"iremo", 1},    {U"assimo", 1},   {U"ammo", 1},     {U"emmo", 1},
    {U"eremmo", 1},   {U"iremmo", 1},   {U"immo", 1},     {U"ano", 1},      {U"iscano", 1},
    {U"avano", 1},    {U"evano", 1},    {U"ivano", 1},    {U"eranno", 1},   {U"iranno", 1},
    {U"ono", 1},      {U"iscono", 1},   {U"arono", 1},    {U"erono", 1},    {U"irono", 1},
    {U"erebbero", 1}, {U"irebbero", 1}, {U"assero", 1},   {U"essero", 1},   {U"issero", 1},
    {U"ato", 1},      {U"ito", 1},      {U"uto", 1},      {U"avo", 1},      {U"evo", 1},
    {U"ivo", 1},      {U"ar", 1},       {U"ir", 1},       {U"erà", 1},      {U"irà", 1},
    {U"erò", 1},      {U"irò", 1},
}};

class Stemmer {
 public:
  explicit Stemmer(std::u32string word) : w_(std::move(word)) {}

  std::u32string run() {
    strip_elision();
    prelude();
    mark_regions();
    attached_pronoun();
    if (!standard_suffix()) verb_suffix();
    vowel_suffix();
    for (auto& c : w_) {
      if (c == U'I') c = U'i';
      else if (c == U'U') c = U'u';
    }
    return w_;
  }

 private:
  void strip_elision() {
    const Suffix* p = detail::longest_prefix(w_, kElisions);
    if (p && p->text.size() < w_.size()) w_.erase(0, p->text.size());
  }

  void prelude() {
    for (std::size_t i = 0; i < w_.size(); ++i) {
      switch (w_[i]) {
        case U'á': w_[i] = U'à'; break;
        case U'é': w_[i] = U'è'; break;
        case U'í': w_[i] = U'ì'; break;
        case U'ó': w_[i] = U'ò'; break;
        case U'ú': w_[i] = U'ù'; break;
        case U'q':
          if (i + 1 < w_.size() && w_[i + 1] == U'u') w_[++i] = U'U';
          break;
        default:
          break;
      }
    }
    // u or i between two vowels is treated as a consonant.
    for (std::size_t i = 0; i + 2 < w_.size(); ++i) {
      if (!is_vowel(w_[i]) || !is_vowel(w_[i + 2])) continue;
      if (w_[i + 1] == U'u') w_[i + 1] = U'U';
      else if (w_[i + 1] == U'i') w_[i + 1] = U'I';
    }
  }

  std::size_t find_vowel(std::size_t from) const {
    while (from < w_.size() && !is_vowel(w_[from])) ++from;
    return from;
  }
  std::size_t find_consonant(std::size_t from) const {
    while (from < w_.size() && is_vowel(w_[from])) ++from;
    return from;
  }

  std::size_t region_after(std::size_t from) const {
    std::size_t i = find_vowel(from);
    if (i == w_.size()) return w_.size();
    i = find_consonant(i);
    return i == w_.size() ? w_.size() : i + 1;
  }

  void mark_regions() {
    const std::size_t n = w_.size();
    pv_ = n;
    if (n >= 2) {
      if (is_vowel(w_[0])) {
        if (!is_vowel(w_[1])) {
          const std::size_t k = find_vowel(2);
          if (k < n) pv_ = k + 1;
        } else {
          const std::size_t k = find_consonant(2);
          if (k < n) pv_ = k + 1;
        }
      } else if (detail::starts_with(w_, U"divan")) {
        pv_ = 5;
      } else if (!is_vowel(w_[1])) {
        const std::size_t k = find_vowel(2);
        if (k < n) pv_ = k + 1;
      } else if (n >= 3) {
        pv_ = 3;
      }
    }
    p1_ = region_after(0);
    p2_ = p1_ < n ? region_after(p1_) : n;
  }

  std::size_t suffix_start(const Suffix& s) const { return w_.size() - s.text.size(); }

  void attached_pronoun() {
    const Suffix* p = longest_suffix(w_, kPronouns);
    if (!p) return;
    const std::size_t pstart = suffix_start(*p);
    const std::u32string_view host = std::u32string_view(w_).substr(0, pstart);
    const Suffix* h = longest_suffix(host, kPronounHosts);
    if (!h || pstart - h->text.size() < pv_) return;
    replace_suffix(w_, p->text.size(), h->rule == 1 ? U"" : U"e");
  }

  // Deletes `suffix` at the end of the word if it starts inside R2.
  bool delete_in_r2(std::u32string_view suffix) {
    if (!ends_with(w_, suffix) || w_.size() - suffix.size() < p2_) return false;
    w_.resize(w_.size() - suffix.size());
    return true;
  }

  bool standard_suffix() {
    const Suffix* s = longest_suffix(w_, kStandard);
    if (!s) return false;
    const std::size_t start = suffix_start(*s);
    const bool r2 = start >= p2_;
    switch (s->rule) {
      case 1:
        if (!r2) return false;
        w_.resize(start);
        break;
      case 2:
        if (!r2) return false;
        w_.resize(start);
        delete_in_r2(U"ic");
        break;
      case 3:
        if (!r2) return false;
        replace_suffix(w_, s->text.size(), U"log");
        break;
      case 4:
        if (!r2) return false;
        replace_suffix(w_, s->text.size(), U"u");
        break;
      case 5:
        if (!r2) return false;
        replace_suffix(w_, s->text.size(), U"ente");
        break;
      case 6:
        if (start < pv_) return false;
        w_.resize(start);
        break;
      case 7: {
        if (start < p1_) return false;
        w_.resize(start);
        const Suffix* t = longest_suffix(w_, kAfterAmente);
        if (t && suffix_start(*t) >= p2_) {
          w_.resize(suffix_start(*t));
          if (t->rule == 1) delete_in_r2(U"at");
        }
        break;
      }
      case 8: {
        if (!r2) return false;
        w_.resize(start);
        const Suffix* t = longest_suffix(w_, kAfterIta);
        if (t && suffix_start(*t) >= p2_) w_.resize(suffix_start(*t));
        break;
      }
      default:  // iva, ive, ivi, ivo
        if (!r2) return false;
        w_.resize(start);
        if (delete_in_r2(U"at")) delete_in_r2(U"ic");
        break;
    }
    return true;
  }

  void verb_suffix() {
    // Only suffixes lying entirely inside RV are candidates.
    const Suffix* s = longest_suffix(w_, kVerb, pv_);
    if (s) w_.resize(suffix_start(*s));
  }

  void vowel_suffix() {
    if (!w_.empty() && is_aeio(w_.back()) && w_.size() - 1 >= pv_) {
      w_.pop_back();
      if (!w_.empty() && w_.back() == U'i' && w_.size() - 1 >= pv_) w_.pop_back();
    }
    const std::size_t n = w_.size();
    if (n >= 2 && w_[n - 1] == U'h' && (w_[n - 2] == U'c' || w_[n - 2] == U'g') && n - 2 >= pv_)
      w_.pop_back();
  }

  std::u32string w_;
  std::size_t pv_ = 0;
  std::size_t p1_ = 0;
  std::size_t p2_ = 0;
};

}  // namespace italian_detail

/// Stems one lowercase Italian word.
inline std::u32string stem_italian(std::u32string word) {
  return italian_detail::Stemmer(std::move(word)).run();
}

}  // namespace leadmine::snowball
