#pragma once

// Standard Snowball stopword lists for English and Italian.

#include <array>
#include <fstream>
#include <string>
#include <string_view>
#include <unordered_set>

#include "leadmine/error.hpp"
#include "leadmine/stem.hpp"

namespace leadmine {

using StopwordSet = std::unordered_set<std::string>;

namespace stopword_data {

inline constexpr std::array<std::string_view, 174> kEnglish{
    "i", "me", "my", "myself", "we", "our", "ours", "ourselves", "you", "your", "yours",
    "yourself", "yourselves", "he", "him", "his", "himself", "she", "her", "hers", "herself",
    "it", "its", "itself", "they", "them", "their", "theirs", "themselves", "what", "which",
    "who", "whom", "this", "that", "these", "those", "am", "is", "are", "was", "were", "be",
    "been", "being", "have", "has", "had", "having", "do", "does", "did", "doing", "would",
    "should", "could", "ought", "i'm", "you're", "he's", "she's", "it's", "we're", "they're",
    "i've", "you've", "we've", "they've", "i'd", "you'd", "he'd", "she'd", "we'd", "they'd",
    "i'll", "you'll", "he'll", "she'll", "we'll", "they'll", "isn't", "aren't", "wasn't",
    "weren't", "hasn't", "haven't", "hadn't", "doesn't", "don't", "didn't", "won't",
    "wouldn't", "shan't", "shouldn't", "can't", "cannot", "couldn't", "mustn't", "let's",
    "that's", "who's", "what's", "here's", "there's", "when's", "where's", "why's", "how's",
    "a", "an", "the", "and", "but", "if", "or", "because", "as", "until", "while", "of", "at",
    "by", "for", "with", "about", "against", "between", "into", "through", "during", "before",
    "after", "above", "below", "to", "from", "up", "down", "in", "out", "on", "off", "over",
    "under", "again", "further", "then", "once", "here", "there", "when", "where", "why",
    "how", "all", "any", "both", "each", "few", "more", "most", "other", "some", "such", "no",
    "nor", "not", "only", "own", "same", "so", "than", "too", "very"};

inline constexpr std::array<std::string_view, 279> kItalian{
    "ad", "al", "allo", "ai", "agli", "all", "agl", "alla", "alle", "con", "col", "coi", "da",
    "dal", "dallo", "dai", "dagli", "dall", "dagl", "dalla", "dalle", "di", "del", "dello",
    "dei", "degli", "dell", "degl", "della", "delle", "in", "nel", "nello", "nei", "negli",
    "nell", "negl", "nella", "nelle", "su", "sul", "sullo", "sui", "sugli", "sull", "sugl",
    "sulla", "sulle", "per", "tra", "contro", "io", "tu", "lui", "lei", "noi", "voi", "loro",
    "mio", "mia", "miei", "mie", "tuo", "tua", "tuoi", "tue", "suo", "sua", "suoi", "sue",
    "nostro", "nostra", "nostri", "nostre", "vostro", "vostra", "vostri", "vostre", "mi", "ti",
    "ci", "vi", "lo", "la", "li", "le", "gli", "ne", "il", "un", "uno", "una", "ma", "ed",
    "se", "perché", "anche", "come", "dov", "dove", "che", "chi", "cui", "non", "più",
    "quale", "quanto", "quanti", "quanta", "quante", "quello", "quelli", "quella", "quelle",
    "questo", "questi", "questa", "queste", "si", "tutto", "tutti", "a", "c", "e", "i", "l",
    "o", "ho", "hai", "ha", "abbiamo", "avete", "hanno", "abbia", "abbiate", "abbiano",
    "avrò", "avrai", "avrà", "avremo", "avrete", "avranno", "avrei", "avresti", "avrebbe",
    "avremmo", "avreste", "avrebbero", "avevo", "avevi", "aveva", "avevamo", "avevate",
    "avevano", "ebbi", "avesti", "ebbe", "avemmo", "aveste", "ebbero", "avessi", "avesse",
    "avessimo", "avessero", "avendo", "avuto", "avuta", "avuti", "avute", "sono", "sei", "è",
    "siamo", "siete", "sia", "siate", "siano", "sarò", "sarai", "sarà", "saremo", "sarete",
    "saranno", "sarei", "saresti", "sarebbe", "saremmo", "sareste", "sarebbero", "ero", "eri",
    "era", "eravamo", "eravate", "erano", "fui", "fosti", "fu", "fummo", "foste", "furono",
    "fossi", "fosse", "fossimo", "fossero", "essendo", "faccio", "fai", "facciamo", "fanno",
    "faccia", "facciate", "facciano", "farò", "farai", "farà", "faremo", "farete", "faranno",
    "farei", "faresti", "farebbe", "faremmo", "fareste", "farebbero", "facevo", "facevi",
    "faceva", "facevamo", "facevate", "facevano", "feci", "facesti", "fece", "facemmo",
    "faceste", "fecero", "facessi", "facesse", "facessimo", "facessero", "facendo", "sto",
    "stai", "sta", "stiamo", "stanno", "stia", "stiate", "stiano", "starò", "starai", "starà",
    "staremo", "starete", "staranno", "starei", "staresti", "starebbe", "staremmo",
    "stareste", "starebbero", "stavo", "stavi", "stava", "stavamo", "stavate", "stavano",
    "stetti", "stesti", "stette", "stemmo", "steste", "stettero", "stessi", "stesse",
    "stessimo", "stessero", "stando"};

}  // namespace stopword_data

inline StopwordSet default_stopwords(Language lang) {
  StopwordSet out;
  if (lang == Language::english) {
    for (auto w : stopword_data::kEnglish) out.emplace(w);
  } else {
    for (auto w : stopword_data::kItalian) out.emplace(w);
  }
  return out;
}

/// Reads a UTF-8 stopword file, one word per line. Blank lines are skipped;
/// entries are NFC-normalized and lowercased.
inline StopwordSet load_stopwords(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open stopword file '" + path + "'");
  StopwordSet out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::u32string w = unicode::to_u32(unicode::nfc(line));
    std::u32string cleaned;
    for (char32_t c : w)
      if (!unicode::is_space(c)) cleaned.push_back(unicode::to_lower(c));
    if (!cleaned.empty()) out.insert(unicode::to_utf8(cleaned));
  }
  return out;
}

}  // namespace leadmine
