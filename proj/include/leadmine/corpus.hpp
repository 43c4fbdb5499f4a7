#pragma once

// Tweet corpora: JSON Lines ingestion, filtering and period partitioning.

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include <nlohmann/json.hpp>

#include "leadmine/error.hpp"
#include "leadmine/textprep.hpp"

namespace leadmine {

using Timestamp = std::chrono::sys_time<std::chrono::microseconds>;

/// Parses an RFC 3339 date-time ("2016-01-12T08:30:00Z",
/// "2016-01-12T09:30:00.25+01:00") into a UTC instant.
inline Timestamp parse_rfc3339(std::string_view s) {
  auto fail = [&]() -> Timestamp {
    throw ParseError("invalid RFC 3339 timestamp '" + std::string(s) + "'");
  };
  auto digits = [&](std::size_t pos, std::size_t n) -> int {
    if (pos + n > s.size()) fail();
    int v = 0;
    for (std::size_t i = pos; i < pos + n; ++i) {
      if (s[i] < '0' || s[i] > '9') fail();
      v = v * 10 + (s[i] - '0');
    }
    return v;
  };
  auto expect = [&](std::size_t pos, std::string_view chars) {
    if (pos >= s.size() || chars.find(s[pos]) == std::string_view::npos) fail();
  };
  const int year = digits(0, 4);
  expect(4, "-");
  const int mon = digits(5, 2);
  expect(7, "-");
  const int day = digits(8, 2);
  expect(10, "Tt ");
  const int hh = digits(11, 2);
  expect(13, ":");
  const int mm = digits(14, 2);
  expect(16, ":");
  const int ss = digits(17, 2);
  std::size_t pos = 19;
  long long micros = 0;
  if (pos < s.size() && s[pos] == '.') {
    ++pos;
    const std::size_t begin = pos;
    long long scale = 100000;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') {
      micros += (s[pos] - '0') * scale;
      scale /= 10;
      ++pos;
    }
    if (pos == begin) fail();
  }
  int offset_min = 0;
  if (pos < s.size() && (s[pos] == 'Z' || s[pos] == 'z')) {
    ++pos;
  } else if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
    const int sign = s[pos] == '+' ? 1 : -1;
    const int oh = digits(pos + 1, 2);
    expect(pos + 3, ":");
    const int om = digits(pos + 4, 2);
    offset_min = sign * (oh * 60 + om);
    pos += 6;
  } else {
    fail();
  }
  if (pos != s.size()) fail();
  using namespace std::chrono;
  const year_month_day ymd{std::chrono::year{year}, month{static_cast<unsigned>(mon)},
                           std::chrono::day{static_cast<unsigned>(day)}};
  if (!ymd.ok() || hh > 23 || mm > 59 || ss > 60) fail();
  return Timestamp{sys_days{ymd}.time_since_epoch() + hours{hh} + minutes{mm} + seconds{ss} +
                   microseconds{micros} - minutes{offset_min}};
}

/// UTC rendering with a `Z` suffix; fractional seconds only when non-zero.
inline std::string format_rfc3339(Timestamp t) {
  using namespace std::chrono;
  const auto day_point = floor<days>(t);
  const year_month_day ymd{day_point};
  const auto tod = t - day_point;
  const auto h = duration_cast<hours>(tod);
  const auto m = duration_cast<minutes>(tod - h);
  const auto sec = duration_cast<seconds>(tod - h - m);
  const auto us = (tod - h - m - sec).count();
  char buf[48];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02lld", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                static_cast<int>(h.count()), static_cast<int>(m.count()),
                static_cast<long long>(sec.count()));
  std::string out(buf);
  if (us != 0) {
    std::snprintf(buf, sizeof buf, ".%06lld", static_cast<long long>(us));
    out += buf;
  }
  return out + "Z";
}

struct Tweet {
  std::string id;
  Timestamp timestamp{};
  std::string author;
  std::string text;
  std::string lang;

  friend bool operator==(const Tweet&, const Tweet&) = default;
};

struct CorpusMeta {
  std::string company;
  std::string period_label;

  friend bool operator==(const CorpusMeta&, const CorpusMeta&) = default;
};

class DuplicateIdError : public Error {
 public:
  explicit DuplicateIdError(const std::string& id)
      : Error("duplicate tweet id '" + id + "'"), id_(id) {}
  const std::string& id() const noexcept { return id_; }

 private:
  std::string id_;
};

namespace corpus_detail {
inline bool blank(std::string_view s) {
  return s.find_first_not_of(" \t\r\n\f\v") == std::string_view::npos;
}
}  // namespace corpus_detail

/// Ordered, immutable collection of tweets with unique ids.
class Corpus {
 public:
  Corpus() = default;
  explicit Corpus(CorpusMeta meta, std::vector<Tweet> tweets = {})
      : meta_(std::move(meta)), tweets_(std::move(tweets)) {
    std::unordered_set<std::string_view> seen;
    for (const auto& t : tweets_) {
      if (t.id.empty()) throw InvalidArgument("tweet id must be non-empty");
      if (corpus_detail::blank(t.text))
        throw InvalidArgument("tweet '" + t.id + "' has empty text");
      if (!seen.insert(t.id).second) throw DuplicateIdError(t.id);
    }
  }

  const CorpusMeta& meta() const noexcept { return meta_; }
  const std::vector<Tweet>& tweets() const noexcept { return tweets_; }
  std::size_t size() const noexcept { return tweets_.size(); }
  bool empty() const noexcept { return tweets_.empty(); }
  auto begin() const noexcept { return tweets_.begin(); }
  auto end() const noexcept { return tweets_.end(); }

  friend bool operator==(const Corpus&, const Corpus&) = default;

 private:
  CorpusMeta meta_;
  std::vector<Tweet> tweets_;
};

/// Parses a JSON Lines corpus. Blank lines are skipped; unknown keys ignored.
inline Corpus read_corpus(std::istream& in, CorpusMeta meta) {
  std::vector<Tweet> tweets;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (corpus_detail::blank(line)) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(std::string("malformed JSON: ") + e.what(), lineno);
    }
    if (!j.is_object()) throw ParseError("expected a JSON object", lineno);
    auto field = [&](const char* key) -> std::string {
      auto it = j.find(key);
      if (it == j.end()) throw ParseError(std::string("missing key '") + key + "'", lineno);
      if (!it->is_string()) throw ParseError(std::string("key '") + key + "' must be a string", lineno);
      return it->get<std::string>();
    };
    Tweet t;
    t.id = field("id");
    if (t.id.empty()) throw ParseError("empty id", lineno);
    try {
      t.timestamp = parse_rfc3339(field("timestamp"));
    } catch (const ParseError& e) {
      throw ParseError(e.what(), lineno);
    }
    t.author = field("author");
    t.text = field("text");
    if (corpus_detail::blank(t.text)) throw ParseError("empty text for id '" + t.id + "'", lineno);
    t.lang = field("lang");
    if (!seen.insert(t.id).second) throw DuplicateIdError(t.id);
    tweets.push_back(std::move(t));
  }
  return Corpus(std::move(meta), std::move(tweets));
}

inline Corpus load_corpus(const std::string& path, CorpusMeta meta) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open corpus file '" + path + "'");
  return read_corpus(in, std::move(meta));
}

inline void write_corpus(std::ostream& out, const Corpus& c) {
  for (const auto& t : c) {
    nlohmann::json j{{"id", t.id},
                     {"timestamp", format_rfc3339(t.timestamp)},
                     {"author", t.author},
                     {"text", t.text},
                     {"lang", t.lang}};
    out << j.dump() << '\n';
  }
}

inline void save_corpus(const std::string& path, const Corpus& c) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write corpus file '" + path + "'");
  write_corpus(out, c);
}

enum class FilterReason { spam, negative_sentiment, language, custom };

inline std::string_view to_string(FilterReason r) {
  switch (r) {
    case FilterReason::spam: return "spam";
    case FilterReason::negative_sentiment: return "negative_sentiment";
    case FilterReason::language: return "language";
    case FilterReason::custom: return "custom";
  }
  return "custom";
}

struct FilterReport {
  std::size_t removed_count = 0;
  double removed_fraction = 0.0;
  FilterReason reason = FilterReason::custom;
};

struct FilterResult {
  Corpus kept;
  FilterReport report;
};

/// `predicate` returns true for tweets to remove.
using TweetPredicate = std::function<bool(const Tweet&)>;

inline FilterResult filter_corpus(const Corpus& c, const TweetPredicate& predicate,
                                  FilterReason reason) {
  std::vector<Tweet> kept;
  kept.reserve(c.size());
  for (const auto& t : c)
    if (!predicate(t)) kept.push_back(t);
  FilterReport rep;
  rep.reason = reason;
  rep.removed_count = c.size() - kept.size();
  rep.removed_fraction =
      c.empty() ? 0.0 : static_cast<double>(rep.removed_count) / static_cast<double>(c.size());
  return {Corpus(c.meta(), std::move(kept)), rep};
}

/// Marks tweets whose `lang` differs from `lang_code`.
inline TweetPredicate language_filter(std::string lang_code) {
  return [code = std::move(lang_code)](const Tweet& t) { return t.lang != code; };
}

/// Text with URLs removed and whitespace collapsed, used for duplicate
/// detection.
inline std::string strip_urls(std::string_view text) {
  std::string out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    const std::size_t b = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (b == i) break;
    std::string_view word = text.substr(b, i - b);
    if (textprep_detail::is_url_start(unicode::to_u32(word))) continue;
    if (!out.empty()) out.push_back(' ');
    out.append(word);
  }
  return out;
}

/// Bot heuristic: marks a tweet whose URL-stripped text is an exact
/// duplicate of tweets by at least `min_other_authors` (default 3) other
/// distinct authors.
inline TweetPredicate duplicate_bot_filter(const Corpus& c, std::size_t min_other_authors = 3) {
  std::map<std::string, std::set<std::string>> authors_by_text;
  for (const auto& t : c) authors_by_text[strip_urls(t.text)].insert(t.author);
  std::unordered_set<std::string> flagged;
  for (const auto& t : c) {
    const auto& authors = authors_by_text[strip_urls(t.text)];
    const std::size_t others = authors.size() - (authors.contains(t.author) ? 1 : 0);
    if (others >= min_other_authors) flagged.insert(t.id);
  }
  return [flagged = std::move(flagged)](const Tweet& t) { return flagged.contains(t.id); };
}

struct PeriodPartition {
  std::vector<Corpus> buckets;
  std::size_t dropped = 0;
};

/// Half-open buckets [boundaries[i], boundaries[i+1]) labelled P1, P2, ...
inline PeriodPartition partition_by_period(const Corpus& c, const std::vector<Timestamp>& boundaries) {
  if (boundaries.size() < 2) throw InvalidArgument("period partition needs at least two boundaries");
  for (std::size_t i = 1; i < boundaries.size(); ++i)
    if (!(boundaries[i - 1] < boundaries[i]))
      throw InvalidArgument("period boundaries must be strictly increasing");
  std::vector<std::vector<Tweet>> parts(boundaries.size() - 1);
  PeriodPartition out;
  for (const auto& t : c) {
    auto it = std::upper_bound(boundaries.begin(), boundaries.end(), t.timestamp);
    if (it == boundaries.begin() || it == boundaries.end()) {
      ++out.dropped;
      continue;
    }
    parts[static_cast<std::size_t>(it - boundaries.begin() - 1)].push_back(t);
  }
  for (std::size_t i = 0; i < parts.size(); ++i)
    out.buckets.emplace_back(CorpusMeta{c.meta().company, "P" + std::to_string(i + 1)},
                             std::move(parts[i]));
  return out;
}

}  // namespace leadmine
