#pragma once

// Per-group leadership-area distributions, balance profiles, report
// rendering, and the questionnaire Leadership Index.

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <map>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "leadmine/corpus.hpp"
#include "leadmine/error.hpp"
#include "leadmine/labels.hpp"

namespace leadmine {

struct GroupKey {
  std::string company;
  std::string period;

  friend bool operator==(const GroupKey&, const GroupKey&) = default;
};

/// "d.dd" for count/total*100, rounded half-up exactly in integers.
inline std::string format_percentage(std::uint64_t count, std::uint64_t total) {
  if (total == 0) throw InvalidArgument("percentage of an empty total");
  const std::uint64_t hundredths = (count * 20000 + total) / (2 * total);
  std::string frac = std::to_string(hundredths % 100);
  if (frac.size() < 2) frac.insert(0, "0");
  return std::to_string(hundredths / 100) + "." + frac;
}

struct AreaDistribution {
  GroupKey group;
  std::map<Label, std::size_t> counts;
  std::size_t total = 0;

  std::size_t count(Label l) const {
    auto it = counts.find(l);
    return it == counts.end() ? 0 : it->second;
  }
  double percentage(Label l) const {
    return total == 0 ? 0.0 : static_cast<double>(count(l)) / static_cast<double>(total) * 100.0;
  }
  std::string percentage_text(Label l) const { return format_percentage(count(l), total); }

  friend bool operator==(const AreaDistribution&, const AreaDistribution&) = default;
};

inline AreaDistribution aggregate(std::span<const LabelSet> labels, GroupKey group) {
  if (labels.empty())
    throw InvalidArgument("no tweets in group " + group.company + "/" + group.period);
  AreaDistribution d{std::move(group), {}, labels.size()};
  for (Label l : kAllLabels) d.counts[l] = 0;
  for (const auto& s : labels)
    for (Label l : s.labels()) ++d.counts[l];
  return d;
}

inline AreaDistribution aggregate(const std::vector<std::pair<Tweet, LabelSet>>& classified,
                                  GroupKey group) {
  std::vector<LabelSet> labels;
  labels.reserve(classified.size());
  for (const auto& p : classified) labels.push_back(p.second);
  return aggregate(labels, std::move(group));
}

/// Admissible factor-score range; 0-4 by default.
struct ScoreRange {
  double lo = 0.0;
  double hi = 4.0;
};

inline constexpr std::size_t kFactorCount = 10;

/// LI = 10 * sum(v) / 4 over the ten factor scores.
inline double leadership_index(std::span<const double> v, ScoreRange range = {}) {
  if (v.size() != kFactorCount)
    throw InvalidArgument("expected " + std::to_string(kFactorCount) + " factor scores, got " +
                          std::to_string(v.size()));
  double sum = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!(v[i] >= range.lo && v[i] <= range.hi))
      throw InvalidArgument("factor score v" + std::to_string(i + 1) + " = " + std::to_string(v[i]) +
                            " outside [" + std::to_string(range.lo) + ", " +
                            std::to_string(range.hi) + "]");
    sum += v[i];
  }
  return 10.0 * sum / 4.0;
}

/// Reads a JSON array of ten numbers.
inline std::vector<double> load_scores(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open scores file '" + path + "'");
  try {
    const auto j = nlohmann::json::parse(in);
    if (!j.is_array()) throw ParseError("scores file must hold a JSON array");
    std::vector<double> v;
    for (const auto& x : j) {
      if (!x.is_number()) throw ParseError("scores must be numbers");
      v.push_back(x.get<double>());
    }
    return v;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

struct BalanceProfile {
  /// SYM, BEH, POL, STR.
  std::array<double, 4> weights{};
};

/// Area counts normalized by their sum; NONE is excluded.
inline BalanceProfile balance_profile(const AreaDistribution& d) {
  std::size_t sum = 0;
  for (Label l : kAreaLabels) sum += d.count(l);
  if (sum == 0)
    throw InvalidArgument("balance profile undefined: no area labels in " + d.group.company + "/" +
                          d.group.period);
  BalanceProfile p;
  for (std::size_t i = 0; i < 4; ++i)
    p.weights[i] = static_cast<double>(d.count(kAreaLabels[i])) / static_cast<double>(sum);
  return p;
}

enum class ReportFormat { csv, json };

inline ReportFormat parse_report_format(std::string_view s) {
  if (s == "csv") return ReportFormat::csv;
  if (s == "json") return ReportFormat::json;
  throw InvalidArgument("unknown format '" + std::string(s) + "' (expected csv or json)");
}

namespace report_detail {

/// Orders digit runs numerically so that P2 sorts before P10.
inline bool natural_less(std::string_view a, std::string_view b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const bool da = std::isdigit(static_cast<unsigned char>(a[i]));
    const bool db = std::isdigit(static_cast<unsigned char>(b[j]));
    if (da && db) {
      std::size_t ei = i, ej = j;
      while (ei < a.size() && std::isdigit(static_cast<unsigned char>(a[ei]))) ++ei;
      while (ej < b.size() && std::isdigit(static_cast<unsigned char>(b[ej]))) ++ej;
      std::string_view na = a.substr(i, ei - i), nb = b.substr(j, ej - j);
      while (na.size() > 1 && na.front() == '0') na.remove_prefix(1);
      while (nb.size() > 1 && nb.front() == '0') nb.remove_prefix(1);
      if (na.size() != nb.size()) return na.size() < nb.size();
      if (na != nb) return na < nb;
      i = ei;
      j = ej;
    } else {
      if (a[i] != b[j]) return static_cast<unsigned char>(a[i]) < static_cast<unsigned char>(b[j]);
      ++i;
      ++j;
    }
  }
  if ((a.size() - i) != (b.size() - j)) return a.size() - i < b.size() - j;
  return a < b;
}

inline std::vector<const AreaDistribution*> ordered(const std::vector<AreaDistribution>& ds) {
  std::vector<const AreaDistribution*> out;
  for (const auto& d : ds) out.push_back(&d);
  std::stable_sort(out.begin(), out.end(), [](const auto* x, const auto* y) {
    if (x->group.company != y->group.company) return x->group.company < y->group.company;
    return natural_less(x->group.period, y->group.period);
  });
  return out;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

}  // namespace report_detail

inline std::string render_csv(const std::vector<AreaDistribution>& ds) {
  std::string out = "company,period,label,count,percentage\n";
  for (const auto* d : report_detail::ordered(ds)) {
    for (Label l : kAllLabels) {
      out += report_detail::csv_field(d->group.company) + ',' + report_detail::csv_field(d->group.period) +
             ',' + std::string(to_string(l)) + ',' + std::to_string(d->count(l)) + ',' +
             d->percentage_text(l) + "\n";
    }
  }
  return out;
}

inline nlohmann::json report_to_json(const std::vector<AreaDistribution>& ds) {
  using nlohmann::json;
  json arr = json::array();
  for (const auto* d : report_detail::ordered(ds)) {
    json counts = json::object(), pct = json::object();
    for (Label l : kAllLabels) {
      counts[std::string(to_string(l))] = d->count(l);
      pct[std::string(to_string(l))] = d->percentage_text(l);
    }
    json balance = nullptr;
    std::size_t area_sum = 0;
    for (Label l : kAreaLabels) area_sum += d->count(l);
    if (area_sum > 0) {
      const auto p = balance_profile(*d);
      balance = json::object();
      for (std::size_t i = 0; i < 4; ++i) balance[std::string(to_string(kAreaLabels[i]))] = p.weights[i];
    }
    arr.push_back({{"company", d->group.company},
                   {"period", d->group.period},
                   {"total", d->total},
                   {"counts", std::move(counts)},
                   {"percentages", std::move(pct)},
                   {"balance", std::move(balance)}});
  }
  return {{"distributions", std::move(arr)}};
}

inline std::string render_report(const std::vector<AreaDistribution>& ds, ReportFormat format) {
  if (format == ReportFormat::csv) return render_csv(ds);
  return report_to_json(ds).dump(2) + "\n";
}

/// Inverse of the JSON rendering; derived fields are recomputed.
inline std::vector<AreaDistribution> parse_report_json(std::string_view text) {
  std::vector<AreaDistribution> out;
  try {
    const auto j = nlohmann::json::parse(text);
    for (const auto& d : j.at("distributions")) {
      AreaDistribution a;
      a.group = {d.at("company").get<std::string>(), d.at("period").get<std::string>()};
      a.total = d.at("total").get<std::size_t>();
      for (Label l : kAllLabels) a.counts[l] = d.at("counts").at(std::string(to_string(l))).get<std::size_t>();
      out.push_back(std::move(a));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed report: ") + e.what());
  }
  return out;
}

}  // namespace leadmine
