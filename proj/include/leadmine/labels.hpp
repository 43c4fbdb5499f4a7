#pragma once

// Leadership-area labels, label sets, and the `id<TAB>labels` TSV format.

#include <array>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "leadmine/error.hpp"

namespace leadmine {

enum class Label : std::uint8_t { SYM = 0, BEH = 1, POL = 2, STR = 3, NONE = 4 };

inline constexpr std::array<Label, 4> kAreaLabels{Label::SYM, Label::BEH, Label::POL, Label::STR};
inline constexpr std::array<Label, 5> kAllLabels{Label::SYM, Label::BEH, Label::POL, Label::STR,
                                                 Label::NONE};

inline std::string_view to_string(Label l) {
  switch (l) {
    case Label::SYM: return "SYM";
    case Label::BEH: return "BEH";
    case Label::POL: return "POL";
    case Label::STR: return "STR";
    case Label::NONE: return "NONE";
  }
  return "?";
}

inline std::optional<Label> label_from_string(std::string_view s) {
  for (Label l : kAllLabels)
    if (to_string(l) == s) return l;
  return std::nullopt;
}

inline Label parse_label(std::string_view s) {
  if (auto l = label_from_string(s)) return *l;
  throw InvalidArgument("unknown label '" + std::string(s) + "'");
}

/// Non-empty set of labels; NONE only ever appears alone.
class LabelSet {
 public:
  LabelSet() : bits_(bit(Label::NONE)) {}
  LabelSet(std::initializer_list<Label> labels) : bits_(0) {
    for (Label l : labels) bits_ |= bit(l);
    validate();
  }

  static LabelSet none() { return LabelSet(); }

  /// From a bitmask over area labels; zero maps to {NONE}.
  static LabelSet from_areas(std::uint8_t area_bits) {
    LabelSet s;
    if (area_bits & 0x0f) s.bits_ = area_bits & 0x0f;
    return s;
  }

  /// Parses `SYM,POL` or `NONE`.
  static LabelSet parse(std::string_view text) {
    LabelSet s;
    s.bits_ = 0;
    if (text.empty()) throw InvalidArgument("empty label set");
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = text.find(',', start);
      std::string_view tok = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
      while (!tok.empty() && (tok.front() == ' ' || tok.front() == '\t')) tok.remove_prefix(1);
      while (!tok.empty() && (tok.back() == ' ' || tok.back() == '\t')) tok.remove_suffix(1);
      const Label l = parse_label(tok);
      if (s.bits_ & bit(l)) throw InvalidArgument("label '" + std::string(tok) + "' repeated");
      s.bits_ |= bit(l);
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    s.validate();
    return s;
  }

  bool contains(Label l) const noexcept { return bits_ & bit(l); }
  bool is_none() const noexcept { return bits_ == bit(Label::NONE); }
  std::uint8_t bits() const noexcept { return bits_; }
  std::uint8_t area_bits() const noexcept { return bits_ & 0x0f; }

  std::vector<Label> labels() const {
    std::vector<Label> out;
    for (Label l : kAllLabels)
      if (contains(l)) out.push_back(l);
    return out;
  }

  /// Canonical order SYM,BEH,POL,STR.
  std::string str() const {
    std::string out;
    for (Label l : labels()) {
      if (!out.empty()) out += ',';
      out += to_string(l);
    }
    return out;
  }

  friend bool operator==(const LabelSet&, const LabelSet&) = default;

 private:
  static constexpr std::uint8_t bit(Label l) { return std::uint8_t(1u << static_cast<unsigned>(l)); }

  void validate() const {
    if (bits_ == 0) throw InvalidArgument("label set must not be empty");
    if (contains(Label::NONE) && bits_ != bit(Label::NONE))
      throw InvalidArgument("NONE cannot be combined with area labels");
  }

  std::uint8_t bits_;
};

inline std::ostream& operator<<(std::ostream& os, const LabelSet& s) { return os << s.str(); }

struct LabeledId {
  std::string id;
  LabelSet labels;

  friend bool operator==(const LabeledId&, const LabeledId&) = default;
};

/// One annotator's (or the gold) assignments keyed by tweet id.
using AnnotationSet = std::map<std::string, LabelSet>;

/// Reads a labels TSV: header `id<TAB>labels`, then one row per tweet.
/// Rows keep file order; a repeated id is an error.
inline std::vector<LabeledId> read_labels(std::istream& in) {
  std::vector<LabeledId> rows;
  std::set<std::string> seen;
  std::string line;
  std::size_t lineno = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!header) {
      if (line != "id\tlabels") throw ParseError("expected header 'id<TAB>labels'", lineno);
      header = true;
      continue;
    }
    const auto tab = line.find('\t');
    if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos)
      throw ParseError("expected two tab-separated columns", lineno);
    std::string id = line.substr(0, tab);
    if (id.empty()) throw ParseError("empty id", lineno);
    LabelSet labels;
    try {
      labels = LabelSet::parse(std::string_view(line).substr(tab + 1));
    } catch (const InvalidArgument& e) {
      throw ParseError(e.what(), lineno);
    }
    if (!seen.insert(id).second) throw ParseError("duplicate id '" + id + "'", lineno);
    rows.push_back({std::move(id), labels});
  }
  if (!header) throw ParseError("missing header 'id<TAB>labels'", lineno);
  return rows;
}

inline std::vector<LabeledId> load_labels(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open labels file '" + path + "'");
  try {
    return read_labels(in);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

inline void write_labels(std::ostream& out, const std::vector<LabeledId>& rows) {
  out << "id\tlabels\n";
  for (const auto& r : rows) out << r.id << '\t' << r.labels.str() << '\n';
}

inline void save_labels(const std::string& path, const std::vector<LabeledId>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write labels file '" + path + "'");
  write_labels(out, rows);
  if (!out) throw Error("error writing labels file '" + path + "'");
}

inline AnnotationSet to_annotation_set(const std::vector<LabeledId>& rows) {
  AnnotationSet out;
  for (const auto& r : rows) out.emplace(r.id, r.labels);
  return out;
}

}  // namespace leadmine
