#pragma once

// Vocabulary construction and IDF-weighted binary term vectors.

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "leadmine/error.hpp"
#include "leadmine/textprep.hpp"

namespace leadmine {

struct SparseEntry {
  std::uint32_t index;
  double weight;

  friend bool operator==(const SparseEntry&, const SparseEntry&) = default;
};

/// Sparse real vector: strictly increasing indices below `dim()`, no zeros.
class SparseVector {
 public:
  SparseVector() = default;
  explicit SparseVector(std::size_t dim) : dim_(dim) {}

  /// Validates the invariants and throws InvalidArgument on violation.
  SparseVector(std::size_t dim, std::vector<SparseEntry> entries)
      : dim_(dim), entries_(std::move(entries)) {
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (entries_[i].index >= dim_) throw InvalidArgument("sparse index out of range");
      if (i > 0 && entries_[i].index <= entries_[i - 1].index)
        throw InvalidArgument("sparse indices must be strictly increasing");
      if (entries_[i].weight == 0.0 || !std::isfinite(entries_[i].weight))
        throw InvalidArgument("sparse weights must be finite and non-zero");
    }
  }

  std::size_t dim() const noexcept { return dim_; }
  const std::vector<SparseEntry>& entries() const noexcept { return entries_; }
  bool is_zero() const noexcept { return entries_.empty(); }
  std::size_t nnz() const noexcept { return entries_.size(); }

  double dot(const SparseVector& o) const noexcept {
    double s = 0.0;
    auto a = entries_.begin();
    auto b = o.entries_.begin();
    while (a != entries_.end() && b != o.entries_.end()) {
      if (a->index < b->index) {
        ++a;
      } else if (b->index < a->index) {
        ++b;
      } else {
        s += a->weight * b->weight;
        ++a;
        ++b;
      }
    }
    return s;
  }

  double squared_norm() const noexcept { return dot(*this); }

  friend bool operator==(const SparseVector&, const SparseVector&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<SparseEntry> entries_;
};

/// Stemmed-term index with training-time document frequencies.
class Vocabulary {
 public:
  Vocabulary() = default;

  /// Terms in index order with their document frequencies, plus the number
  /// of training documents.
  Vocabulary(std::vector<std::pair<std::string, std::uint32_t>> terms, std::size_t n_docs)
      : terms_(std::move(terms)), n_docs_(n_docs) {
    index_.reserve(terms_.size());
    for (std::size_t j = 0; j < terms_.size(); ++j) {
      const auto& [term, df] = terms_[j];
      if (df < 1 || df > n_docs_)
        throw InvalidArgument("document frequency of '" + term + "' outside [1, N]");
      if (!index_.emplace(term, static_cast<std::uint32_t>(j)).second)
        throw InvalidArgument("duplicate vocabulary term '" + term + "'");
    }
  }

  std::size_t size() const noexcept { return terms_.size(); }
  std::size_t n_docs() const noexcept { return n_docs_; }
  const std::vector<std::pair<std::string, std::uint32_t>>& terms() const noexcept { return terms_; }

  /// Column index of `term`, or -1 when out of vocabulary.
  std::int64_t index_of(const std::string& term) const {
    auto it = index_.find(term);
    return it == index_.end() ? -1 : static_cast<std::int64_t>(it->second);
  }

  std::uint32_t doc_freq(const std::string& term) const {
    auto it = index_.find(term);
    return it == index_.end() ? 0u : terms_[it->second].second;
  }

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) {
    return a.n_docs_ == b.n_docs_ && a.terms_ == b.terms_;
  }

 private:
  std::vector<std::pair<std::string, std::uint32_t>> terms_;
  std::unordered_map<std::string, std::uint32_t> index_;
  std::size_t n_docs_ = 0;
};

/// One entry per distinct stem (lexicographic index order) with its
/// distinct-document count. Terms with df below `min_df` are dropped.
inline Vocabulary build_vocabulary(const std::vector<TokenList>& docs, std::uint32_t min_df = 1) {
  if (docs.empty()) throw InvalidArgument("cannot build a vocabulary from zero documents");
  std::map<std::string, std::uint32_t> df;
  for (const auto& doc : docs) {
    std::map<std::string, bool> present;
    for (const auto& t : doc) present.emplace(t, true);
    for (const auto& kv : present) ++df[kv.first];
  }
  std::vector<std::pair<std::string, std::uint32_t>> terms;
  terms.reserve(df.size());
  for (auto& [term, count] : df)
    if (count >= min_df) terms.emplace_back(term, count);
  return Vocabulary(std::move(terms), docs.size());
}

/// Smoothed IDF: ln((1 + N) / (1 + df)) + 1, with df = 0 for unknown terms.
inline double idf_weight(std::uint32_t df, std::size_t n_docs) {
  return std::log((1.0 + static_cast<double>(n_docs)) / (1.0 + static_cast<double>(df))) + 1.0;
}

inline double idf_weight(const std::string& term, const Vocabulary& v) {
  return idf_weight(v.doc_freq(term), v.n_docs());
}

/// Binary presence times IDF for each distinct in-vocabulary stem, then L2
/// normalized. Out-of-vocabulary stems are ignored.
inline SparseVector vectorize(const TokenList& doc, const Vocabulary& v) {
  std::map<std::uint32_t, double> cols;
  for (const auto& t : doc) {
    const std::int64_t j = v.index_of(t);
    if (j < 0) continue;
    const auto col = static_cast<std::uint32_t>(j);
    cols.emplace(col, idf_weight(v.terms()[col].second, v.n_docs()));
  }
  double norm2 = 0.0;
  for (const auto& kv : cols) norm2 += kv.second * kv.second;
  std::vector<SparseEntry> entries;
  entries.reserve(cols.size());
  const double norm = std::sqrt(norm2);
  for (const auto& [col, w] : cols) entries.push_back({col, w / norm});
  return SparseVector(v.size(), std::move(entries));
}

}  // namespace leadmine
