#pragma once

// One-vs-rest multi-label classifier over the four leadership areas, with
// the NONE fallback, per-label (C, gamma) calibration by stratified k-fold
// cross-validation, and an optional dedicated NONE model.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "leadmine/error.hpp"
#include "leadmine/features.hpp"
#include "leadmine/labels.hpp"
#include "leadmine/metrics.hpp"
#include "leadmine/stem.hpp"
#include "leadmine/svm.hpp"
#include "leadmine/textprep.hpp"

namespace leadmine {

struct GridPoint {
  double c = 1.0;
  double gamma = 1.0;

  friend bool operator==(const GridPoint&, const GridPoint&) = default;
};

inline std::vector<GridPoint> default_grid() {
  std::vector<GridPoint> g;
  for (double c : {0.1, 1.0, 10.0, 100.0})
    for (double gamma : {0.01, 0.1, 1.0, 10.0}) g.push_back({c, gamma});
  return g;
}

struct GridScore {
  GridPoint point;
  double mean_f1 = 0.0;
  std::vector<double> fold_f1;
};

struct GridSearchResult {
  GridPoint best;
  /// One entry per grid point, in grid order.
  std::vector<GridScore> table;
};

/// Assigns each example to one of k folds, stratified by class: each class
/// is shuffled with the seed and dealt round-robin.
inline std::vector<std::size_t> stratified_folds(std::span<const int> y, std::size_t k,
                                                 std::uint64_t seed) {
  if (k < 2) throw InvalidArgument("folds must be at least 2");
  std::vector<std::size_t> pos, neg;
  for (std::size_t i = 0; i < y.size(); ++i) (y[i] > 0 ? pos : neg).push_back(i);
  if (pos.size() < k || neg.size() < k)
    throw InvalidArgument("too little data for " + std::to_string(k) + " folds: " +
                          std::to_string(pos.size()) + " positive and " +
                          std::to_string(neg.size()) +
                          " negative examples; every fold needs both classes");
  std::mt19937_64 rng(seed);
  svm_detail::seeded_shuffle(pos, rng);
  svm_detail::seeded_shuffle(neg, rng);
  std::vector<std::size_t> fold(y.size());
  for (std::size_t r = 0; r < pos.size(); ++r) fold[pos[r]] = r % k;
  for (std::size_t r = 0; r < neg.size(); ++r) fold[neg[r]] = r % k;
  return fold;
}

struct SearchOptions {
  std::vector<GridPoint> grid = default_grid();
  std::size_t folds = 5;
  std::uint64_t seed = 0;
  /// Solver settings; c and gamma are overridden per grid point.
  TrainConfig solver;
};

namespace classifier_detail {

inline bool better(const GridScore& a, const GridScore& b) {
  if (a.mean_f1 != b.mean_f1) return a.mean_f1 > b.mean_f1;
  if (a.point.c != b.point.c) return a.point.c < b.point.c;
  return a.point.gamma < b.point.gamma;
}

inline std::vector<int> targets(const std::vector<LabelSet>& labels, Label l) {
  std::vector<int> y(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) y[i] = labels[i].contains(l) ? 1 : -1;
  return y;
}

}  // namespace classifier_detail

/// Stratified k-fold search over `opts.grid` using a precomputed Gram.
/// Score = mean positive-class F1 over folds; ties go to smaller C, then
/// smaller gamma.
inline GridSearchResult grid_search(const DotGram& gram, std::span<const int> y,
                                    const SearchOptions& opts) {
  if (opts.grid.empty()) throw InvalidArgument("grid must not be empty");
  if (gram.size() != y.size()) throw InvalidArgument("feature and label counts differ");
  svm_detail::check_labels(y);
  for (const auto& p : opts.grid)
    if (!(p.c > 0.0) || !(p.gamma > 0.0)) throw InvalidArgument("grid values must be positive");
  const auto fold = stratified_folds(y, opts.folds, opts.seed);

  std::vector<GridScore> table(opts.grid.size());
  for (std::size_t g = 0; g < opts.grid.size(); ++g) {
    table[g].point = opts.grid[g];
    table[g].fold_f1.assign(opts.folds, 0.0);
  }

  std::vector<double> gammas;
  for (const auto& p : opts.grid)
    if (std::find(gammas.begin(), gammas.end(), p.gamma) == gammas.end()) gammas.push_back(p.gamma);

  for (double gamma : gammas) {
    for (std::size_t f = 0; f < opts.folds; ++f) {
      std::vector<std::size_t> train, test;
      for (std::size_t i = 0; i < y.size(); ++i) (fold[i] == f ? test : train).push_back(i);
      std::vector<int> ytrain(train.size());
      for (std::size_t a = 0; a < train.size(); ++a) ytrain[a] = y[train[a]];
      const KernelMatrix k = gram.rbf(train, gamma);
      std::vector<double> cross(test.size() * train.size());
      for (std::size_t s = 0; s < test.size(); ++s)
        for (std::size_t a = 0; a < train.size(); ++a)
          cross[s * train.size() + a] =
              rbf_from_dot(gram.norm(test[s]), gram.norm(train[a]), gram.dot(test[s], train[a]), gamma);

      for (std::size_t g = 0; g < opts.grid.size(); ++g) {
        if (opts.grid[g].gamma != gamma) continue;
        TrainConfig cfg = opts.solver;
        cfg.c = opts.grid[g].c;
        cfg.gamma = gamma;
        const DualSolution sol = solve_dual(k, ytrain, cfg);
        check_dual_feasible(sol.alpha, ytrain, cfg.c, cfg.tol);
        Confusion cm;
        for (std::size_t s = 0; s < test.size(); ++s) {
          double fx = sol.bias;
          const double* row = cross.data() + s * train.size();
          for (std::size_t a = 0; a < train.size(); ++a)
            if (sol.alpha[a] > 0.0) fx += sol.alpha[a] * ytrain[a] * row[a];
          const bool p = fx > 0.0, t = y[test[s]] > 0;
          if (p && t) ++cm.tp;
          else if (p) ++cm.fp;
          else if (t) ++cm.fn;
          else ++cm.tn;
        }
        table[g].fold_f1[f] = f1_score(cm);
      }
    }
  }

  for (auto& row : table) {
    double sum = 0.0;
    for (double v : row.fold_f1) sum += v;
    row.mean_f1 = sum / static_cast<double>(opts.folds);
  }
  const GridScore* best = &table.front();
  for (const auto& row : table)
    if (classifier_detail::better(row, *best)) best = &row;
  return {best->point, std::move(table)};
}

inline GridSearchResult grid_search(std::span<const SparseVector> xs, std::span<const int> y,
                                    const SearchOptions& opts) {
  if (xs.size() != y.size()) throw InvalidArgument("feature and label counts differ");
  return grid_search(DotGram(xs), y, opts);
}

struct MultiLabelModel {
  Vocabulary vocabulary;
  std::map<Label, BinarySvmModel> area_models;
  std::map<Label, GridPoint> chosen_params;
  std::optional<BinarySvmModel> none_model;
  /// Preprocessing the model was trained with.
  Language language = Language::italian;
  std::vector<std::string> stopwords;

  PreprocessConfig preprocess_config() const {
    return {language, StopwordSet(stopwords.begin(), stopwords.end())};
  }

  void validate() const {
    for (Label l : kAreaLabels) {
      auto it = area_models.find(l);
      if (it == area_models.end())
        throw InvalidArgument("model lacks a classifier for " + std::string(to_string(l)));
      if (it->second.dim() != vocabulary.size())
        throw InvalidArgument("classifier for " + std::string(to_string(l)) +
                              " does not match the vocabulary dimension");
    }
    if (area_models.count(Label::NONE)) throw InvalidArgument("NONE is not an area model");
    if (none_model && none_model->dim() != vocabulary.size())
      throw InvalidArgument("NONE model does not match the vocabulary dimension");
  }
};

struct TrainOptions {
  SearchOptions search;
  std::size_t min_df = 1;
  bool train_none_model = false;
  Language language = Language::italian;
  /// Stopwords used in preprocessing, recorded in the model.
  std::vector<std::string> stopwords;
};

struct TrainResult {
  MultiLabelModel model;
  /// Cross-validation table per trained label (areas, plus NONE if asked).
  std::map<Label, GridSearchResult> cv;
};

namespace classifier_detail {

inline BinarySvmModel fit_label(const DotGram& gram, std::span<const SparseVector> xs,
                                std::span<const int> y, const SearchOptions& search,
                                GridSearchResult& cv) {
  cv = grid_search(gram, y, search);
  TrainConfig cfg = search.solver;
  cfg.c = cv.best.c;
  cfg.gamma = cv.best.gamma;
  std::vector<std::size_t> all(xs.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  const KernelMatrix k = gram.rbf(all, cfg.gamma);
  return make_model(xs, y, solve_dual(k, y, cfg), cfg);
}

inline void check_positive_count(const std::vector<int>& y, Label l, std::size_t folds) {
  const auto pos = static_cast<std::size_t>(std::count(y.begin(), y.end(), 1));
  if (pos < folds)
    throw InvalidArgument("label " + std::string(to_string(l)) + " has " + std::to_string(pos) +
                          " positive examples; at least " + std::to_string(folds) +
                          " are needed for " + std::to_string(folds) + "-fold calibration");
  if (y.size() - pos < folds)
    throw InvalidArgument("label " + std::string(to_string(l)) + " has " +
                          std::to_string(y.size() - pos) + " negative examples; at least " +
                          std::to_string(folds) + " are needed");
}

}  // namespace classifier_detail

/// Builds the vocabulary from all docs, calibrates and trains one binary
/// model per area label (target +1 iff the label is in the gold set), and
/// optionally a NONE model on target "gold set is {NONE}".
inline TrainResult train_multilabel(const std::vector<TokenList>& docs,
                                    const std::vector<LabelSet>& labels, const TrainOptions& opts) {
  if (docs.size() != labels.size()) throw InvalidArgument("document and label counts differ");
  if (opts.search.folds < 2) throw InvalidArgument("folds must be at least 2");
  std::vector<std::pair<Label, std::vector<int>>> targets;
  for (Label l : kAreaLabels) targets.emplace_back(l, classifier_detail::targets(labels, l));
  if (opts.train_none_model)
    targets.emplace_back(Label::NONE, classifier_detail::targets(labels, Label::NONE));
  for (const auto& [l, y] : targets) classifier_detail::check_positive_count(y, l, opts.search.folds);

  TrainResult out;
  auto& m = out.model;
  m.vocabulary = build_vocabulary(docs, static_cast<std::uint32_t>(opts.min_df));
  m.language = opts.language;
  m.stopwords = opts.stopwords;
  std::sort(m.stopwords.begin(), m.stopwords.end());
  m.stopwords.erase(std::unique(m.stopwords.begin(), m.stopwords.end()), m.stopwords.end());

  std::vector<SparseVector> xs;
  xs.reserve(docs.size());
  for (const auto& d : docs) xs.push_back(vectorize(d, m.vocabulary));
  const DotGram gram(xs);

  for (const auto& [l, y] : targets) {
    GridSearchResult cv;
    BinarySvmModel bm = classifier_detail::fit_label(gram, xs, y, opts.search, cv);
    m.chosen_params[l] = cv.best;
    if (l == Label::NONE) m.none_model = std::move(bm);
    else m.area_models.emplace(l, std::move(bm));
    out.cv.emplace(l, std::move(cv));
  }
  m.validate();
  return out;
}

/// Trains (or replaces) the NONE model on arbitrary per-doc targets.
inline void fit_none_model(MultiLabelModel& m, const std::vector<TokenList>& docs,
                           const std::vector<bool>& none_targets, const SearchOptions& search) {
  if (docs.size() != none_targets.size()) throw InvalidArgument("document and target counts differ");
  std::vector<int> y(docs.size());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = none_targets[i] ? 1 : -1;
  classifier_detail::check_positive_count(y, Label::NONE, search.folds);
  std::vector<SparseVector> xs;
  xs.reserve(docs.size());
  for (const auto& d : docs) xs.push_back(vectorize(d, m.vocabulary));
  GridSearchResult cv;
  m.none_model = classifier_detail::fit_label(DotGram(xs), xs, y, search, cv);
  m.chosen_params[Label::NONE] = cv.best;
}

/// A zero vector (no in-vocabulary stems) is always {NONE}.
inline LabelSet classify_vector(const MultiLabelModel& m, const SparseVector& x) {
  if (x.is_zero()) return LabelSet::none();
  std::uint8_t bits = 0;
  for (Label l : kAreaLabels)
    if (predict_binary(m.area_models.at(l), x)) bits |= std::uint8_t(1u << static_cast<unsigned>(l));
  return LabelSet::from_areas(bits);
}

/// Positive area labels, or {NONE} when no area classifier fires.
inline LabelSet classify(const MultiLabelModel& m, const TokenList& doc) {
  return classify_vector(m, vectorize(doc, m.vocabulary));
}

/// Fraction of docs on which the fallback rule and the NONE model agree.
inline double compare_none_strategies(const MultiLabelModel& m, const std::vector<TokenList>& docs) {
  if (!m.none_model) throw InvalidArgument("model has no NONE classifier to compare against");
  if (docs.empty()) return 1.0;
  std::size_t agree = 0;
  for (const auto& d : docs) {
    const SparseVector x = vectorize(d, m.vocabulary);
    if (classify_vector(m, x).is_none() == predict_binary(*m.none_model, x)) ++agree;
  }
  return static_cast<double>(agree) / static_cast<double>(docs.size());
}

}  // namespace leadmine
