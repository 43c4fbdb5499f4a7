#pragma once

// Multi-label evaluation metrics and inter-annotator agreement.

#include <algorithm>
#include <array>
#include <map>
#include <string>
#include <vector>

#include "leadmine/error.hpp"
#include "leadmine/labels.hpp"

namespace leadmine {

struct Confusion {
  std::size_t tp = 0, fp = 0, fn = 0, tn = 0;

  friend bool operator==(const Confusion&, const Confusion&) = default;
};

/// F1 = 2TP / (2TP + FP + FN); 1.0 when nothing was predicted or expected.
inline double f1_score(const Confusion& c) {
  const std::size_t den = 2 * c.tp + c.fp + c.fn;
  return den == 0 ? 1.0 : 2.0 * static_cast<double>(c.tp) / static_cast<double>(den);
}

inline double precision(const Confusion& c) {
  const std::size_t den = c.tp + c.fp;
  if (den == 0) return c.fn == 0 ? 1.0 : 0.0;
  return static_cast<double>(c.tp) / static_cast<double>(den);
}

inline double recall(const Confusion& c) {
  const std::size_t den = c.tp + c.fn;
  if (den == 0) return c.fp == 0 ? 1.0 : 0.0;
  return static_cast<double>(c.tp) / static_cast<double>(den);
}

struct LabelMetrics {
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  Confusion counts;
};

struct MetricsReport {
  double subset_accuracy = 0.0;
  double micro_f1 = 0.0;
  double macro_f1 = 0.0;
  /// Every label of the five, whether pooled or not.
  std::map<Label, LabelMetrics> per_label;
};

struct EvalOptions {
  /// Labels pooled into micro-F1 and averaged into macro-F1.
  std::vector<Label> pooled{kAllLabels.begin(), kAllLabels.end()};

  static EvalOptions areas_only() { return {{kAreaLabels.begin(), kAreaLabels.end()}}; }
};

inline MetricsReport evaluate(const std::vector<LabelSet>& preds, const std::vector<LabelSet>& gold,
                              const EvalOptions& opts = {}) {
  if (preds.size() != gold.size())
    throw InvalidArgument("prediction count " + std::to_string(preds.size()) +
                          " does not match gold count " + std::to_string(gold.size()));
  if (preds.empty()) throw InvalidArgument("cannot evaluate an empty prediction list");
  if (opts.pooled.empty()) throw InvalidArgument("no labels selected for pooling");

  std::array<Confusion, 5> cm{};
  std::size_t exact = 0;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    if (preds[i] == gold[i]) ++exact;
    for (Label l : kAllLabels) {
      const bool p = preds[i].contains(l), g = gold[i].contains(l);
      auto& c = cm[static_cast<std::size_t>(l)];
      if (p && g) ++c.tp;
      else if (p) ++c.fp;
      else if (g) ++c.fn;
      else ++c.tn;
    }
  }

  const double n = static_cast<double>(preds.size());
  MetricsReport r;
  r.subset_accuracy = static_cast<double>(exact) / n;
  for (Label l : kAllLabels) {
    const auto& c = cm[static_cast<std::size_t>(l)];
    r.per_label[l] = {static_cast<double>(c.tp + c.tn) / n, precision(c), recall(c), f1_score(c), c};
  }
  Confusion pooled;
  double macro = 0.0;
  for (Label l : opts.pooled) {
    const auto& c = cm[static_cast<std::size_t>(l)];
    pooled.tp += c.tp;
    pooled.fp += c.fp;
    pooled.fn += c.fn;
    pooled.tn += c.tn;
    macro += r.per_label[l].f1;
  }
  r.micro_f1 = f1_score(pooled);
  r.macro_f1 = macro / static_cast<double>(opts.pooled.size());
  return r;
}

/// Cohen's kappa on the indicator "label in set" over a shared id set.
inline double cohen_kappa(const AnnotationSet& a, const AnnotationSet& b, Label label) {
  if (a.size() != b.size() ||
      !std::equal(a.begin(), a.end(), b.begin(), [](const auto& x, const auto& y) { return x.first == y.first; })) {
    std::string first;
    for (const auto& [id, _] : a)
      if (!b.count(id)) { first = id; break; }
    if (first.empty())
      for (const auto& [id, _] : b)
        if (!a.count(id)) { first = id; break; }
    throw InvalidArgument("annotation id sets differ (e.g. '" + first + "')");
  }
  if (a.empty()) throw InvalidArgument("cannot compute kappa over zero items");

  std::size_t yy = 0, yn = 0, ny = 0, nn = 0;
  auto ib = b.begin();
  for (auto ia = a.begin(); ia != a.end(); ++ia, ++ib) {
    const bool x = ia->second.contains(label), y = ib->second.contains(label);
    if (x && y) ++yy;
    else if (x) ++yn;
    else if (y) ++ny;
    else ++nn;
  }
  const double n = static_cast<double>(a.size());
  const double po = static_cast<double>(yy + nn) / n;
  const double a_yes = static_cast<double>(yy + yn) / n, b_yes = static_cast<double>(yy + ny) / n;
  const double pe = a_yes * b_yes + (1.0 - a_yes) * (1.0 - b_yes);
  if (pe == 1.0) {
    if (po == 1.0) return 1.0;
    throw InvalidArgument("kappa undefined: chance agreement is 1 but observed agreement is not");
  }
  return (po - pe) / (1.0 - pe);
}

}  // namespace leadmine
