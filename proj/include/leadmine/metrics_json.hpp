#pragma once

// JSON rendering of evaluation metrics.

#include <nlohmann/json.hpp>

#include "leadmine/metrics.hpp"

namespace leadmine {

inline nlohmann::json metrics_to_json(const MetricsReport& r, const EvalOptions& opts = {}) {
  nlohmann::json per = nlohmann::json::object();
  for (const auto& [l, m] : r.per_label)
    per[std::string(to_string(l))] = {{"accuracy", m.accuracy}, {"precision", m.precision},
                                      {"recall", m.recall},     {"f1", m.f1},
                                      {"tp", m.counts.tp},      {"fp", m.counts.fp},
                                      {"fn", m.counts.fn},      {"tn", m.counts.tn}};
  nlohmann::json pooled = nlohmann::json::array();
  for (Label l : opts.pooled) pooled.push_back(std::string(to_string(l)));
  return {{"subset_accuracy", r.subset_accuracy},
          {"micro_f1", r.micro_f1},
          {"macro_f1", r.macro_f1},
          {"pooled_labels", std::move(pooled)},
          {"per_label", std::move(per)}};
}

}  // namespace leadmine
