// leadmine: train, classify, evaluate, report, kappa, index.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "leadmine/classifier.hpp"
#include "leadmine/corpus.hpp"
#include "leadmine/labels.hpp"
#include "leadmine/leadership.hpp"
#include "leadmine/metrics.hpp"
#include "leadmine/metrics_json.hpp"
#include "leadmine/model_io.hpp"
#include "leadmine/run_config.hpp"

namespace {

using namespace leadmine;
using nlohmann::json;

struct Shared {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string lang;
  std::string out;
  std::string format = "csv";
};

void warn(const std::string& msg) { std::cerr << "warning: " << msg << '\n'; }

/// Writes to --out when given, stdout otherwise.
void emit(const Shared& s, const std::string& text) {
  if (s.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(s.out, std::ios::binary);
  if (!out) throw Error("cannot write '" + s.out + "'");
  out << text;
  if (!out) throw Error("error writing '" + s.out + "'");
}

RunConfig resolve_config(const Shared& s) {
  RunConfig cfg;
  if (s.config_path.empty()) warn("no --config given; using default settings");
  else cfg = load_run_config(s.config_path);
  if (s.seed) cfg.seed = *s.seed;
  if (!s.lang.empty()) cfg.language = parse_language(s.lang);
  return cfg;
}

StopwordSet resolve_stopwords(const RunConfig& cfg) {
  return cfg.stopword_path ? load_stopwords(*cfg.stopword_path) : default_stopwords(cfg.language);
}

EvalOptions eval_options(const RunConfig& cfg) { return cfg.include_none ? EvalOptions{} : EvalOptions::areas_only(); }

std::string id_list(const std::vector<std::string>& ids) {
  std::string out;
  for (std::size_t i = 0; i < ids.size() && i < 5; ++i) out += (i ? ", " : "") + ("'" + ids[i] + "'");
  if (ids.size() > 5) out += ", ... (" + std::to_string(ids.size()) + " total)";
  return out;
}

Corpus apply_filters(const Corpus& c, const RunConfig& cfg) {
  Corpus cur = c;
  if (cfg.filter_enabled("language")) {
    auto r = filter_corpus(cur, language_filter(std::string(language_code(cfg.language))), FilterReason::language);
    if (r.report.removed_count)
      warn("language filter removed " + std::to_string(r.report.removed_count) + " tweet(s) not in '" +
           std::string(language_code(cfg.language)) + "'");
    cur = std::move(r.kept);
  }
  if (cfg.filter_enabled("spam")) {
    auto r = filter_corpus(cur, duplicate_bot_filter(cur), FilterReason::spam);
    if (r.report.removed_count)
      warn("spam filter removed " + std::to_string(r.report.removed_count) + " duplicate tweet(s)");
    cur = std::move(r.kept);
  }
  return cur;
}

int cmd_train(const Shared& s, const std::string& corpus_path, const std::string& labels_path) {
  if (s.out.empty()) throw InvalidArgument("train needs --out for the model file");
  const RunConfig cfg = resolve_config(s);
  const Corpus all = load_corpus(corpus_path, {});
  const auto gold = load_labels(labels_path);

  std::set<std::string> corpus_ids;
  for (const auto& t : all) corpus_ids.insert(t.id);
  std::vector<std::string> unknown;
  for (const auto& r : gold)
    if (!corpus_ids.contains(r.id)) unknown.push_back(r.id);
  if (!unknown.empty()) throw InvalidArgument("labels file references unknown id(s) " + id_list(unknown));

  const Corpus corpus = apply_filters(all, cfg);
  const auto by_id = to_annotation_set(gold);
  const StopwordSet stop = resolve_stopwords(cfg);
  std::vector<TokenList> docs;
  std::vector<LabelSet> labels;
  std::size_t unlabeled = 0;
  for (const auto& t : corpus) {
    auto it = by_id.find(t.id);
    if (it == by_id.end()) {
      ++unlabeled;
      continue;
    }
    docs.push_back(preprocess(t.text, cfg.language, stop));
    labels.push_back(it->second);
  }
  if (unlabeled) warn(std::to_string(unlabeled) + " tweet(s) have no gold labels and are not used for training");
  if (docs.empty()) throw InvalidArgument("no labeled tweets left to train on");

  TrainOptions opts;
  opts.search.grid = cfg.grid;
  opts.search.folds = cfg.folds;
  opts.search.seed = cfg.seed;
  opts.search.solver.tol = cfg.tol;
  opts.search.solver.max_passes = cfg.max_passes;
  opts.search.solver.seed = cfg.seed;
  opts.min_df = cfg.min_df;
  opts.train_none_model = cfg.train_none_model;
  opts.language = cfg.language;
  opts.stopwords.assign(stop.begin(), stop.end());
  const TrainResult result = train_multilabel(docs, labels, opts);
  save_model(result.model, s.out);

  std::vector<LabelSet> fit;
  fit.reserve(docs.size());
  for (const auto& d : docs) fit.push_back(classify(result.model, d));

  json chosen = json::object(), cv = json::object();
  for (const auto& [l, p] : result.model.chosen_params) chosen[std::string(to_string(l))] = {{"c", p.c}, {"gamma", p.gamma}};
  for (const auto& [l, r] : result.cv) {
    json rows = json::array();
    for (const auto& row : r.table)
      rows.push_back({{"c", row.point.c}, {"gamma", row.point.gamma}, {"mean_f1", row.mean_f1}, {"fold_f1", row.fold_f1}});
    cv[std::string(to_string(l))] = std::move(rows);
  }
  const json out = {{"model", s.out},
                    {"n_docs", docs.size()},
                    {"vocabulary_size", result.model.vocabulary.size()},
                    {"folds", cfg.folds},
                    {"chosen_params", std::move(chosen)},
                    {"cv", std::move(cv)},
                    {"training_fit", metrics_to_json(evaluate(fit, labels, eval_options(cfg)), eval_options(cfg))}};
  std::cout << out.dump(2) << '\n';
  return 0;
}

int cmd_classify(const Shared& s, const std::string& corpus_path, const std::string& model_path) {
  const MultiLabelModel model = load_model(model_path);
  const Corpus corpus = load_corpus(corpus_path, {});
  const std::string model_lang(language_code(model.language));
  std::size_t foreign = 0;
  for (const auto& t : corpus)
    if (t.lang != model_lang) ++foreign;
  if (foreign)
    warn(std::to_string(foreign) + " tweet(s) are not in the model language '" + model_lang +
         "'; classifying them anyway");
  const PreprocessConfig prep = model.preprocess_config();
  std::vector<LabeledId> rows;
  rows.reserve(corpus.size());
  for (const auto& t : corpus) rows.push_back({t.id, classify(model, prep(t.text))});
  std::ostringstream ss;
  write_labels(ss, rows);
  emit(s, ss.str());
  return 0;
}

void require_same_ids(const AnnotationSet& a, const AnnotationSet& b, const std::string& what) {
  std::vector<std::string> diff;
  for (const auto& [id, _] : a)
    if (!b.contains(id)) diff.push_back(id);
  for (const auto& [id, _] : b)
    if (!a.contains(id)) diff.push_back(id);
  if (!diff.empty()) throw InvalidArgument(what + " id sets differ: " + id_list(diff));
}

int cmd_evaluate(const Shared& s, const std::string& pred_path, const std::string& gold_path, bool exclude_none) {
  const auto pred_rows = load_labels(pred_path);
  const auto gold_rows = load_labels(gold_path);
  const auto pred = to_annotation_set(pred_rows);
  require_same_ids(pred, to_annotation_set(gold_rows), "prediction and gold");
  if (gold_rows.empty()) throw InvalidArgument("gold file has no rows");
  std::vector<LabelSet> p, g;
  for (const auto& r : gold_rows) {
    g.push_back(r.labels);
    p.push_back(pred.at(r.id));
  }
  const EvalOptions opts = exclude_none ? EvalOptions::areas_only() : EvalOptions{};
  emit(s, metrics_to_json(evaluate(p, g, opts), opts).dump(2) + "\n");
  return 0;
}

int cmd_report(const Shared& s, const std::string& classified_path, const std::vector<std::string>& corpus_paths,
               std::vector<std::string> companies, const std::vector<std::string>& period_bounds,
               const std::string& group_by) {
  const ReportFormat format = parse_report_format(s.format);
  if (!companies.empty() && companies.size() != corpus_paths.size())
    throw InvalidArgument("give one --company per corpus file (" + std::to_string(corpus_paths.size()) + ")");
  if (companies.empty())
    for (const auto& p : corpus_paths) companies.push_back(std::filesystem::path(p).stem().string());
  std::vector<Timestamp> bounds;
  for (const auto& b : period_bounds) bounds.push_back(parse_rfc3339(b));

  const auto classified = to_annotation_set(load_labels(classified_path));
  std::set<std::string> used;
  // (company, period) -> labels, in deterministic map order.
  std::map<std::pair<std::string, std::string>, std::vector<LabelSet>> groups;
  std::size_t unclassified = 0, out_of_range = 0;
  for (std::size_t ci = 0; ci < corpus_paths.size(); ++ci) {
    const Corpus corpus = load_corpus(corpus_paths[ci], {companies[ci], "ALL"});
    std::vector<Corpus> buckets;
    if (bounds.empty()) {
      buckets.push_back(corpus);
    } else {
      auto part = partition_by_period(corpus, bounds);
      out_of_range += part.dropped;
      buckets = std::move(part.buckets);
    }
    for (const auto& b : buckets) {
      const std::string company = group_by == "period" ? "ALL" : b.meta().company;
      const std::string period = group_by == "company" ? "ALL" : b.meta().period_label;
      auto& g = groups[{company, period}];
      for (const auto& t : b) {
        auto it = classified.find(t.id);
        if (it == classified.end()) {
          ++unclassified;
          continue;
        }
        used.insert(t.id);
        g.push_back(it->second);
      }
    }
  }
  if (unclassified) warn(std::to_string(unclassified) + " tweet(s) have no classification and are skipped");
  if (out_of_range) warn(std::to_string(out_of_range) + " tweet(s) fall outside the given periods");
  if (used.size() < classified.size())
    warn(std::to_string(classified.size() - used.size()) + " classified id(s) do not appear in any corpus");

  std::vector<AreaDistribution> ds;
  for (const auto& [key, labels] : groups) {
    if (labels.empty()) {
      warn("group " + key.first + "/" + key.second + " has no tweets; skipped");
      continue;
    }
    ds.push_back(aggregate(labels, {key.first, key.second}));
  }
  emit(s, render_report(ds, format));
  return 0;
}

int cmd_kappa(const Shared& s, const std::vector<std::string>& paths) {
  if (paths.size() < 2) throw InvalidArgument("kappa needs at least two annotator files");
  std::vector<AnnotationSet> sets;
  for (const auto& p : paths) sets.push_back(to_annotation_set(load_labels(p)));
  for (std::size_t i = 1; i < sets.size(); ++i)
    require_same_ids(sets[0], sets[i], "'" + paths[0] + "' and '" + paths[i] + "'");
  json pairs = json::array();
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (std::size_t j = i + 1; j < sets.size(); ++j) {
      json k = json::object();
      for (Label l : kAllLabels) k[std::string(to_string(l))] = cohen_kappa(sets[i], sets[j], l);
      pairs.push_back({{"a", paths[i]}, {"b", paths[j]}, {"kappa", std::move(k)}});
    }
  emit(s, json{{"items", sets[0].size()}, {"pairs", std::move(pairs)}}.dump(2) + "\n");
  return 0;
}

int cmd_index(const Shared& s, const std::string& scores_path, double lo, double hi) {
  const auto v = load_scores(scores_path);
  emit(s, json{{"leadership_index", leadership_index(v, {lo, hi})}}.dump() + "\n");
  return 0;
}

std::string one_line(std::string msg) {
  for (char& c : msg)
    if (c == '\n' || c == '\r') c = ' ';
  return msg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Leadership-area tweet classification toolkit"};
  app.require_subcommand(1);
  Shared s;
  auto add_shared = [&](CLI::App* cmd) {
    cmd->add_option("--config", s.config_path, "Run configuration (flat JSON)");
    cmd->add_option("--seed", s.seed, "Seed for fold assignment and solver sweeps");
    cmd->add_option("--lang", s.lang, "Language code (it, en)");
    cmd->add_option("--out", s.out, "Output path (default: stdout)");
    cmd->add_option("--format", s.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  };

  std::string corpus, labels, model, pred, gold, classified, scores;
  std::vector<std::string> corpora, companies, periods, annotators;
  std::string group_by = "both";
  bool exclude_none = false;
  double lo = 0.0, hi = 4.0;

  auto* train = app.add_subcommand("train", "Calibrate and train the classifier");
  train->add_option("corpus", corpus, "Corpus (JSON Lines)")->required();
  train->add_option("labels", labels, "Gold labels (TSV)")->required();
  add_shared(train);

  auto* cls = app.add_subcommand("classify", "Label every tweet of a corpus");
  cls->add_option("corpus", corpus, "Corpus (JSON Lines)")->required();
  cls->add_option("model", model, "Model file")->required();
  add_shared(cls);

  auto* ev = app.add_subcommand("evaluate", "Compare predicted labels with gold labels");
  ev->add_option("pred", pred, "Predicted labels (TSV)")->required();
  ev->add_option("gold", gold, "Gold labels (TSV)")->required();
  ev->add_flag("--exclude-none", exclude_none, "Leave NONE out of micro/macro F1");
  add_shared(ev);

  auto* rep = app.add_subcommand("report", "Per-group area distribution");
  rep->add_option("classified", classified, "Classified labels (TSV)")->required();
  rep->add_option("corpus", corpora, "One or more corpus files")->required();
  rep->add_option("--company", companies, "Company name per corpus file (default: file stem)");
  rep->add_option("--periods", periods, "Period boundaries (RFC 3339), comma separated")->delimiter(',');
  rep->add_option("--group-by", group_by, "company, period, or both")->check(CLI::IsMember({"company", "period", "both"}));
  add_shared(rep);

  auto* kap = app.add_subcommand("kappa", "Pairwise Cohen's kappa per label");
  kap->add_option("files", annotators, "Annotator label files (TSV)")->required();
  add_shared(kap);

  auto* idx = app.add_subcommand("index", "Leadership Index from ten factor scores");
  idx->add_option("scores", scores, "JSON array of ten scores")->required();
  idx->add_option("--min", lo, "Lowest admissible score");
  idx->add_option("--max", hi, "Highest admissible score");
  add_shared(idx);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << one_line(e.what()) << '\n';
    return 2;
  }

  try {
    if (*train) return cmd_train(s, corpus, labels);
    if (*cls) return cmd_classify(s, corpus, model);
    if (*ev) return cmd_evaluate(s, pred, gold, exclude_none);
    if (*rep) return cmd_report(s, classified, corpora, companies, periods, group_by);
    if (*kap) return cmd_kappa(s, annotators);
    if (*idx) return cmd_index(s, scores, lo, hi);
  } catch (const std::exception& e) {
    std::cerr << "error: " << one_line(e.what()) << '\n';
    return 1;
  }
  return 1;
}
