// Runs the built command-line tool against temporary fixtures.

#include <gtest/gtest.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "leadmine/corpus.hpp"
#include "leadmine/labels.hpp"
#include "support/synthetic.hpp"
#include "support/volume_table.hpp"

using namespace leadmine;
using namespace leadmine_test;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

using L = Label;

struct Result {
  int code;
  std::string out, err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

std::string quote(const fs::path& p) { return "'" + p.string() + "'"; }

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream ss(text);
  for (std::string l; std::getline(ss, l);) out.push_back(l);
  return out;
}

/// Exactly one stderr line starts with "error: ".
bool one_error_line(const std::string& err) {
  int n = 0;
  for (const auto& l : lines(err)) n += l.rfind("error: ", 0) == 0;
  return n == 1;
}

class Cli : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = fs::temp_directory_path() / ("leadmine_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
    SynthOptions o;
    o.n_docs = 200;
    o.filler_words = 600;
    o.keywords_per_family = 10;
    o.seed = 21;
    docs_ = std::make_unique<std::vector<SynthDoc>>(generate(o));
    save_corpus(path("train.jsonl").string(), to_corpus(*docs_));
    save_labels(path("gold.tsv").string(), to_labels(*docs_));
    train_ = std::make_unique<Result>(run("train " + quote(path("train.jsonl")) + " " + quote(path("gold.tsv")) +
                                       " --out " + quote(path("model.json"))));
  }
  static void TearDownTestSuite() {
    std::error_code ec;
    fs::remove_all(dir_, ec);
    docs_.reset();
    train_.reset();
  }

  static fs::path path(const std::string& name) { return dir_ / name; }

  static Result run(const std::string& args) {
    static int counter = 0;
    const fs::path out = path("stdout" + std::to_string(counter)), err = path("stderr" + std::to_string(counter));
    ++counter;
    const std::string cmd = std::string("'") + LEADMINE_CLI_PATH + "' " + args + " >" + quote(out) + " 2>" + quote(err);
    const int status = std::system(cmd.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
  }

  static fs::path dir_;
  static std::unique_ptr<std::vector<SynthDoc>> docs_;
  static std::unique_ptr<Result> train_;
};

fs::path Cli::dir_;
std::unique_ptr<std::vector<SynthDoc>> Cli::docs_;
std::unique_ptr<Result> Cli::train_;

}  // namespace

TEST_F(Cli, TrainWritesModelAndSummary) {
  ASSERT_EQ(train_->code, 0) << train_->err;
  EXPECT_TRUE(fs::exists(path("model.json")));
  const auto j = json::parse(train_->out);
  EXPECT_EQ(j["n_docs"], 200);
  EXPECT_EQ(j["chosen_params"].size(), 4u);
  for (const char* l : {"SYM", "BEH", "POL", "STR"}) EXPECT_EQ(j["cv"][l].size(), 16u);
  EXPECT_GE(j["training_fit"]["subset_accuracy"].get<double>(), 0.95);
  EXPECT_NE(train_->err.find("warning: no --config"), std::string::npos);
}

TEST_F(Cli, TrainWithConfig) {
  spit(path("run.json"), R"({"folds": 3, "grid": [[10, 0.1], {"c": 100, "gamma": 0.01}], "seed": 4})");
  const Result r = run("train " + quote(path("train.jsonl")) + " " + quote(path("gold.tsv")) + " --config " +
                    quote(path("run.json")) + " --out " + quote(path("model3.json")));
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.err.find("warning: no --config"), std::string::npos);
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["folds"], 3);
  EXPECT_EQ(j["cv"]["SYM"].size(), 2u);
}

TEST_F(Cli, TrainErrors) {
  std::string labels = slurp(path("gold.tsv")) + "ghost42\tSYM\n";
  spit(path("bad_gold.tsv"), labels);
  Result r = run("train " + quote(path("train.jsonl")) + " " + quote(path("bad_gold.tsv")) + " --out " +
              quote(path("never.json")));
  EXPECT_NE(r.code, 0);
  EXPECT_TRUE(one_error_line(r.err)) << r.err;
  EXPECT_NE(r.err.find("ghost42"), std::string::npos);
  EXPECT_FALSE(fs::exists(path("never.json")));

  r = run("train " + quote(path("train.jsonl")) + " " + quote(path("gold.tsv")) + " --config " +
          quote(path("missing.json")) + " --out " + quote(path("never.json")));
  EXPECT_NE(r.code, 0);
  EXPECT_TRUE(one_error_line(r.err)) << r.err;

  r = run("train " + quote(path("nowhere.jsonl")) + " " + quote(path("gold.tsv")) + " --out " + quote(path("never.json")));
  EXPECT_NE(r.code, 0);
  EXPECT_TRUE(one_error_line(r.err)) << r.err;
}

TEST_F(Cli, ClassifyIsTotalAndDeterministic) {
  ASSERT_EQ(train_->code, 0);
  const std::string args = "classify " + quote(path("train.jsonl")) + " " + quote(path("model.json"));
  const Result a = run(args), b = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  std::istringstream in(a.out);
  const auto rows = read_labels(in);
  ASSERT_EQ(rows.size(), docs_->size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].id, (*docs_)[i].id);
    EXPECT_FALSE(rows[i].labels.labels().empty());
  }
}

TEST_F(Cli, TrainClassifyEvaluateMatchesTrainingFit) {
  ASSERT_EQ(train_->code, 0);
  const Result c = run("classify " + quote(path("train.jsonl")) + " " + quote(path("model.json")) + " --out " +
                    quote(path("pred.tsv")));
  ASSERT_EQ(c.code, 0) << c.err;
  EXPECT_TRUE(c.out.empty());
  const Result e = run("evaluate " + quote(path("pred.tsv")) + " " + quote(path("gold.tsv")));
  ASSERT_EQ(e.code, 0) << e.err;
  EXPECT_EQ(json::parse(e.out), json::parse(train_->out)["training_fit"]);
}

TEST_F(Cli, ClassifyWarnsOnLanguageMismatch) {
  ASSERT_EQ(train_->code, 0);
  save_corpus(path("english.jsonl").string(), to_corpus(*docs_, "en"));
  const Result r = run("classify " + quote(path("english.jsonl")) + " " + quote(path("model.json")));
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.err.find("warning:"), std::string::npos);
  EXPECT_NE(r.err.find("'it'"), std::string::npos);
  EXPECT_EQ(lines(r.out).size(), docs_->size() + 1);
}

TEST_F(Cli, EvaluateFixtures) {
  Result r = run("evaluate " + quote(path("gold.tsv")) + " " + quote(path("gold.tsv")));
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = json::parse(r.out);
  EXPECT_EQ(j["subset_accuracy"], 1.0);
  EXPECT_EQ(j["micro_f1"], 1.0);
  EXPECT_EQ(j["macro_f1"], 1.0);

  save_labels(path("hand_gold.tsv").string(), {{"a", {L::POL}}, {"b", {L::SYM}}});
  save_labels(path("hand_pred.tsv").string(), {{"a", {L::SYM}}, {"b", {L::SYM}}});
  r = run("evaluate " + quote(path("hand_pred.tsv")) + " " + quote(path("hand_gold.tsv")));
  ASSERT_EQ(r.code, 0) << r.err;
  j = json::parse(r.out);
  EXPECT_DOUBLE_EQ(j["micro_f1"].get<double>(), 0.5);
  EXPECT_DOUBLE_EQ(j["per_label"]["SYM"]["f1"].get<double>(), 2.0 / 3.0);

  r = run("evaluate " + quote(path("hand_pred.tsv")) + " " + quote(path("hand_gold.tsv")) + " --exclude-none");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out)["pooled_labels"].size(), 4u);
}

TEST_F(Cli, EvaluateRejectsDisjointIds) {
  std::vector<LabeledId> other;
  for (int i = 0; i < 8; ++i) other.push_back({"x" + std::to_string(i), LabelSet::none()});
  save_labels(path("other.tsv").string(), other);
  save_labels(path("hand_gold2.tsv").string(), {{"a", {L::POL}}, {"b", {L::SYM}}});
  const Result r = run("evaluate " + quote(path("other.tsv")) + " " + quote(path("hand_gold2.tsv")));
  EXPECT_NE(r.code, 0);
  EXPECT_TRUE(one_error_line(r.err)) << r.err;
  for (const char* id : {"'x0'", "'x1'", "'x2'", "'x3'", "'x4'"}) EXPECT_NE(r.err.find(id), std::string::npos) << id;
  EXPECT_EQ(r.err.find("'x5'"), std::string::npos);
  EXPECT_NE(r.err.find("10 total"), std::string::npos);
}

namespace {

// One company, three weekly periods, labels dealt so the per-area counts
// match a reference volume row.
void write_volume_fixture(const fs::path& corpus_path, const fs::path& labels_path) {
  const auto start = parse_rfc3339("2017-03-06T00:00:00Z");
  std::vector<Tweet> tweets;
  std::vector<LabeledId> rows;
  for (std::size_t p = 0; p < 3; ++p) {
    const VolumeRow& r = volume_table()[p];
    const unsigned areas = r.total - r.n[4];
    std::vector<std::uint8_t> bits(areas, 0);
    std::size_t k = 0;
    for (std::size_t a = 0; a < 4; ++a)
      for (unsigned i = 0; i < r.n[a]; ++i, ++k) bits[k % areas] |= std::uint8_t(1u << a);
    for (unsigned t = 0; t < r.total; ++t) {
      const std::string id = "p" + std::to_string(p + 1) + "_" + std::to_string(t);
      const auto ts = start + std::chrono::hours(24 * 7 * static_cast<long>(p)) + std::chrono::seconds(60 * t);
      tweets.push_back({id, ts, "author", "testo", "it"});
      rows.push_back({id, t < areas ? LabelSet::from_areas(bits[t]) : LabelSet::none()});
    }
  }
  save_corpus(corpus_path.string(), Corpus({"TIM", "ALL"}, std::move(tweets)));
  save_labels(labels_path.string(), rows);
}

std::string csv_row(const std::string& company, const std::string& period, const VolumeRow& r, std::size_t i) {
  return company + "," + period + "," + std::string(to_string(kAllLabels[i])) + "," + std::to_string(r.n[i]) + "," +
         r.printed[i];
}

}  // namespace

TEST_F(Cli, ReportReproducesVolumeTable) {
  write_volume_fixture(path("tim.jsonl"), path("tim.tsv"));
  const std::string base = "report " + quote(path("tim.tsv")) + " " + quote(path("tim.jsonl")) +
                           " --company 'Telecom Italia-TIM' --periods "
                           "2017-03-06T00:00:00Z,2017-03-13T00:00:00Z,2017-03-20T00:00:00Z,2017-03-27T00:00:00Z";
  Result r = run(base + " --group-by both");
  ASSERT_EQ(r.code, 0) << r.err;
  auto out = lines(r.out);
  ASSERT_EQ(out.size(), 1u + 3 * 5);
  EXPECT_EQ(out[0], "company,period,label,count,percentage");
  for (std::size_t p = 0; p < 3; ++p)
    for (std::size_t i = 0; i < 5; ++i)
      EXPECT_EQ(out[1 + p * 5 + i], csv_row("Telecom Italia-TIM", volume_table()[p].period, volume_table()[p], i));

  r = run(base + " --group-by company");
  ASSERT_EQ(r.code, 0) << r.err;
  out = lines(r.out);
  ASSERT_EQ(out.size(), 1u + 5);
  for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(out[1 + i], csv_row("Telecom Italia-TIM", "ALL", volume_table()[3], i));

  r = run(base + " --format json");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  ASSERT_EQ(j["distributions"].size(), 3u);
  EXPECT_EQ(j["distributions"][0]["percentages"]["SYM"], "27.47");
}

TEST_F(Cli, ReportSkipsEmptyGroupAndRejectsBadFormat) {
  write_volume_fixture(path("tim2.jsonl"), path("tim2.tsv"));
  const std::string base = "report " + quote(path("tim2.tsv")) + " " + quote(path("tim2.jsonl"));
  Result r = run(base + " --periods 2017-03-06T00:00:00Z,2017-03-13T00:00:00Z,2017-03-20T00:00:00Z,"
                     "2017-03-27T00:00:00Z,2017-04-03T00:00:00Z");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.err.find("P4 has no tweets"), std::string::npos) << r.err;
  EXPECT_EQ(lines(r.out).size(), 1u + 3 * 5);

  r = run(base + " --format xml");
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(one_error_line(r.err)) << r.err;
  EXPECT_TRUE(r.out.empty());
}

TEST_F(Cli, KappaFixtures) {
  std::vector<LabeledId> a, b, c;
  std::size_t n = 0;
  for (auto [x, y, k] : {std::tuple{true, true, 20}, {true, false, 5}, {false, true, 10}, {false, false, 15}})
    for (int i = 0; i < k; ++i, ++n) {
      const std::string id = "t" + std::to_string(n);
      a.push_back({id, x ? LabelSet{L::SYM} : LabelSet::none()});
      b.push_back({id, y ? LabelSet{L::SYM} : LabelSet::none()});
      c.push_back({id, LabelSet{L::SYM}});
    }
  save_labels(path("ann_a.tsv").string(), a);
  save_labels(path("ann_b.tsv").string(), b);
  save_labels(path("ann_c.tsv").string(), c);

  Result r = run("kappa " + quote(path("ann_a.tsv")) + " " + quote(path("ann_a.tsv")));
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = json::parse(r.out);
  EXPECT_EQ(j["items"], 50);
  for (const auto& [label, k] : j["pairs"][0]["kappa"].items()) EXPECT_EQ(k, 1.0) << label;

  r = run("kappa " + quote(path("ann_a.tsv")) + " " + quote(path("ann_b.tsv")));
  ASSERT_EQ(r.code, 0) << r.err;
  j = json::parse(r.out);
  EXPECT_NEAR(j["pairs"][0]["kappa"]["SYM"].get<double>(), 0.4, 1e-12);
  EXPECT_NEAR(j["pairs"][0]["kappa"]["NONE"].get<double>(), 0.4, 1e-12);

  r = run("kappa " + quote(path("ann_a.tsv")) + " " + quote(path("ann_b.tsv")) + " " + quote(path("ann_a.tsv")));
  ASSERT_EQ(r.code, 0) << r.err;
  j = json::parse(r.out);
  std::size_t values = 0;
  for (const auto& p : j["pairs"]) values += p["kappa"].size();
  EXPECT_EQ(values, 15u);

  r = run("kappa " + quote(path("ann_a.tsv")));
  EXPECT_NE(r.code, 0);
  EXPECT_TRUE(one_error_line(r.err));
}

TEST_F(Cli, LeadershipIndex) {
  spit(path("scores.json"), "[1, 2, 3, 4, 0, 0, 0, 0, 0, 0]");
  Result r = run("index " + quote(path("scores.json")));
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out)["leadership_index"], 25.0);

  spit(path("short.json"), "[1, 2, 3]");
  r = run("index " + quote(path("short.json")));
  EXPECT_NE(r.code, 0);
  EXPECT_TRUE(one_error_line(r.err));
}

TEST_F(Cli, UsageErrors) {
  Result r = run("");
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(one_error_line(r.err)) << r.err;
  r = run("frobnicate");
  EXPECT_EQ(r.code, 2);
  r = run("evaluate only_one.tsv");
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(one_error_line(r.err)) << r.err;
}
