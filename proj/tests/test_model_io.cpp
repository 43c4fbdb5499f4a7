#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "leadmine/model_io.hpp"
#include "support/synthetic.hpp"

using namespace leadmine;
using namespace leadmine_test;

namespace {

struct Fixture {
  std::vector<TokenList> docs;
  MultiLabelModel model;
};

const Fixture& fixture() {
  static const Fixture f = [] {
    SynthOptions o;
    o.n_docs = 150;
    o.filler_words = 400;
    o.seed = 8;
    const auto cfg = PreprocessConfig::defaults(Language::italian);
    Fixture fx;
    std::vector<LabelSet> labels;
    for (const auto& d : generate(o)) {
      fx.docs.push_back(cfg(d.text));
      labels.push_back(d.labels);
    }
    TrainOptions t;
    t.search.grid = {{1.0, 0.5}, {10.0, 1.0}};
    t.search.folds = 3;
    t.train_none_model = true;
    t.stopwords = {"il", "di", "e"};
    fx.model = train_multilabel(fx.docs, labels, t).model;
    return fx;
  }();
  return f;
}

std::string dump(const MultiLabelModel& m) {
  std::ostringstream ss;
  write_model(ss, m);
  return ss.str();
}

}  // namespace

TEST(ModelIo, RoundTripIsLossless) {
  const auto& f = fixture();
  std::istringstream in(dump(f.model));
  const MultiLabelModel back = read_model(in);
  EXPECT_EQ(back.vocabulary, f.model.vocabulary);
  EXPECT_EQ(back.area_models, f.model.area_models);
  EXPECT_EQ(back.none_model, f.model.none_model);
  EXPECT_EQ(back.chosen_params, f.model.chosen_params);
  EXPECT_EQ(back.language, f.model.language);
  EXPECT_EQ(back.stopwords, f.model.stopwords);
  EXPECT_EQ(dump(back), dump(f.model));
}

TEST(ModelIo, ClassifyAgreesOnProbeDocs) {
  const auto& f = fixture();
  const std::string path = (std::filesystem::temp_directory_path() / "leadmine_model_io_roundtrip.json").string();
  save_model(f.model, path);
  const MultiLabelModel back = load_model(path);
  std::mt19937 rng(4);
  const auto& terms = f.model.vocabulary.terms();
  for (int i = 0; i < 100; ++i) {
    TokenList doc = f.docs[rng() % f.docs.size()];
    doc.push_back(terms[rng() % terms.size()].first);
    const auto x = vectorize(doc, f.model.vocabulary);
    EXPECT_EQ(classify(back, doc), classify(f.model, doc));
    for (Label l : kAreaLabels)
      EXPECT_EQ(decision_value(back.area_models.at(l), x), decision_value(f.model.area_models.at(l), x));
  }
}

TEST(ModelIo, DocumentShape) {
  const auto j = nlohmann::json::parse(dump(fixture().model));
  EXPECT_EQ(j.at("version"), 1);
  EXPECT_EQ(j.at("idf_formula"), "smoothed_ln_plus1");
  EXPECT_TRUE(j.at("vocabulary").at(0).at(0).is_string());
  EXPECT_TRUE(j.at("vocabulary").at(0).at(1).is_number_integer());
  for (const char* l : {"SYM", "BEH", "POL", "STR"}) {
    const auto& m = j.at("models").at(l);
    EXPECT_TRUE(m.contains("c") && m.contains("gamma") && m.contains("bias"));
    const auto& sv = m.at("support").at(0);
    EXPECT_EQ(sv.size(), 3u);
    EXPECT_EQ(sv.at(0).size(), sv.at(1).size());
  }
  EXPECT_TRUE(j.contains("none_model"));
  EXPECT_TRUE(j.at("chosen_params").contains("NONE"));
}

TEST(ModelIo, TruncatedFileIsCorrupt) {
  const std::string text = dump(fixture().model);
  for (std::size_t cut : {std::size_t{0}, std::size_t{1}, text.size() / 3, text.size() - 3}) {
    std::istringstream in(text.substr(0, cut));
    EXPECT_THROW(read_model(in), CorruptModelError) << cut;
  }
}

TEST(ModelIo, FutureVersionNamesBoth) {
  auto j = model_to_json(fixture().model);
  j["version"] = 7;
  try {
    model_from_json(j);
    FAIL();
  } catch (const ModelVersionError& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find('7'), std::string::npos);
    EXPECT_NE(what.find('1'), std::string::npos);
    EXPECT_EQ(e.found(), 7);
  }
}

TEST(ModelIo, StructuralCorruption) {
  const auto good = model_to_json(fixture().model);
  auto j = good;
  j["models"].erase("POL");
  EXPECT_THROW(model_from_json(j), CorruptModelError);
  j = good;
  j["vocabulary"][0][1] = 100000;
  EXPECT_THROW(model_from_json(j), CorruptModelError);
  j = good;
  j["idf_formula"] = "raw";
  EXPECT_THROW(model_from_json(j), CorruptModelError);
  j = good;
  j["models"]["SYM"]["support"][0][0][0] = 999999;
  EXPECT_THROW(model_from_json(j), CorruptModelError);
  j = good;
  j.erase("version");
  EXPECT_THROW(model_from_json(j), CorruptModelError);
  EXPECT_THROW(model_from_json(nlohmann::json::array()), CorruptModelError);
  EXPECT_THROW(load_model("no/such/model.json"), Error);
}
