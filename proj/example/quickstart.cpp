// Minimal end-to-end use of the library: preprocess, train, classify,
// aggregate.

#include <iostream>
#include <string>
#include <vector>

#include "leadmine/classifier.hpp"
#include "leadmine/leadership.hpp"

using namespace leadmine;

int main() {
  const auto prep = PreprocessConfig::defaults(Language::english);
  for (const auto& t : prep("At five thirty on Monday morning Luca was very relaxed")) std::cout << t << ' ';
  std::cout << '\n';

  const std::vector<std::pair<std::string, LabelSet>> data = {
      {"Our vision inspires the whole company", {Label::SYM}},
      {"A bold vision for a greener future", {Label::SYM}},
      {"The CEO shares a vision of innovation", {Label::SYM}},
      {"New training program for employees", {Label::BEH}},
      {"Employees share knowledge in mentoring sessions", {Label::BEH}},
      {"Training and mentoring for young employees", {Label::BEH}},
      {"Negotiation with the government on tariffs", {Label::POL}},
      {"Lobbying and negotiation with regulators", {Label::POL}},
      {"Government pressure during the negotiation", {Label::POL}},
      {"Reorganization of the divisions announced", {Label::STR}},
      {"The new structure merges two divisions", {Label::STR}},
      {"Reorganization creates a leaner structure", {Label::STR}},
      {"Weather is nice today", LabelSet::none()},
      {"Watching the match tonight", LabelSet::none()},
      {"Coffee break with friends", LabelSet::none()},
  };
  std::vector<TokenList> docs;
  std::vector<LabelSet> labels;
  for (const auto& [text, l] : data) {
    docs.push_back(prep(text));
    labels.push_back(l);
  }

  TrainOptions opts;
  opts.search.folds = 3;
  opts.search.grid = {{10.0, 0.1}, {100.0, 0.1}};
  opts.language = Language::english;
  const MultiLabelModel model = train_multilabel(docs, labels, opts).model;

  std::vector<LabelSet> predicted;
  for (const char* text : {"A vision that inspires", "Negotiation over the reorganization", "Nice coffee"}) {
    predicted.push_back(classify(model, prep(text)));
    std::cout << text << " -> " << predicted.back() << '\n';
  }
  std::cout << render_report({aggregate(predicted, {"Example", "P1"})}, ReportFormat::csv);
}
