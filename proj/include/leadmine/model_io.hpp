#pragma once

// Versioned JSON model files.

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "leadmine/classifier.hpp"
#include "leadmine/error.hpp"

namespace leadmine {

inline constexpr int kModelVersion = 1;
inline constexpr const char* kIdfFormula = "smoothed_ln_plus1";

class ModelVersionError : public Error {
 public:
  ModelVersionError(long long found, int supported)
      : Error("model file version " + std::to_string(found) +
              " is not supported (this build reads version " + std::to_string(supported) + ")"),
        found_(found) {}
  long long found() const noexcept { return found_; }

 private:
  long long found_;
};

class CorruptModelError : public Error {
 public:
  explicit CorruptModelError(const std::string& what) : Error("corrupt model file: " + what) {}
};

namespace model_io_detail {

using nlohmann::json;

inline json binary_to_json(const BinarySvmModel& m) {
  json support = json::array();
  for (std::size_t i = 0; i < m.support_vectors().size(); ++i) {
    json idx = json::array(), vals = json::array();
    for (const auto& e : m.support_vectors()[i].entries()) {
      idx.push_back(e.index);
      vals.push_back(e.weight);
    }
    support.push_back(json::array({std::move(idx), std::move(vals), m.dual_coefs()[i]}));
  }
  return {{"c", m.c()}, {"gamma", m.kernel().gamma}, {"bias", m.bias()}, {"support", std::move(support)}};
}

inline BinarySvmModel binary_from_json(const json& j, std::size_t dim) {
  std::vector<SparseVector> svs;
  std::vector<double> coefs;
  for (const auto& sv : j.at("support")) {
    if (!sv.is_array() || sv.size() != 3) throw CorruptModelError("malformed support vector");
    const auto idx = sv[0].get<std::vector<std::uint32_t>>();
    const auto vals = sv[1].get<std::vector<double>>();
    if (idx.size() != vals.size()) throw CorruptModelError("support vector index/value length mismatch");
    std::vector<SparseEntry> entries(idx.size());
    for (std::size_t k = 0; k < idx.size(); ++k) entries[k] = {idx[k], vals[k]};
    svs.emplace_back(dim, std::move(entries));
    coefs.push_back(sv[2].get<double>());
  }
  return BinarySvmModel(dim, std::move(svs), std::move(coefs), j.at("bias").get<double>(),
                        KernelParams{j.at("gamma").get<double>()}, j.at("c").get<double>());
}

}  // namespace model_io_detail

inline nlohmann::json model_to_json(const MultiLabelModel& m) {
  using nlohmann::json;
  json vocab = json::array();
  for (const auto& [term, df] : m.vocabulary.terms()) vocab.push_back(json::array({term, df}));
  json models = json::object();
  for (const auto& [l, bm] : m.area_models)
    models[std::string(to_string(l))] = model_io_detail::binary_to_json(bm);
  json params = json::object();
  for (const auto& [l, p] : m.chosen_params)
    params[std::string(to_string(l))] = {{"c", p.c}, {"gamma", p.gamma}};
  json j = {{"version", kModelVersion},
            {"idf_formula", kIdfFormula},
            {"vocabulary", std::move(vocab)},
            {"n_docs", m.vocabulary.n_docs()},
            {"models", std::move(models)},
            {"chosen_params", std::move(params)},
            {"language", std::string(language_code(m.language))},
            {"stopwords", m.stopwords}};
  if (m.none_model) j["none_model"] = model_io_detail::binary_to_json(*m.none_model);
  return j;
}

inline MultiLabelModel model_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw CorruptModelError("top level is not an object");
  if (!j.contains("version") || !j["version"].is_number_integer())
    throw CorruptModelError("missing version");
  const auto version = j["version"].get<long long>();
  if (version != kModelVersion) throw ModelVersionError(version, kModelVersion);
  try {
    if (j.at("idf_formula").get<std::string>() != kIdfFormula)
      throw CorruptModelError("unknown idf_formula '" + j["idf_formula"].get<std::string>() + "'");
    MultiLabelModel m;
    std::vector<std::pair<std::string, std::uint32_t>> terms;
    for (const auto& t : j.at("vocabulary")) {
      if (!t.is_array() || t.size() != 2) throw CorruptModelError("malformed vocabulary entry");
      terms.emplace_back(t[0].get<std::string>(), t[1].get<std::uint32_t>());
    }
    m.vocabulary = Vocabulary(std::move(terms), j.at("n_docs").get<std::size_t>());
    const std::size_t dim = m.vocabulary.size();
    for (const auto& [name, bm] : j.at("models").items())
      m.area_models.emplace(parse_label(name), model_io_detail::binary_from_json(bm, dim));
    for (const auto& [name, p] : j.at("chosen_params").items())
      m.chosen_params[parse_label(name)] = {p.at("c").get<double>(), p.at("gamma").get<double>()};
    if (j.contains("none_model")) m.none_model = model_io_detail::binary_from_json(j["none_model"], dim);
    m.language = parse_language(j.at("language").get<std::string>());
    m.stopwords = j.at("stopwords").get<std::vector<std::string>>();
    m.validate();
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw CorruptModelError(e.what());
  } catch (const CorruptModelError&) {
    throw;
  } catch (const InvalidArgument& e) {
    throw CorruptModelError(e.what());
  }
}

inline void write_model(std::ostream& out, const MultiLabelModel& m) {
  out << model_to_json(m).dump() << '\n';
}

inline MultiLabelModel read_model(std::istream& in) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw CorruptModelError(e.what());
  }
  return model_from_json(j);
}

inline void save_model(const MultiLabelModel& m, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write model file '" + path + "'");
  write_model(out, m);
  if (!out) throw Error("error writing model file '" + path + "'");
}

inline MultiLabelModel load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open model file '" + path + "'");
  return read_model(in);
}

}  // namespace leadmine
