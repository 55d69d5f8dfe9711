#include "loadsense/model_io.hpp"

#include <fstream>

#include "loadsense/types.hpp"

namespace loadsense {

using nlohmann::json;

namespace {

json vec_json(const Eigen::VectorXd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

json mat_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) rows.push_back(vec_json(m.row(r).transpose()));
  return rows;
}

Eigen::VectorXd vec_from(const json& a) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i) v(static_cast<Eigen::Index>(i)) = a[i].get<double>();
  return v;
}

Eigen::MatrixXd mat_from(const json& rows, Eigen::Index cols) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (static_cast<Eigen::Index>(rows[r].size()) != cols) throw DataError("model json: ragged matrix");
    m.row(static_cast<Eigen::Index>(r)) = vec_from(rows[r]).transpose();
  }
  return m;
}

json model_body(const TrainedModel& model) {
  json j;
  j["kind"] = to_string(model.kind);
  j["classes"] = model.classes;
  j["scaler"] = {{"mean", vec_json(model.scaler.mean)}, {"std", vec_json(model.scaler.std)}};
  json p;
  switch (model.kind) {
    case ModelKind::Lda: {
      const auto& lda = std::get<LdaParams>(model.params);
      p["shrinkage"] = lda.shrinkage;
      p["means"] = mat_json(lda.means);
      p["cov_inverse"] = mat_json(lda.cov_inverse);
      p["log_priors"] = vec_json(lda.log_priors);
      break;
    }
    case ModelKind::Knn: {
      const auto& knn = std::get<KnnParams>(model.params);
      p["k"] = knn.k;
      p["train"] = mat_json(knn.train);
      p["train_class"] = knn.train_class;
      break;
    }
    case ModelKind::AdaBoost: {
      const auto& ada = std::get<AdaBoostParams>(model.params);
      p["n_stumps"] = ada.n_stumps;
      p["machines"] = json::array();
      for (const auto& m : ada.machines) {
        json mj;
        mj["positive_class"] = m.positive_class;
        mj["alphas"] = m.alphas;
        mj["stumps"] = json::array();
        for (const auto& s : m.stumps)
          mj["stumps"].push_back({{"feature", s.feature}, {"threshold", s.threshold}, {"polarity", s.polarity}});
        p["machines"].push_back(std::move(mj));
      }
      break;
    }
    case ModelKind::Ensemble: {
      const auto& ens = std::get<EnsembleParams>(model.params);
      p["multiplicity"] = ens.multiplicity;
      p["members"] = json::array();
      for (const auto& m : ens.members) p["members"].push_back(model_body(m));
      break;
    }
  }
  j["params"] = std::move(p);
  return j;
}

TrainedModel model_from_body(const json& j) {
  TrainedModel model;
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "LDA") model.kind = ModelKind::Lda;
  else if (kind == "KNN") model.kind = ModelKind::Knn;
  else if (kind == "AdaBoost") model.kind = ModelKind::AdaBoost;
  else if (kind == "Ensemble") model.kind = ModelKind::Ensemble;
  else throw DataError("model json: unknown kind '" + kind + "'");
  model.classes = j.at("classes").get<std::vector<int>>();
  model.scaler.mean = vec_from(j.at("scaler").at("mean"));
  model.scaler.std = vec_from(j.at("scaler").at("std"));
  const auto p = model.scaler.mean.size();
  const json& pj = j.at("params");
  switch (model.kind) {
    case ModelKind::Lda: {
      LdaParams lda;
      lda.shrinkage = pj.at("shrinkage").get<double>();
      lda.means = mat_from(pj.at("means"), p);
      lda.cov_inverse = mat_from(pj.at("cov_inverse"), p);
      lda.log_priors = vec_from(pj.at("log_priors"));
      model.params = std::move(lda);
      break;
    }
    case ModelKind::Knn: {
      KnnParams knn;
      knn.k = pj.at("k").get<int>();
      knn.train = mat_from(pj.at("train"), p);
      knn.train_class = pj.at("train_class").get<std::vector<int>>();
      model.params = std::move(knn);
      break;
    }
    case ModelKind::AdaBoost: {
      AdaBoostParams ada;
      ada.n_stumps = pj.at("n_stumps").get<int>();
      for (const auto& mj : pj.at("machines")) {
        BoostedMachine m;
        m.positive_class = mj.at("positive_class").get<int>();
        m.alphas = mj.at("alphas").get<std::vector<double>>();
        for (const auto& sj : mj.at("stumps"))
          m.stumps.push_back({sj.at("feature").get<int>(), sj.at("threshold").get<double>(),
                              sj.at("polarity").get<int>()});
        ada.machines.push_back(std::move(m));
      }
      model.params = std::move(ada);
      break;
    }
    case ModelKind::Ensemble: {
      EnsembleParams ens;
      ens.multiplicity = pj.at("multiplicity").get<std::vector<int>>();
      for (const auto& mj : pj.at("members")) ens.members.push_back(model_from_body(mj));
      model.params = std::move(ens);
      break;
    }
  }
  return model;
}

}  // namespace

json model_to_json(const TrainedModel& model, std::uint64_t seed) {
  json doc;
  doc["format_version"] = kModelFormatVersion;
  doc["seed"] = seed;
  doc["model"] = model_body(model);
  return doc;
}

TrainedModel model_from_json(const json& doc) {
  try {
    if (doc.at("format_version").get<int>() != kModelFormatVersion)
      throw DataError("model json: unsupported format_version");
    return model_from_body(doc.at("model"));
  } catch (const json::exception& e) {
    throw DataError(std::string("model json: ") + e.what());
  }
}

void save_model(const std::filesystem::path& path, const TrainedModel& model, std::uint64_t seed) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  out << model_to_json(model, seed).dump(1) << "\n";
}

TrainedModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  try {
    return model_from_json(json::parse(in));
  } catch (const json::parse_error& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

}  // namespace loadsense
