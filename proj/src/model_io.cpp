#include "fsa/model_io.hpp"

#include <fstream>

#include "json.hpp"

namespace fsa {

using nlohmann::json;

void save_model(const SavedModel& model, const std::string& path) {
  json j;
  j["schema_version"] = kModelSchemaVersion;
  j["task"] = to_string(model.task);
  j["loss"] = to_string(model.loss);
  j["group_size"] = model.group_size;
  j["n_features"] = model.n_features;
  j["target_name"] = model.target_name;

  json entries = json::array();
  if (model.is_pl()) {
    j["intercept"] = model.pl.intercept;
    const int L = model.pl.B + 1;
    for (int g = 0; g < model.pl.n_groups(); ++g) {
      json e;
      e["column"] = model.pl.active_index[g];
      std::vector<double> vals(L);
      for (int t = 0; t < L; ++t) vals[t] = model.pl.coeffs[static_cast<long>(g) * L + t];
      e["values"] = vals;
      e["x_min"] = model.pl.bins[g].x_min;
      e["x_max"] = model.pl.bins[g].x_max;
      e["B"] = model.pl.B;
      entries.push_back(std::move(e));
    }
  } else {
    j["intercept"] = model.linear.intercept;
    for (int g = 0; g < model.linear.n_groups(); ++g) {
      json e;
      e["column"] = model.linear.active_index[g];
      e["values"] = std::vector<double>{model.linear.coeffs[g]};
      entries.push_back(std::move(e));
    }
  }
  j["entries"] = std::move(entries);

  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << j.dump(2) << "\n";
  if (!out) throw IoError("write to '" + path + "' failed");
}

SavedModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& ex) {
    throw ParseError("'" + path + "' is not valid JSON: " + ex.what());
  }

  try {
    int version = j.at("schema_version").get<int>();
    if (version != kModelSchemaVersion)
      throw ParseError("'" + path + "' uses model schema_version " + std::to_string(version) +
                       "; this build reads version " + std::to_string(kModelSchemaVersion) +
                       " only");

    SavedModel model;
    model.task = task_from_string(j.at("task").get<std::string>());
    model.loss = loss_from_string(j.at("loss").get<std::string>());
    model.group_size = j.at("group_size").get<int>();
    model.n_features = j.at("n_features").get<long>();
    model.target_name = j.at("target_name").get<std::string>();
    double intercept = j.at("intercept").get<double>();
    const json& entries = j.at("entries");
    if (!entries.is_array()) throw ParseError("'" + path + "': entries must be an array");

    if (model.group_size < 1) throw ParseError("'" + path + "': group_size must be >= 1");
    if (model.is_pl()) {
      PLModel& pl = model.pl;
      pl.task = model.task;
      pl.B = model.group_size - 1;
      pl.intercept = intercept;
      pl.coeffs.resize(static_cast<long>(entries.size()) * model.group_size);
      long w = 0;
      for (const json& e : entries) {
        pl.active_index.push_back(e.at("column").get<int>());
        if (e.at("B").get<int>() != pl.B)
          throw ParseError("'" + path + "': entry B disagrees with group_size");
        BinSpec b;
        b.B = pl.B;
        b.x_min = e.at("x_min").get<double>();
        b.x_max = e.at("x_max").get<double>();
        if (!(b.x_max > b.x_min)) throw ParseError("'" + path + "': empty bin range");
        pl.bins.push_back(b);
        const auto vals = e.at("values").get<std::vector<double>>();
        if (static_cast<int>(vals.size()) != model.group_size)
          throw ParseError("'" + path + "': entry values must have group_size elements");
        for (double v : vals) pl.coeffs[w++] = v;
      }
    } else {
      ActiveModel& lin = model.linear;
      lin.group_size = 1;
      lin.intercept = intercept;
      lin.coeffs.resize(static_cast<long>(entries.size()));
      long w = 0;
      for (const json& e : entries) {
        lin.active_index.push_back(e.at("column").get<int>());
        const auto vals = e.at("values").get<std::vector<double>>();
        if (vals.size() != 1)
          throw ParseError("'" + path + "': linear entries carry exactly one value");
        lin.coeffs[w++] = vals[0];
      }
      lin.validate();
    }
    return model;
  } catch (const json::exception& ex) {
    throw ParseError("'" + path + "' is missing model fields: " + ex.what());
  }
}

Vector model_scores(const SavedModel& model, const Matrix& X) {
  if (X.cols() != model.n_features) {
    std::string msg = "feature matrix has " + std::to_string(X.cols()) +
                      " columns, model was trained on " + std::to_string(model.n_features);
    if (X.cols() < model.n_features) {
      msg += "; missing columns";
      for (long c = X.cols(); c < model.n_features; ++c) msg += " " + std::to_string(c);
    }
    throw ContractError(msg);
  }
  if (model.is_pl()) return pl_predict_all(model.pl, X);

  Vector f = Vector::Constant(X.rows(), model.linear.intercept);
  for (int g = 0; g < model.linear.n_groups(); ++g) {
    int col = model.linear.active_index[g];
    if (col < 0 || col >= X.cols())
      throw ContractError("model references column " + std::to_string(col) +
                          " beyond the feature matrix");
    f += model.linear.coeffs[g] * X.col(col);
  }
  return f;
}

}  // namespace fsa
