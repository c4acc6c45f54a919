// Copyright 2026 The FeatureDP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "featuredp/sgd/serialization.h"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <set>

#include "featuredp/common/errors.h"

namespace fdp {
namespace {

using nlohmann::json;

json OptionalToJson(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

std::optional<double> OptionalFromJson(const json& v) {
  if (v.is_null()) return std::nullopt;
  return v.get<double>();
}

json NumberOrString(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

}  // namespace

json TrainConfigToJson(const TrainConfig& cfg) {
  return {{"schema_version", kTrainSchemaVersion},
          {"priv_batch_expected", cfg.priv_batch_expected},
          {"pub_batch", cfg.pub_batch},
          {"steps", cfg.steps},
          {"lr_schedule", LrScheduleName(cfg.lr_schedule)},
          {"lr", cfg.lr},
          {"lambda", cfg.lambda},
          {"sigma", cfg.sigma},
          {"clip", OptionalToJson(cfg.clip)},
          {"mix_ratio", cfg.mix_ratio},
          {"projection_radius", OptionalToJson(cfg.projection_radius)},
          {"aggregate", AggregateName(cfg.aggregate)},
          {"suffix_fraction", cfg.suffix_fraction},
          {"delta", cfg.delta},
          {"loss_every", cfg.loss_every},
          {"seed", cfg.seed}};
}

TrainConfig TrainConfigFromJson(const json& doc) {
  if (!doc.is_object()) throw SchemaError("train config must be an object");
  static const std::set<std::string> known = {
      "schema_version", "priv_batch_expected", "pub_batch", "steps",
      "lr_schedule",    "lr",                  "lambda",    "sigma",
      "clip",           "mix_ratio",           "projection_radius",
      "aggregate",      "suffix_fraction",     "delta",     "loss_every",
      "seed"};
  for (const auto& [key, value] : doc.items()) {
    if (!known.count(key)) {
      throw SchemaError("unknown train config field '" + key + "'");
    }
  }
  if (doc.contains("schema_version") &&
      doc["schema_version"].get<int>() != kTrainSchemaVersion) {
    throw SchemaError("unsupported train config schema version");
  }
  TrainConfig cfg;
  try {
    cfg.priv_batch_expected =
        doc.value("priv_batch_expected", cfg.priv_batch_expected);
    cfg.pub_batch = doc.value("pub_batch", cfg.pub_batch);
    cfg.steps = doc.value("steps", cfg.steps);
    if (doc.contains("lr_schedule")) {
      cfg.lr_schedule = ParseLrSchedule(doc["lr_schedule"].get<std::string>());
    }
    cfg.lr = doc.value("lr", cfg.lr);
    cfg.lambda = doc.value("lambda", cfg.lambda);
    cfg.sigma = doc.value("sigma", cfg.sigma);
    if (doc.contains("clip")) cfg.clip = OptionalFromJson(doc["clip"]);
    cfg.mix_ratio = doc.value("mix_ratio", cfg.mix_ratio);
    if (doc.contains("projection_radius")) {
      cfg.projection_radius = OptionalFromJson(doc["projection_radius"]);
    }
    if (doc.contains("aggregate")) {
      cfg.aggregate = ParseAggregate(doc["aggregate"].get<std::string>());
    }
    cfg.suffix_fraction = doc.value("suffix_fraction", cfg.suffix_fraction);
    cfg.delta = doc.value("delta", cfg.delta);
    cfg.loss_every = doc.value("loss_every", cfg.loss_every);
    cfg.seed = doc.value("seed", cfg.seed);
  } catch (const json::exception& e) {
    throw SchemaError(std::string("bad train config: ") + e.what());
  } catch (const DomainError& e) {
    throw SchemaError(e.what());
  }
  return cfg;
}

json TrainReportToJson(const TrainReport& report) {
  json trajectory = json::array();
  for (const auto& [t, v] : report.loss_trajectory) {
    trajectory.push_back({t, NumberOrString(v)});
  }
  json doc = {{"schema_version", kTrainSchemaVersion},
              {"method", report.method},
              {"final_weights", report.final_weights},
              {"step_index", report.state.step_index},
              {"private_data_touched", report.state.private_data_touched},
              {"accuracy", NumberOrString(report.accuracy)},
              {"empirical_risk", NumberOrString(report.empirical_risk)},
              {"loss_trajectory", trajectory},
              {"clip_effective", report.clip_effective},
              {"sampling_prob", report.sampling_prob},
              {"clipped", report.clipped},
              {"config", TrainConfigToJson(report.config)}};
  doc["privacy"] = {
      {"epsilon", EpsilonToJson(report.privacy.params.epsilon)},
      {"delta", report.privacy.params.delta},
      {"sensitivity", report.privacy.spec.sensitivity},
      {"sigma", report.privacy.spec.sigma},
      {"sampling_prob", report.privacy.spec.sampling_prob},
      {"steps", report.privacy.spec.steps}};
  return doc;
}

bool CheckReportConsistency(const json& report_doc, double tolerance) {
  TrainConfig cfg = TrainConfigFromJson(report_doc.at("config"));
  double stored = EpsilonFromJson(report_doc.at("privacy").at("epsilon"));
  double p = report_doc.at("sampling_prob").get<double>();
  double c_eff = report_doc.at("clip_effective").get<double>();
  if (report_doc.at("method").get<std::string>() == "public-only") {
    p = 0.0;
  }
  AccountedPrivacy fresh = AccountTraining(p, cfg.priv_batch_expected,
                                           cfg.sigma, c_eff, cfg.steps,
                                           cfg.delta);
  double eps = fresh.params.epsilon;
  if (IsInfiniteEpsilon(eps) || IsInfiniteEpsilon(stored)) {
    return IsInfiniteEpsilon(eps) == IsInfiniteEpsilon(stored);
  }
  return std::fabs(eps - stored) <= tolerance;
}

void WriteWeights(const std::string& path, const WeightsFile& file) {
  int64_t count = 1;
  for (int64_t d : file.dims) count *= d;
  if (count != static_cast<int64_t>(file.weights.size())) {
    throw DomainError("weights do not match the declared dims");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  json header = {{"schema_version", kTrainSchemaVersion},
                 {"dims", file.dims},
                 {"dtype", "float64-le"},
                 {"count", count},
                 {"seed", file.seed}};
  out << header.dump() << '\n';
  static_assert(std::endian::native == std::endian::little,
                "weights files are little-endian");
  out.write(reinterpret_cast<const char*>(file.weights.data()),
            static_cast<std::streamsize>(file.weights.size() * sizeof(double)));
  if (!out) throw IoError("failed writing '" + path + "'");
}

WeightsFile ReadWeights(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw IoError("missing weights header");
  json header;
  try {
    header = json::parse(line);
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad weights header: ") + e.what());
  }
  if (header.value("dtype", "") != "float64-le") {
    throw SchemaError("unsupported weights dtype");
  }
  WeightsFile file;
  file.dims = header.at("dims").get<std::vector<int64_t>>();
  file.seed = header.value("seed", uint64_t{0});
  int64_t count = header.at("count").get<int64_t>();
  file.weights.resize(count);
  in.read(reinterpret_cast<char*>(file.weights.data()),
          static_cast<std::streamsize>(count * sizeof(double)));
  if (in.gcount() != static_cast<std::streamsize>(count * sizeof(double))) {
    throw IoError("truncated weights file '" + path + "'");
  }
  return file;
}

}  // namespace fdp
