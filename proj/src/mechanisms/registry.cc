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
#include "featuredp/mechanisms/registry.h"

#include "featuredp/common/errors.h"
#include "featuredp/mechanisms/gaussian_sum.h"
#include "featuredp/mechanisms/randomized_response.h"

namespace fdp {
namespace {

using nlohmann::json;

BitRecord BitsFromJson(const json& value) {
  if (!value.is_array()) throw DomainError("bit record must be a JSON array");
  BitRecord r;
  for (const json& b : value) r.push_back(static_cast<uint8_t>(b.get<int>()));
  ValidateBitRecord(r);
  return r;
}

std::vector<BitRecord> RecordsFromJson(const json& value) {
  if (!value.is_array()) throw DomainError("dataset must be a JSON array");
  std::vector<BitRecord> out;
  for (const json& r : value) out.push_back(BitsFromJson(r));
  return out;
}

json RecordsToJson(const std::vector<BitRecord>& records) {
  json out = json::array();
  for (const BitRecord& r : records) {
    json bits = json::array();
    for (uint8_t b : r) bits.push_back(static_cast<int>(b));
    out.push_back(bits);
  }
  return out;
}

std::vector<std::vector<double>> VectorsFromJson(const json& value) {
  if (!value.is_array()) throw DomainError("dataset must be a JSON array");
  return value.get<std::vector<std::vector<double>>>();
}

MechanismInstance RrInstance(const std::string& id, RrVariant variant,
                             const MechanismParams& params) {
  MechanismInstance m;
  m.id = id;
  m.outcome_space = "discrete:bit-record-multiset";
  m.run = [params, variant](const json& dataset, uint64_t seed) {
    std::vector<BitRecord> out =
        RrSubsampled(RecordsFromJson(dataset), params.epsilon,
                     params.subsample_prob, seed, variant);
    Canonicalize(&out);
    return RecordsToJson(out);
  };
  return m;
}

}  // namespace

std::vector<std::string> MechanismIds() {
  return {"rr", "rr-v2", "gaussian-sum", "constant"};
}

MechanismInstance MakeMechanism(const std::string& id,
                                const MechanismParams& params) {
  if (id == "rr") return RrInstance(id, RrVariant::kDoubleEpsilon, params);
  if (id == "rr-v2") return RrInstance(id, RrVariant::kHalfExp, params);
  if (id == "gaussian-sum") {
    MechanismInstance m;
    m.id = id;
    m.outcome_space = "continuous:real-vector";
    m.run = [params](const json& dataset, uint64_t seed) {
      return json(GaussianSum(VectorsFromJson(dataset), params.sigma, seed,
                              params.dim));
    };
    return m;
  }
  if (id == "constant") {
    MechanismInstance m;
    m.id = id;
    m.outcome_space = "discrete:singleton";
    m.run = [](const json&, uint64_t) { return json(0); };
    return m;
  }
  throw DomainError("unknown mechanism '" + id + "'");
}

SimulatorInstance MakeSimulator(const std::string& id,
                                const MechanismParams& params) {
  SimulatorInstance s;
  s.id = id;
  if (id == "rr" || id == "rr-v2") {
    RrVariant variant =
        id == "rr" ? RrVariant::kDoubleEpsilon : RrVariant::kHalfExp;
    s.run = [params, variant](const json& known, const json& public_value,
                              uint64_t seed) {
      std::vector<BitRecord> out =
          RrSimulator(RecordsFromJson(known), BitsFromJson(public_value),
                      params.epsilon, params.subsample_prob, seed, variant);
      Canonicalize(&out);
      return RecordsToJson(out);
    };
    return s;
  }
  if (id == "gaussian-sum") {
    // The zero-filled filler contributes the zero vector.
    s.run = [params](const json& known, const json&, uint64_t seed) {
      return json(GaussianSum(VectorsFromJson(known), params.sigma, seed,
                              params.dim));
    };
    return s;
  }
  if (id == "constant") {
    s.run = [](const json&, const json&, uint64_t) { return json(0); };
    return s;
  }
  throw DomainError("unknown mechanism '" + id + "'");
}

void DumpOutcomesJsonl(const MechanismInstance& mechanism,
                       const json& dataset, const std::vector<uint64_t>& seeds,
                       std::ostream& out) {
  for (uint64_t seed : seeds) {
    json line = {{"mechanism", mechanism.id},
                 {"seed", seed},
                 {"outcome", mechanism.run(dataset, seed)}};
    out << line.dump() << '\n';
  }
}

}  // namespace fdp
