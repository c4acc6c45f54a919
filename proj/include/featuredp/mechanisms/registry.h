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
#ifndef FEATUREDP_MECHANISMS_REGISTRY_H_
#define FEATUREDP_MECHANISMS_REGISTRY_H_

#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

namespace fdp {

// Datasets and outcomes cross the registry boundary as JSON values:
// bit-record mechanisms take an array of 0/1 arrays, vector mechanisms an
// array of number arrays.
struct MechanismInstance {
  std::string id;
  std::string outcome_space;
  std::function<nlohmann::json(const nlohmann::json& dataset, uint64_t seed)>
      run;
};

// The withheld record enters only through its public value.
struct SimulatorInstance {
  std::string id;
  std::function<nlohmann::json(const nlohmann::json& known,
                               const nlohmann::json& public_value,
                               uint64_t seed)>
      run;
};

struct MechanismParams {
  double epsilon = 0.6931471805599453;
  double subsample_prob = 1.0;
  double sigma = 1.0;
  // Vector dimension for gaussian-sum on empty inputs.
  int dim = -1;
};

// Known ids: rr, rr-v2, gaussian-sum, constant. Throws DomainError for
// anything else.
MechanismInstance MakeMechanism(const std::string& id,
                                const MechanismParams& params);
SimulatorInstance MakeSimulator(const std::string& id,
                                const MechanismParams& params);
std::vector<std::string> MechanismIds();

// One JSON object per line: {"seed": s, "outcome": ...}.
void DumpOutcomesJsonl(const MechanismInstance& mechanism,
                       const nlohmann::json& dataset,
                       const std::vector<uint64_t>& seeds, std::ostream& out);

}  // namespace fdp

#endif  // FEATUREDP_MECHANISMS_REGISTRY_H_
