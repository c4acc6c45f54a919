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
#ifndef FEATUREDP_SGD_SERIALIZATION_H_
#define FEATUREDP_SGD_SERIALIZATION_H_

#include <cstdint>
#include <string>
#include <vector>

#include "featuredp/sgd/train.h"
#include "json.hpp"

namespace fdp {

inline constexpr int kTrainSchemaVersion = 1;

// Field names mirror TrainConfig. Unknown keys raise SchemaError.
nlohmann::json TrainConfigToJson(const TrainConfig& cfg);
TrainConfig TrainConfigFromJson(const nlohmann::json& doc);

nlohmann::json TrainReportToJson(const TrainReport& report);

// Recomputes the accounted privacy from the report's config echo and
// compares it with the stored epsilon; false when they disagree.
bool CheckReportConsistency(const nlohmann::json& report_doc,
                            double tolerance = 1e-9);

struct WeightsFile {
  std::vector<double> weights;
  std::vector<int64_t> dims;
  uint64_t seed = 0;
};

// One JSON header line ({"dims", "dtype": "float64-le", "seed", ...})
// followed by the raw values. Throws IoError on failure.
void WriteWeights(const std::string& path, const WeightsFile& file);
WeightsFile ReadWeights(const std::string& path);

}  // namespace fdp

#endif  // FEATUREDP_SGD_SERIALIZATION_H_
