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
#ifndef FEATUREDP_HARNESS_DATASET_H_
#define FEATUREDP_HARNESS_DATASET_H_

#include <cstdint>
#include <string>
#include <vector>

#include "featuredp/mechanisms/feature_map.h"
#include "json.hpp"

namespace fdp {

inline constexpr int kManifestSchemaVersion = 1;

struct DatasetManifest {
  std::vector<ColumnSpec> columns;
  int64_t num_records = 0;
  // Declared bound on the L2 norm of each record's numeric features.
  double norm_bound = 1.0;
  int num_classes = 2;

  // Throws SchemaError unless there is exactly one label column and every
  // column name is unique.
  void Validate() const;
  int LabelColumn() const;
  // Feature columns (all but the label) in manifest order.
  std::vector<int> FeatureColumns() const;
  // Feature map over the feature vector: private feature columns are
  // private, and the label follows its column role.
  FeatureMap MakeFeatureMap() const;

  nlohmann::json ToJson() const;
  static DatasetManifest FromJson(const nlohmann::json& doc);
};

// A dataset as loaded from disk: typed examples plus what is needed to
// write it back.
struct LoadedDataset {
  DatasetManifest manifest;
  FeatureDataset data;
  // Per feature column: the dictionary of a categorical column (code i
  // stands for entry i), empty for numeric columns.
  std::vector<std::vector<std::string>> dictionaries;
  // Label dictionary when the label column holds non-integer strings.
  std::vector<std::string> label_dictionary;
};

DatasetManifest ReadManifest(const std::string& path);
void WriteManifest(const std::string& path, const DatasetManifest& manifest);

// Parses a CSV whose header matches the manifest names and order.
// Errors: SchemaError (header mismatch, naming the column), ParseError
// (bad cell, naming row and column), NormViolationError (naming the row),
// IoError.
LoadedDataset LoadDataset(const std::string& csv_path,
                          const std::string& manifest_path);
LoadedDataset LoadDatasetFromStrings(const std::string& csv_text,
                                     const DatasetManifest& manifest);

// Writes numeric cells with %.17g so that loading reproduces the values.
void WriteDataset(const std::string& csv_path, const LoadedDataset& dataset);
std::string DatasetToCsv(const LoadedDataset& dataset);

// Minimal CSV line splitting with double-quote escaping.
std::vector<std::string> SplitCsvLine(const std::string& line);

}  // namespace fdp

#endif  // FEATUREDP_HARNESS_DATASET_H_
