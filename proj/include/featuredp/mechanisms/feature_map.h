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
#ifndef FEATUREDP_MECHANISMS_FEATURE_MAP_H_
#define FEATUREDP_MECHANISMS_FEATURE_MAP_H_

#include <string>
#include <utility>
#include <vector>

namespace fdp {

// A training example: a real feature vector and a class label.
struct Example {
  std::vector<double> features;
  int label = 0;
};

struct FeatureDataset {
  std::vector<Example> examples;
  int num_classes = 2;
};

// The part of an example a feature map reveals. Only public coordinates
// are stored; private coordinates are absent, not zeroed.
struct PublicPart {
  int num_features = 0;
  std::vector<int> index;
  std::vector<double> values;
  bool has_label = false;
  int label = 0;
};

// The complement of PublicPart.
struct PrivatePart {
  std::vector<int> index;
  std::vector<double> values;
  bool has_label = false;
  int label = 0;
};

// A deterministic public-feature map Psi over examples, given by the set of
// feature coordinates (and optionally the label) it reveals.
class FeatureMap {
 public:
  FeatureMap(std::string name, std::string descriptor, int num_features,
             std::vector<int> public_features, bool label_public);

  // Psi(x, y) = x: every feature public, label private.
  static FeatureMap LabelDp(int num_features);
  // Everything public; the private part is empty.
  static FeatureMap IdentityPublic(int num_features);
  // The listed feature coordinates are private, everything else (label
  // included) public.
  static FeatureMap PrivateColumns(int num_features,
                                   const std::vector<int>& private_features);

  const std::string& name() const { return name_; }
  const std::string& descriptor() const { return descriptor_; }
  int num_features() const { return num_features_; }
  const std::vector<int>& public_features() const { return public_; }
  const std::vector<int>& private_features() const { return private_; }
  bool label_public() const { return label_public_; }
  bool IsPublic(int feature) const;

  // Throws SchemaError when the example has the wrong dimension.
  PublicPart Apply(const Example& example) const;
  PrivatePart Private(const Example& example) const;
  std::pair<PublicPart, PrivatePart> Split(const Example& example) const;
  // Inverse of Split.
  Example Recombine(const PublicPart& pub, const PrivatePart& priv) const;

  // An example with the given public part and zero-filled private fields.
  Example ZeroFill(const PublicPart& pub) const;

 private:
  std::string name_;
  std::string descriptor_;
  int num_features_;
  std::vector<int> public_;
  std::vector<int> private_;
  std::vector<char> is_public_;
  bool label_public_;
};

// Tabular records addressed by column name.
enum class ColumnKind { kNumeric, kCategorical, kLabel };
enum class ColumnRole { kPublic, kPrivate };

struct ColumnSpec {
  std::string name;
  ColumnKind kind = ColumnKind::kNumeric;
  ColumnRole role = ColumnRole::kPublic;
};

struct TabularRecord {
  std::vector<std::string> columns;
  std::vector<std::string> values;
};

struct TabularSplit {
  TabularRecord public_part;
  TabularRecord private_part;
};

// Splits a record by the column roles. Throws SchemaError naming the first
// column that is missing, unexpected or out of order.
TabularSplit SplitRecord(const TabularRecord& record,
                         const std::vector<ColumnSpec>& columns);
// Reassembles a split record in manifest column order.
TabularRecord RecombineRecord(const TabularSplit& split,
                              const std::vector<ColumnSpec>& columns);

const char* ColumnKindName(ColumnKind kind);
const char* ColumnRoleName(ColumnRole role);
// Throws SchemaError on unknown names.
ColumnKind ParseColumnKind(const std::string& name);
ColumnRole ParseColumnRole(const std::string& name);

}  // namespace fdp

#endif  // FEATUREDP_MECHANISMS_FEATURE_MAP_H_
