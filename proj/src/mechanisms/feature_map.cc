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
#include "featuredp/mechanisms/feature_map.h"

#include <algorithm>

#include "featuredp/common/errors.h"

namespace fdp {

FeatureMap::FeatureMap(std::string name, std::string descriptor,
                       int num_features, std::vector<int> public_features,
                       bool label_public)
    : name_(std::move(name)),
      descriptor_(std::move(descriptor)),
      num_features_(num_features),
      is_public_(num_features, 0),
      label_public_(label_public) {
  if (num_features < 0) throw SchemaError("negative feature count");
  for (int f : public_features) {
    if (f < 0 || f >= num_features) {
      throw SchemaError("public feature index " + std::to_string(f) +
                        " out of range");
    }
    if (is_public_[f]) {
      throw SchemaError("feature " + std::to_string(f) + " listed twice");
    }
    is_public_[f] = 1;
  }
  for (int f = 0; f < num_features; ++f) {
    (is_public_[f] ? public_ : private_).push_back(f);
  }
}

FeatureMap FeatureMap::LabelDp(int num_features) {
  std::vector<int> all(num_features);
  for (int i = 0; i < num_features; ++i) all[i] = i;
  return FeatureMap("label-dp", "all features public; the label is private",
                    num_features, std::move(all), false);
}

FeatureMap FeatureMap::IdentityPublic(int num_features) {
  std::vector<int> all(num_features);
  for (int i = 0; i < num_features; ++i) all[i] = i;
  return FeatureMap("identity", "the whole record is public", num_features,
                    std::move(all), true);
}

FeatureMap FeatureMap::PrivateColumns(
    int num_features, const std::vector<int>& private_features) {
  std::vector<char> priv(num_features, 0);
  for (int f : private_features) {
    if (f < 0 || f >= num_features) {
      throw SchemaError("private feature index " + std::to_string(f) +
                        " out of range");
    }
    if (priv[f]) {
      throw SchemaError("feature " + std::to_string(f) +
                        " declared private twice");
    }
    priv[f] = 1;
  }
  std::vector<int> pub;
  for (int f = 0; f < num_features; ++f) {
    if (!priv[f]) pub.push_back(f);
  }
  return FeatureMap("private-columns",
                    std::to_string(private_features.size()) +
                        " feature columns private; label public",
                    num_features, std::move(pub), true);
}

bool FeatureMap::IsPublic(int feature) const {
  return feature >= 0 && feature < num_features_ && is_public_[feature];
}

PublicPart FeatureMap::Apply(const Example& example) const {
  if (static_cast<int>(example.features.size()) != num_features_) {
    throw SchemaError("example has " + std::to_string(example.features.size()) +
                      " features, feature map expects " +
                      std::to_string(num_features_));
  }
  PublicPart pub;
  pub.num_features = num_features_;
  pub.index = public_;
  pub.values.reserve(public_.size());
  for (int f : public_) pub.values.push_back(example.features[f]);
  pub.has_label = label_public_;
  pub.label = label_public_ ? example.label : 0;
  return pub;
}

PrivatePart FeatureMap::Private(const Example& example) const {
  if (static_cast<int>(example.features.size()) != num_features_) {
    throw SchemaError("example dimension does not match the feature map");
  }
  PrivatePart priv;
  priv.index = private_;
  priv.values.reserve(private_.size());
  for (int f : private_) priv.values.push_back(example.features[f]);
  priv.has_label = !label_public_;
  priv.label = label_public_ ? 0 : example.label;
  return priv;
}

std::pair<PublicPart, PrivatePart> FeatureMap::Split(
    const Example& example) const {
  return {Apply(example), Private(example)};
}

Example FeatureMap::Recombine(const PublicPart& pub,
                              const PrivatePart& priv) const {
  if (pub.index != public_ || priv.index != private_ ||
      pub.values.size() != public_.size() ||
      priv.values.size() != private_.size()) {
    throw SchemaError("parts do not belong to feature map " + name_);
  }
  Example ex;
  ex.features.assign(num_features_, 0.0);
  for (size_t i = 0; i < public_.size(); ++i) {
    ex.features[public_[i]] = pub.values[i];
  }
  for (size_t i = 0; i < private_.size(); ++i) {
    ex.features[private_[i]] = priv.values[i];
  }
  ex.label = label_public_ ? pub.label : priv.label;
  return ex;
}

Example FeatureMap::ZeroFill(const PublicPart& pub) const {
  PrivatePart zero;
  zero.index = private_;
  zero.values.assign(private_.size(), 0.0);
  zero.has_label = !label_public_;
  zero.label = 0;
  return Recombine(pub, zero);
}

TabularSplit SplitRecord(const TabularRecord& record,
                         const std::vector<ColumnSpec>& columns) {
  if (record.columns.size() != record.values.size()) {
    throw SchemaError("record has " + std::to_string(record.columns.size()) +
                      " column names but " +
                      std::to_string(record.values.size()) + " values");
  }
  for (size_t i = 0; i < columns.size(); ++i) {
    if (i >= record.columns.size()) {
      throw SchemaError("record is missing column '" + columns[i].name + "'");
    }
    if (record.columns[i] != columns[i].name) {
      throw SchemaError("record column '" + record.columns[i] +
                        "' where manifest expects '" + columns[i].name + "'");
    }
  }
  if (record.columns.size() > columns.size()) {
    throw SchemaError("record has unexpected column '" +
                      record.columns[columns.size()] + "'");
  }
  TabularSplit split;
  for (size_t i = 0; i < columns.size(); ++i) {
    TabularRecord& side = columns[i].role == ColumnRole::kPublic
                              ? split.public_part
                              : split.private_part;
    side.columns.push_back(record.columns[i]);
    side.values.push_back(record.values[i]);
  }
  return split;
}

TabularRecord RecombineRecord(const TabularSplit& split,
                              const std::vector<ColumnSpec>& columns) {
  TabularRecord out;
  size_t ip = 0, iq = 0;
  for (const ColumnSpec& c : columns) {
    const TabularRecord& side = c.role == ColumnRole::kPublic
                                    ? split.public_part
                                    : split.private_part;
    size_t& k = c.role == ColumnRole::kPublic ? ip : iq;
    if (k >= side.columns.size() || side.columns[k] != c.name) {
      throw SchemaError("split is missing column '" + c.name + "'");
    }
    out.columns.push_back(c.name);
    out.values.push_back(side.values[k]);
    ++k;
  }
  return out;
}

const char* ColumnKindName(ColumnKind kind) {
  switch (kind) {
    case ColumnKind::kNumeric:
      return "numeric";
    case ColumnKind::kCategorical:
      return "categorical";
    case ColumnKind::kLabel:
      return "label";
  }
  return "numeric";
}

const char* ColumnRoleName(ColumnRole role) {
  return role == ColumnRole::kPublic ? "public" : "private";
}

ColumnKind ParseColumnKind(const std::string& name) {
  if (name == "numeric") return ColumnKind::kNumeric;
  if (name == "categorical") return ColumnKind::kCategorical;
  if (name == "label") return ColumnKind::kLabel;
  throw SchemaError("unknown column kind '" + name + "'");
}

ColumnRole ParseColumnRole(const std::string& name) {
  if (name == "public") return ColumnRole::kPublic;
  if (name == "private") return ColumnRole::kPrivate;
  throw SchemaError("unknown column role '" + name + "'");
}

}  // namespace fdp
