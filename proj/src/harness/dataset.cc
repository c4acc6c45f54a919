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
#include "featuredp/harness/dataset.h"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "featuredp/common/errors.h"

namespace fdp {
namespace {

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw IoError("failed writing '" + path + "'");
}

std::string FormatDouble(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string QuoteCsv(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

bool ParseDouble(const std::string& s, double* v) {
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(begin, end, *v);
  return ec == std::errc() && ptr == end && !s.empty();
}

bool ParseInt(const std::string& s, int* v) {
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(begin, end, *v);
  return ec == std::errc() && ptr == end && !s.empty();
}

}  // namespace

void DatasetManifest::Validate() const {
  int labels = 0;
  std::set<std::string> names;
  for (const ColumnSpec& c : columns) {
    if (c.name.empty()) throw SchemaError("column with an empty name");
    if (!names.insert(c.name).second) {
      throw SchemaError("duplicate column '" + c.name + "'");
    }
    if (c.kind == ColumnKind::kLabel) ++labels;
  }
  if (labels != 1) {
    throw SchemaError("manifest needs exactly one label column, found " +
                      std::to_string(labels));
  }
  if (!(norm_bound > 0.0)) throw SchemaError("norm bound must be positive");
  if (num_classes < 1) throw SchemaError("num_classes must be positive");
  if (num_records < 0) throw SchemaError("num_records must be non-negative");
}

int DatasetManifest::LabelColumn() const {
  for (size_t i = 0; i < columns.size(); ++i) {
    if (columns[i].kind == ColumnKind::kLabel) return static_cast<int>(i);
  }
  throw SchemaError("manifest has no label column");
}

std::vector<int> DatasetManifest::FeatureColumns() const {
  std::vector<int> out;
  for (size_t i = 0; i < columns.size(); ++i) {
    if (columns[i].kind != ColumnKind::kLabel) out.push_back(static_cast<int>(i));
  }
  return out;
}

FeatureMap DatasetManifest::MakeFeatureMap() const {
  std::vector<int> features = FeatureColumns();
  std::vector<int> pub;
  std::vector<std::string> priv_names;
  for (size_t f = 0; f < features.size(); ++f) {
    if (columns[features[f]].role == ColumnRole::kPublic) {
      pub.push_back(static_cast<int>(f));
    } else {
      priv_names.push_back(columns[features[f]].name);
    }
  }
  bool label_public = columns[LabelColumn()].role == ColumnRole::kPublic;
  std::string descriptor = "public: all features except";
  if (priv_names.empty()) descriptor = "public: every feature";
  for (const std::string& n : priv_names) descriptor += " " + n;
  descriptor += label_public ? "; label public" : "; label private";
  return FeatureMap("manifest", descriptor, static_cast<int>(features.size()),
                    pub, label_public);
}

nlohmann::json DatasetManifest::ToJson() const {
  nlohmann::json cols = nlohmann::json::array();
  for (const ColumnSpec& c : columns) {
    cols.push_back({{"name", c.name},
                    {"kind", ColumnKindName(c.kind)},
                    {"role", ColumnRoleName(c.role)}});
  }
  return {{"schema_version", kManifestSchemaVersion},
          {"columns", cols},
          {"num_records", num_records},
          {"normalization", {{"norm_bound", norm_bound}}},
          {"num_classes", num_classes}};
}

DatasetManifest DatasetManifest::FromJson(const nlohmann::json& doc) {
  DatasetManifest m;
  try {
    if (doc.value("schema_version", kManifestSchemaVersion) !=
        kManifestSchemaVersion) {
      throw SchemaError("unsupported manifest schema version");
    }
    for (const auto& c : doc.at("columns")) {
      ColumnSpec spec;
      spec.name = c.at("name").get<std::string>();
      spec.kind = ParseColumnKind(c.value("kind", "numeric"));
      spec.role = ParseColumnRole(c.value("role", "public"));
      m.columns.push_back(spec);
    }
    m.num_records = doc.value("num_records", int64_t{0});
    if (doc.contains("normalization")) {
      m.norm_bound = doc["normalization"].value("norm_bound", 1.0);
    }
    m.num_classes = doc.value("num_classes", 2);
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("bad manifest: ") + e.what());
  }
  m.Validate();
  return m;
}

DatasetManifest ReadManifest(const std::string& path) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(ReadFile(path));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("manifest '" + path + "': " + e.what());
  }
  return DatasetManifest::FromJson(doc);
}

void WriteManifest(const std::string& path, const DatasetManifest& manifest) {
  WriteFile(path, manifest.ToJson().dump(2) + "\n");
}

std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cell += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cell += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(cell);
      cell.clear();
    } else {
      cell += c;
    }
  }
  out.push_back(cell);
  return out;
}

LoadedDataset LoadDatasetFromStrings(const std::string& csv_text,
                                     const DatasetManifest& manifest) {
  manifest.Validate();
  std::istringstream in(csv_text);
  std::string line;
  if (!std::getline(in, line)) throw SchemaError("CSV has no header line");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  TabularRecord header_check;
  header_check.columns = SplitCsvLine(line);
  header_check.values = header_check.columns;
  // Reuses the record splitter's column-by-column schema messages.
  SplitRecord(header_check, manifest.columns);

  LoadedDataset out;
  out.manifest = manifest;
  const std::vector<int> features = manifest.FeatureColumns();
  const int label_col = manifest.LabelColumn();
  out.dictionaries.assign(features.size(), {});
  std::vector<std::map<std::string, int>> codes(features.size());
  std::map<std::string, int> label_codes;
  bool label_strings = false;
  int64_t row = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    ++row;
    std::vector<std::string> cells = SplitCsvLine(line);
    if (cells.size() != manifest.columns.size()) {
      throw ParseError("row " + std::to_string(row) + " has " +
                       std::to_string(cells.size()) + " cells, expected " +
                       std::to_string(manifest.columns.size()));
    }
    Example x;
    x.features.resize(features.size());
    for (size_t f = 0; f < features.size(); ++f) {
      const ColumnSpec& spec = manifest.columns[features[f]];
      const std::string& cell = cells[features[f]];
      if (spec.kind == ColumnKind::kNumeric) {
        if (!ParseDouble(cell, &x.features[f]) ||
            !std::isfinite(x.features[f])) {
          throw ParseError("row " + std::to_string(row) + ", column '" +
                           spec.name + "': cannot parse '" + cell + "'");
        }
      } else {
        auto [it, inserted] = codes[f].emplace(
            cell, static_cast<int>(out.dictionaries[f].size()));
        if (inserted) out.dictionaries[f].push_back(cell);
        x.features[f] = it->second;
      }
    }
    const std::string& lab = cells[label_col];
    int v;
    if (!label_strings && ParseInt(lab, &v) && v >= 0) {
      x.label = v;
    } else {
      if (!label_strings && row > 1) {
        throw ParseError("row " + std::to_string(row) + ", column '" +
                         manifest.columns[label_col].name +
                         "': label '" + lab + "' is not an integer");
      }
      label_strings = true;
      auto [it, inserted] = label_codes.emplace(
          lab, static_cast<int>(out.label_dictionary.size()));
      if (inserted) out.label_dictionary.push_back(lab);
      x.label = it->second;
    }
    double sq = 0.0;
    for (size_t f = 0; f < features.size(); ++f) {
      if (manifest.columns[features[f]].kind == ColumnKind::kNumeric) {
        sq += x.features[f] * x.features[f];
      }
    }
    if (std::sqrt(sq) > manifest.norm_bound * (1.0 + 1e-12)) {
      throw NormViolationError("row " + std::to_string(row) + " has norm " +
                               std::to_string(std::sqrt(sq)) +
                               " above the declared bound " +
                               std::to_string(manifest.norm_bound));
    }
    out.data.examples.push_back(std::move(x));
  }
  int max_label = -1;
  for (const Example& x : out.data.examples) max_label = std::max(max_label, x.label);
  out.data.num_classes = std::max(manifest.num_classes, max_label + 1);
  out.manifest.num_records = static_cast<int64_t>(out.data.examples.size());
  return out;
}

LoadedDataset LoadDataset(const std::string& csv_path,
                          const std::string& manifest_path) {
  return LoadDatasetFromStrings(ReadFile(csv_path), ReadManifest(manifest_path));
}

std::string DatasetToCsv(const LoadedDataset& dataset) {
  const DatasetManifest& m = dataset.manifest;
  std::string out;
  for (size_t i = 0; i < m.columns.size(); ++i) {
    if (i > 0) out += ',';
    out += QuoteCsv(m.columns[i].name);
  }
  out += '\n';
  const std::vector<int> features = m.FeatureColumns();
  const int label_col = m.LabelColumn();
  for (const Example& x : dataset.data.examples) {
    std::vector<std::string> cells(m.columns.size());
    for (size_t f = 0; f < features.size(); ++f) {
      const bool categorical =
          f < dataset.dictionaries.size() && !dataset.dictionaries[f].empty();
      if (categorical) {
        cells[features[f]] =
            QuoteCsv(dataset.dictionaries[f].at(static_cast<size_t>(x.features[f])));
      } else {
        cells[features[f]] = FormatDouble(x.features[f]);
      }
    }
    cells[label_col] = dataset.label_dictionary.empty()
                           ? std::to_string(x.label)
                           : QuoteCsv(dataset.label_dictionary.at(x.label));
    for (size_t i = 0; i < cells.size(); ++i) {
      if (i > 0) out += ',';
      out += cells[i];
    }
    out += '\n';
  }
  return out;
}

void WriteDataset(const std::string& csv_path, const LoadedDataset& dataset) {
  WriteFile(csv_path, DatasetToCsv(dataset));
}

}  // namespace fdp
