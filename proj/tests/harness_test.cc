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
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "featuredp/common/errors.h"
#include "featuredp/harness/dataset.h"
#include "featuredp/harness/report.h"
#include "featuredp/harness/sweep.h"
#include "featuredp/harness/synth.h"
#include "featuredp/tradeoff/accountant.h"

#ifndef FEATUREDP_TEST_DATA
#define FEATUREDP_TEST_DATA "tests/data"
#endif

namespace fdp {
namespace {

std::string ReadAll(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

DatasetManifest SixColumns() {
  DatasetManifest m;
  m.columns = {{"a", ColumnKind::kNumeric, ColumnRole::kPublic},
               {"b", ColumnKind::kNumeric, ColumnRole::kPublic},
               {"c", ColumnKind::kNumeric, ColumnRole::kPrivate},
               {"d", ColumnKind::kCategorical, ColumnRole::kPublic},
               {"e", ColumnKind::kNumeric, ColumnRole::kPrivate},
               {"y", ColumnKind::kLabel, ColumnRole::kPublic}};
  return m;
}

TEST(DatasetTest, EmptyBodyIsValid) {
  LoadedDataset d = LoadDatasetFromStrings("a,b,c,d,e,y\n", SixColumns());
  EXPECT_TRUE(d.data.examples.empty());
}

TEST(DatasetTest, MissingColumnIsNamed) {
  try {
    LoadDatasetFromStrings("a,b,c,d,y\n", SixColumns());
    FAIL() << "expected a schema error";
  } catch (const SchemaError& e) {
    EXPECT_NE(std::string(e.what()).find("'e'"), std::string::npos) << e.what();
  }
}

TEST(DatasetTest, ParseErrorNamesRowAndColumn) {
  try {
    LoadDatasetFromStrings("a,b,c,d,e,y\n0,0,0,x,0,1\n0,zz,0,x,0,1\n", SixColumns());
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    std::string msg = e.what();
    EXPECT_NE(msg.find("row 2"), std::string::npos) << msg;
    EXPECT_NE(msg.find("'b'"), std::string::npos) << msg;
  }
}

TEST(DatasetTest, NormViolationNamesRow) {
  try {
    LoadDatasetFromStrings("a,b,c,d,e,y\n0,0,0,x,0,1\n1,1,0,x,0,1\n", SixColumns());
    FAIL() << "expected a norm violation";
  } catch (const NormViolationError& e) {
    EXPECT_NE(std::string(e.what()).find("row 2"), std::string::npos);
  }
}

TEST(DatasetTest, ManifestNeedsOneLabel) {
  DatasetManifest m = SixColumns();
  m.columns.pop_back();
  EXPECT_THROW(m.Validate(), SchemaError);
  m = SixColumns();
  m.columns.push_back({"z", ColumnKind::kLabel, ColumnRole::kPublic});
  EXPECT_THROW(m.Validate(), SchemaError);
}

TEST(DatasetTest, FixtureRoundTripsByteForByte) {
  const std::string csv = std::string(FEATUREDP_TEST_DATA) + "/fixture100.csv";
  const std::string manifest =
      std::string(FEATUREDP_TEST_DATA) + "/fixture100.manifest.json";
  LoadedDataset d = LoadDataset(csv, manifest);
  ASSERT_EQ(d.data.examples.size(), 100u);
  EXPECT_EQ(DatasetToCsv(d), ReadAll(csv));
  FeatureMap map = d.manifest.MakeFeatureMap();
  EXPECT_TRUE(map.label_public());
  EXPECT_EQ(map.private_features(), (std::vector<int>{1, 3, 4}));
  EXPECT_EQ(map.public_features(), (std::vector<int>{0, 2}));
}

TEST(SynthTest, LabelDpGaussianIsSeparable) {
  SynthOptions o;
  o.kind = SynthKind::kLabelDpGaussian;
  o.size = 10000;
  o.dims = 20;
  o.margin = 1.0;
  SynthResult r = SynthGenerate(o);
  int correct = 0;
  for (const Example& x : r.dataset.data.examples) {
    double s = 0;
    for (int j = 0; j < 20; ++j) s += r.planted[j] * x.features[j];
    correct += (s > 0 ? 1 : 0) == x.label ? 1 : 0;
    double n = 0;
    for (double v : x.features) n += v * v;
    ASSERT_LE(std::sqrt(n), 1.0 + 1e-12);
  }
  EXPECT_EQ(correct, 10000);
}

TEST(SynthTest, QuadraticMinimizerMatchesDirectSolve) {
  SynthOptions o;
  o.kind = SynthKind::kStronglyConvexQuadratic;
  o.size = 1000;
  o.dims = 10;
  o.lambda = 0.5;
  SynthResult r = SynthGenerate(o);
  EXPECT_EQ(r.lambda, 0.5);
  // Normal equations of sum_i lambda/2 ||w - z_i||^2: n lambda w = lambda sum z.
  std::vector<long double> sum(10, 0.0L);
  for (const Example& x : r.dataset.data.examples) {
    for (int j = 0; j < 10; ++j) sum[j] += x.features[j];
  }
  for (int j = 0; j < 10; ++j) {
    double direct = static_cast<double>((0.5L * sum[j]) / (0.5L * 1000.0L));
    EXPECT_NEAR(r.minimizer[j], direct, 1e-10);
  }
}

TEST(SynthTest, SameSeedSameBytes) {
  for (SynthKind k : {SynthKind::kPurchaseLike, SynthKind::kCriteoLike,
                      SynthKind::kLabelDpGaussian,
                      SynthKind::kStronglyConvexQuadratic}) {
    SynthOptions o;
    o.kind = k;
    o.size = 200;
    o.dims = 12;
    o.seed = 17;
    EXPECT_EQ(DatasetToCsv(SynthGenerate(o).dataset),
              DatasetToCsv(SynthGenerate(o).dataset))
        << SynthKindName(k);
    o.seed = 18;
    SynthOptions p = o;
    p.seed = 17;
    EXPECT_NE(DatasetToCsv(SynthGenerate(o).dataset),
              DatasetToCsv(SynthGenerate(p).dataset));
  }
}

TEST(SynthTest, UnknownKindAndBadSizeRejected) {
  EXPECT_THROW(ParseSynthKind("imagenet"), DomainError);
  SynthOptions o;
  o.size = 0;
  EXPECT_THROW(SynthGenerate(o), DomainError);
}

SweepSpec SmallSpec() {
  SweepSpec s;
  s.epsilon_grid = {2.0};
  s.methods = {"fdp-sgd"};
  s.repeats = 1;
  s.split = "label-dp";
  s.holdout_fraction = 0.0;
  s.base_config = {{"priv_batch_expected", 20}, {"pub_batch", 20}, {"steps", 30},
                   {"lr", 1.0}};
  s.grids["fdp-sgd"] = {{"clip", {1.0}}};
  s.seed = 5;
  return s;
}

LoadedDataset SmallData() {
  SynthOptions o;
  o.kind = SynthKind::kLabelDpGaussian;
  o.size = 400;
  o.dims = 5;
  return SynthGenerate(o).dataset;
}

TEST(SweepTest, SingleCellEqualsDirectTrainCall) {
  LoadedDataset data = SmallData();
  SweepSpec spec = SmallSpec();
  SweepResults res = RunSweep(data, spec);
  ASSERT_EQ(res.rows.size(), 1u);
  ASSERT_TRUE(res.rows[0].ok()) << res.rows[0].status;
  const double delta = 1.0 / (2.0 * 400);
  double sigma = CalibrateSigma({2.0, delta}, 20.0 / 400, 30, 1.0 / 20);
  TrainConfig cfg = BuildConfig(spec, {{"clip", 1.0}}, delta, sigma,
                                RunSeed(5, "fdp-sgd", 2.0, 0));
  LossSplit split = MakeSplitForDataset("label-dp", data);
  TrainReport direct = TrainFdpSgd(data.data, split, cfg);
  EXPECT_EQ(res.rows[0].accuracy_mean, direct.accuracy);
  EXPECT_EQ(res.rows[0].accounted_epsilon, direct.privacy.params.epsilon);
}

TEST(SweepTest, PublicOnlyHasZeroEpsilonEverywhere) {
  SweepSpec spec = SmallSpec();
  spec.methods = {"public-only"};
  spec.epsilon_grid = {1.0, 4.0};
  SweepResults res = RunSweep(SmallData(), spec);
  for (const SweepRow& r : res.rows) {
    ASSERT_TRUE(r.ok());
    EXPECT_EQ(r.accounted_epsilon, 0.0);
  }
}

TEST(SweepTest, ReproducibleAndOrderIndependent) {
  SweepSpec spec = SmallSpec();
  spec.methods = {"fdp-sgd", "dpsgd", "public-only"};
  spec.grids["dpsgd"] = {{"clip", {1.0}}};
  spec.repeats = 2;
  spec.workers = 3;
  LoadedDataset data = SmallData();
  SweepResults a = RunSweep(data, spec);
  spec.workers = 1;
  SweepResults b = RunSweep(data, spec);
  EXPECT_TRUE(a == b);
  // Adding a method leaves the other rows unchanged.
  spec.methods = {"fdp-sgd"};
  SweepResults c = RunSweep(data, spec);
  EXPECT_EQ(c.rows[0].ToJson(), a.rows[0].ToJson());
}

TEST(SweepTest, FailingCellIsMarkedAndOthersContinue) {
  SweepSpec spec = SmallSpec();
  spec.methods = {"fdp-sgd", "dpsgd"};
  spec.split = "padding";
  SynthOptions o;
  o.kind = SynthKind::kCriteoLike;
  o.size = 300;
  o.dims = 6;
  LoadedDataset data = SynthGenerate(o).dataset;
  // No clip and an unbounded split: DP-SGD cannot run.
  spec.grids["dpsgd"] = {{"clip", {nullptr}}};
  SweepResults res = RunSweep(data, spec);
  EXPECT_TRUE(res.rows[0].ok()) << res.rows[0].status;
  EXPECT_FALSE(res.rows[1].ok());
  EXPECT_EQ(res.rows[1].status.rfind("error:", 0), 0u) << res.rows[1].status;
}

TEST(SweepTest, SpecValidation) {
  SweepSpec spec = SmallSpec();
  spec.repeats = 0;
  EXPECT_THROW(spec.Validate(), SchemaError);
  spec = SmallSpec();
  spec.methods = {"sgd"};
  EXPECT_THROW(spec.Validate(), SchemaError);
  spec = SmallSpec();
  spec.grids["fdp-sgd"] = {{"clip", {}}};
  EXPECT_THROW(spec.Validate(), SchemaError);
  EXPECT_THROW(SweepSpec::FromJson({{"epsilon_grid", {1}}, {"methods", {"dpsgd"}},
                                    {"unknown", 1}}),
               SchemaError);
  EXPECT_EQ(ExpandGrid({{"a", {1, 2}}, {"b", {3, 4, 5}}}).size(), 6u);
}

// Minimal XML check: declaration, then one root element whose tags nest.
bool WellFormedSingleRoot(const std::string& xml, std::string* why) {
  std::vector<std::string> stack;
  int roots = 0;
  size_t i = 0;
  while ((i = xml.find('<', i)) != std::string::npos) {
    size_t j = xml.find('>', i);
    if (j == std::string::npos) return *why = "unterminated tag", false;
    std::string tag = xml.substr(i + 1, j - i - 1);
    i = j + 1;
    if (tag.empty()) return *why = "empty tag", false;
    if (tag[0] == '?' || tag[0] == '!') continue;
    if (tag[0] == '/') {
      std::string name = tag.substr(1);
      if (stack.empty() || stack.back() != name) return *why = "mismatch " + name, false;
      stack.pop_back();
      continue;
    }
    std::string name = tag.substr(0, tag.find_first_of(" \t\n/"));
    if (stack.empty()) ++roots;
    if (tag.back() != '/') stack.push_back(name);
  }
  if (!stack.empty()) return *why = "unclosed " + stack.back(), false;
  if (roots != 1) return *why = "roots=" + std::to_string(roots), false;
  return true;
}

SweepResults TinyResults() {
  SweepSpec spec = SmallSpec();
  spec.methods = {"fdp-sgd", "public-only"};
  spec.epsilon_grid = {1.0, 3.0};
  return RunSweep(SmallData(), spec);
}

TEST(ReportTest, CsvHasHeaderPlusOneLinePerRow) {
  SweepResults one = RunSweep(SmallData(), SmallSpec());
  std::string csv = ResultsToCsv(one);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 2);
  EXPECT_EQ(csv.rfind("schema_version,epsilon_target,", 0), 0u);
}

TEST(ReportTest, JsonRoundTrips) {
  SweepResults r = TinyResults();
  EXPECT_TRUE(SweepResults::FromJson(nlohmann::json::parse(r.ToJson().dump())) == r);
}

TEST(ReportTest, SvgIsWellFormedWithoutExternalRefs) {
  std::string svg = ResultsToSvg(TinyResults());
  std::string why;
  EXPECT_TRUE(WellFormedSingleRoot(svg, &why)) << why;
  EXPECT_EQ(svg.find("href"), std::string::npos);
  EXPECT_EQ(svg.find("<script"), std::string::npos);
  EXPECT_NE(svg.find("target epsilon"), std::string::npos);
  EXPECT_NE(svg.find("mean accuracy"), std::string::npos);
}

TEST(ReportTest, TamperedConfigFailsVerification) {
  SweepResults r = TinyResults();
  EXPECT_NO_THROW(VerifyResults(r));
  r.rows[0].config.sigma *= 1.5;
  EXPECT_THROW(VerifyResults(r), ContractViolation);
  EXPECT_THROW(EmitReport(r, ReportFormat::kCsv, "/tmp/featuredp_tampered.csv"),
               ContractViolation);
}

TEST(ReportTest, UnwritablePathAndEmptyResults) {
  SweepResults r = TinyResults();
  EXPECT_THROW(EmitReport(r, ReportFormat::kJson, "/nonexistent/dir/out.json"),
               IoError);
  EXPECT_THROW(EmitReport(SweepResults{}, ReportFormat::kJson, "/tmp/x.json"),
               DomainError);
}

}  // namespace
}  // namespace fdp
