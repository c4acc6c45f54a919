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
#include "featuredp/mechanisms/randomized_response.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "featuredp/common/errors.h"
#include "featuredp/common/rng.h"
#include "featuredp/tradeoff/pair.h"

namespace fdp {
namespace {

const uint64_t kSampleStream = StreamId("rr/sample");
const uint64_t kFlipStream = StreamId("rr/flip");
const uint64_t kGpStream = StreamId("rr/gp");

void CheckEpsilon(double epsilon) {
  if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
}

void CheckProb(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw DomainError("subsampling probability must lie in [0, 1]");
  }
}

// Per-record state: 0 absent, 1 kept, 2 flipped.
struct RecordLaw {
  double absent, kept, flipped;
};

RecordLaw LawFor(double epsilon, double p, RrVariant variant) {
  double flip = RrFlipProbability(epsilon, variant);
  return {1.0 - p, p * (1.0 - flip), p * flip};
}

BitRecord Flipped(BitRecord r) {
  r[0] ^= 1;
  return r;
}

void CheckStateCount(size_t records, int branches) {
  double states = std::pow(3.0, static_cast<double>(records)) * branches;
  if (states > static_cast<double>(1 << 20)) {
    throw DomainError("too many records for exact enumeration");
  }
}

void Enumerate(const std::vector<BitRecord>& records, size_t i,
               const RecordLaw& law, double prob, RrOutcome* current,
               const std::vector<std::pair<RrOutcome, double>>& tail,
               RrDistribution* out) {
  if (prob == 0.0) return;
  if (i == records.size()) {
    for (const auto& [extra, w] : tail) {
      if (w == 0.0) continue;
      RrOutcome o = *current;
      o.insert(o.end(), extra.begin(), extra.end());
      Canonicalize(&o);
      (*out)[o] += prob * w;
    }
    return;
  }
  Enumerate(records, i + 1, law, prob * law.absent, current, tail, out);
  current->push_back(records[i]);
  Enumerate(records, i + 1, law, prob * law.kept, current, tail, out);
  current->back() = Flipped(records[i]);
  Enumerate(records, i + 1, law, prob * law.flipped, current, tail, out);
  current->pop_back();
}

}  // namespace

void ValidateBitRecord(const BitRecord& record, int d) {
  if (record.empty()) throw DomainError("bit records need d >= 1");
  if (d >= 0 && static_cast<int>(record.size()) != d) {
    throw DomainError("bit record has length " +
                      std::to_string(record.size()) + ", expected " +
                      std::to_string(d));
  }
  for (uint8_t b : record) {
    if (b > 1) throw DomainError("bit record entries must be 0 or 1");
  }
}

BitRecord PublicBits(const BitRecord& record) {
  ValidateBitRecord(record);
  return BitRecord(record.begin() + 1, record.end());
}

BitRecord WithPrivateBit(uint8_t bit, const BitRecord& public_bits) {
  BitRecord r;
  r.reserve(public_bits.size() + 1);
  r.push_back(bit);
  r.insert(r.end(), public_bits.begin(), public_bits.end());
  ValidateBitRecord(r);
  return r;
}

std::string BitString(const BitRecord& record) {
  std::string s;
  for (uint8_t b : record) s.push_back(b ? '1' : '0');
  return s;
}

double RrKeepProbability(double epsilon, RrVariant variant) {
  return 1.0 - RrFlipProbability(epsilon, variant);
}

double RrFlipProbability(double epsilon, RrVariant variant) {
  CheckEpsilon(epsilon);
  if (variant == RrVariant::kDoubleEpsilon) {
    // 1 / (1 + e^{2 eps}), written to stay finite for large epsilon.
    return std::exp(-2.0 * epsilon) / (1.0 + std::exp(-2.0 * epsilon));
  }
  return 0.5 * std::exp(-epsilon);
}

double GpEmitProbability(double epsilon, double subsample_prob,
                         GpVariant variant) {
  CheckEpsilon(epsilon);
  CheckProb(subsample_prob);
  if (variant == GpVariant::kFair) return 0.5 * subsample_prob;
  // e^eps / (1 + e^{2 eps}) = 1 / (e^{-eps} + e^{eps}).
  double total = subsample_prob / (std::exp(-epsilon) + std::exp(epsilon));
  return 0.5 * total;
}

std::vector<BitRecord> RrSubsampled(const std::vector<BitRecord>& records,
                                    double epsilon, double subsample_prob,
                                    uint64_t seed, RrVariant variant) {
  CheckEpsilon(epsilon);
  CheckProb(subsample_prob);
  double flip = RrFlipProbability(epsilon, variant);
  std::vector<BitRecord> out;
  out.reserve(records.size());
  for (size_t i = 0; i < records.size(); ++i) {
    ValidateBitRecord(records[i]);
    if (subsample_prob < 1.0 &&
        !(CounterUniform(seed, {kSampleStream, i}) < subsample_prob)) {
      continue;
    }
    BitRecord r = records[i];
    if (CounterUniform(seed, {kFlipStream, i}) < flip) r[0] ^= 1;
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<BitRecord> RrCounterexample(const std::vector<BitRecord>& records,
                                        double epsilon, uint64_t seed) {
  return RrSubsampled(records, epsilon, 1.0, seed, RrVariant::kDoubleEpsilon);
}

std::vector<BitRecord> RrCounterexampleV2(
    const std::vector<BitRecord>& records, double epsilon, uint64_t seed) {
  return RrSubsampled(records, epsilon, 1.0, seed, RrVariant::kHalfExp);
}

std::vector<BitRecord> RrSimulator(const std::vector<BitRecord>& known,
                                   const BitRecord& public_bits,
                                   double epsilon, double subsample_prob,
                                   uint64_t seed, RrVariant variant,
                                   GpVariant gp) {
  std::vector<BitRecord> out =
      RrSubsampled(known, epsilon, subsample_prob, seed, variant);
  double half = GpEmitProbability(epsilon, subsample_prob, gp);
  double u = CounterUniform(seed, {kGpStream, 0});
  if (u < half) {
    out.push_back(WithPrivateBit(0, public_bits));
  } else if (u < 2.0 * half) {
    out.push_back(WithPrivateBit(1, public_bits));
  }
  return out;
}

void Canonicalize(RrOutcome* outcome) {
  std::sort(outcome->begin(), outcome->end());
}

RrDistribution EnumerateRrSubsampled(const std::vector<BitRecord>& records,
                                     double epsilon, double subsample_prob,
                                     RrVariant variant) {
  CheckEpsilon(epsilon);
  CheckProb(subsample_prob);
  for (const BitRecord& r : records) ValidateBitRecord(r);
  CheckStateCount(records.size(), 1);
  RrDistribution out;
  RrOutcome current;
  Enumerate(records, 0, LawFor(epsilon, subsample_prob, variant), 1.0,
            &current, {{RrOutcome{}, 1.0}}, &out);
  return out;
}

RrDistribution EnumerateRrSimulator(const std::vector<BitRecord>& known,
                                    const BitRecord& public_bits,
                                    double epsilon, double subsample_prob,
                                    RrVariant variant, GpVariant gp) {
  CheckEpsilon(epsilon);
  CheckProb(subsample_prob);
  for (const BitRecord& r : known) ValidateBitRecord(r);
  CheckStateCount(known.size(), 3);
  double half = GpEmitProbability(epsilon, subsample_prob, gp);
  std::vector<std::pair<RrOutcome, double>> tail = {
      {RrOutcome{}, 1.0 - 2.0 * half},
      {RrOutcome{WithPrivateBit(0, public_bits)}, half},
      {RrOutcome{WithPrivateBit(1, public_bits)}, half}};
  RrDistribution out;
  RrOutcome current;
  Enumerate(known, 0, LawFor(epsilon, subsample_prob, variant), 1.0, &current,
            tail, &out);
  return out;
}

double TotalVariation(const RrDistribution& a, const RrDistribution& b) {
  double tv = 0.0;
  for (const auto& [o, pa] : a) {
    auto it = b.find(o);
    tv += std::fabs(pa - (it == b.end() ? 0.0 : it->second));
  }
  for (const auto& [o, pb] : b) {
    if (a.find(o) == a.end()) tv += pb;
  }
  return 0.5 * tv;
}

double MaxLogRatio(const RrDistribution& a, const RrDistribution& b) {
  double worst = 0.0;
  for (const auto& [o, pa] : a) {
    if (pa <= 0.0) continue;
    auto it = b.find(o);
    if (it == b.end() || it->second <= 0.0) {
      return std::numeric_limits<double>::infinity();
    }
    worst = std::max(worst, std::fabs(std::log(pa / it->second)));
  }
  for (const auto& [o, pb] : b) {
    if (pb <= 0.0) continue;
    auto it = a.find(o);
    if (it == a.end() || it->second <= 0.0) {
      return std::numeric_limits<double>::infinity();
    }
  }
  return worst;
}

TradeoffCurve TradeoffFromPmfs(const std::vector<double>& pmf_p,
                               const std::vector<double>& pmf_q,
                               int grid_size) {
  std::vector<double> points(pmf_p.size());
  for (size_t i = 0; i < points.size(); ++i) points[i] = static_cast<double>(i);
  return TradeoffFromPair(DominatingPair::Discrete(points, pmf_p, pmf_q),
                          grid_size);
}

TradeoffCurve TradeoffBetween(const RrDistribution& a, const RrDistribution& b,
                              int grid_size) {
  std::map<RrOutcome, std::pair<double, double>> joint;
  for (const auto& [o, p] : a) joint[o].first += p;
  for (const auto& [o, q] : b) joint[o].second += q;
  std::vector<double> pa, pb;
  for (const auto& [o, w] : joint) {
    pa.push_back(w.first);
    pb.push_back(w.second);
  }
  return TradeoffFromPmfs(pa, pb, grid_size);
}

}  // namespace fdp
