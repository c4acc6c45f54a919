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
#ifndef FEATUREDP_MECHANISMS_RANDOMIZED_RESPONSE_H_
#define FEATUREDP_MECHANISMS_RANDOMIZED_RESPONSE_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "featuredp/tradeoff/curve.h"

namespace fdp {

// A fixed-length binary record; bit 0 is the private bit and bits 1..d-1
// are the public feature Psi(b).
using BitRecord = std::vector<uint8_t>;

// Throws DomainError unless the record is non-empty, binary and (when
// d >= 0) of length d.
void ValidateBitRecord(const BitRecord& record, int d = -1);
BitRecord PublicBits(const BitRecord& record);
BitRecord WithPrivateBit(uint8_t bit, const BitRecord& public_bits);
std::string BitString(const BitRecord& record);

// Keep probability of the private bit:
//   kDoubleEpsilon: e^{2 eps} / (1 + e^{2 eps}).
//   kHalfExp:       1 - 1/(2 e^eps).
enum class RrVariant { kDoubleEpsilon, kHalfExp };

double RrKeepProbability(double epsilon, RrVariant variant);
double RrFlipProbability(double epsilon,
                         RrVariant variant = RrVariant::kDoubleEpsilon);

// Emission law of the withheld-record generator G_p.
//   kWeighted: emit (b, u) for each b with probability
//              p e^eps / (2 (1 + e^{2 eps})), nothing otherwise.
//   kFair:     emit (b, u) for each b with probability p / 2.
enum class GpVariant { kWeighted, kFair };

double GpEmitProbability(double epsilon, double subsample_prob,
                         GpVariant variant);

// Flips bit 0 of each record independently; all other bits are copied.
// Throws DomainError unless epsilon > 0.
std::vector<BitRecord> RrCounterexample(const std::vector<BitRecord>& records,
                                        double epsilon, uint64_t seed);
std::vector<BitRecord> RrCounterexampleV2(
    const std::vector<BitRecord>& records, double epsilon, uint64_t seed);

// RR applied to a Poisson subsample. Record i uses the streams (sample, i)
// and (flip, i), so datasets sharing a prefix share its randomness.
std::vector<BitRecord> RrSubsampled(const std::vector<BitRecord>& records,
                                    double epsilon, double subsample_prob,
                                    uint64_t seed,
                                    RrVariant variant = RrVariant::kDoubleEpsilon);

// The simulator: RrSubsampled on the known records, unioned with one
// draw of G_p for the withheld record whose public bits are given.
std::vector<BitRecord> RrSimulator(const std::vector<BitRecord>& known,
                                   const BitRecord& public_bits,
                                   double epsilon, double subsample_prob,
                                   uint64_t seed,
                                   RrVariant variant = RrVariant::kDoubleEpsilon,
                                   GpVariant gp = GpVariant::kWeighted);

// Canonical outcome: the released records in sorted order.
using RrOutcome = std::vector<BitRecord>;
using RrDistribution = std::map<RrOutcome, double>;

void Canonicalize(RrOutcome* outcome);

// Exact outcome laws by enumeration over the 3^n per-record states.
// Throws DomainError beyond 2^20 states.
RrDistribution EnumerateRrSubsampled(const std::vector<BitRecord>& records,
                                     double epsilon, double subsample_prob,
                                     RrVariant variant = RrVariant::kDoubleEpsilon);
RrDistribution EnumerateRrSimulator(const std::vector<BitRecord>& known,
                                    const BitRecord& public_bits,
                                    double epsilon, double subsample_prob,
                                    RrVariant variant = RrVariant::kDoubleEpsilon,
                                    GpVariant gp = GpVariant::kWeighted);

double TotalVariation(const RrDistribution& a, const RrDistribution& b);

// max over outcomes of |log(a(o) / b(o))|; infinite when the supports
// differ. For pure privacy this equals the largest log-ratio over events.
double MaxLogRatio(const RrDistribution& a, const RrDistribution& b);

// Exact T(P, Q) for two finite distributions given as aligned pmfs.
TradeoffCurve TradeoffFromPmfs(const std::vector<double>& pmf_p,
                               const std::vector<double>& pmf_q,
                               int grid_size = kDefaultGridSize);

// T(a, b) for outcome distributions, aligned over the union of supports.
TradeoffCurve TradeoffBetween(const RrDistribution& a, const RrDistribution& b,
                              int grid_size = kDefaultGridSize);

}  // namespace fdp

#endif  // FEATUREDP_MECHANISMS_RANDOMIZED_RESPONSE_H_
