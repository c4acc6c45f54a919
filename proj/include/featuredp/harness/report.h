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
#ifndef FEATUREDP_HARNESS_REPORT_H_
#define FEATUREDP_HARNESS_REPORT_H_

#include <string>

#include "featuredp/harness/sweep.h"

namespace fdp {

enum class ReportFormat { kCsv, kJson, kSvg };

const char* ReportFormatName(ReportFormat format);
// Throws DomainError on unknown names.
ReportFormat ParseReportFormat(const std::string& name);

// Recomputes every ok row's accounted epsilon from its stored config and
// throws ContractViolation when it differs from the stored value.
void VerifyResults(const SweepResults& results, double tolerance = 1e-9);

// Stable column order; one header line plus one line per row.
std::string ResultsToCsv(const SweepResults& results);
// Utility (accuracy, or risk when accuracy is undefined) against target
// epsilon, one line per method.
std::string ResultsToSvg(const SweepResults& results);

// Verifies, renders and writes the results. Throws DomainError on empty
// results and IoError when the path is not writable.
void EmitReport(const SweepResults& results, ReportFormat format,
                const std::string& path);

}  // namespace fdp

#endif  // FEATUREDP_HARNESS_REPORT_H_
