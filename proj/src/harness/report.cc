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
#include "featuredp/harness/report.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <vector>

#include "featuredp/common/errors.h"
#include "featuredp/sgd/serialization.h"

namespace fdp {
namespace {

std::string Fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string Short(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

std::string CsvQuote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string XmlEscape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

constexpr const char* kColors[] = {"#1b6ca8", "#c0392b", "#27ae60", "#8e44ad",
                                   "#d35400", "#2c3e50"};

}  // namespace

const char* ReportFormatName(ReportFormat format) {
  switch (format) {
    case ReportFormat::kCsv: return "csv";
    case ReportFormat::kJson: return "json";
    case ReportFormat::kSvg: return "svg";
  }
  return "?";
}

ReportFormat ParseReportFormat(const std::string& name) {
  for (ReportFormat f : {ReportFormat::kCsv, ReportFormat::kJson, ReportFormat::kSvg}) {
    if (name == ReportFormatName(f)) return f;
  }
  throw DomainError("unknown report format '" + name + "'");
}

void VerifyResults(const SweepResults& results, double tolerance) {
  for (size_t i = 0; i < results.rows.size(); ++i) {
    const SweepRow& row = results.rows[i];
    if (!row.ok()) continue;
    double eps = RecomputeEpsilon(row);
    bool same = (std::isinf(eps) && std::isinf(row.accounted_epsilon)) ||
                std::abs(eps - row.accounted_epsilon) <=
                    tolerance * std::max(1.0, std::abs(eps));
    if (!same) {
      throw ContractViolation("row " + std::to_string(i) + " (" + row.method +
                              ", epsilon " + Short(row.epsilon_target) +
                              "): stored epsilon " + Short(row.accounted_epsilon) +
                              " does not match the recomputed " + Short(eps));
    }
  }
}

std::string ResultsToCsv(const SweepResults& results) {
  std::string out =
      "schema_version,epsilon_target,delta,method,status,accounted_epsilon,"
      "accuracy_mean,accuracy_std,risk_mean,risk_std,repeats,sigma,clip,"
      "priv_batch_expected,pub_batch,steps,lr,mix_ratio,dataset_size,"
      "hyperparameters\n";
  for (const SweepRow& r : results.rows) {
    std::vector<std::string> cells = {
        std::to_string(results.schema_version),
        Fmt(r.epsilon_target),
        Fmt(r.delta),
        CsvQuote(r.method),
        CsvQuote(r.status),
        Fmt(r.accounted_epsilon),
        Fmt(r.accuracy_mean),
        Fmt(r.accuracy_std),
        Fmt(r.risk_mean),
        Fmt(r.risk_std),
        std::to_string(r.repeats),
        Fmt(r.config.sigma),
        r.config.clip ? Fmt(*r.config.clip) : std::string("none"),
        std::to_string(r.config.priv_batch_expected),
        std::to_string(r.config.pub_batch),
        std::to_string(r.config.steps),
        Fmt(r.config.lr),
        Fmt(r.config.mix_ratio),
        std::to_string(r.dataset_size),
        CsvQuote(r.hyperparameters.dump())};
    for (size_t i = 0; i < cells.size(); ++i) {
      if (i > 0) out += ',';
      out += cells[i];
    }
    out += '\n';
  }
  return out;
}

std::string ResultsToSvg(const SweepResults& results) {
  const double width = 640, height = 420;
  const double left = 70, right = 170, top = 40, bottom = 60;
  bool use_accuracy = true;
  for (const SweepRow& r : results.rows) {
    if (r.ok() && std::isnan(r.accuracy_mean)) use_accuracy = false;
  }
  std::map<std::string, std::vector<std::pair<double, double>>> series;
  std::vector<std::string> order;
  double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
  for (const SweepRow& r : results.rows) {
    if (!series.count(r.method)) order.push_back(r.method);
    auto& s = series[r.method];
    if (!r.ok()) continue;
    double y = use_accuracy ? r.accuracy_mean : r.risk_mean;
    s.emplace_back(r.epsilon_target, y);
    xmin = std::min(xmin, r.epsilon_target);
    xmax = std::max(xmax, r.epsilon_target);
    ymin = std::min(ymin, y);
    ymax = std::max(ymax, y);
  }
  if (!std::isfinite(xmin)) xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  if (xmax == xmin) xmin -= 0.5, xmax += 0.5;
  if (ymax == ymin) ymin -= 0.05, ymax += 0.05;
  const double pw = width - left - right, ph = height - top - bottom;
  auto px = [&](double x) { return left + (x - xmin) / (xmax - xmin) * pw; };
  auto py = [&](double y) { return top + (1.0 - (y - ymin) / (ymax - ymin)) * ph; };

  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + Short(width) +
       "\" height=\"" + Short(height) + "\" viewBox=\"0 0 " + Short(width) + " " +
       Short(height) + "\">\n";
  s += "<rect x=\"0\" y=\"0\" width=\"" + Short(width) + "\" height=\"" +
       Short(height) + "\" fill=\"white\"/>\n";
  s += "<line x1=\"" + Short(left) + "\" y1=\"" + Short(top + ph) + "\" x2=\"" +
       Short(left + pw) + "\" y2=\"" + Short(top + ph) + "\" stroke=\"black\"/>\n";
  s += "<line x1=\"" + Short(left) + "\" y1=\"" + Short(top) + "\" x2=\"" +
       Short(left) + "\" y2=\"" + Short(top + ph) + "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    double xv = xmin + (xmax - xmin) * i / 4.0;
    double yv = ymin + (ymax - ymin) * i / 4.0;
    s += "<text x=\"" + Short(px(xv)) + "\" y=\"" + Short(top + ph + 18) +
         "\" font-size=\"11\" text-anchor=\"middle\">" + Short(xv) + "</text>\n";
    s += "<text x=\"" + Short(left - 6) + "\" y=\"" + Short(py(yv) + 4) +
         "\" font-size=\"11\" text-anchor=\"end\">" + Short(yv) + "</text>\n";
  }
  s += "<text x=\"" + Short(left + pw / 2) + "\" y=\"" + Short(height - 15) +
       "\" font-size=\"13\" text-anchor=\"middle\">target epsilon</text>\n";
  s += "<text x=\"18\" y=\"" + Short(top + ph / 2) +
       "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 18 " +
       Short(top + ph / 2) + ")\">" +
       std::string(use_accuracy ? "mean accuracy" : "mean empirical risk") +
       "</text>\n";
  s += "<text x=\"" + Short(left + pw / 2) +
       "\" y=\"22\" font-size=\"14\" text-anchor=\"middle\">utility vs epsilon</text>\n";
  for (size_t m = 0; m < order.size(); ++m) {
    const std::string color = kColors[m % (sizeof(kColors) / sizeof(kColors[0]))];
    auto pts = series[order[m]];
    std::sort(pts.begin(), pts.end());
    if (!pts.empty()) {
      std::string poly;
      for (const auto& [x, y] : pts) {
        if (!poly.empty()) poly += ' ';
        poly += Short(px(x)) + "," + Short(py(y));
      }
      s += "<polyline fill=\"none\" stroke=\"" + color +
           "\" stroke-width=\"2\" points=\"" + poly + "\"/>\n";
      for (const auto& [x, y] : pts) {
        s += "<circle cx=\"" + Short(px(x)) + "\" cy=\"" + Short(py(y)) +
             "\" r=\"3\" fill=\"" + color + "\"/>\n";
      }
    }
    double ly = top + 10 + 20.0 * static_cast<double>(m);
    s += "<line x1=\"" + Short(left + pw + 15) + "\" y1=\"" + Short(ly) +
         "\" x2=\"" + Short(left + pw + 40) + "\" y2=\"" + Short(ly) +
         "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
    s += "<text x=\"" + Short(left + pw + 45) + "\" y=\"" + Short(ly + 4) +
         "\" font-size=\"12\">" + XmlEscape(order[m]) + "</text>\n";
  }
  s += "</svg>\n";
  return s;
}

void EmitReport(const SweepResults& results, ReportFormat format,
                const std::string& path) {
  if (results.rows.empty()) throw DomainError("no results to report");
  VerifyResults(results);
  std::string text;
  switch (format) {
    case ReportFormat::kCsv:
      text = ResultsToCsv(results);
      break;
    case ReportFormat::kJson:
      text = results.ToJson().dump(2) + "\n";
      break;
    case ReportFormat::kSvg:
      text = ResultsToSvg(results);
      break;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace fdp
