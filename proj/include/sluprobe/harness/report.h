// Copyright 2026 The sluprobe Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SLUPROBE_HARNESS_REPORT_H_
#define SLUPROBE_HARNESS_REPORT_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace sluprobe::harness {

// One evaluated cell. Rates are ratios; unset fields are not applicable.
struct ReportRow {
  std::string experiment;
  std::string protocol;
  std::optional<int> layer;
  uint64_t seed = 0;
  std::string train_data;
  std::string test_data;
  std::string split;
  std::optional<double> cher;
  std::optional<double> wer;
  std::optional<double> cer;
  std::optional<double> cver;
  std::optional<double> f1;
  std::optional<int> best_epoch;
  std::optional<int> epochs;

  bool operator==(const ReportRow &other) const = default;
};

struct ExperimentReport {
  std::string name;
  std::string toolkit_version;
  nlohmann::ordered_json config;
  nlohmann::ordered_json summary = nlohmann::ordered_json::object();
  std::vector<std::string> notes;
  std::vector<ReportRow> rows;
};

// Column order of the CSV form.
const std::vector<std::string> &ReportColumns();

// Header plus one line per row; rates as two-decimal percentages, empty
// cells for fields that do not apply.
std::string ReportCsv(const std::vector<ReportRow> &rows);
// Rates keep full precision here.
nlohmann::ordered_json ReportJson(const ExperimentReport &report);
ExperimentReport ReportFromJson(const nlohmann::json &j);

// Reads the CSV form back. Rates come back rounded to the printed
// precision. Throws ParseError.
std::vector<ReportRow> ParseReportCsv(std::string_view text);

// Writes <dir>/<stem>.csv and <dir>/<stem>.json. Throws IoError.
void EmitReport(const ExperimentReport &report, const std::string &dir, const std::string &stem);

}  // namespace sluprobe::harness

#endif  // SLUPROBE_HARNESS_REPORT_H_
