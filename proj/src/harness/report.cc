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

#include "sluprobe/harness/report.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "sluprobe/common/error.h"
#include "sluprobe/metrics/scoring_report.h"

namespace sluprobe::harness {

const std::vector<std::string> &ReportColumns() {
  static const std::vector<std::string> columns = {
      "experiment", "protocol", "layer", "seed", "train_data", "test_data", "split",
      "cher",       "wer",      "cer",   "cver", "f1",         "best_epoch", "epochs"};
  return columns;
}

namespace {

std::string Quote(const std::string &field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string Percent(const std::optional<double> &v) {
  return v ? metrics::FormatPercent(*v) : "";
}

std::string Int(const std::optional<int> &v) { return v ? std::to_string(*v) : ""; }

std::vector<std::string> Fields(const ReportRow &r) {
  return {r.experiment, r.protocol,  Int(r.layer),     std::to_string(r.seed),
          r.train_data, r.test_data, r.split,          Percent(r.cher),
          Percent(r.wer), Percent(r.cer), Percent(r.cver), Percent(r.f1),
          Int(r.best_epoch), Int(r.epochs)};
}

std::string Join(const std::vector<std::string> &fields) {
  std::string out;
  for (size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out += ',';
    out += Quote(fields[i]);
  }
  return out + "\n";
}

template <typename T>
void PutOptional(nlohmann::ordered_json &j, const char *key, const std::optional<T> &v) {
  j[key] = v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

template <typename T>
std::optional<T> GetOptional(const nlohmann::json &j, const char *key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

}  // namespace

std::string ReportCsv(const std::vector<ReportRow> &rows) {
  std::string out = Join(ReportColumns());
  for (const ReportRow &r : rows) out += Join(Fields(r));
  return out;
}

nlohmann::ordered_json ReportJson(const ExperimentReport &report) {
  nlohmann::ordered_json j;
  j["name"] = report.name;
  j["toolkit_version"] = report.toolkit_version;
  j["notes"] = report.notes;
  j["config"] = report.config;
  j["summary"] = report.summary;
  j["columns"] = ReportColumns();
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const ReportRow &r : report.rows) {
    nlohmann::ordered_json row;
    row["experiment"] = r.experiment;
    row["protocol"] = r.protocol;
    PutOptional(row, "layer", r.layer);
    row["seed"] = r.seed;
    row["train_data"] = r.train_data;
    row["test_data"] = r.test_data;
    row["split"] = r.split;
    PutOptional(row, "cher", r.cher);
    PutOptional(row, "wer", r.wer);
    PutOptional(row, "cer", r.cer);
    PutOptional(row, "cver", r.cver);
    PutOptional(row, "f1", r.f1);
    PutOptional(row, "best_epoch", r.best_epoch);
    PutOptional(row, "epochs", r.epochs);
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  return j;
}

ExperimentReport ReportFromJson(const nlohmann::json &j) {
  ExperimentReport r;
  try {
    r.name = j.at("name").get<std::string>();
    r.toolkit_version = j.at("toolkit_version").get<std::string>();
    r.notes = j.at("notes").get<std::vector<std::string>>();
    r.config = j.at("config");
    r.summary = j.at("summary");
    for (const auto &row : j.at("rows")) {
      ReportRow x;
      x.experiment = row.at("experiment").get<std::string>();
      x.protocol = row.at("protocol").get<std::string>();
      x.layer = GetOptional<int>(row, "layer");
      x.seed = row.at("seed").get<uint64_t>();
      x.train_data = row.at("train_data").get<std::string>();
      x.test_data = row.at("test_data").get<std::string>();
      x.split = row.at("split").get<std::string>();
      x.cher = GetOptional<double>(row, "cher");
      x.wer = GetOptional<double>(row, "wer");
      x.cer = GetOptional<double>(row, "cer");
      x.cver = GetOptional<double>(row, "cver");
      x.f1 = GetOptional<double>(row, "f1");
      x.best_epoch = GetOptional<int>(row, "best_epoch");
      x.epochs = GetOptional<int>(row, "epochs");
      r.rows.push_back(std::move(x));
    }
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorCode::kParseError, std::string("bad report JSON: ") + e.what());
  }
  return r;
}

namespace {

// Splits CSV text into records of fields; quoted fields may hold commas,
// quotes and newlines.
std::vector<std::vector<std::string>> SplitCsv(std::string_view text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false;
  bool any = false;
  for (size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
      any = true;
    } else if (c == ',') {
      record.push_back(std::move(field));
      field.clear();
      any = true;
    } else if (c == '\n') {
      record.push_back(std::move(field));
      field.clear();
      records.push_back(std::move(record));
      record.clear();
      any = false;
    } else if (c != '\r') {
      field += c;
      any = true;
    }
  }
  if (quoted) throw Error(ErrorCode::kParseError, "unterminated quoted CSV field");
  if (any) {
    record.push_back(std::move(field));
    records.push_back(std::move(record));
  }
  return records;
}

std::optional<double> ParsePercent(const std::string &s, size_t line) {
  if (s.empty()) return std::nullopt;
  char *end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size()) {
    throw Error(ErrorCode::kParseError,
                "report line " + std::to_string(line) + ": bad number '" + s + "'");
  }
  return v / 100.0;
}

std::optional<int> ParseInt(const std::string &s, size_t line) {
  if (s.empty()) return std::nullopt;
  char *end = nullptr;
  const long v = std::strtol(s.c_str(), &end, 10);
  if (end != s.c_str() + s.size()) {
    throw Error(ErrorCode::kParseError,
                "report line " + std::to_string(line) + ": bad integer '" + s + "'");
  }
  return static_cast<int>(v);
}

}  // namespace

std::vector<ReportRow> ParseReportCsv(std::string_view text) {
  const auto records = SplitCsv(text);
  if (records.empty() || records.front() != ReportColumns()) {
    throw Error(ErrorCode::kParseError, "report CSV header does not match the expected columns");
  }
  std::vector<ReportRow> rows;
  for (size_t i = 1; i < records.size(); ++i) {
    const std::vector<std::string> &f = records[i];
    const size_t line = i + 1;
    if (f.size() != ReportColumns().size()) {
      throw Error(ErrorCode::kParseError, "report line " + std::to_string(line) + " has " +
                                              std::to_string(f.size()) + " fields");
    }
    ReportRow r;
    r.experiment = f[0];
    r.protocol = f[1];
    r.layer = ParseInt(f[2], line);
    char *end = nullptr;
    r.seed = std::strtoull(f[3].c_str(), &end, 10);
    if (f[3].empty() || end != f[3].c_str() + f[3].size()) {
      throw Error(ErrorCode::kParseError, "report line " + std::to_string(line) + ": bad seed");
    }
    r.train_data = f[4];
    r.test_data = f[5];
    r.split = f[6];
    r.cher = ParsePercent(f[7], line);
    r.wer = ParsePercent(f[8], line);
    r.cer = ParsePercent(f[9], line);
    r.cver = ParsePercent(f[10], line);
    r.f1 = ParsePercent(f[11], line);
    r.best_epoch = ParseInt(f[12], line);
    r.epochs = ParseInt(f[13], line);
    rows.push_back(std::move(r));
  }
  return rows;
}

void EmitReport(const ExperimentReport &report, const std::string &dir, const std::string &stem) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIoError, "cannot create '" + dir + "': " + ec.message());
  const auto write = [](const fs::path &path, const std::string &content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
    if (!out) throw Error(ErrorCode::kIoError, "cannot write '" + path.string() + "'");
  };
  write(fs::path(dir) / (stem + ".csv"), ReportCsv(report.rows));
  write(fs::path(dir) / (stem + ".json"), ReportJson(report).dump(2) + "\n");
}

}  // namespace sluprobe::harness
