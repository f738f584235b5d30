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

#ifndef SLUPROBE_HARNESS_EXPERIMENTS_H_
#define SLUPROBE_HARNESS_EXPERIMENTS_H_

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sluprobe/dataio/corpus.h"
#include "sluprobe/harness/config.h"
#include "sluprobe/harness/report.h"

namespace sluprobe::harness {

// Receives one line per finished training run.
using Progress = std::function<void(const std::string &)>;

// Trains one frame probe per (layer, seed) on the source language and
// evaluates it on dev and test. An empty layer list means every layer in
// the data. Summary: argmin test CER layer per seed, mean test CER per
// layer and the minimum of that curve when it is unimodal. Throws
// MissingLayer.
ExperimentReport RunLayerwise(const ExperimentConfig &cfg, const DataSource &source,
                              const Progress &progress = {});

struct TransferOutcome {
  ExperimentReport report;
  // Language/split pairs each protocol read.
  std::map<Protocol, dataio::AccessLog> access;
};

// Runs the configured protocols at the single configured layer, one test
// row per (protocol, seed). The source model of a seed is shared by
// zero-shot and warm-start; warm-start continues it on target data with
// fresh optimizer state. Throws VocabularyIncompatible when the probe
// characters do not cover the data a protocol reads.
TransferOutcome RunTransfer(const ExperimentConfig &cfg, const DataSource &source,
                            const Progress &progress = {});

// For every seed: one classifier per training family (source language),
// evaluated on every (language, family) test cell, plus a frame-wise
// baseline whose decoded concepts are turned into bags. Throws
// MissingFamily.
ExperimentReport RunBocGrid(const ExperimentConfig &cfg, const DataSource &source,
                            const Progress &progress = {});

// Index of the minimum when `curve` is non-increasing up to it and
// non-decreasing after it.
std::optional<size_t> UnimodalMinimum(const std::vector<double> &curve);

}  // namespace sluprobe::harness

#endif  // SLUPROBE_HARNESS_EXPERIMENTS_H_
