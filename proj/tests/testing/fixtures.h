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

// Helpers for reading test fixtures.
#ifndef SLUPROBE_TESTS_TESTING_FIXTURES_H_
#define SLUPROBE_TESTS_TESTING_FIXTURES_H_

#include <cstdlib>
#include <filesystem>
#include <random>
#include <sstream>
#include <string>

#include "sluprobe/common/error.h"
#include "sluprobe/common/text.h"

#ifndef SLUPROBE_FIXTURE_DIR
#error "SLUPROBE_FIXTURE_DIR must be defined by the build"
#endif

namespace sluprobe::testing {

inline std::string FixturePath(const std::string &name) {
  return std::string(SLUPROBE_FIXTURE_DIR) + "/" + name;
}

// Parses whitespace-separated hex byte pairs; '#' starts a comment.
inline std::string ReadHexFixture(const std::string &name) {
  std::istringstream in(ReadFileOrThrow(FixturePath(name)));
  std::string line, bytes;
  while (std::getline(in, line)) {
    line = line.substr(0, line.find('#'));
    std::istringstream words(line);
    std::string pair;
    while (words >> pair) bytes.push_back(static_cast<char>(std::stoi(pair, nullptr, 16)));
  }
  return bytes;
}

// Fresh scratch directory under the system temp dir.
inline std::string ScratchDir(const std::string &tag) {
  namespace fs = std::filesystem;
  std::random_device rd;
  fs::path p = fs::temp_directory_path() /
               ("sluprobe_" + tag + "_" + std::to_string(rd()));
  fs::create_directories(p);
  return p.string();
}

}  // namespace sluprobe::testing

#endif  // SLUPROBE_TESTS_TESTING_FIXTURES_H_
