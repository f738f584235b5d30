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

#ifndef SLUPROBE_COMMON_TEXT_H_
#define SLUPROBE_COMMON_TEXT_H_

#include <string>
#include <string_view>
#include <vector>

namespace sluprobe {

bool IsAsciiSpace(char c);

// Trims surrounding whitespace and collapses internal runs to one space.
std::string NormalizeSpaces(std::string_view text);

std::vector<std::string> SplitWhitespace(std::string_view text);

// Lowercases ASCII and Latin-1 letters; other code points pass through.
std::string LowercaseUtf8(std::string_view text);

// Decodes UTF-8 into code points. Invalid bytes decode to themselves as
// single units so the result is total over arbitrary byte strings.
std::vector<char32_t> DecodeUtf8(std::string_view text);

void AppendUtf8(char32_t cp, std::string *out);

// Splits UTF-8 text into one string per code point.
std::vector<std::string> Utf8Characters(std::string_view text);

std::string ReadFileOrThrow(const std::string &path);
void WriteFileOrThrow(const std::string &path, std::string_view contents);

}  // namespace sluprobe

#endif  // SLUPROBE_COMMON_TEXT_H_
