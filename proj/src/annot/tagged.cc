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

#include "sluprobe/annot/tagged.h"

#include "sluprobe/common/error.h"
#include "sluprobe/common/text.h"

namespace sluprobe::annot {
namespace {

struct Token {
  enum class Type { kText, kOpen, kClose, kMalformed, kStray };
  Type type;
  std::string text;  // label for open/close
  size_t offset;
};

std::vector<Token> Tokenize(std::string_view raw) {
  std::vector<Token> tokens;
  std::string text;
  size_t text_start = 0;
  auto flush_text = [&]() {
    if (!text.empty()) tokens.push_back({Token::Type::kText, text, text_start});
    text.clear();
  };
  size_t i = 0;
  while (i < raw.size()) {
    const char c = raw[i];
    if (c == '>') {
      flush_text();
      tokens.push_back({Token::Type::kStray, ">", i});
      ++i;
      continue;
    }
    if (c != '<') {
      if (text.empty()) text_start = i;
      text.push_back(c);
      ++i;
      continue;
    }
    // Find the matching '>', but a second '<' first means this one is stray.
    size_t close = i + 1;
    while (close < raw.size() && raw[close] != '>' && raw[close] != '<') {
      ++close;
    }
    flush_text();
    if (close >= raw.size() || raw[close] == '<') {
      tokens.push_back({Token::Type::kStray, "<", i});
      ++i;
      continue;
    }
    std::string_view body = raw.substr(i + 1, close - i - 1);
    const bool is_close = !body.empty() && body[0] == '/';
    if (is_close) body.remove_prefix(1);
    if (!ConceptLabel::IsValidToken(body)) {
      tokens.push_back({Token::Type::kMalformed,
                        std::string(raw.substr(i, close - i + 1)), i});
    } else {
      tokens.push_back({is_close ? Token::Type::kClose : Token::Type::kOpen,
                        std::string(body), i});
    }
    i = close + 1;
  }
  flush_text();
  return tokens;
}

[[noreturn]] void Fail(ErrorCode code, const std::string &what,
                       size_t offset) {
  throw Error(code, what + " at byte " + std::to_string(offset));
}

}  // namespace

void SemSegment::Append(std::string_view text,
                        std::optional<ConceptLabel> label) {
  std::string normalized = NormalizeSpaces(text);
  if (!label) {
    if (normalized.empty()) return;
    if (!chunks.empty() && !chunks.back().label) {
      chunks.back().text += " " + normalized;
      return;
    }
  }
  chunks.push_back({std::move(normalized), std::move(label)});
}

std::string NormalizeValue(std::string_view value) {
  return LowercaseUtf8(NormalizeSpaces(value));
}

std::string_view DiagnosticKindName(ParseDiagnostic::Kind kind) {
  using Kind = ParseDiagnostic::Kind;
  switch (kind) {
    case Kind::kUnclosedTag: return "UnclosedTag";
    case Kind::kUnmatchedClose: return "UnmatchedClose";
    case Kind::kNestedTag: return "NestedTag";
    case Kind::kUnknownLabel: return "UnknownLabel";
    case Kind::kMalformedTag: return "MalformedTag";
    case Kind::kStrayBracket: return "StrayBracket";
  }
  return "Unknown";
}

ParseResult ParseTagged(std::string_view raw, const ConceptInventory &inv,
                        ParseMode mode) {
  using Kind = ParseDiagnostic::Kind;
  const bool strict = mode == ParseMode::kStrict;
  ParseResult result;
  SemSegment &seg = result.segment;
  auto diag = [&](Kind kind, size_t offset, std::string detail) {
    result.diagnostics.push_back({kind, offset, std::move(detail)});
  };

  std::optional<ConceptLabel> open;
  size_t open_offset = 0;
  std::string buffer;
  auto flush = [&](std::optional<ConceptLabel> label) {
    seg.Append(buffer, std::move(label));
    buffer.clear();
  };

  for (const Token &tok : Tokenize(raw)) {
    switch (tok.type) {
      case Token::Type::kText:
        buffer += tok.text;
        break;
      case Token::Type::kStray:
        if (strict) Fail(ErrorCode::kMalformedTag, "stray '" + tok.text + "'", tok.offset);
        diag(Kind::kStrayBracket, tok.offset, tok.text);
        buffer.push_back(' ');
        break;
      case Token::Type::kMalformed:
        if (strict) Fail(ErrorCode::kMalformedTag, "malformed tag " + tok.text, tok.offset);
        diag(Kind::kMalformedTag, tok.offset, tok.text);
        buffer.push_back(' ');
        break;
      case Token::Type::kOpen: {
        if (!inv.Contains(tok.text)) {
          if (strict) Fail(ErrorCode::kUnknownLabel, "unknown label '" + tok.text + "'", tok.offset);
          diag(Kind::kUnknownLabel, tok.offset, tok.text);
          buffer.push_back(' ');
          break;
        }
        if (open) {
          if (strict) Fail(ErrorCode::kNestedTag, "<" + tok.text + "> inside <" + open->ToString() + ">", tok.offset);
          diag(Kind::kNestedTag, tok.offset, open->ToString());
        }
        flush(open);
        open = inv.label(*inv.IndexOf(tok.text));
        open_offset = tok.offset;
        break;
      }
      case Token::Type::kClose: {
        if (!inv.Contains(tok.text)) {
          if (strict) Fail(ErrorCode::kUnknownLabel, "unknown label '" + tok.text + "'", tok.offset);
          diag(Kind::kUnknownLabel, tok.offset, "/" + tok.text);
          // An unknown close still ends whatever is open (R1).
          if (open) {
            diag(Kind::kUnclosedTag, open_offset, open->ToString());
            flush(open);
            open.reset();
          } else {
            buffer.push_back(' ');
          }
          break;
        }
        if (open && open->ToString() == tok.text) {
          flush(open);
          open.reset();
          break;
        }
        if (strict) Fail(ErrorCode::kUnbalancedTag, "unmatched </" + tok.text + ">", tok.offset);
        if (open) {
          diag(Kind::kUnclosedTag, open_offset, open->ToString());
          flush(open);
          open.reset();
        } else {
          buffer.push_back(' ');
        }
        diag(Kind::kUnmatchedClose, tok.offset, tok.text);
        break;
      }
    }
  }
  if (open) {
    if (strict) Fail(ErrorCode::kUnbalancedTag, "unclosed <" + open->ToString() + ">", open_offset);
    diag(Kind::kUnclosedTag, open_offset, open->ToString());
  }
  flush(open);
  return result;
}

SemSegment ParseStrict(std::string_view raw, const ConceptInventory &inv) {
  return ParseTagged(raw, inv, ParseMode::kStrict).segment;
}

std::string RenderTagged(const SemSegment &seg) {
  std::string out;
  auto piece = [&out](std::string_view s) {
    if (s.empty()) return;
    if (!out.empty()) out.push_back(' ');
    out += s;
  };
  for (const Chunk &chunk : seg.chunks) {
    if (!chunk.label) {
      piece(chunk.text);
      continue;
    }
    const std::string name = chunk.label->ToString();
    piece("<" + name + ">");
    piece(chunk.text);
    piece("</" + name + ">");
  }
  return out;
}

std::string UntaggedText(const SemSegment &seg) {
  std::string out;
  for (const Chunk &chunk : seg.chunks) {
    if (chunk.text.empty()) continue;
    if (!out.empty()) out.push_back(' ');
    out += chunk.text;
  }
  return out;
}

std::vector<ConceptLabel> ConceptSequence(const SemSegment &seg) {
  std::vector<ConceptLabel> labels;
  for (const Chunk &chunk : seg.chunks) {
    if (chunk.label) labels.push_back(*chunk.label);
  }
  return labels;
}

std::vector<ConceptValuePair> ConceptValuePairs(const SemSegment &seg) {
  std::vector<ConceptValuePair> pairs;
  for (const Chunk &chunk : seg.chunks) {
    if (chunk.label) pairs.push_back({*chunk.label, NormalizeValue(chunk.text)});
  }
  return pairs;
}

MultiHot BagOfConcepts(const SemSegment &seg, const ConceptInventory &inv) {
  MultiHot bag(inv.size());
  for (const Chunk &chunk : seg.chunks) {
    if (!chunk.label) continue;
    auto idx = inv.IndexOf(*chunk.label);
    if (!idx) {
      throw Error(ErrorCode::kUnknownLabel,
                  "'" + chunk.label->ToString() + "' not in inventory");
    }
    bag.bits[*idx] = 1;
  }
  return bag;
}

}  // namespace sluprobe::annot
