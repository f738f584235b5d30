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

#include <random>
#include <string>

#include "gtest/gtest.h"
#include "sluprobe/annot/concept.h"
#include "sluprobe/annot/tagged.h"
#include "sluprobe/common/error.h"
#include "testing/generators.h"

namespace sluprobe::annot {
namespace {

using ::sluprobe::testing::HotelInventory;
using ::sluprobe::testing::RandomSegment;

constexpr char kBookingExample[] =
    "I <reservation> would like to book </reservation> <room-number> one "
    "</room-number> <room-type> double room </room-type> in <city> Paris "
    "</city>";

ConceptLabel L(const std::string &s) { return ConceptLabel::Parse(s); }

SemSegment BookingSegment() {
  SemSegment seg;
  seg.chunks = {{"I", std::nullopt},
                {"would like to book", L("reservation")},
                {"one", L("room-number")},
                {"double room", L("room-type")},
                {"in", std::nullopt},
                {"Paris", L("city")}};
  return seg;
}

ErrorCode StrictErrorCode(const std::string &raw) {
  try {
    ParseStrict(raw, HotelInventory());
  } catch (const Error &e) {
    return e.code();
  }
  ADD_FAILURE() << "no error for " << raw;
  return ErrorCode::kIoError;
}

TEST(ConceptLabelTest, CanonicalFormRoundTrips) {
  ConceptLabel plain("city");
  EXPECT_EQ(plain.ToString(), "city");
  ConceptLabel spec("location", "address");
  EXPECT_EQ(spec.ToString(), "location-address");
  EXPECT_EQ(ConceptLabel::Parse("location-address", {"address"}), spec);
  EXPECT_EQ(*ConceptLabel::Parse("location-address", {"address"}).specifier(),
            "address");
  // Hyphenated attributes stay whole without a declared specifier.
  EXPECT_FALSE(ConceptLabel::Parse("room-number").specifier().has_value());
  EXPECT_EQ(ConceptLabel::Parse("room-number").ToString(), "room-number");
}

TEST(ConceptLabelTest, RejectsReservedCharacters) {
  EXPECT_THROW(ConceptLabel("ci ty"), Error);
  EXPECT_THROW(ConceptLabel("<city"), Error);
  EXPECT_THROW(ConceptLabel("a/b"), Error);
  EXPECT_THROW(ConceptLabel(""), Error);
  EXPECT_THROW(ConceptLabel("city", "x>"), Error);
}

TEST(ConceptInventoryTest, LoadsTextWithCommentsAndSpecifiers) {
  auto inv = ConceptInventory::FromText(
      "# hotel concepts\n# specifiers: address travel\ncity\n\n"
      "location-address\nroom-number\n");
  ASSERT_EQ(inv.size(), 3u);
  EXPECT_EQ(*inv.IndexOf("city"), 0u);
  EXPECT_EQ(*inv.IndexOf("location-address"), 1u);
  EXPECT_EQ(*inv.IndexOf("room-number"), 2u);
  EXPECT_EQ(*inv.label(1).specifier(), "address");
  EXPECT_FALSE(inv.IndexOf("hotel").has_value());
  EXPECT_EQ(ConceptInventory::FromText(inv.ToText()), inv);
}

TEST(ConceptInventoryTest, RejectsDuplicates) {
  EXPECT_THROW(ConceptInventory::FromText("city\ncity\n"), Error);
}

TEST(ParseTaggedTest, BookingExample) {
  const auto result = ParseTagged(kBookingExample, HotelInventory(), ParseMode::kStrict);
  EXPECT_EQ(result.segment, BookingSegment());
  EXPECT_TRUE(result.diagnostics.empty());
}

TEST(ParseTaggedTest, EmptyInput) {
  EXPECT_TRUE(ParseStrict("", HotelInventory()).empty());
  EXPECT_TRUE(ParseStrict("   ", HotelInventory()).empty());
}

TEST(ParseTaggedTest, TagsWithoutSurroundingSpaces) {
  SemSegment seg = ParseStrict("in<city>Paris</city>now", HotelInventory());
  ASSERT_EQ(seg.chunks.size(), 3u);
  EXPECT_EQ(UntaggedText(seg), "in Paris now");
}

TEST(ParseTaggedTest, StrictErrors) {
  EXPECT_EQ(StrictErrorCode("<city> Paris"), ErrorCode::kUnbalancedTag);
  EXPECT_EQ(StrictErrorCode("Paris </city>"), ErrorCode::kUnbalancedTag);
  EXPECT_EQ(StrictErrorCode("<city> Paris </room-type>"), ErrorCode::kUnbalancedTag);
  EXPECT_EQ(StrictErrorCode("<city> a <room-type> b </room-type> </city>"),
            ErrorCode::kNestedTag);
  EXPECT_EQ(StrictErrorCode("<town> Paris </town>"), ErrorCode::kUnknownLabel);
  EXPECT_EQ(StrictErrorCode("a < b"), ErrorCode::kMalformedTag);
  EXPECT_EQ(StrictErrorCode("<ci ty> x </ci ty>"), ErrorCode::kMalformedTag);
}

TEST(ParseTaggedTest, UnknownLabelReportsOffset) {
  try {
    ParseStrict("go to <town> Paris </town>", HotelInventory());
    FAIL();
  } catch (const Error &e) {
    EXPECT_NE(std::string(e.what()).find("town"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("byte 6"), std::string::npos);
  }
}

TEST(ParseTaggedTest, LenientMissingCloseExtendsToEnd) {
  auto r = ParseTagged("<city> Paris", HotelInventory(), ParseMode::kLenient);
  ASSERT_EQ(r.segment.chunks.size(), 1u);
  EXPECT_EQ(r.segment.chunks[0].text, "Paris");
  EXPECT_EQ(r.segment.chunks[0].label, L("city"));
  ASSERT_EQ(r.diagnostics.size(), 1u);
  EXPECT_EQ(r.diagnostics[0].kind, ParseDiagnostic::Kind::kUnclosedTag);
}

TEST(ParseTaggedTest, LenientOpenExtendsToNextTagOfAnyKind) {
  // R1: <city> runs until <room-type>; R3 reports the nesting.
  auto r = ParseTagged("<city> Paris <room-type> double </room-type>",
                       HotelInventory(), ParseMode::kLenient);
  ASSERT_EQ(r.segment.chunks.size(), 2u);
  EXPECT_EQ(r.segment.chunks[0], (Chunk{"Paris", L("city")}));
  EXPECT_EQ(r.segment.chunks[1], (Chunk{"double", L("room-type")}));
  ASSERT_EQ(r.diagnostics.size(), 1u);
  EXPECT_EQ(r.diagnostics[0].kind, ParseDiagnostic::Kind::kNestedTag);

  // A mismatched close also ends the open tag, then is dropped (R2).
  r = ParseTagged("<city> Paris </room-type> now", HotelInventory(),
                  ParseMode::kLenient);
  ASSERT_EQ(r.segment.chunks.size(), 2u);
  EXPECT_EQ(r.segment.chunks[0], (Chunk{"Paris", L("city")}));
  EXPECT_EQ(r.segment.chunks[1], (Chunk{"now", std::nullopt}));
}

TEST(ParseTaggedTest, LenientDropsUnmatchedClose) {
  auto r = ParseTagged("I </city> go", HotelInventory(), ParseMode::kLenient);
  ASSERT_EQ(r.segment.chunks.size(), 1u);
  EXPECT_EQ(r.segment.chunks[0].text, "I go");
  ASSERT_EQ(r.diagnostics.size(), 1u);
  EXPECT_EQ(r.diagnostics[0].kind, ParseDiagnostic::Kind::kUnmatchedClose);
}

TEST(ParseTaggedTest, LenientKeepsTextOfUnknownAndMalformedTags) {
  auto r = ParseTagged("<town> Paris </town> a<b", HotelInventory(),
                       ParseMode::kLenient);
  EXPECT_EQ(UntaggedText(r.segment), "Paris a b");
  EXPECT_TRUE(ConceptSequence(r.segment).empty());
  EXPECT_GE(r.diagnostics.size(), 3u);
}

TEST(RenderTaggedTest, Examples) {
  SemSegment single;
  single.Append("Paris", L("city"));
  EXPECT_EQ(RenderTagged(single), "<city> Paris </city>");
  EXPECT_EQ(RenderTagged(SemSegment{}), "");
  EXPECT_EQ(RenderTagged(BookingSegment()), kBookingExample);
}

TEST(RenderTaggedTest, EmptyValueConcept) {
  SemSegment seg;
  seg.Append("", L("city"));
  EXPECT_EQ(RenderTagged(seg), "<city> </city>");
  EXPECT_EQ(ParseStrict(RenderTagged(seg), HotelInventory()), seg);
}

TEST(SegmentTest, AppendMergesAdjacentUnlabeledText) {
  SemSegment seg;
  seg.Append("  I  ");
  seg.Append("");
  seg.Append("would\tlike");
  ASSERT_EQ(seg.chunks.size(), 1u);
  EXPECT_EQ(seg.chunks[0].text, "I would like");
}

TEST(ConceptSequenceTest, Examples) {
  EXPECT_EQ(ConceptSequence(BookingSegment()),
            (std::vector<ConceptLabel>{L("reservation"), L("room-number"),
                                       L("room-type"), L("city")}));
  SemSegment plain;
  plain.Append("hello there");
  EXPECT_TRUE(ConceptSequence(plain).empty());
  SemSegment twice;
  twice.Append("Paris", L("city"));
  twice.Append("and");
  twice.Append("Lyon", L("city"));
  EXPECT_EQ(ConceptSequence(twice), (std::vector<ConceptLabel>{L("city"), L("city")}));
}

TEST(ConceptValuePairsTest, Examples) {
  EXPECT_EQ(ConceptValuePairs(BookingSegment()),
            (std::vector<ConceptValuePair>{{L("reservation"), "would like to book"},
                                           {L("room-number"), "one"},
                                           {L("room-type"), "double room"},
                                           {L("city"), "paris"}}));
  SemSegment padded;
  padded.chunks.push_back({"  Paris  ", L("city")});
  EXPECT_EQ(ConceptValuePairs(padded),
            (std::vector<ConceptValuePair>{{L("city"), "paris"}}));
  EXPECT_TRUE(ConceptValuePairs(SemSegment{}).empty());
  EXPECT_EQ(NormalizeValue(" ÉCOLE   Normale "), "école normale");
}

TEST(BagOfConceptsTest, Examples) {
  const auto inv = HotelInventory();
  MultiHot bag = BagOfConcepts(BookingSegment(), inv);
  EXPECT_EQ(bag.size(), 6u);
  EXPECT_EQ(bag.Popcount(), 4u);
  EXPECT_EQ(bag.bits, (std::vector<uint8_t>{1, 1, 1, 1, 0, 0}));
  EXPECT_EQ(BagOfConcepts(SemSegment{}, inv).Popcount(), 0u);
  SemSegment twice;
  twice.Append("Paris", L("city"));
  twice.Append("Lyon", L("city"));
  EXPECT_EQ(BagOfConcepts(twice, inv).Popcount(), 1u);
  SemSegment unknown;
  unknown.Append("x", L("town"));
  EXPECT_THROW(BagOfConcepts(unknown, inv), Error);
}

TEST(AnnotPropertyTest, StrictRoundTripOverRandomSegments) {
  const auto inv = HotelInventory();
  std::mt19937_64 rng(7);
  for (int i = 0; i < 2000; ++i) {
    SemSegment seg = RandomSegment(rng, inv);
    const std::string raw = RenderTagged(seg);
    ASSERT_EQ(ParseStrict(raw, inv), seg) << raw;
    EXPECT_EQ(ConceptSequence(seg).size(), ConceptValuePairs(seg).size());
    EXPECT_LE(BagOfConcepts(seg, inv).Popcount(), ConceptSequence(seg).size());
  }
}

TEST(AnnotPropertyTest, LenientParseIsTotalAndRendersWellFormed) {
  const auto inv = HotelInventory();
  std::mt19937_64 rng(11);
  const std::vector<std::string> pieces = {
      "<city>", "</city>", "<room-type>", "</room-type>", "<town>", "</x>",
      "<", ">", "</", "< city>", "Paris", " ", "  double ", "é", "\t", "a<b>c"};
  std::uniform_int_distribution<size_t> pick(0, pieces.size() - 1);
  std::uniform_int_distribution<int> len(0, 12);
  for (int i = 0; i < 3000; ++i) {
    std::string raw;
    for (int k = len(rng); k > 0; --k) raw += pieces[pick(rng)];
    ParseResult r;
    ASSERT_NO_THROW(r = ParseTagged(raw, inv, ParseMode::kLenient)) << raw;
    const std::string rendered = RenderTagged(r.segment);
    SemSegment reparsed;
    ASSERT_NO_THROW(reparsed = ParseStrict(rendered, inv)) << raw << " -> " << rendered;
    EXPECT_EQ(reparsed, r.segment);
  }
}

}  // namespace
}  // namespace sluprobe::annot
