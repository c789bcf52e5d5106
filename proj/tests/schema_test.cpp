// Copyright 2026 The Caitlin Authors
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

#include <gtest/gtest.h>

#include <algorithm>

#include "caitlin/schema.hpp"

using namespace caitlin;
using namespace caitlin::schema;

namespace {

bool mentions(const std::vector<Diagnostic>& diagnostics, const std::string& field) {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [&](const Diagnostic& d) { return d.field == field; });
}

std::string schema_file(const std::string& name) {
  return read_file(std::string(CAITLIN_SCHEMA_DIR) + "/" + name);
}

}  // namespace

TEST(Schema, DefaultBindings) {
  const auto s = default_schema();
  EXPECT_EQ(s.tempo_bpm, 120);
  EXPECT_EQ(s.scale, motif::ScaleName::Major);
  EXPECT_EQ(s.true_mode, motif::Mode::Major);
  EXPECT_EQ(s.false_mode, motif::Mode::Minor);
  EXPECT_EQ(s.timbre.size(), 8u);
  EXPECT_EQ(s.motifs.size(), 8u);
  EXPECT_EQ(s.percussion_key(PointOfInterest::IterationPrefix), 81);
  EXPECT_EQ(s.percussion_key(PointOfInterest::IterationSuffix), 80);
  EXPECT_EQ(s.percussion_key(PointOfInterest::CaseTest), 56);
  EXPECT_EQ(s.percussion_key(PointOfInterest::FinalIteration), kJingleBell);
  EXPECT_EQ(s.percussion_key(PointOfInterest::ConditionTest), std::nullopt);
  EXPECT_TRUE(validate_schema(s).empty());
}

TEST(Schema, Gm1FallbackReplacesJingleBell) {
  auto s = load_schema("percussion.gm1_fallback = true\n");
  EXPECT_EQ(s.percussion_key(PointOfInterest::FinalIteration), kTambourine);
  EXPECT_EQ(s.percussion_key(PointOfInterest::CaseTest), 56);
}

TEST(Schema, SaveLoadRoundTrip) {
  for (const char* name : {"classic.schema", "jazz.schema", "chorale.schema"}) {
    const auto s = load_schema(schema_file(name));
    EXPECT_EQ(load_schema(save_schema(s)), s) << name;
  }
  EXPECT_EQ(load_schema(schema_file("classic.schema")), default_schema());
}

TEST(Schema, PartialFilesInheritDefaults) {
  const auto s = load_schema("# comment\n\ngeneral.tempo = 90\nscale.FOR_TO = tenNoteBlues\n");
  EXPECT_EQ(s.tempo_bpm, 90);
  EXPECT_EQ(s.scale_for(ConstructKind::ForTo).name(), motif::ScaleName::TenNoteBlues);
  EXPECT_EQ(s.scale_for(ConstructKind::While).name(), motif::ScaleName::Major);
  EXPECT_EQ(s.timbre, default_schema().timbre);
}

TEST(Schema, SyntaxErrorsCarryLines) {
  auto line_of = [](const std::string& text) {
    try {
      load_schema(text);
    } catch (const SchemaError& e) {
      return e.pos().line;
    }
    return 0;
  };
  EXPECT_EQ(line_of("general.tempo = 100\ngeneral.tempo = 110\n"), 2);
  EXPECT_EQ(line_of("general.tempo = fast\n"), 1);
  EXPECT_EQ(line_of("\n\ngeneral.colour = red\n"), 3);
  EXPECT_EQ(line_of("no equals sign\n"), 1);
  EXPECT_EQ(line_of("motif.IF.entry = 1:0\n"), 1);
  EXPECT_EQ(line_of("timbre.LOOP = 3\n"), 1);
}

TEST(Schema, RangeDiagnostics) {
  auto s = default_schema();
  s.tempo_bpm = 10;
  s.tonic = 12;
  s.timbre[ConstructKind::If] = 128;
  s.percussion[PointOfInterest::CaseTest] = 20;
  s.durations.iteration = 0;
  s.max_iterations = 0;
  const auto d = validate_schema(s);
  EXPECT_TRUE(mentions(d, "general.tempo"));
  EXPECT_TRUE(mentions(d, "general.tonic"));
  EXPECT_TRUE(mentions(d, "timbre.IF"));
  EXPECT_TRUE(mentions(d, "percussion.caseTest"));
  EXPECT_TRUE(mentions(d, "durations.iteration"));
  EXPECT_TRUE(mentions(d, "general.max_iterations"));
}

TEST(Schema, ModeAndScaleRules) {
  auto s = default_schema();
  s.false_mode = motif::Mode::Major;
  EXPECT_TRUE(mentions(validate_schema(s), "general.false_mode"));
  s = default_schema();
  s.scale = motif::ScaleName::NaturalMinor;
  EXPECT_TRUE(mentions(validate_schema(s), "general.scale"));
  s = default_schema();
  s.construct_scales[ConstructKind::While] = motif::ScaleName::TenNoteBlues;
  EXPECT_TRUE(mentions(validate_schema(s), "scale.WHILE"));
}

TEST(Schema, MissingBindings) {
  auto s = default_schema();
  s.timbre.erase(ConstructKind::Case);
  s.motifs.erase(ConstructKind::Repeat);
  s.percussion[PointOfInterest::Elision] = std::nullopt;
  const auto d = validate_schema(s);
  EXPECT_TRUE(mentions(d, "timbre.CASE"));
  EXPECT_TRUE(mentions(d, "motif.REPEAT"));
  EXPECT_TRUE(mentions(d, "percussion.elision"));
}

TEST(Schema, UnplayableMotif) {
  auto s = load_schema("motif.FOR_TO.exit = 1:0:1/2 3:0:1/2 5:0:1 9:0:1\n");
  EXPECT_TRUE(mentions(validate_schema(s), "motif.FOR_TO.exit"));
  s = load_schema("general.register = 0\nmotif.WHILE.entry = 1:0:1/2 3:0:1/2 5:0:1 4:0:1:2 1:-1:1\n");
  EXPECT_TRUE(mentions(validate_schema(s), "motif.WHILE.entry"));
}

TEST(Schema, FamilyPrefix) {
  const auto broken = load_schema(read_file(std::string(CAITLIN_TEST_DATA_DIR) + "/broken_family.schema"));
  const auto d = validate_schema(broken);
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0].field, "motif.IF.entry");
  EXPECT_NE(d[0].message.find("family-prefix"), std::string::npos);
  EXPECT_THROW(load_valid_schema(read_file(std::string(CAITLIN_TEST_DATA_DIR) + "/broken_family.schema")),
               InvalidSchema);

  // Both families collapsing onto one signature is also rejected.
  std::string same;
  for (auto kind : kAllConstructKinds) {
    for (const char* part : {"entry", "exit"}) {
      same += "motif." + std::string(to_string(kind)) + "." + part + " = 1:0:1 2:0:1 3:0:1\n";
    }
  }
  EXPECT_TRUE(mentions(validate_schema(load_schema(same)), "motif"));
}

TEST(Schema, MotifNoteText) {
  const auto notes = parse_motif_notes("1:0:1/2 r:0:1 7:-1:2:5");
  ASSERT_EQ(notes.size(), 3u);
  EXPECT_EQ(notes[0].duration, Beat(1, 2));
  EXPECT_TRUE(notes[1].rest);
  EXPECT_EQ(notes[2].octave, -1);
  EXPECT_EQ(notes[2].harmony, 5);
  EXPECT_EQ(format_motif_notes(notes), "1:0:1/2 r:0:1 7:-1:2:5");
  EXPECT_THROW(parse_motif_notes("1:0"), std::invalid_argument);
  EXPECT_THROW(parse_motif_notes("r:0:1:3"), std::invalid_argument);
}

TEST(Schema, ShippedSkinsDiffer) {
  const auto jazz = load_valid_schema(schema_file("jazz.schema"));
  const auto chorale = load_valid_schema(schema_file("chorale.schema"));
  const auto classic = default_schema();
  for (auto kind : kAllConstructKinds) {
    EXPECT_NE(jazz.timbre.at(kind), classic.timbre.at(kind));
    EXPECT_NE(chorale.timbre.at(kind), classic.timbre.at(kind));
  }
  EXPECT_EQ(jazz.scale_for(ConstructKind::ForTo).name(), motif::ScaleName::TenNoteBlues);
  EXPECT_EQ(chorale.tonic, 7);
}
