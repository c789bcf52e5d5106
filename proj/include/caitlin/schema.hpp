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

// Auralization schemas: the presentation layer that binds constructs to
// timbres, motifs, scales, percussion and tempo.
//
// Schema files are UTF-8, one `section.key = value` setting per line, with
// `#` comment lines. Any setting left out inherits the default schema:
//
//   general.name = CAITLIN classic
//   general.tempo = 120
//   timbre.FOR_TO = 0
//   percussion.caseTest = 56
//   scale.FOR_TO = tenNoteBlues
//   motif.FOR_TO.entry = 1:0:1/2 3:0:1/2 5:0:1 6:0:1/2 7:0:1/2 1:1:2
//   durations.iteration = 1
//
// Motif notes are `degree:octave:duration[:harmony]`, rests `r:0:duration`.

#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "caitlin/common.hpp"
#include "caitlin/construct_kind.hpp"
#include "caitlin/motif.hpp"

namespace caitlin::schema {

enum class PointOfInterest {
  IterationPrefix,
  IterationSuffix,
  CaseTest,
  FinalIteration,
  SelectionPrefix,
  Elision,
  ConditionTest,
};

inline constexpr std::array<PointOfInterest, 7> kAllPointsOfInterest = {
    PointOfInterest::IterationPrefix, PointOfInterest::IterationSuffix,
    PointOfInterest::CaseTest,        PointOfInterest::FinalIteration,
    PointOfInterest::SelectionPrefix, PointOfInterest::Elision,
    PointOfInterest::ConditionTest};

std::string_view to_string(PointOfInterest point);

/// GM jingle bell, the stand-in for a sleighbell.
inline constexpr int kJingleBell = 83;
/// GM1 tambourine, used for kJingleBell when gm1_fallback is set.
inline constexpr int kTambourine = 54;

struct MotifPair {
  motif::MotifSpec entry;
  motif::MotifSpec exit;

  friend bool operator==(const MotifPair&, const MotifPair&) = default;
};

/// Beats allotted to each rendered event.
struct Durations {
  Beat prefix = 4;
  Beat iteration = 1;
  Beat condition = 1;
  Beat case_test = 1;
  Beat else_chord = 1;
  Beat subexpr = Beat(1, 2);
  Beat elision = 1;
  Beat hit = Beat(1, 2);  // sounding length of a percussion hit

  friend bool operator==(const Durations&, const Durations&) = default;
};

struct AuralizationSchema {
  std::string name;
  int tempo_bpm = 120;
  int tonic = 0;
  int register_key = 60;
  motif::ScaleName scale = motif::ScaleName::Major;
  // Per-construct overrides, permitted for the FOR loops only.
  std::map<ConstructKind, motif::ScaleName> construct_scales;
  motif::Mode true_mode = motif::Mode::Major;
  motif::Mode false_mode = motif::Mode::Minor;
  motif::Inversion triad_inversion = motif::Inversion::First;
  // Iterations past this many render as one elision marker plus the final tick.
  int max_iterations = 64;
  std::map<ConstructKind, int> timbre;
  int subexpr_timbre = 11;
  std::map<PointOfInterest, std::optional<int>> percussion;
  bool gm1_fallback = false;
  std::map<ConstructKind, MotifPair> motifs;
  Durations durations;

  motif::Scale scale_for(ConstructKind kind) const;
  /// Effective key for a point of interest, applying the GM1 fallback.
  std::optional<int> percussion_key(PointOfInterest point) const;

  friend bool operator==(const AuralizationSchema&, const AuralizationSchema&) = default;
};

/// The fixed classic skin: open triangle prefix, mute triangle suffix,
/// cowbell case tests, jingle-bell final iteration, 120 BPM, major scale.
AuralizationSchema default_schema();

class SchemaError : public PositionedError {
 public:
  using PositionedError::PositionedError;
};

/// Parses schema text over the default schema. Throws SchemaError on syntax
/// or value errors; does not run validate_schema.
AuralizationSchema load_schema(std::string_view text);

/// Canonical text; load_schema(save_schema(s)) == s.
std::string save_schema(const AuralizationSchema& schema);

struct Diagnostic {
  std::string field;
  std::string message;
};

std::string to_string(const Diagnostic& diagnostic);

/// Returns an empty list iff the schema can render every trace: ranges,
/// complete bindings, playable motifs and the family-prefix property.
std::vector<Diagnostic> validate_schema(const AuralizationSchema& schema);

class InvalidSchema : public Error {
 public:
  explicit InvalidSchema(std::vector<Diagnostic> diagnostics);
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

/// load_schema followed by validate_schema; throws InvalidSchema.
AuralizationSchema load_valid_schema(std::string_view text);

/// Parses one motif note list, e.g. "1:0:1/2 3:0:1/2 5:0:1".
std::vector<motif::MotifNote> parse_motif_notes(std::string_view text);
std::string format_motif_notes(const std::vector<motif::MotifNote>& notes);

}  // namespace caitlin::schema
