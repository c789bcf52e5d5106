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

// Turns a control-flow trace into an absolute-time score under a schema.
//
// Layout is strictly sequential in trace order. Per construct:
//
//   iteration:  prefix hit | entry motif | one note per tick (final tick
//               doubled by the finalIteration hit) | exit motif + suffix hit
//   selection:  prefix hit | entry motif | decision triads and case-test
//               hits | exit motif in the true mode if the construct matched,
//               the false mode otherwise
//
// Channels: iteration constructs 0, selections 1, subexpression outcomes 2,
// percussion 9.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "caitlin/common.hpp"
#include "caitlin/motif.hpp"
#include "caitlin/schema.hpp"
#include "caitlin/trace.hpp"

namespace caitlin::score {

inline constexpr int kIterationChannel = 0;
inline constexpr int kSelectionChannel = 1;
inline constexpr int kSubexprChannel = 2;
inline constexpr int kPercussionChannel = 9;
inline constexpr int kNoteVelocity = 96;
inline constexpr int kPercussionVelocity = 112;

// Declaration order is the tie-break order for simultaneous events.
enum class ScoreEventKind { Tempo, ProgramChange, Percussion, Note };

std::string_view to_string(ScoreEventKind kind);

/// What a score event stands for; carried for diffing, not encoded in MIDI.
enum class Role {
  Setup,
  Prefix,
  Entry,
  Condition,
  Subexpr,
  Iteration,
  FinalMarker,
  Elision,
  CaseTest,
  CaseMatch,
  ElseChord,
  Exit,
  Suffix,
};

std::string_view to_string(Role role);

struct ScoreEvent {
  ScoreEventKind kind = ScoreEventKind::Note;
  int channel = 0;
  Beat start = 0;
  Beat duration = 0;
  int key = 0;  // note pitch or percussion key
  int velocity = 0;
  int program = 0;  // ProgramChange only
  int bpm = 0;      // Tempo only
  Role role = Role::Setup;
  std::optional<motif::Mode> mode;  // for chords and motifs rendered in a mode
  std::int64_t seq = -1;            // trace event that produced it

  friend bool operator==(const ScoreEvent&, const ScoreEvent&) = default;
};

struct Score {
  std::vector<ScoreEvent> events;
  int ppq = 480;
  std::map<std::string, int> track_plan;

  friend bool operator==(const Score&, const Score&) = default;
};

/// Sorts by start beat, then channel, then kind order; stable otherwise.
void sort_events(std::vector<ScoreEvent>& events);

class RenderError : public Error {
 public:
  using Error::Error;
};

/// Renders a trace. The schema should pass validate_schema(); a missing
/// binding for an event in the trace raises RenderError.
Score auralize(const trace::Trace& trace, const schema::AuralizationSchema& schema);

/// SHA-256 over the canonical event list.
std::string score_digest(const Score& score);

/// Canonical one-line-per-event text, the digest input.
std::string canonical_text(const Score& score);

}  // namespace caitlin::score
