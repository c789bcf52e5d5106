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

// Helpers shared by the unit tests and the acceptance binary.

#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "caitlin/interp.hpp"
#include "caitlin/lang.hpp"
#include "caitlin/midi.hpp"
#include "caitlin/schema.hpp"
#include "caitlin/score.hpp"
#include "caitlin/trace.hpp"

namespace caitlin::fixtures {

/// The FOR...TO loop of the classic figure, with a Writeln body.
extern const char* const kForProgram;
/// The CASE...ELSE lookup: input 0 matches the third arm, 5 matches none.
extern const char* const kCaseProgram;

struct Pipeline {
  interp::Execution execution;
  score::Score score;
  midi::Bytes midi;
};

Pipeline run_pipeline(const std::string& source, const std::string& input,
                      const schema::AuralizationSchema& schema = schema::default_schema(),
                      interp::RunOptions options = {});

/// Decoded note-on events on one channel, in tick order.
std::vector<midi::MidiEvent> note_ons(const midi::DecodedSmf& smf, int channel);

/// Groups simultaneous note-ons on a channel and returns the groups of
/// exactly three keys.
std::vector<std::pair<std::uint64_t, std::vector<int>>> chords(const midi::DecodedSmf& smf,
                                                               int channel);

/// A random terminating program built from all eight constructs, reading
/// two integers. Loops are guarded by counters the body never assigns.
std::string random_program(std::mt19937_64& rng);

/// Input text for random_program.
std::string random_input(std::mt19937_64& rng);

}  // namespace caitlin::fixtures
