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

// Standard MIDI File encoding of a score, and a small decoder for checking
// the result.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "caitlin/common.hpp"
#include "caitlin/score.hpp"

namespace caitlin::midi {

using Bytes = std::vector<std::uint8_t>;

inline constexpr std::uint32_t kMaxVarlen = 0x0FFFFFFF;

/// Big-endian base-128 with continuation bits, 1 to 4 bytes.
Bytes encode_varlen(std::uint32_t value);

class MidiError : public Error {
 public:
  using Error::Error;
};

class DecodeError : public Error {
 public:
  using Error::Error;
};

/// Reads one quantity at `pos` and advances it. Throws DecodeError on
/// truncation or a quantity longer than 4 bytes.
std::uint32_t decode_varlen(const Bytes& bytes, std::size_t& pos);

/// Format 1. Track 0 holds the tempo; then one track per used channel in
/// ascending channel order. Beats become ticks at the score's ppq, rounded
/// half up.
Bytes encode_smf(const score::Score& score);

enum class MidiEventType { NoteOn, NoteOff, ProgramChange, Tempo, Other };

struct MidiEvent {
  std::uint64_t tick = 0;
  int track = 0;
  MidiEventType type = MidiEventType::Other;
  int channel = -1;
  int data1 = 0;  // key, program
  int data2 = 0;  // velocity
  std::uint32_t tempo_us = 0;

  friend bool operator==(const MidiEvent&, const MidiEvent&) = default;
};

struct DecodedSmf {
  int format = 0;
  int division = 0;
  int tracks = 0;
  std::vector<MidiEvent> events;  // per track in file order, absolute ticks
};

/// Accepts running status and treats NoteOn with velocity 0 as NoteOff.
/// End-of-track metas are consumed, not reported.
DecodedSmf decode_smf(const Bytes& bytes);

}  // namespace caitlin::midi
