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

#include "caitlin/midi.hpp"
#include "support.hpp"

using namespace caitlin;
using namespace caitlin::midi;
using score::ScoreEvent;
using score::ScoreEventKind;

namespace {

ScoreEvent note(int channel, Beat start, Beat duration, int key, int velocity = 100) {
  ScoreEvent e;
  e.kind = channel == 9 ? ScoreEventKind::Percussion : ScoreEventKind::Note;
  e.channel = channel;
  e.start = start;
  e.duration = duration;
  e.key = key;
  e.velocity = velocity;
  return e;
}

ScoreEvent tempo(int bpm) {
  ScoreEvent e;
  e.kind = ScoreEventKind::Tempo;
  e.bpm = bpm;
  return e;
}

Bytes header(int tracks, int division) {
  return {'M', 'T', 'h', 'd', 0, 0, 0, 6, 0, 1, 0, static_cast<std::uint8_t>(tracks),
          static_cast<std::uint8_t>(division >> 8), static_cast<std::uint8_t>(division & 0xFF)};
}

Bytes track(const Bytes& body) {
  Bytes out = {'M', 'T', 'r', 'k', 0, 0, 0, static_cast<std::uint8_t>(body.size())};
  out.insert(out.end(), body.begin(), body.end());
  return out;
}

Bytes concat(std::initializer_list<Bytes> parts) {
  Bytes out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

}  // namespace

TEST(Varlen, StandardExamples) {
  const std::vector<std::pair<std::uint32_t, Bytes>> cases = {
      {0x00, {0x00}},
      {0x40, {0x40}},
      {0x7F, {0x7F}},
      {0x80, {0x81, 0x00}},
      {0x2000, {0xC0, 0x00}},
      {0x3FFF, {0xFF, 0x7F}},
      {0x4000, {0x81, 0x80, 0x00}},
      {0x100000, {0xC0, 0x80, 0x00}},
      {0x1FFFFF, {0xFF, 0xFF, 0x7F}},
      {0x200000, {0x81, 0x80, 0x80, 0x00}},
      {0x08000000, {0xC0, 0x80, 0x80, 0x00}},
      {0x0FFFFFFF, {0xFF, 0xFF, 0xFF, 0x7F}},
  };
  for (const auto& [value, bytes] : cases) {
    EXPECT_EQ(encode_varlen(value), bytes) << value;
    std::size_t pos = 0;
    EXPECT_EQ(decode_varlen(bytes, pos), value);
    EXPECT_EQ(pos, bytes.size());
  }
  EXPECT_THROW(encode_varlen(0x10000000), MidiError);
  std::size_t pos = 0;
  EXPECT_THROW(decode_varlen(Bytes{0x81}, pos), DecodeError);
  pos = 0;
  EXPECT_THROW(decode_varlen(Bytes{0x81, 0x81, 0x81, 0x81, 0x01}, pos), DecodeError);
}

TEST(Smf, ExactBytesForOneNote) {
  score::Score s;
  s.events = {tempo(120), note(0, 0, 1, 60)};
  ScoreEvent program;
  program.kind = ScoreEventKind::ProgramChange;
  program.channel = 0;
  program.program = 5;
  s.events.insert(s.events.begin() + 1, program);
  const auto expected = concat({header(2, 480),
                                track({0x00, 0xFF, 0x51, 0x03, 0x07, 0xA1, 0x20, 0x00, 0xFF, 0x2F, 0x00}),
                                track({0x00, 0xC0, 0x05, 0x00, 0x90, 60, 100, 0x83, 0x60, 0x80, 60, 0x00,
                                       0x00, 0xFF, 0x2F, 0x00})});
  EXPECT_EQ(encode_smf(s), expected);
}

TEST(Smf, TracksPerChannelAscending) {
  score::Score s;
  s.events = {tempo(100), note(9, 0, 1, 81), note(1, 0, 1, 64), note(0, 2, 1, 60)};
  const auto smf = decode_smf(encode_smf(s));
  EXPECT_EQ(smf.format, 1);
  EXPECT_EQ(smf.tracks, 4);
  std::vector<std::pair<int, int>> track_channel;
  for (const auto& e : smf.events) {
    if (e.type == MidiEventType::NoteOn) track_channel.emplace_back(e.track, e.channel);
  }
  EXPECT_EQ(track_channel, (std::vector<std::pair<int, int>>{{1, 0}, {2, 1}, {3, 9}}));
  EXPECT_EQ(smf.events.front().type, MidiEventType::Tempo);
  EXPECT_EQ(smf.events.front().tempo_us, 600000u);
}

TEST(Smf, TicksRoundHalfUpAndNotesLastAtLeastOneTick) {
  score::Score s;
  s.events = {tempo(120), note(0, Beat(1, 960), Beat(1, 100000), 60), note(0, Beat(1, 3), Beat(1, 3), 62)};
  const auto smf = decode_smf(encode_smf(s));
  std::vector<std::tuple<std::uint64_t, MidiEventType, int>> timeline;
  for (const auto& e : smf.events) {
    if (e.track == 1) timeline.emplace_back(e.tick, e.type, e.data1);
  }
  EXPECT_EQ(timeline, (std::vector<std::tuple<std::uint64_t, MidiEventType, int>>{
                          {1, MidiEventType::NoteOn, 60},
                          {2, MidiEventType::NoteOff, 60},
                          {160, MidiEventType::NoteOn, 62},
                          {320, MidiEventType::NoteOff, 62}}));
}

TEST(Smf, NoteOffPrecedesNoteOnAtTheSameTick) {
  score::Score s;
  s.events = {tempo(120), note(0, 0, 1, 60), note(0, 1, 1, 60)};
  const auto smf = decode_smf(encode_smf(s));
  std::vector<MidiEventType> types;
  for (const auto& e : smf.events) {
    if (e.track == 1) types.push_back(e.type);
  }
  EXPECT_EQ(types, (std::vector{MidiEventType::NoteOn, MidiEventType::NoteOff, MidiEventType::NoteOn,
                                MidiEventType::NoteOff}));
}

TEST(Smf, RejectsOutOfRangeValues) {
  score::Score s;
  s.events = {tempo(120), note(0, 0, 1, 128)};
  EXPECT_THROW(encode_smf(s), MidiError);
  s.events = {tempo(120), note(0, 0, 1, 60, 0)};
  EXPECT_THROW(encode_smf(s), MidiError);
  s.events = {tempo(120), note(0, Beat(600000), 1, 60)};
  EXPECT_THROW(encode_smf(s), MidiError);
  s.events = {tempo(0)};
  EXPECT_THROW(encode_smf(s), MidiError);
}

TEST(Decode, RunningStatusAndZeroVelocity) {
  const auto bytes = concat({header(1, 96), track({0x00, 0x91, 60, 90, 0x10, 62, 80, 0x10, 60, 0x00, 0x00,
                                                   0xFF, 0x01, 0x02, 'h', 'i', 0x00, 0xC1, 7, 0x00,
                                                   0xFF, 0x2F, 0x00})});
  const auto smf = decode_smf(bytes);
  ASSERT_EQ(smf.events.size(), 5u);
  EXPECT_EQ(smf.division, 96);
  EXPECT_EQ(smf.events[1].type, MidiEventType::NoteOn);
  EXPECT_EQ(smf.events[1].tick, 16u);
  EXPECT_EQ(smf.events[1].channel, 1);
  EXPECT_EQ(smf.events[2].type, MidiEventType::NoteOff);
  EXPECT_EQ(smf.events[2].tick, 32u);
  EXPECT_EQ(smf.events[3].type, MidiEventType::Other);
  EXPECT_EQ(smf.events[4].type, MidiEventType::ProgramChange);
  EXPECT_EQ(smf.events[4].data1, 7);
}

TEST(Decode, Errors) {
  EXPECT_THROW(decode_smf(Bytes{'M', 'T'}), DecodeError);
  auto bad_tag = concat({header(1, 96), track({0x00, 0xFF, 0x2F, 0x00})});
  bad_tag[0] = 'X';
  EXPECT_THROW(decode_smf(bad_tag), DecodeError);
  EXPECT_THROW(decode_smf(header(1, 96)), DecodeError);
  auto cut = concat({header(1, 96), track({0x00, 0x90, 60, 90, 0x00, 0xFF, 0x2F, 0x00})});
  cut.resize(cut.size() - 3);
  EXPECT_THROW(decode_smf(cut), DecodeError);
  EXPECT_THROW(decode_smf(concat({header(1, 96), track({0x00, 60, 90})})), DecodeError);
  EXPECT_THROW(decode_smf(concat({header(1, 96), track({0x00, 0x90, 60, 90})})), DecodeError);
}

TEST(Smf, PipelineOutputDecodes) {
  const auto p = fixtures::run_pipeline(fixtures::kCaseProgram, "1");
  const auto smf = decode_smf(p.midi);
  std::size_t on = 0, off = 0;
  for (const auto& e : smf.events) {
    on += e.type == MidiEventType::NoteOn;
    off += e.type == MidiEventType::NoteOff;
  }
  const auto notes = std::count_if(p.score.events.begin(), p.score.events.end(), [](const auto& e) {
    return e.kind == ScoreEventKind::Note || e.kind == ScoreEventKind::Percussion;
  });
  EXPECT_EQ(on, static_cast<std::size_t>(notes));
  EXPECT_EQ(off, on);
}
