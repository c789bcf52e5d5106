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

#include "caitlin/midi.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

namespace caitlin::midi {
namespace {

std::uint64_t to_ticks(const Beat& beat, int ppq) {
  if (beat < 0) throw MidiError("negative beat " + format_beat(beat));
  const Beat scaled = beat * Beat(ppq);
  // Half up.
  const auto n = scaled.numerator();
  const auto d = scaled.denominator();
  return static_cast<std::uint64_t>((2 * n + d) / (2 * d));
}

void put_u16(Bytes& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

void put_u32(Bytes& out, std::uint32_t v) {
  for (int shift = 24; shift >= 0; shift -= 8) out.push_back(static_cast<std::uint8_t>(v >> shift));
}

void put_chunk(Bytes& out, const char* tag, const Bytes& body) {
  out.insert(out.end(), tag, tag + 4);
  put_u32(out, static_cast<std::uint32_t>(body.size()));
  out.insert(out.end(), body.begin(), body.end());
}

struct Pending {
  std::uint64_t tick;
  int order;  // NoteOff 0, ProgramChange 1, NoteOn 2
  std::size_t index;
  Bytes message;
};

Bytes track_body(std::vector<Pending> events) {
  std::stable_sort(events.begin(), events.end(), [](const Pending& a, const Pending& b) {
    return std::tie(a.tick, a.order, a.index) < std::tie(b.tick, b.order, b.index);
  });
  Bytes body;
  std::uint64_t last = 0;
  for (const auto& e : events) {
    if (e.tick > kMaxVarlen) throw MidiError("tick " + std::to_string(e.tick) + " out of range");
    const auto delta = encode_varlen(static_cast<std::uint32_t>(e.tick - last));
    body.insert(body.end(), delta.begin(), delta.end());
    body.insert(body.end(), e.message.begin(), e.message.end());
    last = e.tick;
  }
  body.insert(body.end(), {0x00, 0xFF, 0x2F, 0x00});
  return body;
}

}  // namespace

Bytes encode_varlen(std::uint32_t value) {
  if (value > kMaxVarlen) throw MidiError("varlen value out of range");
  Bytes out{static_cast<std::uint8_t>(value & 0x7F)};
  value >>= 7;
  while (value != 0) {
    out.insert(out.begin(), static_cast<std::uint8_t>(0x80 | (value & 0x7F)));
    value >>= 7;
  }
  return out;
}

std::uint32_t decode_varlen(const Bytes& bytes, std::size_t& pos) {
  std::uint32_t value = 0;
  for (int i = 0; i < 4; ++i) {
    if (pos >= bytes.size()) throw DecodeError("truncated variable-length quantity");
    const auto b = bytes[pos++];
    value = (value << 7) | (b & 0x7F);
    if ((b & 0x80) == 0) return value;
  }
  throw DecodeError("variable-length quantity longer than 4 bytes");
}

Bytes encode_smf(const score::Score& score) {
  if (score.ppq <= 0 || score.ppq > 0x7FFF) throw MidiError("ppq out of range");
  std::vector<Pending> tempo_track;
  std::map<int, std::vector<Pending>> tracks;
  std::size_t index = 0;
  for (const auto& e : score.events) {
    ++index;
    const auto tick = to_ticks(e.start, score.ppq);
    const auto ch = static_cast<std::uint8_t>(e.channel & 0x0F);
    switch (e.kind) {
      case score::ScoreEventKind::Tempo: {
        if (e.bpm <= 0) throw MidiError("tempo must be positive");
        const auto us = static_cast<std::uint32_t>((60000000LL + e.bpm / 2) / e.bpm);
        tempo_track.push_back({tick, 1, index,
                               {0xFF, 0x51, 0x03, static_cast<std::uint8_t>(us >> 16),
                                static_cast<std::uint8_t>(us >> 8), static_cast<std::uint8_t>(us)}});
        break;
      }
      case score::ScoreEventKind::ProgramChange:
        if (e.program < 0 || e.program > 127) throw MidiError("program out of range");
        tracks[e.channel].push_back(
            {tick, 1, index, {static_cast<std::uint8_t>(0xC0 | ch), static_cast<std::uint8_t>(e.program)}});
        break;
      case score::ScoreEventKind::Percussion:
      case score::ScoreEventKind::Note: {
        if (e.key < 0 || e.key > 127) throw MidiError("key out of range");
        if (e.velocity < 1 || e.velocity > 127) throw MidiError("velocity out of range");
        const auto off = std::max(tick + 1, to_ticks(e.start + e.duration, score.ppq));
        const auto key = static_cast<std::uint8_t>(e.key);
        auto& track = tracks[e.channel];
        track.push_back({tick, 2, index,
                         {static_cast<std::uint8_t>(0x90 | ch), key,
                          static_cast<std::uint8_t>(e.velocity)}});
        track.push_back({off, 0, index, {static_cast<std::uint8_t>(0x80 | ch), key, 0x00}});
        break;
      }
    }
  }

  Bytes out;
  Bytes header;
  put_u16(header, 1);
  put_u16(header, static_cast<std::uint32_t>(1 + tracks.size()));
  put_u16(header, static_cast<std::uint32_t>(score.ppq));
  put_chunk(out, "MThd", header);
  put_chunk(out, "MTrk", track_body(std::move(tempo_track)));
  for (auto& [channel, events] : tracks) put_chunk(out, "MTrk", track_body(std::move(events)));
  return out;
}

namespace {

class Reader {
 public:
  Reader(const Bytes& bytes, std::size_t begin, std::size_t end)
      : bytes_(bytes), pos_(begin), end_(end) {}

  bool done() const { return pos_ >= end_; }
  std::size_t pos() const { return pos_; }

  std::uint8_t u8() {
    if (pos_ >= end_) throw DecodeError("truncated data at byte " + std::to_string(pos_));
    return bytes_[pos_++];
  }
  std::uint8_t peek() {
    if (pos_ >= end_) throw DecodeError("truncated data at byte " + std::to_string(pos_));
    return bytes_[pos_];
  }
  std::uint32_t u16() {
    const std::uint32_t hi = u8();
    return (hi << 8) | u8();
  }
  std::uint32_t u32() {
    const std::uint32_t hi = u16();
    return (hi << 16) | u16();
  }
  std::uint32_t varlen() {
    std::uint32_t value = 0;
    for (int i = 0; i < 4; ++i) {
      const auto b = u8();
      value = (value << 7) | (b & 0x7F);
      if ((b & 0x80) == 0) return value;
    }
    throw DecodeError("variable-length quantity longer than 4 bytes");
  }
  void skip(std::size_t n) {
    if (end_ - pos_ < n) throw DecodeError("truncated data at byte " + std::to_string(pos_));
    pos_ += n;
  }

 private:
  const Bytes& bytes_;
  std::size_t pos_;
  std::size_t end_;
};

std::string tag_at(const Bytes& bytes, std::size_t pos) {
  return std::string(bytes.begin() + static_cast<std::ptrdiff_t>(pos),
                     bytes.begin() + static_cast<std::ptrdiff_t>(pos + 4));
}

void decode_track(Reader& r, int track, std::vector<MidiEvent>& out) {
  std::uint64_t tick = 0;
  int status = -1;
  while (true) {
    if (r.done()) throw DecodeError("track " + std::to_string(track) + " has no end-of-track");
    tick += r.varlen();
    const auto first = r.peek();
    if (first == 0xFF) {
      r.u8();
      const auto type = r.u8();
      const auto length = r.varlen();
      status = -1;
      if (type == 0x2F) {
        r.skip(length);
        if (!r.done()) throw DecodeError("data after end-of-track in track " + std::to_string(track));
        return;
      }
      MidiEvent e{tick, track, MidiEventType::Other};
      if (type == 0x51 && length == 3) {
        e.type = MidiEventType::Tempo;
        e.tempo_us = (static_cast<std::uint32_t>(r.u8()) << 16);
        e.tempo_us |= static_cast<std::uint32_t>(r.u8()) << 8;
        e.tempo_us |= r.u8();
      } else {
        r.skip(length);
      }
      out.push_back(e);
      continue;
    }
    if (first == 0xF0 || first == 0xF7) {
      r.u8();
      r.skip(r.varlen());
      status = -1;
      out.push_back({tick, track, MidiEventType::Other});
      continue;
    }
    if (first & 0x80) {
      status = r.u8();
    } else if (status < 0) {
      throw DecodeError("data byte without running status in track " + std::to_string(track));
    }
    const int high = status & 0xF0;
    MidiEvent e{tick, track, MidiEventType::Other, status & 0x0F};
    const bool one_byte = high == 0xC0 || high == 0xD0;
    e.data1 = r.u8() & 0x7F;
    if (!one_byte) e.data2 = r.u8() & 0x7F;
    if (high == 0x90) {
      e.type = e.data2 == 0 ? MidiEventType::NoteOff : MidiEventType::NoteOn;
    } else if (high == 0x80) {
      e.type = MidiEventType::NoteOff;
    } else if (high == 0xC0) {
      e.type = MidiEventType::ProgramChange;
    }
    out.push_back(e);
  }
}

}  // namespace

DecodedSmf decode_smf(const Bytes& bytes) {
  if (bytes.size() < 14) throw DecodeError("truncated header");
  if (tag_at(bytes, 0) != "MThd") throw DecodeError("malformed chunk: missing MThd");
  Reader head(bytes, 4, bytes.size());
  const auto header_length = head.u32();
  if (header_length < 6) throw DecodeError("malformed chunk: header too short");
  DecodedSmf smf;
  smf.format = static_cast<int>(head.u16());
  const auto declared = head.u16();
  smf.division = static_cast<int>(head.u16());
  std::size_t pos = 8 + header_length;
  for (std::uint32_t t = 0; t < declared; ++t) {
    if (bytes.size() < pos + 8) throw DecodeError("truncated file: missing track " + std::to_string(t));
    if (tag_at(bytes, pos) != "MTrk") throw DecodeError("malformed chunk: expected MTrk");
    Reader len(bytes, pos + 4, pos + 8);
    const auto length = len.u32();
    if (bytes.size() - (pos + 8) < length) {
      throw DecodeError("truncated file: track " + std::to_string(t) + " is cut short");
    }
    Reader r(bytes, pos + 8, pos + 8 + length);
    decode_track(r, static_cast<int>(t), smf.events);
    pos += 8 + length;
    ++smf.tracks;
  }
  return smf;
}

}  // namespace caitlin::midi
