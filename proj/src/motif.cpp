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

#include "caitlin/motif.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>

namespace caitlin::motif {
namespace {

constexpr std::array<int, 7> kMajor = {0, 2, 4, 5, 7, 9, 11};
constexpr std::array<int, 7> kNaturalMinor = {0, 2, 3, 5, 7, 8, 10};
// Major scale plus the blue notes b3, b5 and b7.
constexpr std::array<int, 10> kTenNoteBlues = {0, 2, 3, 4, 5, 6, 7, 9, 10, 11};

int mod12(int v) { return ((v % 12) + 12) % 12; }

}  // namespace

std::string_view to_string(ScaleName name) {
  switch (name) {
    case ScaleName::Major: return "major";
    case ScaleName::NaturalMinor: return "naturalMinor";
    case ScaleName::TenNoteBlues: return "tenNoteBlues";
  }
  return "?";
}

std::string_view to_string(Mode mode) { return mode == Mode::Major ? "major" : "minor"; }

std::string_view to_string(Inversion inversion) {
  switch (inversion) {
    case Inversion::Root: return "root";
    case Inversion::First: return "first";
    case Inversion::Second: return "second";
  }
  return "?";
}

std::optional<ScaleName> scale_name_from_string(std::string_view text) {
  for (auto n : {ScaleName::Major, ScaleName::NaturalMinor, ScaleName::TenNoteBlues}) {
    if (to_string(n) == text) return n;
  }
  return std::nullopt;
}

std::optional<Mode> mode_from_string(std::string_view text) {
  if (text == "major") return Mode::Major;
  if (text == "minor") return Mode::Minor;
  return std::nullopt;
}

std::optional<Inversion> inversion_from_string(std::string_view text) {
  for (auto i : {Inversion::Root, Inversion::First, Inversion::Second}) {
    if (to_string(i) == text) return i;
  }
  return std::nullopt;
}

std::span<const int> scale_offsets(ScaleName name) {
  switch (name) {
    case ScaleName::Major: return kMajor;
    case ScaleName::NaturalMinor: return kNaturalMinor;
    case ScaleName::TenNoteBlues: return kTenNoteBlues;
  }
  return kMajor;
}

Scale::Scale(ScaleName name, int tonic) : name_(name), tonic_(tonic) {
  if (tonic < 0 || tonic > 11) throw MotifError("tonic pitch class must be 0..11");
}

bool Scale::contains_pitch_class(int pitch_class) const {
  const auto offs = offsets();
  return std::find(offs.begin(), offs.end(), mod12(pitch_class - tonic_)) != offs.end();
}

std::vector<int> Scale::pitch_classes() const {
  std::vector<int> out;
  for (int o : offsets()) out.push_back(mod12(tonic_ + o));
  return out;
}

Scale Scale::in_mode(Mode mode) const {
  if (mode == Mode::Minor && diatonic()) return Scale(ScaleName::NaturalMinor, tonic_);
  return *this;
}

int anchor_key(int pitch_class, int register_key) {
  return register_key + mod12(pitch_class - register_key);
}

Beat MotifSpec::total_duration() const {
  Beat total = 0;
  for (const auto& n : notes) total += n.duration;
  return total;
}

int degree_to_key(const Scale& scale, int degree, int octave, int register_key) {
  if (degree < 1 || degree > scale.size()) {
    throw MotifError("degree " + std::to_string(degree) + " outside " +
                     std::string(to_string(scale.name())) + " scale of " +
                     std::to_string(scale.size()) + " notes");
  }
  const int key = anchor_key(scale.tonic(), register_key) +
                  scale.offsets()[static_cast<std::size_t>(degree - 1)] + 12 * octave;
  if (key < 0 || key > 127) {
    throw MotifError("key " + std::to_string(key) + " outside MIDI range");
  }
  return key;
}

std::vector<Note> realize_motif(const MotifSpec& spec, const Scale& scale, Mode mode,
                                int register_key, Beat start, int velocity) {
  const Scale realized = scale.in_mode(mode);
  std::vector<Note> notes;
  Beat at = start;
  for (const auto& n : spec.notes) {
    if (n.duration <= 0) throw MotifError("motif note duration must be positive");
    if (!n.rest) {
      const int key = degree_to_key(realized, n.degree, n.octave, register_key);
      notes.push_back({key, velocity, at, n.duration});
      if (n.harmony) {
        int below = degree_to_key(realized, *n.harmony, n.octave, register_key);
        if (below >= key) below -= 12;
        if (below < 0) throw MotifError("harmony voice below MIDI range");
        notes.push_back({below, velocity, at, n.duration});
      }
    }
    at += n.duration;
  }
  return notes;
}

PitchSet::PitchSet(std::vector<int> keys) : keys_(std::move(keys)) {
  if (keys_.empty()) throw MotifError("pitch set must not be empty");
  for (int k : keys_) {
    if (k < 0 || k > 127) throw MotifError("pitch " + std::to_string(k) + " outside 0..127");
  }
  std::sort(keys_.begin(), keys_.end());
  keys_.erase(std::unique(keys_.begin(), keys_.end()), keys_.end());
}

PitchSet build_triad(int tonic_pitch_class, Mode quality, Inversion inversion,
                     int register_key) {
  const int root = anchor_key(mod12(tonic_pitch_class), register_key);
  std::array<int, 3> keys = {root, root + (quality == Mode::Major ? 4 : 3), root + 7};
  const int steps = inversion == Inversion::Root ? 0 : inversion == Inversion::First ? 1 : 2;
  for (int i = 0; i < steps; ++i) keys[static_cast<std::size_t>(i)] += 12;
  return PitchSet({keys[0], keys[1], keys[2]});
}

std::optional<TriadShape> classify_triad(const PitchSet& chord) {
  std::set<int> classes;
  for (int k : chord.keys()) classes.insert(mod12(k));
  if (classes.size() != 3) return std::nullopt;
  for (int root : classes) {
    for (auto quality : {Mode::Major, Mode::Minor}) {
      const int third = mod12(root + (quality == Mode::Major ? 4 : 3));
      if (classes.count(third) != 0 && classes.count(mod12(root + 7)) != 0) {
        return TriadShape{root, quality};
      }
    }
  }
  return std::nullopt;
}

PitchSet flatten_mediant(const PitchSet& major_triad) {
  const auto shape = classify_triad(major_triad);
  if (!shape || shape->quality != Mode::Major) {
    throw MotifError("flatten_mediant needs a major triad");
  }
  const int mediant = mod12(shape->root_pitch_class + 4);
  std::vector<int> keys = major_triad.keys();
  for (int& k : keys) {
    if (mod12(k) == mediant) --k;
  }
  return PitchSet(std::move(keys));
}

double pitch_to_frequency(int key) {
  return 440.0 * std::pow(2.0, (key - 69) / 12.0);
}

int quantize_to_scale(std::int64_t value, std::int64_t lo, std::int64_t hi,
                      const Scale& scale, int register_key) {
  if (lo >= hi) throw MotifError("quantize bounds need lo < hi");
  if (value < lo || value > hi) throw MotifError("value outside quantize bounds");
  const int base = anchor_key(scale.tonic(), register_key);
  if (base + 24 > 127) throw MotifError("quantize span exceeds MIDI range");
  const __int128 span = static_cast<__int128>(hi) - lo;
  const __int128 target = static_cast<__int128>(base) * span +
                          24 * (static_cast<__int128>(value) - lo);
  int best = base;
  __int128 best_distance = -1;
  for (int key = base; key <= base + 24; ++key) {
    if (!scale.contains_pitch_class(key)) continue;
    __int128 d = static_cast<__int128>(key) * span - target;
    if (d < 0) d = -d;
    if (best_distance < 0 || d < best_distance) {
      best = key;
      best_distance = d;
    }
  }
  return best;
}

}  // namespace caitlin::motif
