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

// Scales, motifs and triads: the tonal vocabulary the auralizer draws on.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "caitlin/common.hpp"
#include "caitlin/construct_kind.hpp"

namespace caitlin::motif {

enum class ScaleName { Major, NaturalMinor, TenNoteBlues };
enum class Mode { Major, Minor };
enum class Inversion { Root, First, Second };

std::string_view to_string(ScaleName name);
std::string_view to_string(Mode mode);
std::string_view to_string(Inversion inversion);
std::optional<ScaleName> scale_name_from_string(std::string_view text);
std::optional<Mode> mode_from_string(std::string_view text);
std::optional<Inversion> inversion_from_string(std::string_view text);

/// Semitone offsets from the tonic, strictly increasing within 0..11.
std::span<const int> scale_offsets(ScaleName name);

class Scale {
 public:
  Scale(ScaleName name, int tonic);

  ScaleName name() const { return name_; }
  int tonic() const { return tonic_; }
  std::span<const int> offsets() const { return scale_offsets(name_); }
  int size() const { return static_cast<int>(offsets().size()); }
  bool diatonic() const { return size() == 7; }

  bool contains_pitch_class(int pitch_class) const;
  /// Pitch classes (0..11) of the scale members.
  std::vector<int> pitch_classes() const;

  /// The scale used for a realization in `mode`. Major keeps the scale; minor
  /// substitutes the natural minor on the same tonic for diatonic scales.
  /// The ten-note blues scale already carries both thirds and is returned
  /// unchanged.
  Scale in_mode(Mode mode) const;

  friend bool operator==(const Scale&, const Scale&) = default;

 private:
  ScaleName name_;
  int tonic_;
};

/// Lowest MIDI key at or above `register_key` whose pitch class is `pitch_class`.
int anchor_key(int pitch_class, int register_key);

struct MotifNote {
  int degree = 1;  // 1-based scale degree; ignored for rests
  int octave = 0;
  Beat duration = 1;
  bool rest = false;
  // Optional second voice: a degree sounding with this note, voiced below it.
  std::optional<int> harmony;

  friend bool operator==(const MotifNote&, const MotifNote&) = default;
};

struct MotifSpec {
  ConstructFamily family = ConstructFamily::Iteration;
  ConstructKind construct = ConstructKind::While;
  std::vector<MotifNote> notes;

  Beat total_duration() const;
  friend bool operator==(const MotifSpec&, const MotifSpec&) = default;
};

/// Number of leading notes that every motif of a family shares.
inline constexpr std::size_t kFamilySignatureLength = 3;

struct Note {
  int pitch = 60;
  int velocity = 96;
  Beat start = 0;
  Beat duration = 1;

  friend bool operator==(const Note&, const Note&) = default;
};

class MotifError : public Error {
 public:
  using Error::Error;
};

/// Key number for a (degree, octave) in the given scale, anchored at the
/// scale's tonic at or above `register_key`. Throws MotifError when the
/// degree is outside the scale or the key leaves 0..127.
int degree_to_key(const Scale& scale, int degree, int octave, int register_key);

/// Places a motif on the timeline. Rests advance time without a note.
std::vector<Note> realize_motif(const MotifSpec& spec, const Scale& scale, Mode mode,
                                int register_key, Beat start, int velocity = 96);

/// A non-empty set of MIDI keys, kept sorted.
class PitchSet {
 public:
  explicit PitchSet(std::vector<int> keys);
  PitchSet(std::initializer_list<int> keys) : PitchSet(std::vector<int>(keys)) {}

  const std::vector<int>& keys() const { return keys_; }
  int lowest() const { return keys_.front(); }
  std::size_t size() const { return keys_.size(); }

  friend bool operator==(const PitchSet&, const PitchSet&) = default;

 private:
  std::vector<int> keys_;
};

/// Root-position intervals {0,4,7} or {0,3,7} above the lowest `tonic` key at
/// or above `register_key`, with the lowest members raised an octave for
/// each inversion step.
PitchSet build_triad(int tonic_pitch_class, Mode quality, Inversion inversion,
                     int register_key);

/// Identifies a major or minor triad in any voicing from its pitch classes.
struct TriadShape {
  int root_pitch_class;
  Mode quality;
};
std::optional<TriadShape> classify_triad(const PitchSet& chord);

/// Lowers the mediant of a major triad by a semitone, keeping the voicing.
/// Throws MotifError when the chord is not a major triad.
PitchSet flatten_mediant(const PitchSet& major_triad);

/// Equal temperament, A4 (key 69) = 440 Hz.
double pitch_to_frequency(int key);

/// Maps `value` in [lo, hi] affinely onto the two octaves of scale members
/// starting at the tonic anchored at `register_key`, snapping to the nearest
/// member (ties go down). Monotone non-decreasing in value.
int quantize_to_scale(std::int64_t value, std::int64_t lo, std::int64_t hi,
                      const Scale& scale, int register_key);

}  // namespace caitlin::motif
