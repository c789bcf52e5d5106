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

#include <cmath>
#include <set>

#include "caitlin/motif.hpp"

#include <map>

using namespace caitlin;
using namespace caitlin::motif;

TEST(Scale, OffsetsAndMembership) {
  const Scale c_major(ScaleName::Major, 0);
  EXPECT_EQ(c_major.pitch_classes(), (std::vector<int>{0, 2, 4, 5, 7, 9, 11}));
  const Scale g_major(ScaleName::Major, 7);
  EXPECT_TRUE(g_major.contains_pitch_class(6));
  EXPECT_FALSE(g_major.contains_pitch_class(5));
  EXPECT_EQ(Scale(ScaleName::TenNoteBlues, 0).size(), 10);
  EXPECT_TRUE(c_major.diatonic());
}

TEST(Scale, MinorModeSubstitutesNaturalMinor) {
  const Scale d_major(ScaleName::Major, 2);
  EXPECT_EQ(d_major.in_mode(Mode::Major), d_major);
  EXPECT_EQ(d_major.in_mode(Mode::Minor), Scale(ScaleName::NaturalMinor, 2));
  const Scale blues(ScaleName::TenNoteBlues, 2);
  EXPECT_EQ(blues.in_mode(Mode::Minor), blues);
}

TEST(Scale, NamesRoundTrip) {
  for (auto n : {ScaleName::Major, ScaleName::NaturalMinor, ScaleName::TenNoteBlues}) {
    EXPECT_EQ(scale_name_from_string(to_string(n)), n);
  }
  for (auto i : {Inversion::Root, Inversion::First, Inversion::Second}) {
    EXPECT_EQ(inversion_from_string(to_string(i)), i);
  }
  EXPECT_EQ(mode_from_string("minor"), Mode::Minor);
  EXPECT_EQ(mode_from_string("dorian"), std::nullopt);
}

TEST(Motif, AnchorAndDegrees) {
  EXPECT_EQ(anchor_key(0, 60), 60);
  EXPECT_EQ(anchor_key(7, 60), 67);
  EXPECT_EQ(anchor_key(0, 61), 72);
  const Scale c(ScaleName::Major, 0);
  EXPECT_EQ(degree_to_key(c, 1, 0, 60), 60);
  EXPECT_EQ(degree_to_key(c, 3, 0, 60), 64);
  EXPECT_EQ(degree_to_key(c, 1, 1, 60), 72);
  EXPECT_EQ(degree_to_key(c, 7, -1, 60), 59);
  EXPECT_THROW(degree_to_key(c, 8, 0, 60), MotifError);
  EXPECT_THROW(degree_to_key(c, 1, 6, 60), MotifError);
}

TEST(Motif, RealizeInBothModes) {
  MotifSpec spec;
  spec.notes.resize(4);
  spec.notes[1] = {3, 0, Beat(1, 2), false, std::nullopt};
  spec.notes[2].rest = true;
  spec.notes[3] = {5, 0, 1, false, 3};
  EXPECT_EQ(spec.total_duration(), Beat(7, 2));
  const Scale c(ScaleName::Major, 0);
  const auto major = realize_motif(spec, c, Mode::Major, 60, 10);
  ASSERT_EQ(major.size(), 4u);
  EXPECT_EQ(major[0], (Note{60, 96, 10, 1}));
  EXPECT_EQ(major[1].pitch, 64);
  EXPECT_EQ(major[2].start, Beat(25, 2));  // the rest advanced time
  EXPECT_EQ(major[2].pitch, 67);
  EXPECT_EQ(major[3].pitch, 64);  // harmony voice below
  const auto minor = realize_motif(spec, c, Mode::Minor, 60, 10);
  EXPECT_EQ(minor[1].pitch, 63);
  EXPECT_EQ(minor[3].pitch, 63);
}

// Brute force: a triad is the unique three-key set whose pitch classes are
// root, third and fifth, with the expected pitch class lowest.
TEST(Triad, BuildMatchesBruteForce) {
  for (int tonic = 0; tonic < 12; ++tonic) {
    for (auto quality : {Mode::Major, Mode::Minor}) {
      const int third = (tonic + (quality == Mode::Major ? 4 : 3)) % 12;
      const int fifth = (tonic + 7) % 12;
      const std::map<Inversion, int> bass = {
          {Inversion::Root, tonic}, {Inversion::First, third}, {Inversion::Second, fifth}};
      for (const auto& [inversion, bass_class] : bass) {
        const auto chord = build_triad(tonic, quality, inversion, 60);
        std::set<int> classes;
        for (int k : chord.keys()) classes.insert(k % 12);
        EXPECT_EQ(classes, (std::set<int>{tonic, third, fifth}));
        EXPECT_EQ(chord.lowest() % 12, bass_class);
        EXPECT_GE(chord.lowest(), 60);
        EXPECT_LT(chord.keys().back() - chord.lowest(), 12);  // close position
        const auto shape = classify_triad(chord);
        ASSERT_TRUE(shape);
        EXPECT_EQ(shape->root_pitch_class, tonic);
        EXPECT_EQ(shape->quality, quality);
      }
    }
  }
}

TEST(Triad, FlattenMediant) {
  EXPECT_EQ(flatten_mediant(PitchSet{64, 67, 72}), (PitchSet{63, 67, 72}));
  EXPECT_EQ(flatten_mediant(PitchSet{60, 64, 67, 76}), (PitchSet{60, 63, 67, 75}));
  EXPECT_THROW(flatten_mediant(PitchSet{63, 67, 72}), MotifError);
  EXPECT_THROW(flatten_mediant(PitchSet{60, 62, 64}), MotifError);
  EXPECT_EQ(classify_triad(PitchSet{60, 61, 62}), std::nullopt);
}

TEST(PitchSetTest, Validation) {
  EXPECT_THROW(PitchSet(std::vector<int>{}), MotifError);
  EXPECT_THROW((PitchSet{-1, 60}), MotifError);
  EXPECT_THROW((PitchSet{128}), MotifError);
  EXPECT_EQ((PitchSet{67, 60, 60}).keys(), (std::vector<int>{60, 67}));
}

TEST(Frequency, EqualTemperament) {
  EXPECT_DOUBLE_EQ(pitch_to_frequency(69), 440.0);
  EXPECT_DOUBLE_EQ(pitch_to_frequency(81), 880.0);
  EXPECT_NEAR(pitch_to_frequency(60), 261.6256, 1e-4);
  for (int k = 1; k < 128; ++k) {
    EXPECT_NEAR(pitch_to_frequency(k) / pitch_to_frequency(k - 1), std::pow(2.0, 1.0 / 12), 1e-12);
  }
}

// Scan every value of several ranges: results are scale members within two
// octaves, monotone, hit both ends, and agree with a floating nearest-member
// search whenever that search has no near tie.
TEST(Quantize, ScanAgainstNearestMember) {
  for (auto name : {ScaleName::Major, ScaleName::NaturalMinor, ScaleName::TenNoteBlues}) {
    for (int tonic : {0, 5, 11}) {
      const Scale scale(name, tonic);
      const int base = anchor_key(tonic, 60);
      for (auto [lo, hi] : std::vector<std::pair<long, long>>{{1, 2}, {1, 6}, {0, 100}, {-50, 7}, {3, 1000}}) {
        int previous = -1;
        for (long v = lo; v <= hi; ++v) {
          const int key = quantize_to_scale(v, lo, hi, scale, 60);
          ASSERT_TRUE(scale.contains_pitch_class(key % 12));
          ASSERT_GE(key, base);
          ASSERT_LE(key, base + 24);
          ASSERT_GE(key, previous);
          previous = key;
          const double target = base + 24.0 * static_cast<double>(v - lo) / static_cast<double>(hi - lo);
          double best = 1e9, second = 1e9;
          int best_key = -1;
          for (int k = base; k <= base + 24; ++k) {
            if (!scale.contains_pitch_class(k % 12)) continue;
            const double d = std::abs(k - target);
            if (d < best) {
              second = best;
              best = d;
              best_key = k;
            } else if (d < second) {
              second = d;
            }
          }
          if (second - best > 1e-9) ASSERT_EQ(key, best_key) << v;
          else ASSERT_LE(key, best_key + 2);
        }
        EXPECT_EQ(quantize_to_scale(lo, lo, hi, scale, 60), base);
        EXPECT_EQ(quantize_to_scale(hi, lo, hi, scale, 60), base + 24);
      }
    }
  }
}

TEST(Quantize, TiesGoDown) {
  const Scale c(ScaleName::Major, 0);
  // Halfway between C (60) and D (62) lands on 61, not in the scale.
  EXPECT_EQ(quantize_to_scale(1, 0, 24, c, 60), 60);
  EXPECT_EQ(quantize_to_scale(2, 0, 24, c, 60), 62);
}

TEST(Quantize, RejectsBadBounds) {
  const Scale c(ScaleName::Major, 0);
  EXPECT_THROW(quantize_to_scale(1, 1, 1, c, 60), MotifError);
  EXPECT_THROW(quantize_to_scale(0, 1, 5, c, 60), MotifError);
  EXPECT_THROW(quantize_to_scale(1, 0, 5, c, 110), MotifError);
  EXPECT_NO_THROW(quantize_to_scale(INT64_MAX, INT64_MIN, INT64_MAX, c, 60));
}
