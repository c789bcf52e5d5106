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

#include "support.hpp"

#include <algorithm>

namespace caitlin::fixtures {

const char* const kForProgram = R"(PROGRAM ForLoop;
VAR counter : INTEGER;
BEGIN
  FOR counter := 1 TO 6 DO
    Writeln(counter)
END.
)";

const char* const kCaseProgram = R"(PROGRAM CaseElse;
VAR a, b : INTEGER;
BEGIN
  Readln(b);
  a := b + 3;
  CASE a OF
    1 : Writeln('Found 1');
    2 : Writeln('Found 2');
    3 : Writeln('Found 3')
  ELSE
    Writeln('Not found')
  END
END.
)";

Pipeline run_pipeline(const std::string& source, const std::string& input,
                      const schema::AuralizationSchema& schema, interp::RunOptions options) {
  Pipeline p;
  p.execution = interp::run(lang::compile(source), input, options);
  p.score = score::auralize(p.execution.trace, schema);
  p.midi = midi::encode_smf(p.score);
  return p;
}

std::vector<midi::MidiEvent> note_ons(const midi::DecodedSmf& smf, int channel) {
  std::vector<midi::MidiEvent> out;
  for (const auto& e : smf.events) {
    if (e.type == midi::MidiEventType::NoteOn && e.channel == channel) out.push_back(e);
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return a.tick < b.tick; });
  return out;
}

std::vector<std::pair<std::uint64_t, std::vector<int>>> chords(const midi::DecodedSmf& smf,
                                                               int channel) {
  std::map<std::uint64_t, std::vector<int>> at;
  for (const auto& e : note_ons(smf, channel)) at[e.tick].push_back(e.data1);
  std::vector<std::pair<std::uint64_t, std::vector<int>>> out;
  for (auto& [tick, keys] : at) {
    if (keys.size() == 3) out.emplace_back(tick, keys);
  }
  return out;
}

namespace {

class Generator {
 public:
  explicit Generator(std::mt19937_64& rng) : rng_(rng) {}

  std::string program() {
    std::string out =
        "PROGRAM Random;\n"
        "VAR a, b, c, k0, k1, k2, k3, f0, f1, f2, f3 : INTEGER;\n"
        "  p, q : BOOLEAN;\n"
        "BEGIN\n"
        "  Readln(a);\n"
        "  Readln(b);\n"
        "  c := 0;\n"
        "  p := TRUE;\n"
        "  q := FALSE";
    const int count = pick(2, 4);
    for (int i = 0; i < count; ++i) out += ";\n  " + statement(0);
    return out + "\nEND.\n";
  }

 private:
  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  std::string int_var() { return std::string(1, "abc"[pick(0, 2)]); }

  std::string int_expr() {
    switch (pick(0, 4)) {
      case 0: return int_var();
      case 1: return std::to_string(pick(0, 9));
      case 2: return int_var() + " + " + std::to_string(pick(1, 5));
      case 3: return int_var() + " - " + std::to_string(pick(1, 5));
      default: return int_var() + " MOD " + std::to_string(pick(2, 5));
    }
  }

  std::string bool_expr(int depth) {
    static const char* const relops[] = {"=", "<>", "<", "<=", ">", ">="};
    const int choice = depth >= 2 ? pick(0, 2) : pick(0, 6);
    switch (choice) {
      case 0:
      case 1: return int_expr() + " " + relops[pick(0, 5)] + " " + int_expr();
      case 2: return pick(0, 1) ? "p" : "q";
      case 3: return "NOT (" + bool_expr(depth + 1) + ")";
      case 4: return "(" + bool_expr(depth + 1) + ") AND (" + bool_expr(depth + 1) + ")";
      case 5: return "(" + bool_expr(depth + 1) + ") OR (" + bool_expr(depth + 1) + ")";
      default: return pick(0, 1) ? "TRUE" : "FALSE";
    }
  }

  std::string block(int depth) {
    std::string out = "BEGIN ";
    const int count = pick(1, 2);
    for (int i = 0; i < count; ++i) {
      if (i > 0) out += "; ";
      out += statement(depth);
    }
    return out + " END";
  }

  std::string statement(int depth) {
    const int kind = depth >= 3 ? pick(0, 2) : pick(0, 10);
    const std::string d = std::to_string(depth);
    const std::string bound = std::to_string(pick(1, 4));
    switch (kind) {
      case 0: return int_var() + " := " + int_expr();
      case 1: return std::string(pick(0, 1) ? "p" : "q") + " := " + bool_expr(1);
      case 2: return "Writeln('v ', " + int_var() + ")";
      case 3: return "IF " + bool_expr(0) + " THEN " + block(depth + 1);
      case 4:
        return "IF " + bool_expr(0) + " THEN " + block(depth + 1) + " ELSE " + block(depth + 1);
      case 5:
        return "BEGIN k" + d + " := 0; WHILE (k" + d + " < " + bound + ") AND (" + bool_expr(1) +
               ") DO BEGIN k" + d + " := k" + d + " + 1; " + statement(depth + 1) + " END END";
      case 6:
        return "BEGIN k" + d + " := 0; REPEAT k" + d + " := k" + d + " + 1; " +
               statement(depth + 1) + " UNTIL (k" + d + " >= " + bound + ") OR (" + bool_expr(1) +
               ") END";
      case 7:
        return "FOR f" + d + " := " + std::to_string(pick(0, 2)) + " TO " + bound + " DO " +
               block(depth + 1);
      case 8:
        return "FOR f" + d + " := " + bound + " DOWNTO " + std::to_string(pick(0, 2)) + " DO " +
               block(depth + 1);
      case 9:
        return "CASE " + int_var() + " MOD 4 OF 0 : " + block(depth + 1) + "; 1, 2 : " +
               block(depth + 1) + " END";
      default:
        return "CASE " + int_var() + " MOD 3 OF 0 : " + block(depth + 1) + "; -1, 1 : " +
               block(depth + 1) + " ELSE " + statement(depth + 1) + " END";
    }
  }

  std::mt19937_64& rng_;
};

}  // namespace

std::string random_program(std::mt19937_64& rng) { return Generator(rng).program(); }

std::string random_input(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> value(-5, 12);
  return std::to_string(value(rng)) + "\n" + std::to_string(value(rng)) + "\n";
}

}  // namespace caitlin::fixtures
