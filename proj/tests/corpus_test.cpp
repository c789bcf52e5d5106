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

#include <filesystem>
#include <fstream>
#include <random>

#include "caitlin/corpus.hpp"
#include "support.hpp"

using namespace caitlin;
using namespace caitlin::corpus;

namespace {

lang::Program compile(const std::string& source) { return lang::compile(source); }

std::string mutated(const std::string& source, MutationKind kind, std::uint64_t seed) {
  return lang::print_program(mutate(compile(source), kind, seed));
}

const char* const kWhile = R"(PROGRAM W; VAR i : INTEGER;
BEGIN i := 0; WHILE i < 10 DO i := i + 1 END.)";

}  // namespace

TEST(Mutate, FlipRelational) {
  EXPECT_NE(mutated(kWhile, MutationKind::FlipRelationalOperator, 0).find("WHILE i >= 10 DO"),
            std::string::npos);
  EXPECT_EQ(count_sites(compile(kWhile), MutationKind::FlipRelationalOperator), 1u);
}

TEST(Mutate, OffByOneLoopBoundGivesBothNeighbours) {
  std::set<std::string> bounds;
  for (std::uint64_t seed = 0; seed < 16; ++seed) {
    const auto text = mutated(fixtures::kForProgram, MutationKind::OffByOneLoopBound, seed);
    bounds.insert(text.substr(text.find("TO "), 4));
  }
  EXPECT_EQ(bounds, (std::set<std::string>{"TO 5", "TO 7"}));
}

TEST(Mutate, OffByOneWrapsNonLiteralBounds) {
  const char* source = "PROGRAM F; VAR i, n : INTEGER; BEGIN n := 2; FOR i := 1 TO n DO n := n END.";
  std::set<std::string> seen;
  for (std::uint64_t seed = 0; seed < 16; ++seed) {
    const auto text = mutated(source, MutationKind::OffByOneLoopBound, seed);
    seen.insert(text.substr(text.find("TO "), 9));
  }
  EXPECT_EQ(seen, (std::set<std::string>{"TO n + 1 ", "TO n - 1 "}));
  // Char loops are not eligible.
  EXPECT_THROW(mutate(compile("PROGRAM F; VAR c : CHAR; BEGIN FOR c := 'a' TO 'c' DO Writeln(c) END."),
                      MutationKind::OffByOneLoopBound, 0),
               MutationError);
}

TEST(Mutate, WrongCaseLabelPicksAnUnusedValue) {
  for (std::uint64_t seed = 0; seed < 32; ++seed) {
    const auto program = mutate(compile(fixtures::kCaseProgram), MutationKind::WrongCaseLabel, seed);
    const auto& c = std::get<lang::Case>(program.body[2].node);
    std::set<std::int64_t> labels;
    for (const auto& arm : c.arms) {
      for (const auto& l : arm.labels) labels.insert(l.value);
    }
    ASSERT_EQ(labels.size(), 3u);
    ASSERT_NE(labels, (std::set<std::int64_t>{1, 2, 3}));
  }
}

TEST(Mutate, SwapAndOr) {
  const char* source = "PROGRAM S; VAR p, q : BOOLEAN; BEGIN p := TRUE; q := p AND NOT p END.";
  EXPECT_NE(mutated(source, MutationKind::SwapAndOr, 0).find("q := p OR NOT p"), std::string::npos);
}

TEST(Mutate, DeadElseSkipsOpenEndedThenBranches) {
  const char* source = R"(PROGRAM D; VAR p : BOOLEAN;
BEGIN p := TRUE; IF p THEN IF p THEN p := FALSE END.)";
  const auto program = compile(source);
  EXPECT_EQ(count_sites(program, MutationKind::DeadElseInjection), 1u);
  const auto m = mutate(program, MutationKind::DeadElseInjection, 0);
  const auto& outer = std::get<lang::If>(m.body[1].node);
  EXPECT_FALSE(outer.else_branch.has_value());
  EXPECT_TRUE(std::get<lang::If>(outer.then_branch->node).else_branch.has_value());
  EXPECT_TRUE(lang::same_shape(lang::parse_source(lang::print_program(m)), m));
}

TEST(Mutate, PureOutputTextChangeSwapsAdjacentCharacters) {
  const char* source = "PROGRAM P; BEGIN Writeln('ab'); Writeln('xx') END.";
  const auto text = mutated(source, MutationKind::PureOutputTextChange, 0);
  EXPECT_NE(text.find("Writeln('ba')"), std::string::npos);
  EXPECT_NE(text.find("Writeln('xx')"), std::string::npos);
}

TEST(Mutate, NoEligibleSite) {
  const char* bare = "PROGRAM B; VAR a : INTEGER; BEGIN a := 1 END.";
  for (auto kind : kAllMutationKinds) {
    EXPECT_THROW(mutate(compile(bare), kind, 0), MutationError) << to_string(kind);
    EXPECT_EQ(count_sites(compile(bare), kind), 0u);
  }
}

TEST(Mutate, KindNamesRoundTrip) {
  for (auto kind : kAllMutationKinds) EXPECT_EQ(mutation_kind_from_string(to_string(kind)), kind);
  EXPECT_EQ(mutation_kind_from_string("deleteStatement"), std::nullopt);
}

// For random programs and seeds: deterministic, exactly one site changed,
// still checks, and the text change leaves every trace alone.
TEST(Mutate, PropertiesOnRandomPrograms) {
  std::mt19937_64 rng(11);
  int mutants = 0;
  for (int i = 0; i < 120; ++i) {
    const auto program = compile(fixtures::random_program(rng));
    const auto input = fixtures::random_input(rng);
    for (auto kind : kAllMutationKinds) {
      if (count_sites(program, kind) == 0) continue;
      const std::uint64_t seed = rng();
      const auto a = mutate(program, kind, seed);
      const auto b = mutate(program, kind, seed);
      ASSERT_EQ(lang::print_program(a), lang::print_program(b));
      ASSERT_FALSE(lang::same_shape(a, program));
      ASSERT_TRUE(lang::check(a).empty());
      if (kind == MutationKind::PureOutputTextChange) {
        const auto x = interp::run(program, input);
        const auto y = interp::run(a, input);
        ASSERT_EQ(x.trace.events, y.trace.events);
      }
      ++mutants;
    }
  }
  EXPECT_GT(mutants, 200);
}

TEST(Diff, IdenticalScoresAreEmpty) {
  const auto a = fixtures::run_pipeline(fixtures::kCaseProgram, "0").score;
  EXPECT_TRUE(compare_auralizations(a, a).empty());
  EXPECT_EQ(to_string(compare_auralizations(a, a)), "no difference\n");
}

TEST(Diff, MatchAgainstNoMatchReportsModes) {
  const auto match = fixtures::run_pipeline(fixtures::kCaseProgram, "0").score;
  const auto none = fixtures::run_pipeline(fixtures::kCaseProgram, "5").score;
  const auto diff = compare_auralizations(none, match);
  ASSERT_FALSE(diff.empty());
  ASSERT_TRUE(diff.first_divergence);
  ASSERT_EQ(diff.mode_differences.size(), 2u);
  EXPECT_EQ(diff.mode_differences[0].what, "triad");
  EXPECT_EQ(diff.mode_differences[0].mode_a, motif::Mode::Minor);
  EXPECT_EQ(diff.mode_differences[0].mode_b, motif::Mode::Major);
  EXPECT_EQ(diff.mode_differences[1].what, "exit");
  EXPECT_EQ(diff.mode_differences[1].mode_a, motif::Mode::Minor);
  EXPECT_EQ(diff.mode_differences[1].mode_b, motif::Mode::Major);
  EXPECT_TRUE(diff.count_differences.empty());
}

TEST(Diff, CountDifferences) {
  const auto six = fixtures::run_pipeline(fixtures::kForProgram, "").score;
  std::string five_source = fixtures::kForProgram;
  five_source.replace(five_source.find("TO 6"), 4, "TO 5");
  const auto five = fixtures::run_pipeline(five_source, "").score;
  const auto diff = compare_auralizations(six, five);
  ASSERT_EQ(diff.count_differences.count("note"), 1u);
  EXPECT_EQ(diff.count_differences.at("note").first, diff.count_differences.at("note").second + 1);
  // Tick pitches spread over the loop's range, so the third tick already
  // differs: beat 9 + 2.
  EXPECT_EQ(diff.first_divergence, Beat(11));
}

TEST(Corpus, LoadsEveryCase) {
  const auto cases = load_corpus(CAITLIN_CORPUS_DIR);
  ASSERT_GE(cases.size(), 10u);
  for (const auto& c : cases) {
    EXPECT_TRUE(c.mutation.has_value()) << c.name;
    EXPECT_FALSE(c.inputs.empty()) << c.name;
    EXPECT_NO_THROW(lang::compile(c.correct_source)) << c.name;
    EXPECT_NO_THROW(lang::compile(c.bug_source)) << c.name;
  }
}

TEST(Corpus, EveryBugIsASeededMutant) {
  for (const auto& c : load_corpus(CAITLIN_CORPUS_DIR)) {
    EXPECT_TRUE(find_mutation_seed(c).has_value()) << c.name;
  }
}

TEST(Corpus, HarnessPassesAndIsSensitive) {
  const auto cases = load_corpus(CAITLIN_CORPUS_DIR);
  const auto results = run_corpus(cases, {});
  std::map<std::string, bool> audible;
  for (const auto& r : results) {
    EXPECT_EQ(r.verdict, Verdict::Pass) << format_report_line(r) << " " << r.note;
    if (r.actual) audible[r.case_name] = true;
  }
  int clue_free = 0;
  for (const auto& c : cases) {
    if (c.mutation != MutationKind::PureOutputTextChange) {
      EXPECT_TRUE(audible[c.name]) << c.name;
    }
    for (const auto& input : c.inputs) {
      if (input.expected_divergence && input.correct_output == input.bug_output) {
        ++clue_free;
        break;
      }
    }
  }
  EXPECT_GE(clue_free, 2);
}

TEST(Corpus, SeededMutantRows) {
  const auto cases = load_corpus(CAITLIN_CORPUS_DIR);
  HarnessOptions options;
  options.seed = 3;
  for (const auto& r : run_corpus(cases, options)) {
    EXPECT_NE(r.verdict, Verdict::Fail) << format_report_line(r) << " " << r.note;
  }
}

TEST(Corpus, ReportLine) {
  CaseResult r;
  r.case_name = "clamp";
  r.input_name = "2";
  r.expected = true;
  r.actual = true;
  r.verdict = Verdict::Pass;
  EXPECT_EQ(format_report_line(r), "clamp 2 true true PASS");
  r.expected.reset();
  r.verdict = Verdict::Info;
  EXPECT_EQ(format_report_line(r), "clamp 2 - true INFO");
}

TEST(Corpus, LoadErrors) {
  namespace fs = std::filesystem;
  const auto dir = fs::temp_directory_path() / "caitlin-corpus-test";
  fs::remove_all(dir);
  fs::create_directories(dir / "inputs");
  auto write = [&](const fs::path& p, const std::string& text) { std::ofstream(dir / p) << text; };
  write("correct.pas", "PROGRAM A; BEGIN END.");
  write("bug.pas", "PROGRAM A; BEGIN END.");
  write("inputs/1.txt", "");
  write("expect.txt", "2 true\n");
  EXPECT_THROW(load_case(dir), CorpusError);
  write("expect.txt", "1 maybe\n");
  EXPECT_THROW(load_case(dir), CorpusError);
  write("expect.txt", "1 false\n");
  write("mutation.txt", "shuffle\n");
  EXPECT_THROW(load_case(dir), CorpusError);
  write("mutation.txt", "swapAndOr\n");
  EXPECT_EQ(load_case(dir).inputs.size(), 1u);
  fs::remove(dir / "bug.pas");
  EXPECT_THROW(load_case(dir), Error);
  fs::remove_all(dir);
}
