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

// Seeded-bug corpus: program mutations, score diffs and the harness that
// checks which inputs make a bug audible.

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "caitlin/interp.hpp"
#include "caitlin/lang.hpp"
#include "caitlin/motif.hpp"
#include "caitlin/schema.hpp"
#include "caitlin/score.hpp"

namespace caitlin::corpus {

enum class MutationKind {
  FlipRelationalOperator,
  OffByOneLoopBound,
  WrongCaseLabel,
  SwapAndOr,
  DeadElseInjection,
  PureOutputTextChange,
};

inline constexpr std::array kAllMutationKinds = {
    MutationKind::FlipRelationalOperator, MutationKind::OffByOneLoopBound,
    MutationKind::WrongCaseLabel,         MutationKind::SwapAndOr,
    MutationKind::DeadElseInjection,      MutationKind::PureOutputTextChange,
};

std::string_view to_string(MutationKind kind);
std::optional<MutationKind> mutation_kind_from_string(std::string_view text);

class MutationError : public Error {
 public:
  using Error::Error;
};

/// Number of sites in `program` that `kind` may mutate.
std::size_t count_sites(const lang::Program& program, MutationKind kind);

/// Mutates exactly one eligible site, chosen from `seed`. Sites are
/// enumerated in source order. Throws MutationError when there is none.
lang::Program mutate(const lang::Program& program, MutationKind kind, std::uint64_t seed);

/// A decision-point chord or exit motif whose mode differs between scores.
/// A missing side means one score has more such marks than the other.
struct ModeDifference {
  std::size_t index = 0;  // position among the decision marks of a score
  std::string what;       // "triad" or "exit"
  std::optional<Beat> start_a, start_b;
  std::optional<motif::Mode> mode_a, mode_b;

  friend bool operator==(const ModeDifference&, const ModeDifference&) = default;
};

struct DiffReport {
  std::optional<Beat> first_divergence;
  // kind name -> (count in a, count in b), only where the counts differ
  std::map<std::string, std::pair<std::size_t, std::size_t>> count_differences;
  std::vector<ModeDifference> mode_differences;

  bool empty() const {
    return !first_divergence && count_differences.empty() && mode_differences.empty();
  }
};

DiffReport compare_auralizations(const score::Score& a, const score::Score& b);
std::string to_string(const DiffReport& diff);

/// The mode of each decision triad and exit motif in score order, found by
/// pitch-class analysis for triads and by the rendered mode for motifs.
struct DecisionMark {
  Beat start;
  std::string what;
  std::optional<motif::Mode> mode;
};
std::vector<DecisionMark> decision_marks(const score::Score& score);

struct CorpusInput {
  std::string name;
  std::string text;
  bool expected_divergence = false;
  std::optional<std::string> correct_output;
  std::optional<std::string> bug_output;
};

struct CorpusCase {
  std::string name;
  std::string correct_source;
  std::string bug_source;
  std::vector<CorpusInput> inputs;
  std::optional<MutationKind> mutation;
};

class CorpusError : public Error {
 public:
  using Error::Error;
};

/// Reads `<dir>/correct.pas`, `bug.pas`, `inputs/*.txt`, `expect.txt`
/// (`<input> true|false` per line) and the optional `mutation.txt` and
/// `outputs/<input>.{correct,bug}.txt`.
CorpusCase load_case(const std::filesystem::path& dir);

/// Every case directory under `root`, sorted by name.
std::vector<CorpusCase> load_corpus(const std::filesystem::path& root);

/// The smallest seed in [0, limit) for which mutating the correct program
/// gives the buggy one, if any.
std::optional<std::uint64_t> find_mutation_seed(const CorpusCase& c, std::uint64_t limit = 64);

struct HarnessOptions {
  schema::AuralizationSchema schema = schema::default_schema();
  interp::RunOptions run;
  // When set, each case with a mutation kind also runs a mutant of the
  // correct program generated from this seed.
  std::optional<std::uint64_t> seed;
};

enum class Verdict { Pass, Fail, Info };
std::string_view to_string(Verdict verdict);

struct CaseResult {
  std::string case_name;
  std::string input_name;
  std::optional<bool> expected;
  bool actual = false;
  Verdict verdict = Verdict::Fail;
  std::string note;
  DiffReport diff;
};

std::vector<CaseResult> run_case(const CorpusCase& c, const HarnessOptions& options);
std::vector<CaseResult> run_corpus(const std::vector<CorpusCase>& cases,
                                   const HarnessOptions& options);

/// `case input expected actual verdict`
std::string format_report_line(const CaseResult& result);

}  // namespace caitlin::corpus
