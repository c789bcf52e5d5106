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

// Tree-walking interpreter that runs a checked program and records its
// control-flow trace.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>

#include "caitlin/lang.hpp"
#include "caitlin/trace.hpp"

namespace caitlin::interp {

using Value = std::variant<std::int64_t, bool, char>;

struct RunOptions {
  std::uint64_t step_limit = 100000;
  // Emit a SubexprOutcome event for every evaluated AND/OR operand.
  bool subexpr_tracing = false;
};

enum class RunStatus { Completed, RuntimeError, StepLimitExceeded };

std::string_view to_string(RunStatus status);

struct RunResult {
  std::string output;  // one LF-terminated line per Writeln
  RunStatus status = RunStatus::Completed;
  std::uint64_t steps_used = 0;
  std::string error;  // "line:col: message" when status != Completed
};

class RuntimeError : public PositionedError {
 public:
  using PositionedError::PositionedError;
};

/// Variable storage keyed by declared (case-folded) name. Reading a variable
/// that was never assigned is a runtime error.
class Env {
 public:
  Env() = default;
  explicit Env(const lang::Program& program);

  void declare(const std::string& name, lang::Type type);
  void set(const std::string& name, Value value);
  Value get(const std::string& name, SourcePos pos) const;
  std::optional<lang::Type> type_of(const std::string& name) const;

 private:
  struct Slot {
    lang::Type type;
    std::optional<Value> value;
  };
  std::map<std::string, Slot> slots_;
};

/// Where condition events are attributed.
struct ConditionSite {
  int construct_id = 0;
  ConstructKind construct = ConstructKind::If;
};

/// Evaluates a boolean expression, emitting one ConditionOutcome for the
/// whole expression and, when tracing subexpressions, one SubexprOutcome per
/// evaluated AND/OR operand (post-order). AND and OR short-circuit.
bool evaluate_condition(const lang::Expr& expr, const Env& env, trace::TraceSink& sink,
                        ConditionSite site, bool subexpr_tracing);

/// Evaluates any expression without emitting events.
Value evaluate(const lang::Expr& expr, const Env& env);

struct Execution {
  RunResult result;
  trace::Trace trace;
};

/// Runs a program that passed lang::check(). Runtime faults and step-limit
/// exhaustion are reported in the result; the trace is closed so that every
/// ConstructEnter still has its ConstructExit.
Execution run(const lang::Program& program, std::string_view input,
              const RunOptions& options = {});

}  // namespace caitlin::interp
