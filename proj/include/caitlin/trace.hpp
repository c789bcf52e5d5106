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

// Control-flow trace events and their line-oriented file format.
//
// File format, one LF-terminated line per record:
//
//   CAITLIN-TRACE v1 program=<name> digest=<hex>
//   seq=<n> cid=<n> kind=<ConstructKind> ev=<EventKind> [out=<T|F>] [iter=<n>] [final=<T|F>] [arm=<n>] [expr=<n>]
//
// Optional fields appear exactly when the event kind carries them, in the
// order shown.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "caitlin/common.hpp"
#include "caitlin/construct_kind.hpp"

namespace caitlin::trace {

enum class EventKind {
  ConstructEnter,
  ConstructExit,
  ConditionOutcome,  // out
  SubexprOutcome,    // out, expr
  IterationTick,     // iter, final
  CaseArmTest,       // out, arm
  ElsePathTaken,
};

std::string_view to_string(EventKind kind);
std::optional<EventKind> event_kind_from_string(std::string_view name);

struct TraceEvent {
  std::uint64_t seq = 0;
  int construct_id = 0;
  ConstructKind construct = ConstructKind::While;
  EventKind event = EventKind::ConstructEnter;
  std::optional<bool> outcome;
  std::optional<std::int64_t> iteration;  // 1-based
  std::optional<bool> is_final;
  std::optional<int> arm;  // 0-based
  std::optional<int> expr_id;

  friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

struct Trace {
  std::string program_name;
  std::string source_digest;
  std::vector<TraceEvent> events;

  friend bool operator==(const Trace&, const Trace&) = default;
};

/// Appends events, numbering them with consecutive seq values.
class TraceSink {
 public:
  void emit(TraceEvent event);
  const std::vector<TraceEvent>& events() const { return events_; }
  std::vector<TraceEvent> take() { return std::move(events_); }

 private:
  std::vector<TraceEvent> events_;
};

class TraceError : public Error {
 public:
  enum class Kind { Malformed, Nesting };
  TraceError(Kind kind, int line, const std::string& message);
  Kind kind() const { return kind_; }
  int line() const { return line_; }

 private:
  Kind kind_;
  int line_;
};

/// Checks event invariants (payload shape, increasing seq, stack discipline,
/// events only inside their construct). Throws TraceError with the 1-based
/// event position in the file numbering (header = line 1).
void validate(const Trace& trace);

std::string serialize_trace(const Trace& trace);

/// Inverse of serialize_trace. Throws TraceError.
Trace parse_trace(std::string_view text);

}  // namespace caitlin::trace
