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

#include "caitlin/trace.hpp"

#include <charconv>
#include <utility>

namespace caitlin::trace {
namespace {

constexpr std::string_view kHeaderPrefix = "CAITLIN-TRACE v1 program=";
constexpr std::string_view kDigestKey = " digest=";

bool wants_outcome(EventKind e) {
  return e == EventKind::ConditionOutcome || e == EventKind::SubexprOutcome ||
         e == EventKind::CaseArmTest;
}
bool wants_iteration(EventKind e) { return e == EventKind::IterationTick; }
bool wants_arm(EventKind e) { return e == EventKind::CaseArmTest; }
bool wants_expr(EventKind e) { return e == EventKind::SubexprOutcome; }

bool kind_allows(ConstructKind kind, EventKind event) {
  switch (event) {
    case EventKind::ConstructEnter:
    case EventKind::ConstructExit:
      return true;
    case EventKind::ConditionOutcome:
    case EventKind::SubexprOutcome:
      return kind == ConstructKind::While || kind == ConstructKind::Repeat ||
             kind == ConstructKind::If || kind == ConstructKind::IfElse;
    case EventKind::IterationTick:
      return kind == ConstructKind::ForTo || kind == ConstructKind::ForDownto;
    case EventKind::CaseArmTest:
      return kind == ConstructKind::Case || kind == ConstructKind::CaseElse;
    case EventKind::ElsePathTaken:
      return kind == ConstructKind::CaseElse;
  }
  return false;
}

[[noreturn]] void malformed(int line, const std::string& message) {
  throw TraceError(TraceError::Kind::Malformed, line, message);
}

template <typename Int>
Int parse_number(std::string_view text, int line, std::string_view key) {
  Int value{};
  const bool canonical = !text.empty() && (text.size() == 1 || text[0] != '0');
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (!canonical || ec != std::errc() || ptr != text.data() + text.size() || value < 0) {
    malformed(line, "bad value for " + std::string(key) + ": '" + std::string(text) + "'");
  }
  return value;
}

bool parse_flag(std::string_view text, int line, std::string_view key) {
  if (text == "T") return true;
  if (text == "F") return false;
  malformed(line, "bad flag for " + std::string(key) + ": '" + std::string(text) + "'");
}

std::string_view flag(bool value) { return value ? "T" : "F"; }

TraceEvent parse_event(std::string_view line_text, int line) {
  std::vector<std::pair<std::string_view, std::string_view>> fields;
  std::size_t start = 0;
  while (start <= line_text.size()) {
    auto end = line_text.find(' ', start);
    if (end == std::string_view::npos) end = line_text.size();
    const auto field = line_text.substr(start, end - start);
    const auto eq = field.find('=');
    if (eq == std::string_view::npos || eq == 0) {
      malformed(line, "expected key=value, found '" + std::string(field) + "'");
    }
    fields.emplace_back(field.substr(0, eq), field.substr(eq + 1));
    start = end + 1;
  }

  std::size_t i = 0;
  auto next = [&](std::string_view key, bool required) -> std::optional<std::string_view> {
    if (i < fields.size() && fields[i].first == key) return fields[i++].second;
    if (required) malformed(line, "missing field '" + std::string(key) + "'");
    return std::nullopt;
  };

  TraceEvent e;
  e.seq = parse_number<std::uint64_t>(*next("seq", true), line, "seq");
  e.construct_id = parse_number<int>(*next("cid", true), line, "cid");
  const auto kind_text = *next("kind", true);
  const auto kind = construct_kind_from_string(kind_text);
  if (!kind) malformed(line, "unknown construct kind '" + std::string(kind_text) + "'");
  e.construct = *kind;
  const auto ev_text = *next("ev", true);
  const auto ev = event_kind_from_string(ev_text);
  if (!ev) malformed(line, "unknown event kind '" + std::string(ev_text) + "'");
  e.event = *ev;

  if (wants_outcome(e.event)) e.outcome = parse_flag(*next("out", true), line, "out");
  if (wants_iteration(e.event)) {
    e.iteration = parse_number<std::int64_t>(*next("iter", true), line, "iter");
    e.is_final = parse_flag(*next("final", true), line, "final");
  }
  if (wants_arm(e.event)) e.arm = parse_number<int>(*next("arm", true), line, "arm");
  if (wants_expr(e.event)) e.expr_id = parse_number<int>(*next("expr", true), line, "expr");
  if (i != fields.size()) {
    malformed(line, "unexpected field '" + std::string(fields[i].first) + "' for event " +
                        std::string(to_string(e.event)));
  }
  return e;
}

}  // namespace

std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::ConstructEnter: return "ConstructEnter";
    case EventKind::ConstructExit: return "ConstructExit";
    case EventKind::ConditionOutcome: return "ConditionOutcome";
    case EventKind::SubexprOutcome: return "SubexprOutcome";
    case EventKind::IterationTick: return "IterationTick";
    case EventKind::CaseArmTest: return "CaseArmTest";
    case EventKind::ElsePathTaken: return "ElsePathTaken";
  }
  return "?";
}

std::optional<EventKind> event_kind_from_string(std::string_view name) {
  for (auto kind : {EventKind::ConstructEnter, EventKind::ConstructExit,
                    EventKind::ConditionOutcome, EventKind::SubexprOutcome,
                    EventKind::IterationTick, EventKind::CaseArmTest,
                    EventKind::ElsePathTaken}) {
    if (to_string(kind) == name) return kind;
  }
  return std::nullopt;
}

void TraceSink::emit(TraceEvent event) {
  event.seq = events_.size();
  events_.push_back(std::move(event));
}

TraceError::TraceError(Kind kind, int line, const std::string& message)
    : Error("trace line " + std::to_string(line) + ": " + message), kind_(kind), line_(line) {}

void validate(const Trace& trace) {
  std::vector<std::pair<int, ConstructKind>> open;
  for (std::size_t i = 0; i < trace.events.size(); ++i) {
    const auto& e = trace.events[i];
    const int line = static_cast<int>(i) + 2;
    if (i > 0 && e.seq <= trace.events[i - 1].seq) malformed(line, "seq not increasing");
    if (e.construct_id < 0) malformed(line, "negative construct id");
    if (e.outcome.has_value() != wants_outcome(e.event) ||
        e.iteration.has_value() != wants_iteration(e.event) ||
        e.is_final.has_value() != wants_iteration(e.event) ||
        e.arm.has_value() != wants_arm(e.event) ||
        e.expr_id.has_value() != wants_expr(e.event)) {
      malformed(line, "payload does not match event kind " + std::string(to_string(e.event)));
    }
    if ((e.iteration && *e.iteration < 1) || (e.arm && *e.arm < 0) ||
        (e.expr_id && *e.expr_id < 0)) {
      malformed(line, "payload value out of range");
    }
    if (!kind_allows(e.construct, e.event)) {
      malformed(line, std::string(to_string(e.event)) + " is not valid for " +
                          std::string(to_string(e.construct)));
    }
    const std::pair<int, ConstructKind> self{e.construct_id, e.construct};
    if (e.event == EventKind::ConstructEnter) {
      for (const auto& o : open) {
        if (o.first == e.construct_id) {
          throw TraceError(TraceError::Kind::Nesting, line, "construct re-entered while open");
        }
      }
      open.push_back(self);
      continue;
    }
    if (open.empty() || open.back() != self) {
      throw TraceError(TraceError::Kind::Nesting, line,
                       std::string(to_string(e.event)) + " outside construct " +
                           std::to_string(e.construct_id));
    }
    if (e.event == EventKind::ConstructExit) open.pop_back();
  }
  if (!open.empty()) {
    throw TraceError(TraceError::Kind::Nesting, static_cast<int>(trace.events.size()) + 1,
                     "construct " + std::to_string(open.back().first) + " never exits");
  }
}

std::string serialize_trace(const Trace& trace) {
  std::string out;
  out.append(kHeaderPrefix).append(trace.program_name);
  out.append(kDigestKey).append(trace.source_digest).push_back('\n');
  for (const auto& e : trace.events) {
    out += "seq=" + std::to_string(e.seq) + " cid=" + std::to_string(e.construct_id) +
           " kind=" + std::string(caitlin::to_string(e.construct)) +
           " ev=" + std::string(to_string(e.event));
    if (e.outcome) out.append(" out=").append(flag(*e.outcome));
    if (e.iteration) out += " iter=" + std::to_string(*e.iteration);
    if (e.is_final) out.append(" final=").append(flag(*e.is_final));
    if (e.arm) out += " arm=" + std::to_string(*e.arm);
    if (e.expr_id) out += " expr=" + std::to_string(*e.expr_id);
    out.push_back('\n');
  }
  return out;
}

Trace parse_trace(std::string_view text) {
  Trace trace;
  std::size_t start = 0;
  int line = 0;
  while (start < text.size()) {
    ++line;
    const auto end = text.find('\n', start);
    if (end == std::string_view::npos) malformed(line, "missing LF line ending");
    const auto line_text = text.substr(start, end - start);
    start = end + 1;
    if (line == 1) {
      if (line_text.substr(0, kHeaderPrefix.size()) != kHeaderPrefix) {
        malformed(line, "missing CAITLIN-TRACE v1 header");
      }
      const auto rest = line_text.substr(kHeaderPrefix.size());
      const auto digest_at = rest.find(kDigestKey);
      if (digest_at == std::string_view::npos) malformed(line, "missing digest");
      trace.program_name = std::string(rest.substr(0, digest_at));
      trace.source_digest = std::string(rest.substr(digest_at + kDigestKey.size()));
      if (trace.program_name.find(' ') != std::string::npos ||
          trace.source_digest.find(' ') != std::string::npos) {
        malformed(line, "malformed header");
      }
      continue;
    }
    trace.events.push_back(parse_event(line_text, line));
  }
  if (line == 0) malformed(1, "empty trace file");
  validate(trace);
  return trace;
}

}  // namespace caitlin::trace
