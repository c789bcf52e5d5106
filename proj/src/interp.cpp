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

#include "caitlin/interp.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <limits>

namespace caitlin::interp {
namespace {

using lang::BinaryOp;
using lang::Expr;
using lang::Stmt;
using lang::Type;
using trace::EventKind;
using trace::TraceEvent;

std::string fold(std::string_view name) {
  std::string out(name);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::int64_t ordinal(const Value& v) {
  if (const auto* i = std::get_if<std::int64_t>(&v)) return *i;
  if (const auto* b = std::get_if<bool>(&v)) return *b ? 1 : 0;
  return static_cast<unsigned char>(std::get<char>(v));
}

std::string format_value(const Value& v) {
  if (const auto* i = std::get_if<std::int64_t>(&v)) return std::to_string(*i);
  if (const auto* b = std::get_if<bool>(&v)) return *b ? "TRUE" : "FALSE";
  return std::string(1, std::get<char>(v));
}

class StepLimitReached {};

// Evaluates expressions; optionally reports AND/OR operand outcomes.
class Evaluator {
 public:
  Evaluator(const Env& env, trace::TraceSink* sink, ConditionSite site)
      : env_(env), sink_(sink), site_(site) {}

  Value eval(const Expr& e) {
    return std::visit([&](const auto& node) { return eval_node(node, e); }, e.node);
  }

 private:
  Value eval_node(const lang::IntLiteral& n, const Expr&) { return n.value; }
  Value eval_node(const lang::CharLiteral& n, const Expr&) { return n.value; }
  Value eval_node(const lang::BoolLiteral& n, const Expr&) { return n.value; }
  Value eval_node(const lang::VarRef& n, const Expr& e) { return env_.get(n.name, e.pos); }

  Value eval_node(const lang::Unary& n, const Expr& e) {
    const Value v = eval(*n.operand);
    if (n.op == lang::UnaryOp::Not) return !std::get<bool>(v);
    const auto i = std::get<std::int64_t>(v);
    if (i == std::numeric_limits<std::int64_t>::min()) {
      throw RuntimeError(e.pos, "integer overflow");
    }
    return -i;
  }

  bool operand(const Expr& e) {
    const bool v = std::get<bool>(eval(e));
    if (sink_ != nullptr) {
      TraceEvent ev;
      ev.construct_id = site_.construct_id;
      ev.construct = site_.construct;
      ev.event = EventKind::SubexprOutcome;
      ev.outcome = v;
      ev.expr_id = e.id;
      sink_->emit(ev);
    }
    return v;
  }

  Value eval_node(const lang::Binary& n, const Expr& e) {
    if (n.op == BinaryOp::And) return operand(*n.lhs) && operand(*n.rhs);
    if (n.op == BinaryOp::Or) return operand(*n.lhs) || operand(*n.rhs);

    const Value lhs = eval(*n.lhs);
    const Value rhs = eval(*n.rhs);
    if (lang::is_relational(n.op)) {
      const auto a = ordinal(lhs);
      const auto b = ordinal(rhs);
      switch (n.op) {
        case BinaryOp::Eq: return a == b;
        case BinaryOp::Ne: return a != b;
        case BinaryOp::Lt: return a < b;
        case BinaryOp::Le: return a <= b;
        case BinaryOp::Gt: return a > b;
        default: return a >= b;
      }
    }
    const auto a = std::get<std::int64_t>(lhs);
    const auto b = std::get<std::int64_t>(rhs);
    std::int64_t r = 0;
    bool overflow = false;
    switch (n.op) {
      case BinaryOp::Add: overflow = __builtin_add_overflow(a, b, &r); break;
      case BinaryOp::Sub: overflow = __builtin_sub_overflow(a, b, &r); break;
      case BinaryOp::Mul: overflow = __builtin_mul_overflow(a, b, &r); break;
      case BinaryOp::Div:
      case BinaryOp::Mod:
        if (b == 0) throw RuntimeError(e.pos, "division by zero");
        if (a == std::numeric_limits<std::int64_t>::min() && b == -1) {
          overflow = n.op == BinaryOp::Div;
          r = 0;
        } else {
          r = n.op == BinaryOp::Div ? a / b : a % b;
        }
        break;
      default: break;
    }
    if (overflow) throw RuntimeError(e.pos, "integer overflow");
    return r;
  }

  const Env& env_;
  trace::TraceSink* sink_;
  ConditionSite site_;
};

class Machine {
 public:
  Machine(const lang::Program& program, std::string_view input, const RunOptions& options)
      : env_(program), options_(options) {
    std::size_t i = 0;
    while (i < input.size()) {
      while (i < input.size() && std::isspace(static_cast<unsigned char>(input[i]))) ++i;
      const auto start = i;
      while (i < input.size() && !std::isspace(static_cast<unsigned char>(input[i]))) ++i;
      if (i > start) input_.emplace_back(input.substr(start, i - start));
    }
  }

  void stmts(const lang::StmtList& list) {
    for (const auto& s : list) stmt(s);
  }

  RunResult& result() { return result_; }
  trace::TraceSink& sink() { return sink_; }

  void step() {
    if (result_.steps_used >= options_.step_limit) throw StepLimitReached{};
    ++result_.steps_used;
  }

 private:
  void emit(const Stmt& s, EventKind event) {
    TraceEvent e;
    e.construct_id = s.construct_id;
    e.construct = *lang::construct_kind(s);
    e.event = event;
    sink_.emit(e);
  }

  template <typename Body>
  void construct(const Stmt& s, Body&& body) {
    emit(s, EventKind::ConstructEnter);
    try {
      body();
    } catch (...) {
      emit(s, EventKind::ConstructExit);
      throw;
    }
    emit(s, EventKind::ConstructExit);
  }

  bool condition(const Stmt& s, const Expr& e) {
    return evaluate_condition(e, env_, sink_, {s.construct_id, *lang::construct_kind(s)},
                              options_.subexpr_tracing);
  }

  void stmt(const Stmt& s) {
    step();
    std::visit([&](const auto& node) { visit(node, s); }, s.node);
  }

  void visit(const lang::Empty&, const Stmt&) {}

  void visit(const lang::Assign& a, const Stmt&) { env_.set(a.target, evaluate(a.value, env_)); }

  void visit(const lang::Writeln& w, const Stmt&) {
    for (const auto& arg : w.args) {
      if (const auto* s = std::get_if<lang::StringLiteral>(&arg)) {
        result_.output += s->text;
      } else {
        result_.output += format_value(evaluate(std::get<Expr>(arg), env_));
      }
    }
    result_.output += '\n';
  }

  void visit(const lang::Readln& r, const Stmt& s) {
    if (next_input_ >= input_.size()) throw RuntimeError(s.pos, "input exhausted");
    const std::string& token = input_[next_input_++];
    if (env_.type_of(r.target) == Type::Char) {
      if (token.size() != 1) {
        throw RuntimeError(s.pos, "expected a single character, read '" + token + "'");
      }
      env_.set(r.target, token[0]);
      return;
    }
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
      throw RuntimeError(s.pos, "expected an integer, read '" + token + "'");
    }
    env_.set(r.target, value);
  }

  void visit(const lang::Compound& c, const Stmt&) { stmts(c.body); }

  void visit(const lang::While& w, const Stmt& s) {
    construct(s, [&] {
      for (;;) {
        step();
        if (!condition(s, w.condition)) break;
        stmt(*w.body);
      }
    });
  }

  void visit(const lang::Repeat& r, const Stmt& s) {
    construct(s, [&] {
      for (;;) {
        stmts(r.body);
        step();
        if (condition(s, r.condition)) break;
      }
    });
  }

  void visit(const lang::For& f, const Stmt& s) {
    construct(s, [&] {
      const Value from = evaluate(f.from, env_);
      const Value to = evaluate(f.to, env_);
      const bool is_char = std::holds_alternative<char>(from);
      const __int128 first = ordinal(from);
      const __int128 last = ordinal(to);
      const __int128 count = f.downto ? first - last + 1 : last - first + 1;
      for (__int128 k = 1; k <= count; ++k) {
        step();
        const __int128 current = f.downto ? first - (k - 1) : first + (k - 1);
        if (is_char) {
          env_.set(f.variable, static_cast<char>(static_cast<unsigned char>(current)));
        } else {
          env_.set(f.variable, static_cast<std::int64_t>(current));
        }
        TraceEvent e;
        e.construct_id = s.construct_id;
        e.construct = *lang::construct_kind(s);
        e.event = EventKind::IterationTick;
        e.iteration = static_cast<std::int64_t>(k);
        e.is_final = k == count;
        sink_.emit(e);
        stmt(*f.body);
      }
    });
  }

  void visit(const lang::If& i, const Stmt& s) {
    construct(s, [&] {
      if (condition(s, i.condition)) {
        stmt(*i.then_branch);
      } else if (i.else_branch) {
        stmt(**i.else_branch);
      }
    });
  }

  void visit(const lang::Case& c, const Stmt& s) {
    construct(s, [&] {
      const auto selector = ordinal(evaluate(c.selector, env_));
      for (std::size_t arm = 0; arm < c.arms.size(); ++arm) {
        const auto& labels = c.arms[arm].labels;
        const bool match = std::any_of(labels.begin(), labels.end(),
                                       [&](const lang::CaseLabel& l) { return l.value == selector; });
        TraceEvent e;
        e.construct_id = s.construct_id;
        e.construct = *lang::construct_kind(s);
        e.event = EventKind::CaseArmTest;
        e.outcome = match;
        e.arm = static_cast<int>(arm);
        sink_.emit(e);
        if (match) {
          stmt(*c.arms[arm].body);
          return;
        }
      }
      if (c.has_else) {
        emit(s, EventKind::ElsePathTaken);
        stmts(c.else_body);
      }
    });
  }

  Env env_;
  RunOptions options_;
  std::vector<std::string> input_;
  std::size_t next_input_ = 0;
  RunResult result_;
  trace::TraceSink sink_;
};

}  // namespace

std::string_view to_string(RunStatus status) {
  switch (status) {
    case RunStatus::Completed: return "completed";
    case RunStatus::RuntimeError: return "runtime-error";
    case RunStatus::StepLimitExceeded: return "step-limit-exceeded";
  }
  return "?";
}

Env::Env(const lang::Program& program) {
  for (const auto& d : program.declarations) declare(d.name, d.type);
}

void Env::declare(const std::string& name, lang::Type type) {
  slots_[fold(name)] = Slot{type, std::nullopt};
}

void Env::set(const std::string& name, Value value) {
  const auto it = slots_.find(fold(name));
  if (it == slots_.end()) throw Error("assignment to undeclared variable '" + name + "'");
  it->second.value = value;
}

Value Env::get(const std::string& name, SourcePos pos) const {
  const auto it = slots_.find(fold(name));
  if (it == slots_.end()) throw RuntimeError(pos, "undeclared variable '" + name + "'");
  if (!it->second.value) {
    throw RuntimeError(pos, "variable '" + name + "' read before assignment");
  }
  return *it->second.value;
}

std::optional<lang::Type> Env::type_of(const std::string& name) const {
  const auto it = slots_.find(fold(name));
  if (it == slots_.end()) return std::nullopt;
  return it->second.type;
}

bool evaluate_condition(const lang::Expr& expr, const Env& env, trace::TraceSink& sink,
                        ConditionSite site, bool subexpr_tracing) {
  Evaluator evaluator(env, subexpr_tracing ? &sink : nullptr, site);
  const bool value = std::get<bool>(evaluator.eval(expr));
  TraceEvent e;
  e.construct_id = site.construct_id;
  e.construct = site.construct;
  e.event = EventKind::ConditionOutcome;
  e.outcome = value;
  sink.emit(e);
  return value;
}

Value evaluate(const lang::Expr& expr, const Env& env) {
  return Evaluator(env, nullptr, {}).eval(expr);
}

Execution run(const lang::Program& program, std::string_view input, const RunOptions& options) {
  Machine machine(program, input, options);
  auto& result = machine.result();
  try {
    machine.stmts(program.body);
  } catch (const RuntimeError& e) {
    result.status = RunStatus::RuntimeError;
    result.error = e.what();
  } catch (const StepLimitReached&) {
    result.status = RunStatus::StepLimitExceeded;
    result.error = "step limit of " + std::to_string(options.step_limit) + " exceeded";
  }
  Execution execution;
  execution.result = std::move(result);
  execution.trace.program_name = program.name;
  execution.trace.source_digest = program.source_digest;
  execution.trace.events = machine.sink().take();
  return execution;
}

}  // namespace caitlin::interp
