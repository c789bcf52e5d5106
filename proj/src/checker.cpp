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

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include "caitlin/lang.hpp"

namespace caitlin::lang {
namespace {

std::string fold(std::string_view name) {
  std::string out(name);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string describe_label(const CaseLabel& label) {
  if (label.type == Type::Char) {
    return "'" + std::string(1, static_cast<char>(label.value)) + "'";
  }
  if (label.type == Type::Boolean) return label.value ? "TRUE" : "FALSE";
  return std::to_string(label.value);
}

class Checker {
 public:
  // Pass nullptr to type expressions silently.
  Checker(const Program& program, std::vector<Diagnostic>* out) : out_(out) {
    for (const auto& decl : program.declarations) {
      const auto key = fold(decl.name);
      if (!symbols_.emplace(key, decl.type).second) {
        report(decl.pos, "duplicate declaration of '" + decl.name + "'");
      }
    }
  }

  void stmts(const StmtList& list) {
    for (const auto& s : list) stmt(s);
  }

  std::optional<Type> expr(const Expr& e) {
    return std::visit([&](const auto& node) { return type(node, e.pos); }, e.node);
  }

 private:
  void report(SourcePos pos, std::string message) {
    if (out_ != nullptr) out_->push_back({pos, std::move(message)});
  }

  std::optional<Type> lookup(const std::string& name, SourcePos pos) {
    const auto it = symbols_.find(fold(name));
    if (it == symbols_.end()) {
      report(pos, "undeclared identifier '" + name + "'");
      return std::nullopt;
    }
    return it->second;
  }

  void require(const Expr& e, Type wanted, std::string_view context) {
    const auto t = expr(e);
    if (t && *t != wanted) {
      report(e.pos, std::string(context) + " must be " + std::string(to_string(wanted)) +
                        ", found " + std::string(to_string(*t)));
    }
  }

  void assign_target(const std::string& name, SourcePos pos) {
    if (loop_vars_.count(fold(name)) != 0) {
      report(pos, "assignment to FOR loop variable '" + name + "' inside its loop");
    }
  }

  std::optional<Type> type(const IntLiteral&, SourcePos) { return Type::Integer; }
  std::optional<Type> type(const CharLiteral&, SourcePos) { return Type::Char; }
  std::optional<Type> type(const BoolLiteral&, SourcePos) { return Type::Boolean; }
  std::optional<Type> type(const VarRef& v, SourcePos pos) { return lookup(v.name, pos); }

  std::optional<Type> type(const Unary& u, SourcePos pos) {
    const auto t = expr(*u.operand);
    if (!t) return std::nullopt;
    const Type wanted = u.op == UnaryOp::Not ? Type::Boolean : Type::Integer;
    if (*t != wanted) {
      report(pos, std::string(u.op == UnaryOp::Not ? "NOT" : "unary '-'") +
                      " needs a " + std::string(to_string(wanted)) + " operand");
      return std::nullopt;
    }
    return wanted;
  }

  std::optional<Type> type(const Binary& b, SourcePos pos) {
    const auto lhs = expr(*b.lhs);
    const auto rhs = expr(*b.rhs);
    if (!lhs || !rhs) return std::nullopt;
    const std::string op(to_string(b.op));
    if (is_logical(b.op)) {
      if (*lhs != Type::Boolean || *rhs != Type::Boolean) {
        report(pos, op + " needs BOOLEAN operands");
        return std::nullopt;
      }
      return Type::Boolean;
    }
    if (is_relational(b.op)) {
      if (*lhs != *rhs) {
        report(pos, "cannot compare " + std::string(to_string(*lhs)) + " with " +
                        std::string(to_string(*rhs)));
        return std::nullopt;
      }
      return Type::Boolean;
    }
    if (*lhs != Type::Integer || *rhs != Type::Integer) {
      report(pos, "'" + op + "' needs INTEGER operands");
      return std::nullopt;
    }
    return Type::Integer;
  }

  void stmt(const Stmt& s) {
    std::visit([&](const auto& node) { visit(node, s.pos); }, s.node);
  }

  void visit(const Empty&, SourcePos) {}

  void visit(const Assign& a, SourcePos pos) {
    const auto target = lookup(a.target, pos);
    const auto value = expr(a.value);
    assign_target(a.target, pos);
    if (target && value && *target != *value) {
      report(a.value.pos, "cannot assign " + std::string(to_string(*value)) + " to '" +
                              a.target + "' of type " + std::string(to_string(*target)));
    }
  }

  void visit(const Writeln& w, SourcePos) {
    for (const auto& arg : w.args) {
      if (const auto* e = std::get_if<Expr>(&arg)) expr(*e);
    }
  }

  void visit(const Readln& r, SourcePos pos) {
    const auto target = lookup(r.target, pos);
    assign_target(r.target, pos);
    if (target && *target == Type::Boolean) {
      report(pos, "Readln target '" + r.target + "' must be INTEGER or CHAR");
    }
  }

  void visit(const Compound& c, SourcePos) { stmts(c.body); }

  void visit(const While& w, SourcePos) {
    require(w.condition, Type::Boolean, "WHILE condition");
    stmt(*w.body);
  }

  void visit(const Repeat& r, SourcePos) {
    stmts(r.body);
    require(r.condition, Type::Boolean, "UNTIL condition");
  }

  void visit(const For& f, SourcePos pos) {
    const auto var = lookup(f.variable, pos);
    assign_target(f.variable, pos);
    if (var && *var == Type::Boolean) {
      report(pos, "FOR variable '" + f.variable + "' must be INTEGER or CHAR");
    }
    const auto from = expr(f.from);
    const auto to = expr(f.to);
    if (var && from && *from != *var) {
      report(f.from.pos, "FOR start value must be " + std::string(to_string(*var)));
    }
    if (var && to && *to != *var) {
      report(f.to.pos, "FOR final value must be " + std::string(to_string(*var)));
    }
    const auto key = fold(f.variable);
    const bool inserted = loop_vars_.insert(key).second;
    stmt(*f.body);
    if (inserted) loop_vars_.erase(key);
  }

  void visit(const If& i, SourcePos) {
    require(i.condition, Type::Boolean, "IF condition");
    stmt(*i.then_branch);
    if (i.else_branch) stmt(**i.else_branch);
  }

  void visit(const Case& c, SourcePos) {
    const auto selector = expr(c.selector);
    if (selector && *selector == Type::Boolean) {
      report(c.selector.pos, "CASE selector must be INTEGER or CHAR");
    }
    std::set<std::pair<Type, std::int64_t>> seen;
    for (const auto& arm : c.arms) {
      for (const auto& label : arm.labels) {
        if (selector && label.type != *selector) {
          report(label.pos, "CASE label " + describe_label(label) + " does not match selector type " +
                                std::string(to_string(*selector)));
        }
        if (!seen.emplace(label.type, label.value).second) {
          report(label.pos, "duplicate CASE label " + describe_label(label));
        }
      }
      stmt(*arm.body);
    }
    stmts(c.else_body);
  }

  std::vector<Diagnostic>* out_;
  std::map<std::string, Type> symbols_;
  std::set<std::string> loop_vars_;
};

}  // namespace

std::string to_string(const Diagnostic& diagnostic) {
  return to_string(diagnostic.pos) + ": " + diagnostic.message;
}

std::vector<Diagnostic> check(const Program& program) {
  std::vector<Diagnostic> diagnostics;
  Checker checker(program, &diagnostics);
  checker.stmts(program.body);
  return diagnostics;
}

std::optional<Type> type_of(const Expr& expr, const Program& program) {
  Checker checker(program, nullptr);
  return checker.expr(expr);
}

CompileError::CompileError(std::vector<Diagnostic> diagnostics)
    : Error(diagnostics.empty() ? std::string("compile error")
                                : to_string(diagnostics.front())),
      diagnostics_(std::move(diagnostics)) {}

Program compile(std::string_view source) {
  Program program;
  try {
    program = parse_source(source);
  } catch (const PositionedError& e) {
    throw CompileError({{e.pos(), e.detail()}});
  }
  auto diagnostics = check(program);
  if (!diagnostics.empty()) throw CompileError(std::move(diagnostics));
  return program;
}

}  // namespace caitlin::lang
