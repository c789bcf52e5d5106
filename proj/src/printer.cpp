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

#include "caitlin/lang.hpp"

namespace caitlin::lang {
namespace {

std::string quote(std::string_view text) {
  std::string out = "'";
  for (char c : text) {
    out.push_back(c);
    if (c == '\'') out.push_back('\'');
  }
  out.push_back('\'');
  return out;
}

std::string label_text(const CaseLabel& label) {
  switch (label.type) {
    case Type::Char: return quote(std::string(1, static_cast<char>(label.value)));
    case Type::Boolean: return label.value ? "TRUE" : "FALSE";
    case Type::Integer: break;
  }
  return std::to_string(label.value);
}

class Printer {
 public:
  std::string program(const Program& p) {
    out_ = "PROGRAM " + p.name + ";\n";
    if (!p.declarations.empty()) {
      out_ += "VAR\n";
      for (const auto& d : p.declarations) {
        out_ += "  " + d.name + " : " + std::string(to_string(d.type)) + ";\n";
      }
    }
    out_ += "BEGIN\n";
    list(p.body, 2);
    out_ += "\nEND.\n";
    return out_;
  }

 private:
  void indent(int n) { out_.append(static_cast<std::size_t>(n), ' '); }

  void list(const StmtList& stmts, int depth) {
    for (std::size_t i = 0; i < stmts.size(); ++i) {
      if (i > 0) out_ += ";\n";
      if (!std::holds_alternative<Empty>(stmts[i].node)) {
        indent(depth);
        stmt(stmts[i], depth);
      }
    }
  }

  // Emits a statement whose first line is already indented.
  void stmt(const Stmt& s, int depth) {
    std::visit([&](const auto& node) { visit(node, depth); }, s.node);
  }

  // Emits a nested statement on its own line(s).
  void nested(const Stmt& s, int depth) {
    out_ += "\n";
    if (!std::holds_alternative<Empty>(s.node)) {
      indent(depth);
      stmt(s, depth);
    }
  }

  void visit(const Empty&, int) {}
  void visit(const Assign& a, int) { out_ += a.target + " := " + print_expr(a.value); }
  void visit(const Writeln& w, int) {
    out_ += "Writeln";
    if (w.args.empty()) return;
    out_ += "(";
    for (std::size_t i = 0; i < w.args.size(); ++i) {
      if (i > 0) out_ += ", ";
      if (const auto* s = std::get_if<StringLiteral>(&w.args[i])) {
        out_ += quote(s->text);
      } else {
        out_ += print_expr(std::get<Expr>(w.args[i]));
      }
    }
    out_ += ")";
  }
  void visit(const Readln& r, int) { out_ += "Readln(" + r.target + ")"; }
  void visit(const Compound& c, int depth) {
    out_ += "BEGIN\n";
    list(c.body, depth + 2);
    out_ += "\n";
    indent(depth);
    out_ += "END";
  }
  void visit(const While& w, int depth) {
    out_ += "WHILE " + print_expr(w.condition) + " DO";
    nested(*w.body, depth + 2);
  }
  void visit(const Repeat& r, int depth) {
    out_ += "REPEAT\n";
    list(r.body, depth + 2);
    out_ += "\n";
    indent(depth);
    out_ += "UNTIL " + print_expr(r.condition);
  }
  void visit(const For& f, int depth) {
    out_ += "FOR " + f.variable + " := " + print_expr(f.from) +
            (f.downto ? " DOWNTO " : " TO ") + print_expr(f.to) + " DO";
    nested(*f.body, depth + 2);
  }
  void visit(const If& i, int depth) {
    out_ += "IF " + print_expr(i.condition) + " THEN";
    nested(*i.then_branch, depth + 2);
    if (i.else_branch) {
      out_ += "\n";
      indent(depth);
      out_ += "ELSE";
      nested(**i.else_branch, depth + 2);
    }
  }
  void visit(const Case& c, int depth) {
    out_ += "CASE " + print_expr(c.selector) + " OF\n";
    for (std::size_t i = 0; i < c.arms.size(); ++i) {
      if (i > 0) out_ += ";\n";
      indent(depth + 2);
      const auto& arm = c.arms[i];
      for (std::size_t j = 0; j < arm.labels.size(); ++j) {
        if (j > 0) out_ += ", ";
        out_ += label_text(arm.labels[j]);
      }
      out_ += ": ";
      stmt(*arm.body, depth + 2);
    }
    if (c.has_else) {
      // The separator keeps an arm's trailing IF from capturing the ELSE.
      out_ += ";\n";
      indent(depth);
      out_ += "ELSE\n";
      list(c.else_body, depth + 2);
    }
    out_ += "\n";
    indent(depth);
    out_ += "END";
  }

  std::string out_;
};

int expr_precedence(const Expr& e) {
  if (const auto* b = std::get_if<Binary>(&e.node)) return precedence(b->op);
  return 10;
}

}  // namespace

std::string print_expr(const Expr& expr) {
  return std::visit(
      [&](const auto& node) -> std::string {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, IntLiteral>) {
          return std::to_string(node.value);
        } else if constexpr (std::is_same_v<T, CharLiteral>) {
          return quote(std::string(1, node.value));
        } else if constexpr (std::is_same_v<T, BoolLiteral>) {
          return node.value ? "TRUE" : "FALSE";
        } else if constexpr (std::is_same_v<T, VarRef>) {
          return node.name;
        } else if constexpr (std::is_same_v<T, Unary>) {
          std::string inner = print_expr(*node.operand);
          if (std::holds_alternative<Binary>(node.operand->node)) inner = "(" + inner + ")";
          return (node.op == UnaryOp::Not ? "NOT " : "-") + inner;
        } else {
          const int prec = precedence(node.op);
          std::string lhs = print_expr(*node.lhs);
          std::string rhs = print_expr(*node.rhs);
          if (expr_precedence(*node.lhs) < prec) lhs = "(" + lhs + ")";
          if (expr_precedence(*node.rhs) <= prec) rhs = "(" + rhs + ")";
          return lhs + " " + std::string(to_string(node.op)) + " " + rhs;
        }
      },
      expr.node);
}

std::string print_program(const Program& program) { return Printer().program(program); }

}  // namespace caitlin::lang
