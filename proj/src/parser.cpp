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

#include <charconv>

#include "caitlin/digest.hpp"
#include "caitlin/lang.hpp"

namespace caitlin::lang {
namespace {

// Character value of a quoted literal lexeme such as 'a' or ''''.
std::string unquote(std::string_view lexeme) {
  std::string out;
  for (std::size_t i = 1; i + 1 < lexeme.size(); ++i) {
    out.push_back(lexeme[i]);
    if (lexeme[i] == '\'') ++i;
  }
  return out;
}

std::optional<BinaryOp> binary_op_for(const Token& token) {
  if (token.kind == TokenKind::Operator) {
    const auto& s = token.lexeme;
    if (s == "+") return BinaryOp::Add;
    if (s == "-") return BinaryOp::Sub;
    if (s == "*") return BinaryOp::Mul;
    if (s == "=") return BinaryOp::Eq;
    if (s == "<>") return BinaryOp::Ne;
    if (s == "<") return BinaryOp::Lt;
    if (s == "<=") return BinaryOp::Le;
    if (s == ">") return BinaryOp::Gt;
    if (s == ">=") return BinaryOp::Ge;
  } else if (token.kind == TokenKind::Keyword) {
    const auto& s = token.lexeme;
    if (s == "DIV") return BinaryOp::Div;
    if (s == "MOD") return BinaryOp::Mod;
    if (s == "AND") return BinaryOp::And;
    if (s == "OR") return BinaryOp::Or;
  }
  return std::nullopt;
}

std::string describe(const Token& token) {
  if (token.kind == TokenKind::Eof) return "end of file";
  return "'" + token.lexeme + "'";
}

class Parser {
 public:
  explicit Parser(const std::vector<Token>& tokens) : tokens_(tokens) {
    if (tokens_.empty() || tokens_.back().kind != TokenKind::Eof) {
      throw SyntaxError({1, 1}, "token stream must end with end of file");
    }
  }

  Program program() {
    Program prog;
    expect_keyword("PROGRAM");
    prog.name = expect_identifier().lexeme;
    expect_punct(";");
    if (accept_keyword("VAR")) {
      do {
        std::vector<Token> names{expect_identifier()};
        while (accept_punct(",")) names.push_back(expect_identifier());
        expect_punct(":");
        const Type type = parse_type();
        expect_punct(";");
        for (const auto& name : names) {
          prog.declarations.push_back({name.lexeme, type, name.pos()});
        }
      } while (peek().kind == TokenKind::Identifier);
    }
    if (!check_keyword("BEGIN")) fail("BEGIN");
    Stmt body = statement();
    prog.body = std::move(std::get<Compound>(body.node).body);
    expect_punct(".");
    if (peek().kind != TokenKind::Eof) fail("end of file");
    return prog;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    const auto i = std::min(pos_ + ahead, tokens_.size() - 1);
    return tokens_[i];
  }
  const Token& take() {
    const Token& t = tokens_[pos_];
    if (pos_ + 1 < tokens_.size()) ++pos_;
    return t;
  }

  [[noreturn]] void fail(const std::string& expected) const {
    throw SyntaxError(peek().pos(),
                      "expected " + expected + " but found " + describe(peek()));
  }

  bool check_keyword(std::string_view kw) const {
    return peek().kind == TokenKind::Keyword && peek().lexeme == kw;
  }
  bool check_punct(std::string_view p) const {
    return peek().kind == TokenKind::Punctuation && peek().lexeme == p;
  }
  bool check_operator(std::string_view op) const {
    return peek().kind == TokenKind::Operator && peek().lexeme == op;
  }
  bool accept_keyword(std::string_view kw) {
    if (!check_keyword(kw)) return false;
    take();
    return true;
  }
  bool accept_punct(std::string_view p) {
    if (!check_punct(p)) return false;
    take();
    return true;
  }
  void expect_keyword(std::string_view kw) {
    if (!accept_keyword(kw)) fail(std::string(kw));
  }
  void expect_punct(std::string_view p) {
    if (!accept_punct(p)) fail("'" + std::string(p) + "'");
  }
  void expect_operator(std::string_view op) {
    if (!check_operator(op)) fail("'" + std::string(op) + "'");
    take();
  }
  const Token& expect_identifier() {
    if (peek().kind != TokenKind::Identifier) fail("identifier");
    return take();
  }

  Type parse_type() {
    if (accept_keyword("INTEGER")) return Type::Integer;
    if (accept_keyword("BOOLEAN")) return Type::Boolean;
    if (accept_keyword("CHAR")) return Type::Char;
    fail("type name (INTEGER, BOOLEAN or CHAR)");
  }

  bool at_statement_end() const {
    return check_punct(";") || check_keyword("END") || check_keyword("UNTIL") ||
           check_keyword("ELSE") || peek().kind == TokenKind::Eof;
  }

  StmtList statement_list(std::initializer_list<std::string_view> terminators) {
    StmtList list;
    list.push_back(statement());
    while (accept_punct(";")) list.push_back(statement());
    for (auto t : terminators) {
      if (check_keyword(t)) return list;
    }
    std::string expected = "';'";
    for (auto t : terminators) expected += " or " + std::string(t);
    fail(expected);
  }

  Stmt statement() {
    Stmt stmt;
    stmt.pos = peek().pos();
    if (at_statement_end()) {
      stmt.node = Empty{};
      return stmt;
    }
    const Token& t = peek();
    if (t.kind == TokenKind::Identifier) {
      Assign assign;
      assign.target = take().lexeme;
      expect_operator(":=");
      assign.value = expression();
      stmt.node = std::move(assign);
      return stmt;
    }
    if (t.kind != TokenKind::Keyword) fail("statement");

    if (accept_keyword("BEGIN")) {
      Compound compound;
      compound.body = statement_list({"END"});
      expect_keyword("END");
      stmt.node = std::move(compound);
    } else if (accept_keyword("WRITELN")) {
      Writeln w;
      if (accept_punct("(")) {
        do {
          if (peek().kind == TokenKind::StringLiteral) {
            w.args.emplace_back(StringLiteral{unquote(take().lexeme)});
          } else {
            w.args.emplace_back(expression());
          }
        } while (accept_punct(","));
        expect_punct(")");
      }
      stmt.node = std::move(w);
    } else if (accept_keyword("READLN")) {
      expect_punct("(");
      Readln r{expect_identifier().lexeme};
      expect_punct(")");
      stmt.node = std::move(r);
    } else if (accept_keyword("WHILE")) {
      While w;
      w.condition = expression();
      expect_keyword("DO");
      w.body = statement();
      stmt.node = std::move(w);
    } else if (accept_keyword("REPEAT")) {
      Repeat r;
      r.body = statement_list({"UNTIL"});
      expect_keyword("UNTIL");
      r.condition = expression();
      stmt.node = std::move(r);
    } else if (accept_keyword("FOR")) {
      For f;
      f.variable = expect_identifier().lexeme;
      expect_operator(":=");
      f.from = expression();
      if (accept_keyword("DOWNTO")) {
        f.downto = true;
      } else if (!accept_keyword("TO")) {
        fail("TO or DOWNTO");
      }
      f.to = expression();
      expect_keyword("DO");
      f.body = statement();
      stmt.node = std::move(f);
    } else if (accept_keyword("IF")) {
      If i;
      i.condition = expression();
      expect_keyword("THEN");
      i.then_branch = statement();
      if (accept_keyword("ELSE")) i.else_branch = Box<Stmt>(statement());
      stmt.node = std::move(i);
    } else if (accept_keyword("CASE")) {
      stmt.node = case_statement();
    } else {
      fail("statement");
    }
    return stmt;
  }

  Case case_statement() {
    Case c;
    c.selector = expression();
    expect_keyword("OF");
    while (!check_keyword("ELSE") && !check_keyword("END")) {
      CaseArm arm;
      arm.labels.push_back(case_label());
      while (accept_punct(",")) arm.labels.push_back(case_label());
      expect_punct(":");
      arm.body = statement();
      c.arms.push_back(std::move(arm));
      if (!accept_punct(";")) break;
    }
    if (c.arms.empty()) fail("case label");
    if (accept_keyword("ELSE")) {
      c.has_else = true;
      c.else_body = statement_list({"END"});
    }
    expect_keyword("END");
    return c;
  }

  CaseLabel case_label() {
    CaseLabel label;
    label.pos = peek().pos();
    bool negative = false;
    if (check_operator("-")) {
      take();
      negative = true;
    }
    const Token& t = peek();
    if (t.kind == TokenKind::IntegerLiteral) {
      label.type = Type::Integer;
      label.value = parse_int(take());
      if (negative) label.value = -label.value;
    } else if (!negative && t.kind == TokenKind::CharLiteral) {
      label.type = Type::Char;
      label.value = static_cast<unsigned char>(unquote(take().lexeme)[0]);
    } else if (!negative && (check_keyword("TRUE") || check_keyword("FALSE"))) {
      label.type = Type::Boolean;
      label.value = take().lexeme == "TRUE" ? 1 : 0;
    } else {
      fail("case label constant");
    }
    return label;
  }

  static std::int64_t parse_int(const Token& t) {
    std::int64_t value = 0;
    std::from_chars(t.lexeme.data(), t.lexeme.data() + t.lexeme.size(), value);
    return value;
  }

  Expr expression(int min_precedence = 1) {
    Expr lhs = unary();
    for (;;) {
      const auto op = binary_op_for(peek());
      if (!op || precedence(*op) < min_precedence) return lhs;
      const SourcePos pos = take().pos();
      Expr rhs = expression(precedence(*op) + 1);
      Expr combined;
      combined.pos = pos;
      combined.node = Binary{*op, std::move(lhs), std::move(rhs)};
      lhs = std::move(combined);
    }
  }

  Expr unary() {
    Expr e;
    e.pos = peek().pos();
    if (accept_keyword("NOT")) {
      e.node = Unary{UnaryOp::Not, unary()};
    } else if (check_operator("-")) {
      take();
      e.node = Unary{UnaryOp::Negate, unary()};
    } else {
      e = primary();
    }
    return e;
  }

  Expr primary() {
    Expr e;
    e.pos = peek().pos();
    const Token& t = peek();
    switch (t.kind) {
      case TokenKind::IntegerLiteral:
        e.node = IntLiteral{parse_int(take())};
        return e;
      case TokenKind::CharLiteral:
        e.node = CharLiteral{unquote(take().lexeme)[0]};
        return e;
      case TokenKind::Identifier:
        e.node = VarRef{take().lexeme};
        return e;
      case TokenKind::Keyword:
        if (accept_keyword("TRUE")) {
          e.node = BoolLiteral{true};
          return e;
        }
        if (accept_keyword("FALSE")) {
          e.node = BoolLiteral{false};
          return e;
        }
        break;
      case TokenKind::Punctuation:
        if (accept_punct("(")) {
          Expr inner = expression();
          expect_punct(")");
          return inner;
        }
        break;
      default:
        break;
    }
    fail("expression");
  }

  const std::vector<Token>& tokens_;
  std::size_t pos_ = 0;
};

// Depth-first numbering in source order.
class Numberer {
 public:
  int constructs() const { return next_construct_; }

  void stmts(StmtList& list) {
    for (auto& s : list) stmt(s);
  }

  void stmt(Stmt& s) {
    s.construct_id = construct_kind(s) ? next_construct_++ : -1;
    std::visit([this](auto& node) { visit(node); }, s.node);
  }

  void expr(Expr& e) {
    e.id = next_expr_++;
    if (auto* u = std::get_if<Unary>(&e.node)) {
      expr(*u->operand);
    } else if (auto* b = std::get_if<Binary>(&e.node)) {
      expr(*b->lhs);
      expr(*b->rhs);
    }
  }

 private:
  void visit(Empty&) {}
  void visit(Assign& a) { expr(a.value); }
  void visit(Writeln& w) {
    for (auto& arg : w.args) {
      if (auto* e = std::get_if<Expr>(&arg)) expr(*e);
    }
  }
  void visit(Readln&) {}
  void visit(Compound& c) { stmts(c.body); }
  void visit(While& w) {
    expr(w.condition);
    stmt(*w.body);
  }
  void visit(Repeat& r) {
    stmts(r.body);
    expr(r.condition);
  }
  void visit(For& f) {
    expr(f.from);
    expr(f.to);
    stmt(*f.body);
  }
  void visit(If& i) {
    expr(i.condition);
    stmt(*i.then_branch);
    if (i.else_branch) stmt(**i.else_branch);
  }
  void visit(Case& c) {
    expr(c.selector);
    for (auto& arm : c.arms) stmt(*arm.body);
    stmts(c.else_body);
  }

  int next_construct_ = 0;
  int next_expr_ = 0;
};

bool same_stmt(const Stmt& a, const Stmt& b);

bool same_list(const StmtList& a, const StmtList& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!same_stmt(a[i], b[i])) return false;
  }
  return true;
}

bool same_node(const Empty&, const Empty&) { return true; }
bool same_node(const Assign& a, const Assign& b) {
  return a.target == b.target && same_shape(a.value, b.value);
}
bool same_node(const Writeln& a, const Writeln& b) {
  if (a.args.size() != b.args.size()) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    const auto* sa = std::get_if<StringLiteral>(&a.args[i]);
    const auto* sb = std::get_if<StringLiteral>(&b.args[i]);
    if ((sa == nullptr) != (sb == nullptr)) return false;
    if (sa != nullptr) {
      if (sa->text != sb->text) return false;
    } else if (!same_shape(std::get<Expr>(a.args[i]), std::get<Expr>(b.args[i]))) {
      return false;
    }
  }
  return true;
}
bool same_node(const Readln& a, const Readln& b) { return a.target == b.target; }
bool same_node(const Compound& a, const Compound& b) { return same_list(a.body, b.body); }
bool same_node(const While& a, const While& b) {
  return same_shape(a.condition, b.condition) && same_stmt(*a.body, *b.body);
}
bool same_node(const Repeat& a, const Repeat& b) {
  return same_list(a.body, b.body) && same_shape(a.condition, b.condition);
}
bool same_node(const For& a, const For& b) {
  return a.variable == b.variable && a.downto == b.downto &&
         same_shape(a.from, b.from) && same_shape(a.to, b.to) &&
         same_stmt(*a.body, *b.body);
}
bool same_node(const If& a, const If& b) {
  if (!same_shape(a.condition, b.condition) ||
      !same_stmt(*a.then_branch, *b.then_branch) ||
      a.else_branch.has_value() != b.else_branch.has_value()) {
    return false;
  }
  return !a.else_branch || same_stmt(**a.else_branch, **b.else_branch);
}
bool same_node(const Case& a, const Case& b) {
  if (!same_shape(a.selector, b.selector) || a.arms.size() != b.arms.size() ||
      a.has_else != b.has_else || !same_list(a.else_body, b.else_body)) {
    return false;
  }
  for (std::size_t i = 0; i < a.arms.size(); ++i) {
    const auto& la = a.arms[i].labels;
    const auto& lb = b.arms[i].labels;
    if (la.size() != lb.size()) return false;
    for (std::size_t j = 0; j < la.size(); ++j) {
      if (la[j].type != lb[j].type || la[j].value != lb[j].value) return false;
    }
    if (!same_stmt(*a.arms[i].body, *b.arms[i].body)) return false;
  }
  return true;
}

bool same_stmt(const Stmt& a, const Stmt& b) {
  if (a.node.index() != b.node.index() || a.construct_id != b.construct_id) {
    return false;
  }
  return std::visit(
      [&b](const auto& na) {
        using T = std::decay_t<decltype(na)>;
        return same_node(na, std::get<T>(b.node));
      },
      a.node);
}

}  // namespace

Program parse(const std::vector<Token>& tokens) {
  Program program = Parser(tokens).program();
  number_nodes(program);
  return program;
}

Program parse_source(std::string_view source) {
  Program program = parse(tokenize(source));
  program.source_digest = sha256_hex(source);
  return program;
}

int number_nodes(Program& program) {
  Numberer numberer;
  numberer.stmts(program.body);
  return numberer.constructs();
}

bool same_shape(const Expr& a, const Expr& b) {
  if (a.node.index() != b.node.index() || a.id != b.id) return false;
  if (const auto* x = std::get_if<IntLiteral>(&a.node)) {
    return x->value == std::get<IntLiteral>(b.node).value;
  }
  if (const auto* x = std::get_if<CharLiteral>(&a.node)) {
    return x->value == std::get<CharLiteral>(b.node).value;
  }
  if (const auto* x = std::get_if<BoolLiteral>(&a.node)) {
    return x->value == std::get<BoolLiteral>(b.node).value;
  }
  if (const auto* x = std::get_if<VarRef>(&a.node)) {
    return x->name == std::get<VarRef>(b.node).name;
  }
  if (const auto* x = std::get_if<Unary>(&a.node)) {
    const auto& y = std::get<Unary>(b.node);
    return x->op == y.op && same_shape(*x->operand, *y.operand);
  }
  const auto& x = std::get<Binary>(a.node);
  const auto& y = std::get<Binary>(b.node);
  return x.op == y.op && same_shape(*x.lhs, *y.lhs) && same_shape(*x.rhs, *y.rhs);
}

bool same_shape(const Program& a, const Program& b) {
  if (a.name != b.name || a.declarations.size() != b.declarations.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.declarations.size(); ++i) {
    if (a.declarations[i].name != b.declarations[i].name ||
        a.declarations[i].type != b.declarations[i].type) {
      return false;
    }
  }
  return same_list(a.body, b.body);
}

std::optional<ConstructKind> construct_kind(const Stmt& stmt) {
  if (std::holds_alternative<While>(stmt.node)) return ConstructKind::While;
  if (std::holds_alternative<Repeat>(stmt.node)) return ConstructKind::Repeat;
  if (const auto* f = std::get_if<For>(&stmt.node)) {
    return f->downto ? ConstructKind::ForDownto : ConstructKind::ForTo;
  }
  if (const auto* i = std::get_if<If>(&stmt.node)) {
    return i->else_branch ? ConstructKind::IfElse : ConstructKind::If;
  }
  if (const auto* c = std::get_if<Case>(&stmt.node)) {
    return c->has_else ? ConstructKind::CaseElse : ConstructKind::Case;
  }
  return std::nullopt;
}

std::string_view to_string(Type type) {
  switch (type) {
    case Type::Integer: return "INTEGER";
    case Type::Boolean: return "BOOLEAN";
    case Type::Char: return "CHAR";
  }
  return "?";
}

std::string_view to_string(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Mul: return "*";
    case BinaryOp::Div: return "DIV";
    case BinaryOp::Mod: return "MOD";
    case BinaryOp::Eq: return "=";
    case BinaryOp::Ne: return "<>";
    case BinaryOp::Lt: return "<";
    case BinaryOp::Le: return "<=";
    case BinaryOp::Gt: return ">";
    case BinaryOp::Ge: return ">=";
    case BinaryOp::And: return "AND";
    case BinaryOp::Or: return "OR";
  }
  return "?";
}

bool is_relational(BinaryOp op) {
  switch (op) {
    case BinaryOp::Eq:
    case BinaryOp::Ne:
    case BinaryOp::Lt:
    case BinaryOp::Le:
    case BinaryOp::Gt:
    case BinaryOp::Ge:
      return true;
    default:
      return false;
  }
}

bool is_logical(BinaryOp op) { return op == BinaryOp::And || op == BinaryOp::Or; }

int precedence(BinaryOp op) {
  switch (op) {
    case BinaryOp::Or: return 1;
    case BinaryOp::And: return 2;
    case BinaryOp::Add:
    case BinaryOp::Sub: return 4;
    case BinaryOp::Mul:
    case BinaryOp::Div:
    case BinaryOp::Mod: return 5;
    default: return 3;
  }
}

}  // namespace caitlin::lang
