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

// Lexing, parsing, static checking and pretty-printing for the mini-Pascal
// subset that hosts the auralized constructs.
//
// The language: a PROGRAM header, an optional VAR block of INTEGER, BOOLEAN
// and CHAR variables, and a BEGIN...END body built from assignment,
// Writeln, Readln, compound statements and the eight constructs WHILE,
// REPEAT, FOR...TO, FOR...DOWNTO, IF, IF...ELSE, CASE and CASE...ELSE.
// Keywords and identifiers are case-insensitive.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "caitlin/common.hpp"
#include "caitlin/construct_kind.hpp"

namespace caitlin::lang {

enum class TokenKind {
  Keyword,
  Identifier,
  IntegerLiteral,
  CharLiteral,    // 'x'
  StringLiteral,  // 'two or more', only valid as a Writeln argument
  Operator,
  Punctuation,
  Eof,
};

std::string_view to_string(TokenKind kind);

struct Token {
  TokenKind kind = TokenKind::Eof;
  // Keywords are normalized to upper case. Literals keep their quotes.
  std::string lexeme;
  int line = 1;
  int column = 1;

  SourcePos pos() const { return {line, column}; }
};

class LexError : public PositionedError {
 public:
  using PositionedError::PositionedError;
};

class SyntaxError : public PositionedError {
 public:
  using PositionedError::PositionedError;
};

/// Splits source text into tokens. The result always ends with an Eof token.
std::vector<Token> tokenize(std::string_view source);

// ---------------------------------------------------------------------------
// AST

enum class Type { Integer, Boolean, Char };
std::string_view to_string(Type type);

enum class UnaryOp { Not, Negate };
enum class BinaryOp { Add, Sub, Mul, Div, Mod, Eq, Ne, Lt, Le, Gt, Ge, And, Or };

std::string_view to_string(BinaryOp op);
bool is_relational(BinaryOp op);
bool is_logical(BinaryOp op);

/// Precedence levels, larger binds tighter:
/// OR < AND < relational < additive < multiplicative (< NOT).
int precedence(BinaryOp op);

using ExprId = int;
using ConstructId = int;

struct Expr;

struct IntLiteral {
  std::int64_t value = 0;
};
struct CharLiteral {
  char value = 0;
};
struct BoolLiteral {
  bool value = false;
};
struct VarRef {
  std::string name;
};
struct Unary {
  UnaryOp op = UnaryOp::Not;
  Box<Expr> operand;
};
struct Binary {
  BinaryOp op = BinaryOp::Add;
  Box<Expr> lhs;
  Box<Expr> rhs;
};

struct Expr {
  std::variant<IntLiteral, CharLiteral, BoolLiteral, VarRef, Unary, Binary> node;
  // Unique per program, assigned in source order by number_nodes().
  ExprId id = -1;
  SourcePos pos;
};

struct Stmt;
using StmtList = std::vector<Stmt>;

struct Empty {};
struct Assign {
  std::string target;
  Expr value;
};
struct StringLiteral {
  std::string text;
};
using WriteArg = std::variant<StringLiteral, Expr>;
struct Writeln {
  std::vector<WriteArg> args;
};
struct Readln {
  std::string target;
};
struct Compound {
  StmtList body;
};
struct While {
  Expr condition;
  Box<Stmt> body;
};
struct Repeat {
  StmtList body;
  Expr condition;
};
struct For {
  std::string variable;
  Expr from;
  Expr to;
  bool downto = false;
  Box<Stmt> body;
};
struct If {
  Expr condition;
  Box<Stmt> then_branch;
  std::optional<Box<Stmt>> else_branch;
};

/// A CASE label constant. Char labels store the character code.
struct CaseLabel {
  Type type = Type::Integer;
  std::int64_t value = 0;
  SourcePos pos;
};

struct CaseArm {
  std::vector<CaseLabel> labels;
  Box<Stmt> body;
};
struct Case {
  Expr selector;
  std::vector<CaseArm> arms;
  bool has_else = false;
  StmtList else_body;
};

struct Stmt {
  std::variant<Empty, Assign, Writeln, Readln, Compound, While, Repeat, For,
               If, Case>
      node;
  // Dense 0..N-1 over construct statements in source order; -1 otherwise.
  ConstructId construct_id = -1;
  SourcePos pos;
};

/// The construct kind of a statement, if it is one of the eight constructs.
std::optional<ConstructKind> construct_kind(const Stmt& stmt);

struct Declaration {
  std::string name;
  Type type = Type::Integer;
  SourcePos pos;
};

struct Program {
  std::string name;
  std::vector<Declaration> declarations;
  StmtList body;
  // SHA-256 of the source text when built by parse_source(); empty otherwise.
  std::string source_digest;
};

/// Parses a token stream into a Program with construct and expression ids
/// assigned. Throws SyntaxError.
Program parse(const std::vector<Token>& tokens);

/// tokenize + parse, also recording the source digest.
Program parse_source(std::string_view source);

/// Reassigns ConstructIds and ExprIds in depth-first source order. Returns
/// the number of construct statements.
int number_nodes(Program& program);

/// Structural equality ignoring source positions and the source digest.
bool same_shape(const Program& a, const Program& b);
bool same_shape(const Expr& a, const Expr& b);

// ---------------------------------------------------------------------------
// Static checking

struct Diagnostic {
  SourcePos pos;
  std::string message;
};

std::string to_string(const Diagnostic& diagnostic);

/// Returns an empty list iff every identifier is declared exactly once, every
/// expression is type-correct, FOR loop variables are not assigned inside
/// their loop, and CASE labels match the selector type and are distinct.
std::vector<Diagnostic> check(const Program& program);

/// Static type of an expression under the program's declarations, or nullopt
/// if it does not type-check.
std::optional<Type> type_of(const Expr& expr, const Program& program);

/// Thrown by compile() when a program does not lex, parse or check.
class CompileError : public Error {
 public:
  explicit CompileError(std::vector<Diagnostic> diagnostics);
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

/// parse_source + check; throws CompileError carrying every diagnostic.
Program compile(std::string_view source);

// ---------------------------------------------------------------------------
// Printing

/// Canonical source text for a program. Reparsing it yields a program with
/// the same shape.
std::string print_program(const Program& program);
std::string print_expr(const Expr& expr);

}  // namespace caitlin::lang
