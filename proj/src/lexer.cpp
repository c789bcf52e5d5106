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
#include <array>
#include <cctype>
#include <charconv>

#include "caitlin/lang.hpp"

namespace caitlin::lang {
namespace {

constexpr std::array<std::string_view, 28> kKeywords = {
    "PROGRAM", "VAR",   "BEGIN",  "END",  "INTEGER", "BOOLEAN", "CHAR",
    "WHILE",   "DO",    "REPEAT", "UNTIL", "FOR",    "TO",      "DOWNTO",
    "IF",      "THEN",  "ELSE",   "CASE", "OF",      "DIV",     "MOD",
    "AND",     "OR",    "NOT",    "TRUE", "FALSE",   "WRITELN", "READLN"};

std::string upper(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return out;
}

bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

class Lexer {
 public:
  explicit Lexer(std::string_view source) : src_(source) {}

  std::vector<Token> run() {
    std::vector<Token> tokens;
    for (;;) {
      skip_trivia();
      if (at_end()) break;
      tokens.push_back(next());
    }
    tokens.push_back(Token{TokenKind::Eof, "", line_, column_});
    return tokens;
  }

 private:
  bool at_end() const { return index_ >= src_.size(); }
  char peek(std::size_t ahead = 0) const {
    return index_ + ahead < src_.size() ? src_[index_ + ahead] : '\0';
  }
  char advance() {
    const char c = src_[index_++];
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    return c;
  }

  void skip_trivia() {
    while (!at_end()) {
      const char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '{') {
        const SourcePos start{line_, column_};
        while (!at_end() && peek() != '}') advance();
        if (at_end()) throw LexError(start, "unterminated comment");
        advance();
      } else if (c == '(' && peek(1) == '*') {
        const SourcePos start{line_, column_};
        advance();
        advance();
        while (!at_end() && !(peek() == '*' && peek(1) == ')')) advance();
        if (at_end()) throw LexError(start, "unterminated comment");
        advance();
        advance();
      } else if (c == '/' && peek(1) == '/') {
        while (!at_end() && peek() != '\n') advance();
      } else {
        return;
      }
    }
  }

  Token next() {
    const int line = line_;
    const int column = column_;
    const std::size_t start = index_;
    auto make = [&](TokenKind kind, std::string lexeme) {
      return Token{kind, std::move(lexeme), line, column};
    };

    const char c = peek();
    if (is_ident_start(c)) {
      while (!at_end() && is_ident_char(peek())) advance();
      const auto text = src_.substr(start, index_ - start);
      const auto up = upper(text);
      if (std::find(kKeywords.begin(), kKeywords.end(), up) != kKeywords.end()) {
        return make(TokenKind::Keyword, up);
      }
      return make(TokenKind::Identifier, std::string(text));
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) advance();
      const auto text = src_.substr(start, index_ - start);
      std::int64_t value = 0;
      const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
      if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw LexError({line, column}, "integer literal out of range: " + std::string(text));
      }
      if (!at_end() && is_ident_start(peek())) {
        throw LexError({line_, column_}, "illegal character after number");
      }
      return make(TokenKind::IntegerLiteral, std::string(text));
    }
    if (c == '\'') {
      advance();
      std::size_t length = 0;
      for (;;) {
        if (at_end() || peek() == '\n') {
          throw LexError({line, column}, "unterminated character literal");
        }
        if (peek() == '\'') {
          if (peek(1) == '\'') {
            advance();
            advance();
            ++length;
            continue;
          }
          advance();
          break;
        }
        advance();
        ++length;
      }
      std::string lexeme(src_.substr(start, index_ - start));
      return make(length == 1 ? TokenKind::CharLiteral : TokenKind::StringLiteral,
                  std::move(lexeme));
    }

    advance();
    switch (c) {
      case ':':
        if (peek() == '=') {
          advance();
          return make(TokenKind::Operator, ":=");
        }
        return make(TokenKind::Punctuation, ":");
      case '<':
        if (peek() == '=' || peek() == '>') {
          const char second = advance();
          return make(TokenKind::Operator, std::string("<") + second);
        }
        return make(TokenKind::Operator, "<");
      case '>':
        if (peek() == '=') {
          advance();
          return make(TokenKind::Operator, ">=");
        }
        return make(TokenKind::Operator, ">");
      case '+':
      case '-':
      case '*':
      case '=':
        return make(TokenKind::Operator, std::string(1, c));
      case ';':
      case ',':
      case '.':
      case '(':
      case ')':
        return make(TokenKind::Punctuation, std::string(1, c));
      default:
        break;
    }
    std::string shown = std::isprint(static_cast<unsigned char>(c))
                            ? std::string(1, c)
                            : "\\x" + std::to_string(static_cast<unsigned char>(c));
    throw LexError({line, column}, "illegal character '" + shown + "'");
  }

  std::string_view src_;
  std::size_t index_ = 0;
  int line_ = 1;
  int column_ = 1;
};

}  // namespace

std::string_view to_string(TokenKind kind) {
  switch (kind) {
    case TokenKind::Keyword: return "keyword";
    case TokenKind::Identifier: return "identifier";
    case TokenKind::IntegerLiteral: return "integer literal";
    case TokenKind::CharLiteral: return "char literal";
    case TokenKind::StringLiteral: return "string literal";
    case TokenKind::Operator: return "operator";
    case TokenKind::Punctuation: return "punctuation";
    case TokenKind::Eof: return "end of file";
  }
  return "?";
}

std::vector<Token> tokenize(std::string_view source) { return Lexer(source).run(); }

}  // namespace caitlin::lang
