// Copyright 2026 The qthermo Authors
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

#pragma once

// A small arithmetic language over the time variable `t`.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power            so -2^2 == -(2^2)
//   power   := primary ('^' unary)?         right-associative, 2^-1 allowed
//   primary := number | 't' | ident '(' expr ')' | '(' expr ')'
//
// Functions: exp, sqrt, log (natural), sin, cos. No other identifiers.

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qthermo/error.hpp"

namespace qthermo::expr {

enum class TokenKind { Number, Ident, TimeVar, Plus, Minus, Star, Slash, Caret, LParen, RParen };

struct Token {
  TokenKind kind;
  std::string lexeme;
  std::size_t position;

  friend bool operator==(const Token&, const Token&) = default;
};

enum class BinaryOp { Add, Sub, Mul, Div, Pow };
enum class Function { Exp, Sqrt, Log, Sin, Cos };

/// Errors carry the character offset they refer to.
class ExprError : public Error {
 public:
  ExprError(const std::string& what, std::size_t position)
      : Error(what + " at offset " + std::to_string(position)), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class LexError : public ExprError {
 public:
  using ExprError::ExprError;
};

class ParseError : public ExprError {
 public:
  using ExprError::ExprError;
};

/// Evaluation produced NaN or Inf; the message names the offending subexpression.
class DomainError : public ExprError {
 public:
  using ExprError::ExprError;
};

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct NumberNode {
  double value;
};
struct TimeVarNode {};
struct NegateNode {
  NodePtr child;
};
struct BinaryNode {
  BinaryOp op;
  NodePtr left;
  NodePtr right;
};
struct CallNode {
  Function fn;
  NodePtr arg;
};

struct Node {
  std::variant<NumberNode, TimeVarNode, NegateNode, BinaryNode, CallNode> payload;
  std::size_t position = 0;
};

/// Immutable expression tree. Copies share structure.
class Expression {
 public:
  Expression() : Expression(constant(0.0)) {}
  explicit Expression(NodePtr root) : root_(std::move(root)) {}

  static Expression constant(double value);
  static Expression time();

  const Node& root() const { return *root_; }
  const NodePtr& root_ptr() const { return root_; }

  /// True when the tree contains no TimeVar node.
  bool is_constant() const;
  /// True when the tree is a single Number node equal to `value`.
  bool is_literal(double value) const;

 private:
  NodePtr root_;
};

std::vector<Token> tokenize(std::string_view src);
Expression parse(const std::vector<Token>& tokens);
/// tokenize + parse.
Expression parse(std::string_view src);

double eval(const Expression& e, double t);

/// Fully parenthesized rendering that parses back to the same tree.
std::string to_string(const Expression& e);

bool structurally_equal(const Expression& a, const Expression& b);

std::string_view function_name(Function fn);

}  // namespace qthermo::expr
