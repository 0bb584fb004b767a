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

#include "qthermo/exprparse.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <type_traits>

namespace qthermo::expr {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

NodePtr make(decltype(Node::payload) payload, std::size_t pos) {
  return std::make_shared<const Node>(Node{std::move(payload), pos});
}

bool lookup_function(std::string_view name, Function& fn) {
  if (name == "exp") fn = Function::Exp;
  else if (name == "sqrt") fn = Function::Sqrt;
  else if (name == "log") fn = Function::Log;
  else if (name == "sin") fn = Function::Sin;
  else if (name == "cos") fn = Function::Cos;
  else return false;
  return true;
}

std::size_t scan_number(std::string_view s, std::size_t i) {
  const auto digit = [&](std::size_t k) { return k < s.size() && std::isdigit(static_cast<unsigned char>(s[k])); };
  std::size_t j = i;
  while (digit(j)) ++j;
  if (j < s.size() && s[j] == '.') {
    ++j;
    while (digit(j)) ++j;
  }
  // Exponent only if at least one digit follows; otherwise 'e' starts an identifier.
  if (j < s.size() && (s[j] == 'e' || s[j] == 'E')) {
    std::size_t k = j + 1;
    if (k < s.size() && (s[k] == '+' || s[k] == '-')) ++k;
    if (digit(k)) {
      while (digit(k)) ++k;
      j = k;
    }
  }
  return j;
}

class Parser {
 public:
  explicit Parser(const std::vector<Token>& tokens) : tokens_(tokens) {
    end_pos_ = tokens.empty() ? 0 : tokens.back().position + tokens.back().lexeme.size();
  }

  Expression run() {
    NodePtr root = expr();
    if (!at_end()) throw ParseError("unexpected token '" + peek().lexeme + "'", peek().position);
    return Expression(std::move(root));
  }

 private:
  bool at_end() const { return pos_ >= tokens_.size(); }
  const Token& peek() const { return tokens_[pos_]; }
  bool check(TokenKind k) const { return !at_end() && peek().kind == k; }
  std::size_t here() const { return at_end() ? end_pos_ : peek().position; }

  NodePtr expr() {
    NodePtr lhs = term();
    while (check(TokenKind::Plus) || check(TokenKind::Minus)) {
      const Token& op = tokens_[pos_++];
      NodePtr rhs = term();
      lhs = make(BinaryNode{op.kind == TokenKind::Plus ? BinaryOp::Add : BinaryOp::Sub, lhs, rhs}, op.position);
    }
    return lhs;
  }

  NodePtr term() {
    NodePtr lhs = unary();
    while (check(TokenKind::Star) || check(TokenKind::Slash)) {
      const Token& op = tokens_[pos_++];
      NodePtr rhs = unary();
      lhs = make(BinaryNode{op.kind == TokenKind::Star ? BinaryOp::Mul : BinaryOp::Div, lhs, rhs}, op.position);
    }
    return lhs;
  }

  // Negation sits above '^' so that -2^2 == -(2^2).
  NodePtr unary() {
    if (check(TokenKind::Minus)) {
      const std::size_t op_pos = tokens_[pos_++].position;
      return make(NegateNode{unary()}, op_pos);
    }
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (check(TokenKind::Caret)) {
      const std::size_t op_pos = tokens_[pos_++].position;
      NodePtr exponent = unary();
      return make(BinaryNode{BinaryOp::Pow, base, exponent}, op_pos);
    }
    return base;
  }

  NodePtr primary() {
    if (at_end()) throw ParseError("unexpected end of input", end_pos_);
    const Token& tok = tokens_[pos_++];
    switch (tok.kind) {
      case TokenKind::Number: {
        double value = 0.0;
        const char* first = tok.lexeme.data();
        const char* last = first + tok.lexeme.size();
        const auto res = std::from_chars(first, last, value);
        if (res.ec != std::errc{} || res.ptr != last || !std::isfinite(value)) {
          throw ParseError("number out of range '" + tok.lexeme + "'", tok.position);
        }
        return make(NumberNode{value}, tok.position);
      }
      case TokenKind::TimeVar:
        return make(TimeVarNode{}, tok.position);
      case TokenKind::Ident: {
        Function fn{};
        if (!lookup_function(tok.lexeme, fn)) {
          throw ParseError("unknown function '" + tok.lexeme + "'", tok.position);
        }
        if (!check(TokenKind::LParen)) throw ParseError("expected '(' after " + tok.lexeme, here());
        ++pos_;
        NodePtr arg = expr();
        if (!check(TokenKind::RParen)) throw ParseError("expected ')'", here());
        ++pos_;
        return make(CallNode{fn, arg}, tok.position);
      }
      case TokenKind::LParen: {
        NodePtr inner = expr();
        if (!check(TokenKind::RParen)) throw ParseError("expected ')'", here());
        ++pos_;
        return inner;
      }
      default:
        throw ParseError("unexpected token '" + tok.lexeme + "'", tok.position);
    }
  }

  const std::vector<Token>& tokens_;
  std::size_t pos_ = 0;
  std::size_t end_pos_ = 0;
};

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

char op_char(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return '+';
    case BinaryOp::Sub: return '-';
    case BinaryOp::Mul: return '*';
    case BinaryOp::Div: return '/';
    case BinaryOp::Pow: return '^';
  }
  return '?';
}

std::string render(const Node& n) {
  return std::visit(
      overloaded{
          [](const NumberNode& x) { return format_number(x.value); },
          [](const TimeVarNode&) { return std::string("t"); },
          [](const NegateNode& x) { return "-(" + render(*x.child) + ")"; },
          [](const BinaryNode& x) {
            return "(" + render(*x.left) + " " + op_char(x.op) + " " + render(*x.right) + ")";
          },
          [](const CallNode& x) { return std::string(function_name(x.fn)) + "(" + render(*x.arg) + ")"; },
      },
      n.payload);
}

double eval_node(const Node& n, double t) {
  const double v = std::visit(
      overloaded{
          [](const NumberNode& x) { return x.value; },
          [t](const TimeVarNode&) { return t; },
          [t](const NegateNode& x) { return -eval_node(*x.child, t); },
          [t](const BinaryNode& x) {
            const double l = eval_node(*x.left, t);
            const double r = eval_node(*x.right, t);
            switch (x.op) {
              case BinaryOp::Add: return l + r;
              case BinaryOp::Sub: return l - r;
              case BinaryOp::Mul: return l * r;
              case BinaryOp::Div: return l / r;
              case BinaryOp::Pow: return std::pow(l, r);
            }
            return std::nan("");
          },
          [t](const CallNode& x) {
            const double a = eval_node(*x.arg, t);
            switch (x.fn) {
              case Function::Exp: return std::exp(a);
              case Function::Sqrt: return std::sqrt(a);
              case Function::Log: return std::log(a);
              case Function::Sin: return std::sin(a);
              case Function::Cos: return std::cos(a);
            }
            return std::nan("");
          },
      },
      n.payload);
  if (!std::isfinite(v)) {
    throw DomainError("non-finite result in '" + render(n) + "' at t=" + format_number(t), n.position);
  }
  return v;
}

bool equal_nodes(const Node& a, const Node& b) {
  if (a.payload.index() != b.payload.index()) return false;
  return std::visit(
      [&b](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const T& y = std::get<T>(b.payload);
        if constexpr (std::is_same_v<T, NumberNode>) {
          return x.value == y.value;
        } else if constexpr (std::is_same_v<T, TimeVarNode>) {
          return true;
        } else if constexpr (std::is_same_v<T, NegateNode>) {
          return equal_nodes(*x.child, *y.child);
        } else if constexpr (std::is_same_v<T, BinaryNode>) {
          return x.op == y.op && equal_nodes(*x.left, *y.left) && equal_nodes(*x.right, *y.right);
        } else {
          return x.fn == y.fn && equal_nodes(*x.arg, *y.arg);
        }
      },
      a.payload);
}

bool contains_time(const Node& n) {
  return std::visit(overloaded{
                        [](const NumberNode&) { return false; },
                        [](const TimeVarNode&) { return true; },
                        [](const NegateNode& x) { return contains_time(*x.child); },
                        [](const BinaryNode& x) { return contains_time(*x.left) || contains_time(*x.right); },
                        [](const CallNode& x) { return contains_time(*x.arg); },
                    },
                    n.payload);
}

}  // namespace

Expression Expression::constant(double value) { return Expression(make(NumberNode{value}, 0)); }
Expression Expression::time() { return Expression(make(TimeVarNode{}, 0)); }

bool Expression::is_constant() const { return !contains_time(*root_); }

bool Expression::is_literal(double value) const {
  const auto* n = std::get_if<NumberNode>(&root_->payload);
  return n != nullptr && n->value == value;
}

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < src.size()) {
    const char ch = src[i];
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++i;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(ch)) ||
        (ch == '.' && i + 1 < src.size() && std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
      const std::size_t j = scan_number(src, i);
      out.push_back({TokenKind::Number, std::string(src.substr(i, j - i)), i});
      i = j;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      std::string word(src.substr(i, j - i));
      out.push_back({word == "t" ? TokenKind::TimeVar : TokenKind::Ident, std::move(word), i});
      i = j;
      continue;
    }
    TokenKind kind;
    switch (ch) {
      case '+': kind = TokenKind::Plus; break;
      case '-': kind = TokenKind::Minus; break;
      case '*': kind = TokenKind::Star; break;
      case '/': kind = TokenKind::Slash; break;
      case '^': kind = TokenKind::Caret; break;
      case '(': kind = TokenKind::LParen; break;
      case ')': kind = TokenKind::RParen; break;
      default:
        throw LexError(std::string("unexpected character '") + ch + "'", i);
    }
    out.push_back({kind, std::string(1, ch), i});
    ++i;
  }
  return out;
}

Expression parse(const std::vector<Token>& tokens) { return Parser(tokens).run(); }

Expression parse(std::string_view src) { return parse(tokenize(src)); }

double eval(const Expression& e, double t) { return eval_node(e.root(), t); }

std::string to_string(const Expression& e) { return render(e.root()); }

bool structurally_equal(const Expression& a, const Expression& b) { return equal_nodes(a.root(), b.root()); }

std::string_view function_name(Function fn) {
  switch (fn) {
    case Function::Exp: return "exp";
    case Function::Sqrt: return "sqrt";
    case Function::Log: return "log";
    case Function::Sin: return "sin";
    case Function::Cos: return "cos";
  }
  return "?";
}

}  // namespace qthermo::expr
