#pragma once

#include <array>
#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "polyrel/diagram.hpp"

namespace polyrel {

// ASCII surface syntax.
//   diagram := diagram ";" diagram | diagram "*" diagram | atom
//   atom    := copy | del | add | zero | cocopy | codel | coadd | cozero
//            | geq | one | reg | leq
//            | scalar(q) | coscalar(q) | id(n) | sym(n,m) | cup(n) | cap(n)
//            | "(" diagram ")"
// ";" binds looser than "*"; both associate to the left. "leq" is sugar for
// the order generator wrapped in the compact-closed cup/cap.

namespace detail {

struct Token {
  enum class Kind { Name, Number, Semi, Star, LParen, RParen, Comma, End };
  Kind kind;
  std::string text;
  int line;
  int column;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_ws();
    int line = line_, col = col_;
    if (pos_ >= src_.size()) return {Token::Kind::End, "", line, col};
    char c = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < src_.size() && std::isalpha(static_cast<unsigned char>(src_[pos_]))) advance();
      return {Token::Kind::Name, std::string(src_.substr(start, pos_ - start)), line, col};
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '-' && pos_ + 1 < src_.size() &&
         std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
      std::size_t start = pos_;
      if (c == '-') advance();
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance();
      if (pos_ < src_.size() && src_[pos_] == '/') {
        advance();
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance();
      }
      return {Token::Kind::Number, std::string(src_.substr(start, pos_ - start)), line, col};
    }
    advance();
    switch (c) {
      case ';': return {Token::Kind::Semi, ";", line, col};
      case '*': return {Token::Kind::Star, "*", line, col};
      case '(': return {Token::Kind::LParen, "(", line, col};
      case ')': return {Token::Kind::RParen, ")", line, col};
      case ',': return {Token::Kind::Comma, ",", line, col};
      default: throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }
  }

 private:
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }
  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) advance();
  }
  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : lexer_(src) { shift(); }

  Diagram parse() {
    Diagram d = parse_seq();
    expect(Token::Kind::End, "end of input");
    return d;
  }

 private:
  Diagram parse_seq() {
    Diagram d = parse_tensor();
    while (cur_.kind == Token::Kind::Semi) {
      shift();
      d = seq(d, parse_tensor());
    }
    return d;
  }

  Diagram parse_tensor() {
    Diagram d = parse_atom();
    while (cur_.kind == Token::Kind::Star) {
      shift();
      d = tensor(d, parse_atom());
    }
    return d;
  }

  Diagram parse_atom() {
    if (cur_.kind == Token::Kind::LParen) {
      shift();
      Diagram d = parse_seq();
      expect(Token::Kind::RParen, "')'");
      return d;
    }
    if (cur_.kind != Token::Kind::Name)
      throw ParseError("expected a generator or '('", cur_.line, cur_.column);
    Token name = cur_;
    shift();
    const std::string& s = name.text;
    if (s == "copy") return gen(GenKind::Copy);
    if (s == "del") return gen(GenKind::Delete);
    if (s == "add") return gen(GenKind::Add);
    if (s == "zero") return gen(GenKind::Zero);
    if (s == "cocopy") return gen(GenKind::CoCopy);
    if (s == "codel") return gen(GenKind::CoDelete);
    if (s == "coadd") return gen(GenKind::CoAdd);
    if (s == "cozero") return gen(GenKind::CoZero);
    if (s == "geq") return gen(GenKind::Geq);
    if (s == "leq") return leq_wire();
    if (s == "one") return gen(GenKind::One);
    if (s == "reg") return gen(GenKind::Register);
    if (s == "scalar") return scalar(rational_arg(name));
    if (s == "coscalar") return coscalar(rational_arg(name));
    if (s == "id") return id(nat_args<1>(name)[0]);
    if (s == "cup") return cup(nat_args<1>(name)[0]);
    if (s == "cap") return cap(nat_args<1>(name)[0]);
    if (s == "sym") {
      auto a = nat_args<2>(name);
      return sym(a[0], a[1]);
    }
    throw ParseError("unknown generator '" + s + "'", name.line, name.column);
  }

  Rational rational_arg(const Token& name) {
    expect(Token::Kind::LParen, "'('");
    if (cur_.kind != Token::Kind::Number)
      throw ParseError("expected a rational argument for '" + name.text + "'", cur_.line,
                       cur_.column);
    auto r = try_parse_rational(cur_.text);
    if (!r) throw ParseError("invalid rational '" + cur_.text + "'", cur_.line, cur_.column);
    shift();
    expect(Token::Kind::RParen, "')'");
    return *r;
  }

  template <int N>
  std::array<std::size_t, N> nat_args(const Token& name) {
    expect(Token::Kind::LParen, "'('");
    std::array<std::size_t, N> out{};
    for (int i = 0; i < N; ++i) {
      if (i) expect(Token::Kind::Comma, "','");
      if (cur_.kind != Token::Kind::Number || cur_.text.find('/') != std::string::npos ||
          cur_.text.find('-') != std::string::npos)
        throw ParseError("expected a natural number argument for '" + name.text + "'", cur_.line,
                         cur_.column);
      out[i] = static_cast<std::size_t>(std::stoull(cur_.text));
      shift();
    }
    expect(Token::Kind::RParen, "')'");
    return out;
  }

  void expect(Token::Kind kind, const char* what) {
    if (cur_.kind != kind)
      throw ParseError(std::string("expected ") + what, cur_.line, cur_.column);
    shift();
  }

  void shift() { cur_ = lexer_.next(); }

  Lexer lexer_;
  Token cur_{Token::Kind::End, "", 1, 1};
};

}  // namespace detail

inline Diagram parse_dsl(std::string_view text) { return detail::Parser(text).parse(); }

// Fully parenthesized canonical form; parse_dsl(print_dsl(d)) rebuilds d up
// to associativity normalization.
inline std::string print_dsl(const Diagram& d) {
  switch (d.tag()) {
    case Diagram::Tag::Gen:
      switch (d.gen().kind) {
        case GenKind::Copy: return "copy";
        case GenKind::Delete: return "del";
        case GenKind::Add: return "add";
        case GenKind::Zero: return "zero";
        case GenKind::CoCopy: return "cocopy";
        case GenKind::CoDelete: return "codel";
        case GenKind::CoAdd: return "coadd";
        case GenKind::CoZero: return "cozero";
        case GenKind::Geq: return "geq";
        case GenKind::One: return "one";
        case GenKind::Register: return "reg";
        case GenKind::Scalar: return "scalar(" + to_string(d.gen().scalar) + ")";
        case GenKind::CoScalar: return "coscalar(" + to_string(d.gen().scalar) + ")";
      }
      return "?";
    case Diagram::Tag::Id: return "id(" + std::to_string(d.id_width()) + ")";
    case Diagram::Tag::Sym:
      return "sym(" + std::to_string(d.sym_top()) + "," + std::to_string(d.sym_bottom()) + ")";
    case Diagram::Tag::Seq: return "(" + print_dsl(d.first()) + " ; " + print_dsl(d.second()) + ")";
    case Diagram::Tag::Tensor:
      return "(" + print_dsl(d.first()) + " * " + print_dsl(d.second()) + ")";
  }
  return "?";
}

}  // namespace polyrel
