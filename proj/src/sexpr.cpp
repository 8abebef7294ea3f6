// SPDX-License-Identifier: Apache-2.0
#include "esem/sexpr.hpp"

#include <cctype>

namespace esem {
namespace {

struct Reader {
  const std::string& src;
  std::size_t pos = 0;
  int line = 1;
  int col = 1;

  bool eof() const { return pos >= src.size(); }
  char peek() const { return src[pos]; }

  void advance() {
    if (src[pos] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  }

  void skip_ws() {
    while (!eof()) {
      char c = peek();
      if (c == ';') {
        while (!eof() && peek() != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  Sexpr read() {
    skip_ws();
    if (eof()) throw ParseError(line, col, "unexpected end of input");
    Sexpr s;
    s.line = line;
    s.col = col;
    char c = peek();
    if (c == ')') throw ParseError(line, col, "unexpected ')'");
    if (c == '(') {
      s.atom = false;
      advance();
      for (;;) {
        skip_ws();
        if (eof()) throw ParseError(s.line, s.col, "unbalanced '('");
        if (peek() == ')') {
          advance();
          break;
        }
        s.items.push_back(read());
      }
      return s;
    }
    while (!eof()) {
      c = peek();
      if (c == '(' || c == ')' || c == ';' || std::isspace(static_cast<unsigned char>(c))) break;
      if (static_cast<unsigned char>(c) < 0x20 || c == '"')
        throw ParseError(line, col, std::string("unexpected character '") + c + "'");
      s.text += c;
      advance();
    }
    return s;
  }
};

}  // namespace

std::vector<Sexpr> read_sexprs(const std::string& text) {
  Reader r{text};
  std::vector<Sexpr> out;
  for (;;) {
    r.skip_ws();
    if (r.eof()) break;
    out.push_back(r.read());
  }
  return out;
}

std::string to_string(const Sexpr& s) {
  if (s.atom) return s.text;
  std::string out = "(";
  for (std::size_t i = 0; i < s.items.size(); ++i) {
    if (i) out += " ";
    out += to_string(s.items[i]);
  }
  return out + ")";
}

}  // namespace esem
