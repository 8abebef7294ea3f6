// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace esem {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int col, const std::string& msg)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(col) + ": " + msg),
        line_(line),
        col_(col),
        msg_(msg) {}
  int line() const { return line_; }
  int col() const { return col_; }
  const std::string& message() const { return msg_; }

 private:
  int line_;
  int col_;
  std::string msg_;
};

struct Sexpr {
  bool atom = true;
  std::string text;
  std::vector<Sexpr> items;
  int line = 1;
  int col = 1;

  bool is(const std::string& s) const { return atom && text == s; }
  bool head_is(const std::string& s) const { return !atom && !items.empty() && items[0].is(s); }
};

// Reads every top-level expression. ';' starts a comment to end of line.
std::vector<Sexpr> read_sexprs(const std::string& text);

std::string to_string(const Sexpr& s);

}  // namespace esem
