// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace esem {

enum class Kind : std::uint8_t { Var, App };

struct Node;
using Term = const Node*;

// Hash-consed term node. Two terms are syntactically equal iff their
// pointers are equal.
struct Node {
  Kind kind;
  std::string name;
  std::string sort;
  std::vector<Term> args;
  std::size_t size;
  std::size_t hash;
  bool ground;

  bool is_var() const { return kind == Kind::Var; }
  bool is_app() const { return kind == Kind::App; }
};

inline const std::string kBool = "Bool";
inline const std::string kTrue = "true";
inline const std::string kFalse = "false";

Term mk_var(const std::string& name, const std::string& sort);
Term mk_app(const std::string& name, const std::string& sort,
            std::vector<Term> args = {});
Term top();
Term bot();
bool is_bool_const(Term t);

// Structural total order: size, then name, then sort, then kind, then args.
int compare(Term a, Term b);

struct TermLess {
  bool operator()(Term a, Term b) const { return compare(a, b) < 0; }
};

int compare(const std::vector<Term>& a, const std::vector<Term>& b);

std::string to_string(Term t);
std::string to_string(const std::vector<Term>& ts);

bool contains_var(Term t);
bool occurs(Term var, Term t);
void collect_vars(Term t, std::vector<Term>& out);
void collect_subterms(Term t, std::vector<Term>& out);

}  // namespace esem
