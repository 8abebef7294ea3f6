// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "esem/term.hpp"

namespace esem {

// Ground or open (dis)equality. Predicate literals are folded into this
// shape: P becomes P = true and (not P) becomes P = false.
struct Literal {
  bool eq = true;
  Term lhs = nullptr;
  Term rhs = nullptr;

  bool operator==(const Literal& o) const {
    return eq == o.eq && lhs == o.lhs && rhs == o.rhs;
  }
};

Literal make_eq(Term a, Term b);
Literal make_neq(Term a, Term b);
Literal make_pred(Term p, bool positive);
int compare(const Literal& a, const Literal& b);
std::string to_string(const Literal& l);
bool is_ground(const Literal& l);

struct Tag {
  std::string name;
  std::vector<Term> params;  // non-empty only for inner quantifiers

  bool parameterised() const { return !params.empty(); }
  bool operator==(const Tag& o) const { return name == o.name && params == o.params; }
};

int compare(const Tag& a, const Tag& b);
std::string to_string(const Tag& t);

struct Quantifier;
using QuantPtr = std::shared_ptr<const Quantifier>;

using ExtLiteral = std::variant<Literal, QuantPtr>;
using Clause = std::vector<ExtLiteral>;
using Ecnf = std::vector<Clause>;

struct Quantifier {
  Tag tag;
  std::vector<Term> vars;
  std::vector<std::vector<Term>> triggers;
  Ecnf body;
  std::string key;  // canonical text, used for ordering and identity
};

// Builds a quantifier and fills in its canonical key. Body is normalised.
QuantPtr make_quantifier(Tag tag, std::vector<Term> vars,
                         std::vector<std::vector<Term>> triggers, Ecnf body);

int compare(const ExtLiteral& a, const ExtLiteral& b);
int compare(const Clause& a, const Clause& b);
std::string to_string(const ExtLiteral& l);
std::string to_string(const Clause& c);
std::string to_string(const Ecnf& f);
std::string to_string(const Quantifier& q);

// Sort and deduplicate in place.
void normalise(Clause& c);
void normalise(Ecnf& f);

struct QuantLess {
  bool operator()(const QuantPtr& a, const QuantPtr& b) const { return a->key < b->key; }
};

struct ClauseLess {
  bool operator()(const Clause& a, const Clause& b) const { return compare(a, b) < 0; }
};

using Subst = std::map<Term, Term>;

Term substitute(Term t, const Subst& s);
Literal substitute(const Literal& l, const Subst& s);
QuantPtr substitute(const QuantPtr& q, const Subst& s);
Clause substitute(const Clause& c, const Subst& s);
Ecnf substitute(const Ecnf& f, const Subst& s);

// Checked entry point: lengths and sorts must agree and terms must be ground.
// Throws std::invalid_argument otherwise.
Ecnf substitute(const Ecnf& body, const std::vector<Term>& vars,
                const std::vector<Term>& terms);

struct Filtered {
  std::vector<QuantPtr> quantifiers;
  std::vector<Literal> literals;
};

Filtered filter_literals_and_quantifiers(const std::vector<ExtLiteral>& units);

// Empty result means the quantifier (and every nested one) is well formed.
std::vector<std::string> validate_quantifier(const Quantifier& q);

}  // namespace esem
