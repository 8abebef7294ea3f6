// SPDX-License-Identifier: Apache-2.0
#include "esem/formula.hpp"

#include <algorithm>
#include <stdexcept>

namespace esem {

namespace {

std::pair<Term, Term> orient(Term a, Term b) {
  if (is_bool_const(a) && !is_bool_const(b)) return {b, a};
  if (is_bool_const(b) && !is_bool_const(a)) return {a, b};
  if (compare(b, a) < 0) return {b, a};
  return {a, b};
}

}  // namespace

Literal make_eq(Term a, Term b) {
  auto [l, r] = orient(a, b);
  return Literal{true, l, r};
}

Literal make_neq(Term a, Term b) {
  auto [l, r] = orient(a, b);
  return Literal{false, l, r};
}

Literal make_pred(Term p, bool positive) { return make_eq(p, positive ? top() : bot()); }

int compare(const Literal& a, const Literal& b) {
  if (a.eq != b.eq) return a.eq ? -1 : 1;
  if (int c = compare(a.lhs, b.lhs)) return c;
  return compare(a.rhs, b.rhs);
}

std::string to_string(const Literal& l) {
  if (l.eq && l.rhs == top() && l.lhs->sort == kBool && !is_bool_const(l.lhs))
    return to_string(l.lhs);
  if (l.eq && l.rhs == bot() && l.lhs->sort == kBool && !is_bool_const(l.lhs))
    return "(not " + to_string(l.lhs) + ")";
  std::string s = "(= " + to_string(l.lhs) + " " + to_string(l.rhs) + ")";
  return l.eq ? s : "(not " + s + ")";
}

bool is_ground(const Literal& l) { return l.lhs->ground && l.rhs->ground; }

int compare(const Tag& a, const Tag& b) {
  if (int c = a.name.compare(b.name)) return c < 0 ? -1 : 1;
  return compare(a.params, b.params);
}

std::string to_string(const Tag& t) {
  if (!t.parameterised()) return t.name;
  std::string s = t.name + "(";
  for (std::size_t i = 0; i < t.params.size(); ++i) {
    if (i) s += ",";
    s += to_string(t.params[i]);
  }
  return s + ")";
}

int compare(const ExtLiteral& a, const ExtLiteral& b) {
  if (a.index() != b.index()) return a.index() < b.index() ? -1 : 1;
  if (a.index() == 0) return compare(std::get<0>(a), std::get<0>(b));
  const auto& ka = std::get<1>(a)->key;
  const auto& kb = std::get<1>(b)->key;
  return ka < kb ? -1 : (ka == kb ? 0 : 1);
}

int compare(const Clause& a, const Clause& b) {
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i)
    if (int c = compare(a[i], b[i])) return c;
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  return 0;
}

void normalise(Clause& c) {
  std::sort(c.begin(), c.end(),
            [](const ExtLiteral& x, const ExtLiteral& y) { return compare(x, y) < 0; });
  c.erase(std::unique(c.begin(), c.end(),
                      [](const ExtLiteral& x, const ExtLiteral& y) { return compare(x, y) == 0; }),
          c.end());
}

void normalise(Ecnf& f) {
  for (auto& c : f) normalise(c);
  std::sort(f.begin(), f.end(), ClauseLess{});
  f.erase(std::unique(f.begin(), f.end(),
                      [](const Clause& x, const Clause& y) { return compare(x, y) == 0; }),
          f.end());
}

std::string to_string(const ExtLiteral& l) {
  if (l.index() == 0) return to_string(std::get<0>(l));
  return to_string(*std::get<1>(l));
}

std::string to_string(const Clause& c) {
  if (c.size() == 1) return to_string(c[0]);
  std::string s = "(or";
  for (const auto& l : c) s += " " + to_string(l);
  return s + ")";
}

std::string to_string(const Ecnf& f) {
  if (f.size() == 1) return to_string(f[0]);
  std::string s = "(and";
  for (const auto& c : f) s += " " + to_string(c);
  return s + ")";
}

std::string to_string(const Quantifier& q) {
  std::string s = "(forall (";
  for (std::size_t i = 0; i < q.vars.size(); ++i) {
    if (i) s += " ";
    s += "(" + q.vars[i]->name + " " + q.vars[i]->sort + ")";
  }
  s += ")";
  if (q.tag.parameterised()) {
    s += " (inner-tag " + q.tag.name + " " + to_string(q.tag.params) + ")";
  }
  for (const auto& ts : q.triggers) {
    s += " (:trigger";
    for (Term t : ts) s += " " + to_string(t);
    s += ")";
  }
  return s + " " + to_string(q.body) + ")";
}

QuantPtr make_quantifier(Tag tag, std::vector<Term> vars,
                         std::vector<std::vector<Term>> triggers, Ecnf body) {
  auto q = std::make_shared<Quantifier>();
  q->tag = std::move(tag);
  q->vars = std::move(vars);
  q->triggers = std::move(triggers);
  normalise(body);
  q->body = std::move(body);
  q->key = q->tag.name + " " + to_string(*q);
  return q;
}

Term substitute(Term t, const Subst& s) {
  if (t->ground || s.empty()) return t;
  if (t->is_var()) {
    auto it = s.find(t);
    return it == s.end() ? t : it->second;
  }
  std::vector<Term> args;
  args.reserve(t->args.size());
  bool changed = false;
  for (Term a : t->args) {
    Term b = substitute(a, s);
    changed = changed || b != a;
    args.push_back(b);
  }
  return changed ? mk_app(t->name, t->sort, std::move(args)) : t;
}

Literal substitute(const Literal& l, const Subst& s) {
  Term a = substitute(l.lhs, s);
  Term b = substitute(l.rhs, s);
  return l.eq ? make_eq(a, b) : make_neq(a, b);
}

QuantPtr substitute(const QuantPtr& q, const Subst& s) {
  Subst inner = s;
  for (Term v : q->vars) inner.erase(v);
  if (inner.empty()) return q;
  Tag tag = q->tag;
  for (auto& p : tag.params) p = substitute(p, inner);
  std::vector<std::vector<Term>> trig = q->triggers;
  for (auto& ts : trig)
    for (auto& t : ts) t = substitute(t, inner);
  return make_quantifier(std::move(tag), q->vars, std::move(trig), substitute(q->body, inner));
}

Clause substitute(const Clause& c, const Subst& s) {
  Clause out;
  out.reserve(c.size());
  for (const auto& l : c) {
    if (l.index() == 0)
      out.emplace_back(substitute(std::get<0>(l), s));
    else
      out.emplace_back(substitute(std::get<1>(l), s));
  }
  normalise(out);
  return out;
}

Ecnf substitute(const Ecnf& f, const Subst& s) {
  Ecnf out;
  out.reserve(f.size());
  for (const auto& c : f) out.push_back(substitute(c, s));
  normalise(out);
  return out;
}

Ecnf substitute(const Ecnf& body, const std::vector<Term>& vars,
                const std::vector<Term>& terms) {
  if (vars.size() != terms.size()) throw std::invalid_argument("substitution arity mismatch");
  Subst s;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (!terms[i]->ground)
      throw std::invalid_argument("non-ground term " + to_string(terms[i]));
    if (vars[i]->sort != terms[i]->sort)
      throw std::invalid_argument("sort mismatch for " + vars[i]->name + ": expected " +
                                  vars[i]->sort + ", got " + terms[i]->sort);
    s[vars[i]] = terms[i];
  }
  return substitute(body, s);
}

Filtered filter_literals_and_quantifiers(const std::vector<ExtLiteral>& units) {
  Filtered f;
  for (const auto& u : units) {
    if (u.index() == 0)
      f.literals.push_back(std::get<0>(u));
    else
      f.quantifiers.push_back(std::get<1>(u));
  }
  return f;
}

namespace {

bool has_equality(Term t) {
  if (t->is_app() && t->name == "=") return true;
  for (Term a : t->args)
    if (has_equality(a)) return true;
  return false;
}

void validate_into(const Quantifier& q, std::vector<std::string>& out) {
  const std::string where = "quantifier " + to_string(q.tag) + ": ";
  if (q.vars.empty()) out.push_back(where + "no bound variables");
  if (q.triggers.empty()) out.push_back(where + "no trigger sets");
  for (std::size_t k = 0; k < q.triggers.size(); ++k) {
    const auto& ts = q.triggers[k];
    const std::string tw = where + "trigger set " + std::to_string(k) + ": ";
    if (ts.empty()) out.push_back(tw + "empty trigger set");
    for (Term v : q.vars) {
      bool covered = std::any_of(ts.begin(), ts.end(), [&](Term t) { return occurs(v, t); });
      if (!covered) out.push_back(tw + "variable " + v->name + " not covered");
    }
    for (Term t : ts) {
      bool has_bound = std::any_of(q.vars.begin(), q.vars.end(),
                                   [&](Term v) { return occurs(v, t); });
      if (!has_bound)
        out.push_back(tw + "term " + to_string(t) + " has no quantified variable");
      if (t->is_var())
        out.push_back(tw + "term " + to_string(t) + " has no uninterpreted function application");
      if (has_equality(t))
        out.push_back(tw + "term " + to_string(t) + " contains an interpreted symbol");
    }
  }
  for (const auto& c : q.body)
    for (const auto& l : c)
      if (l.index() == 1) validate_into(*std::get<1>(l), out);
}

}  // namespace

std::vector<std::string> validate_quantifier(const Quantifier& q) {
  std::vector<std::string> out;
  validate_into(q, out);
  return out;
}

}  // namespace esem
