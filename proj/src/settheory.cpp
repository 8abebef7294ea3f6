// SPDX-License-Identifier: Apache-2.0
#include "esem/settheory.hpp"

#include <algorithm>
#include <functional>

#include "settheory_text.inc"

namespace esem {

std::string to_string(AxiomClass c) {
  switch (c) {
    case AxiomClass::NonGenerative: return "non-generative";
    case AxiomClass::Generative: return "generative";
    case AxiomClass::Nested: return "nested";
    case AxiomClass::Inner: return "inner";
  }
  return "?";
}

namespace {

bool skolem_over_bound(Term t, const std::vector<std::string>& skolems,
                       const std::vector<Term>& bound) {
  if (t->is_app() && std::find(skolems.begin(), skolems.end(), t->name) != skolems.end()) {
    for (Term a : t->args)
      if (std::find(bound.begin(), bound.end(), a) != bound.end()) return true;
  }
  for (Term a : t->args)
    if (skolem_over_bound(a, skolems, bound)) return true;
  return false;
}

}  // namespace

AxiomClass classify(const Quantifier& q, const std::vector<std::string>& skolems) {
  if (q.tag.parameterised()) return AxiomClass::Inner;
  bool nested = false, generative = false;
  for (const auto& c : q.body)
    for (const auto& d : c) {
      if (d.index() == 1) {
        nested = true;
        continue;
      }
      const Literal& l = std::get<0>(d);
      if (skolem_over_bound(l.lhs, skolems, q.vars) || skolem_over_bound(l.rhs, skolems, q.vars))
        generative = true;
    }
  if (nested) return AxiomClass::Nested;
  return generative ? AxiomClass::Generative : AxiomClass::NonGenerative;
}

std::vector<LookupRow> lookup_rows(const std::vector<QuantPtr>& axioms) {
  std::vector<LookupRow> rows;
  for (const auto& q : axioms) {
    for (const auto& c : q->body) {
      if (c.size() >= 2) rows.push_back(LookupRow{q->tag.name, {}, q->vars, c});
      for (const auto& d : c) {
        if (d.index() != 1) continue;
        const auto& inner = std::get<1>(d);
        for (const auto& ic : inner->body)
          if (ic.size() >= 2) rows.push_back(LookupRow{inner->tag.name, q->vars, inner->vars, ic});
      }
    }
  }
  return rows;
}

namespace {

bool match_term(Term p, Term g, Subst& s) {
  if (p->is_var()) {
    auto it = s.find(p);
    if (it != s.end()) return it->second == g;
    if (p->sort != g->sort) return false;
    s.emplace(p, g);
    return true;
  }
  if (p->ground) return p == g;
  if (p->name != g->name || p->args.size() != g->args.size()) return false;
  for (std::size_t i = 0; i < p->args.size(); ++i)
    if (!match_term(p->args[i], g->args[i], s)) return false;
  return true;
}

// Both orientations are tried, since either may be the one that fits the
// remaining literals.
std::vector<Subst> match_literal(const Literal& p, const Literal& g, const Subst& in) {
  std::vector<Subst> out;
  if (p.eq != g.eq) return out;
  Subst a = in;
  if (match_term(p.lhs, g.lhs, a) && match_term(p.rhs, g.rhs, a)) out.push_back(std::move(a));
  Subst b = in;
  if (match_term(p.lhs, g.rhs, b) && match_term(p.rhs, g.lhs, b) && (out.empty() || out[0] != b))
    out.push_back(std::move(b));
  return out;
}

}  // namespace

std::vector<Subst> match_row(const LookupRow& row, const Clause& c) {
  std::vector<const Literal*> pats;
  for (const auto& d : row.shape)
    if (d.index() == 0) pats.push_back(&std::get<0>(d));
  std::vector<const Literal*> lits;
  for (const auto& d : c)
    if (d.index() == 0) lits.push_back(&std::get<0>(d));

  std::vector<Subst> found;
  std::function<void(std::size_t, const Subst&)> go = [&](std::size_t i, const Subst& s) {
    if (i == pats.size()) {
      for (Term v : row.outer_vars)
        if (!s.count(v)) return;
      for (Term v : row.vars)
        if (!s.count(v)) return;
      if (compare(substitute(row.shape, s), c) != 0) return;
      for (const auto& f : found)
        if (f == s) return;
      found.push_back(s);
      return;
    }
    for (const Literal* g : lits) {
      for (const auto& next : match_literal(*pats[i], *g, s)) go(i + 1, next);
    }
  };
  go(0, Subst{});
  return found;
}

std::vector<InnerTemplate> inner_templates(const std::vector<QuantPtr>& axioms) {
  std::vector<InnerTemplate> out;
  for (const auto& q : axioms)
    for (const auto& c : q->body)
      for (const auto& d : c)
        if (d.index() == 1) out.push_back(InnerTemplate{std::get<1>(d)->tag.name, q->vars, std::get<1>(d)});
  return out;
}

const std::string& settheory_source() {
  static const std::string s = kSettheoryText;
  return s;
}

const AxiomBundle& bundle() {
  static const AxiomBundle b = [] {
    AxiomBundle out;
    out.problem = parse_problem(settheory_source());
    for (const auto& n : out.problem.function_order) {
      const FunctionSymbol& f = out.problem.functions.at(n);
      if (f.kind == SymbolKind::Fun) out.functions.push_back(n);
      if (f.kind == SymbolKind::Skolem) out.skolems.push_back(n);
    }
    if (out.problem.measure)
      for (const auto& n : out.problem.measure->nested) out.nested_tags.push_back(n.tag);
    for (const auto& q : out.problem.axioms)
      out.classification[q->tag.name] = classify(*q, out.skolems);
    return out;
  }();
  return b;
}

}  // namespace esem
