// SPDX-License-Identifier: Apache-2.0
#include "esem/problem.hpp"

#include <algorithm>
#include <cstdio>
#include <set>

namespace esem {

bool Problem::has_sort(const std::string& s) const {
  return std::find(sorts.begin(), sorts.end(), s) != sorts.end();
}

const FunctionSymbol* Problem::function(const std::string& name) const {
  auto it = functions.find(name);
  return it == functions.end() ? nullptr : &it->second;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string problem_digest(const Problem& p) { return hex64(fnv1a(print_problem(p))); }

namespace {

const std::set<std::string> kReserved = {"=",     "not",    "and",    "or",     "forall",
                                         "true",  "false",  "sort",   "fun",    "skolem",
                                         "const", "axiom",  "assert", "measure", "inner-tag",
                                         ":trigger"};

[[noreturn]] void fail(const Sexpr& at, const std::string& msg) {
  throw ParseError(at.line, at.col, msg);
}

struct Scope {
  std::vector<Term> vars;

  Term lookup(const std::string& name) const {
    for (auto it = vars.rbegin(); it != vars.rend(); ++it)
      if ((*it)->name == name) return *it;
    return nullptr;
  }
};

class Parser {
 public:
  explicit Parser(Problem& p, bool auto_declare = false) : p_(p), auto_(auto_declare) {}

  void top_level(const Sexpr& s) {
    if (s.atom || s.items.empty()) fail(s, "expected a declaration");
    const Sexpr& h = s.items[0];
    if (h.is("sort")) return decl_sort(s);
    if (h.is("fun")) return decl_fun(s, SymbolKind::Fun);
    if (h.is("skolem")) return decl_fun(s, SymbolKind::Skolem);
    if (h.is("const")) return decl_const(s);
    if (h.is("axiom")) return decl_axiom(s);
    if (h.is("assert")) return decl_assert(s);
    if (h.is("measure")) return decl_measure(s);
    fail(h, "unknown declaration " + to_string(h));
  }

  Literal literal(const Sexpr& s, const Scope& sc) {
    if (s.head_is("not")) {
      if (s.items.size() != 2) fail(s, "not expects one argument");
      const Sexpr& inner = s.items[1];
      if (inner.head_is("=")) {
        auto [a, b] = eq_sides(inner, sc);
        return make_neq(a, b);
      }
      Term t = term(inner, sc, kBool);
      return make_pred(t, false);
    }
    if (s.head_is("=")) {
      auto [a, b] = eq_sides(s, sc);
      return make_eq(a, b);
    }
    Term t = term(s, sc, kBool);
    return make_pred(t, true);
  }

  Term term(const Sexpr& s, const Scope& sc, const std::string& expected) {
    Term t = term_any(s, sc, expected);
    if (!expected.empty() && t->sort != expected)
      fail(s, "sort mismatch: expected " + expected + ", got " + t->sort + " for " + to_string(t));
    return t;
  }

 private:
  Problem& p_;
  bool auto_;
  std::set<std::string> tags_;

  std::string ident(const Sexpr& s, const char* what) {
    if (!s.atom) fail(s, std::string("expected ") + what);
    return s.text;
  }

  std::string sort_ref(const Sexpr& s) {
    std::string n = ident(s, "a sort name");
    if (!p_.has_sort(n)) fail(s, "unknown sort " + n);
    return n;
  }

  void fresh_symbol(const Sexpr& s, const std::string& n) {
    if (kReserved.count(n)) fail(s, "reserved word " + n);
    if (p_.functions.count(n)) fail(s, "duplicate declaration of " + n);
  }

  void add_symbol(FunctionSymbol f) {
    p_.function_order.push_back(f.name);
    p_.functions.emplace(f.name, std::move(f));
  }

  void decl_sort(const Sexpr& s) {
    if (s.items.size() != 2) fail(s, "sort expects a name");
    std::string n = ident(s.items[1], "a sort name");
    if (p_.has_sort(n)) fail(s.items[1], "duplicate sort " + n);
    p_.sorts.push_back(n);
  }

  void decl_fun(const Sexpr& s, SymbolKind kind) {
    if (s.items.size() != 4 || s.items[2].atom) fail(s, "expected (" + s.items[0].text + " name (args) result)");
    std::string n = ident(s.items[1], "a function name");
    fresh_symbol(s.items[1], n);
    FunctionSymbol f{n, {}, "", kind};
    for (const auto& a : s.items[2].items) f.arg_sorts.push_back(sort_ref(a));
    f.result = sort_ref(s.items[3]);
    add_symbol(std::move(f));
  }

  void decl_const(const Sexpr& s) {
    if (s.items.size() != 3) fail(s, "expected (const name sort)");
    std::string n = ident(s.items[1], "a constant name");
    fresh_symbol(s.items[1], n);
    add_symbol(FunctionSymbol{n, {}, sort_ref(s.items[2]), SymbolKind::Const});
  }

  void decl_assert(const Sexpr& s) {
    if (s.items.size() != 2) fail(s, "assert expects one literal");
    Literal l = literal(s.items[1], Scope{});
    if (!is_ground(l)) fail(s.items[1], "asserted literal is not ground");
    p_.literals.push_back(l);
  }

  void decl_axiom(const Sexpr& s) {
    if (s.items.size() != 3) fail(s, "expected (axiom name (forall ...))");
    std::string n = ident(s.items[1], "an axiom name");
    if (tags_.count(n)) fail(s.items[1], "duplicate tag " + n);
    tags_.insert(n);
    QuantPtr q = quantifier(s.items[2], Scope{}, Tag{n, {}});
    auto problems = validate_quantifier(*q);
    if (!problems.empty()) fail(s.items[2], problems.front());
    for (const auto& other : p_.axioms) {
      if (to_string(*other) == to_string(*q))
        p_.warnings.push_back("axioms " + other->tag.name + " and " + n + " are identical up to their tags");
    }
    p_.axioms.push_back(q);
  }

  void decl_measure(const Sexpr& s) {
    MeasureConfig cfg;
    for (std::size_t i = 1; i < s.items.size(); ++i) {
      const Sexpr& it = s.items[i];
      if (it.atom || it.items.empty()) fail(it, "bad measure entry");
      if (it.head_is("set-sort") && it.items.size() == 2) {
        cfg.set_sort = sort_ref(it.items[1]);
      } else if (it.head_is("elem-sort") && it.items.size() == 2) {
        cfg.elem_sort = sort_ref(it.items[1]);
      } else if (it.head_is("skolem") && it.items.size() == 3 && !it.items[2].atom) {
        std::string n = ident(it.items[1], "a function name");
        const FunctionSymbol* f = p_.function(n);
        if (!f) fail(it.items[1], "unknown symbol " + n);
        MeasureConfig::Lifted l{n, {}};
        for (const auto& a : it.items[2].items) l.arg_sorts.push_back(sort_ref(a));
        if (l.arg_sorts != f->arg_sorts) fail(it, "argument sorts of " + n + " do not match its declaration");
        cfg.skolems.push_back(std::move(l));
      } else if (it.head_is("nested") && it.items.size() == 3 && !it.items[2].atom) {
        std::string n = ident(it.items[1], "a tag");
        if (!tags_.count(n)) fail(it.items[1], "unknown tag " + n);
        MeasureConfig::Nested nt{n, {}};
        for (const auto& a : it.items[2].items) nt.param_sorts.push_back(sort_ref(a));
        cfg.nested.push_back(std::move(nt));
      } else {
        fail(it, "bad measure entry " + to_string(it));
      }
    }
    if (cfg.set_sort.empty() || cfg.elem_sort.empty()) fail(s, "measure needs set-sort and elem-sort");
    p_.measure = std::move(cfg);
  }

  std::vector<Term> binders(const Sexpr& s, const Scope& sc) {
    if (s.atom || s.items.empty()) fail(s, "expected a non-empty binder list");
    std::vector<Term> out;
    for (const auto& b : s.items) {
      if (b.atom || b.items.size() != 2) fail(b, "expected (name sort)");
      std::string n = ident(b.items[0], "a variable name");
      if (kReserved.count(n)) fail(b.items[0], "reserved word " + n);
      if (sc.lookup(n)) fail(b.items[0], "variable " + n + " shadows an outer variable");
      if (p_.functions.count(n)) fail(b.items[0], "variable " + n + " shadows a function symbol");
      for (Term v : out)
        if (v->name == n) fail(b.items[0], "duplicate variable " + n);
      out.push_back(mk_var(n, sort_ref(b.items[1])));
    }
    return out;
  }

  QuantPtr quantifier(const Sexpr& s, const Scope& outer, Tag tag) {
    if (!s.head_is("forall") || s.items.size() < 4) fail(s, "expected (forall (binders) (:trigger ...)+ body)");
    Scope sc = outer;
    std::vector<Term> vars = binders(s.items[1], outer);
    for (Term v : vars) sc.vars.push_back(v);
    std::size_t i = 2;
    if (s.items[i].head_is("inner-tag")) {
      const Sexpr& it = s.items[i];
      if (outer.vars.empty()) fail(it, "inner-tag on a top-level quantifier");
      if (it.items.size() != 3 || it.items[2].atom) fail(it, "expected (inner-tag name (vars))");
      tag.name = ident(it.items[1], "a tag name");
      std::set<Term> params;
      for (const auto& pv : it.items[2].items) {
        Term v = outer.lookup(ident(pv, "a variable"));
        if (!v) fail(pv, "inner-tag parameter " + pv.text + " is not an enclosing variable");
        tag.params.push_back(v);
        params.insert(v);
      }
      std::set<Term> need(outer.vars.begin(), outer.vars.end());
      if (params != need || params.size() != tag.params.size())
        fail(it, "inner-tag parameters must list the enclosing variables exactly once");
      ++i;
    } else if (!outer.vars.empty()) {
      fail(s, "inner quantifier needs an inner-tag");
    }
    std::vector<std::vector<Term>> triggers;
    for (; i < s.items.size() && s.items[i].head_is(":trigger"); ++i) {
      std::vector<Term> ts;
      for (std::size_t k = 1; k < s.items[i].items.size(); ++k)
        ts.push_back(term(s.items[i].items[k], sc, ""));
      if (ts.empty()) fail(s.items[i], "empty trigger set");
      triggers.push_back(std::move(ts));
    }
    if (triggers.empty()) fail(s, "quantifier without trigger sets");
    if (i + 1 != s.items.size()) fail(s, "expected exactly one body after the triggers");
    Ecnf body = ecnf(s.items[i], sc);
    return make_quantifier(std::move(tag), std::move(vars), std::move(triggers), std::move(body));
  }

  Ecnf ecnf(const Sexpr& s, const Scope& sc) {
    Ecnf f;
    if (s.head_is("and")) {
      if (s.items.size() < 2) fail(s, "empty conjunction");
      for (std::size_t i = 1; i < s.items.size(); ++i) f.push_back(clause(s.items[i], sc));
    } else {
      f.push_back(clause(s, sc));
    }
    return f;
  }

  Clause clause(const Sexpr& s, const Scope& sc) {
    Clause c;
    if (s.head_is("or")) {
      if (s.items.size() < 2) fail(s, "empty disjunction");
      for (std::size_t i = 1; i < s.items.size(); ++i) c.push_back(ext_literal(s.items[i], sc));
    } else {
      c.push_back(ext_literal(s, sc));
    }
    return c;
  }

  ExtLiteral ext_literal(const Sexpr& s, const Scope& sc) {
    if (s.head_is("forall")) return quantifier(s, sc, Tag{});
    return literal(s, sc);
  }

  std::pair<Term, Term> eq_sides(const Sexpr& s, const Scope& sc) {
    if (s.items.size() != 3) fail(s, "= expects two arguments");
    const Sexpr& l = s.items[1];
    const Sexpr& r = s.items[2];
    std::string ls = sort_hint(l, sc);
    std::string rs = sort_hint(r, sc);
    if (ls.empty() && rs.empty()) {
      Term a = term(l, sc, "");
      return {a, term(r, sc, a->sort)};
    }
    if (ls.empty()) {
      Term b = term(r, sc, "");
      return {term(l, sc, b->sort), b};
    }
    Term a = term(l, sc, "");
    return {a, term(r, sc, a->sort)};
  }

  // Sort of an expression when it can be read off without declaring anything.
  std::string sort_hint(const Sexpr& s, const Scope& sc) const {
    const std::string& h = s.atom ? s.text : (s.items.empty() || !s.items[0].atom ? std::string() : s.items[0].text);
    if (h.empty()) return "";
    if (s.atom) {
      if (Term v = sc.lookup(h)) return v->sort;
    }
    if (h == "true" || h == "false") return kBool;
    if (const FunctionSymbol* f = p_.function(h)) return f->result;
    return "";
  }

  Term term_any(const Sexpr& s, const Scope& sc, const std::string& expected) {
    if (s.atom) {
      const std::string& n = s.text;
      if (Term v = sc.lookup(n)) return v;
      if (n == "true") return top();
      if (n == "false") return bot();
      const FunctionSymbol* f = p_.function(n);
      if (!f && auto_ && !expected.empty() && !kReserved.count(n)) {
        add_symbol(FunctionSymbol{n, {}, expected, SymbolKind::Const});
        f = p_.function(n);
      }
      if (!f) fail(s, "unknown symbol " + n);
      if (!f->arg_sorts.empty()) fail(s, "function " + n + " expects " + std::to_string(f->arg_sorts.size()) + " arguments");
      return mk_app(n, f->result);
    }
    if (s.items.empty()) fail(s, "empty term");
    const Sexpr& h = s.items[0];
    if (!h.atom) fail(h, "expected a function symbol");
    if (h.text == "=" || h.text == "not" || h.text == "and" || h.text == "or")
      fail(h, "interpreted symbol " + h.text + " inside a term");
    const FunctionSymbol* f = p_.function(h.text);
    if (!f) fail(h, "unknown symbol " + h.text);
    if (f->arg_sorts.size() + 1 != s.items.size())
      fail(s, "function " + h.text + " expects " + std::to_string(f->arg_sorts.size()) + " arguments");
    std::vector<Term> args;
    std::vector<std::string> sorts = f->arg_sorts;
    std::string res = f->result;
    std::string name = f->name;
    for (std::size_t i = 1; i < s.items.size(); ++i) args.push_back(term(s.items[i], sc, sorts[i - 1]));
    return mk_app(name, res, std::move(args));
  }
};

}  // namespace

Problem parse_problem(const std::string& text) {
  Problem p;
  p.sorts.push_back(kBool);
  Parser ps(p);
  for (const auto& s : read_sexprs(text)) ps.top_level(s);
  return p;
}

Literal parse_literal(Problem& p, const std::string& text, bool auto_declare) {
  auto xs = read_sexprs(text);
  if (xs.size() != 1) throw ParseError(1, 1, "expected exactly one literal");
  Parser ps(p, auto_declare);
  Literal l = ps.literal(xs[0], Scope{});
  if (!is_ground(l)) throw ParseError(1, 1, "literal is not ground");
  return l;
}

std::string print_problem(const Problem& p) {
  std::string out;
  for (const auto& s : p.sorts)
    if (s != kBool) out += "(sort " + s + ")\n";
  for (const auto& n : p.function_order) {
    const FunctionSymbol& f = p.functions.at(n);
    if (f.kind == SymbolKind::Const) {
      out += "(const " + f.name + " " + f.result + ")\n";
      continue;
    }
    out += std::string(f.kind == SymbolKind::Skolem ? "(skolem " : "(fun ") + f.name + " (";
    for (std::size_t i = 0; i < f.arg_sorts.size(); ++i) out += (i ? " " : "") + f.arg_sorts[i];
    out += ") " + f.result + ")\n";
  }
  for (const auto& q : p.axioms) out += "(axiom " + q->tag.name + " " + to_string(*q) + ")\n";
  for (const auto& l : p.literals) out += "(assert " + to_string(l) + ")\n";
  if (p.measure) {
    const auto& m = *p.measure;
    out += "(measure (set-sort " + m.set_sort + ") (elem-sort " + m.elem_sort + ")";
    for (const auto& s : m.skolems) {
      out += " (skolem " + s.name + " (";
      for (std::size_t i = 0; i < s.arg_sorts.size(); ++i) out += (i ? " " : "") + s.arg_sorts[i];
      out += "))";
    }
    for (const auto& n : m.nested) {
      out += " (nested " + n.tag + " (";
      for (std::size_t i = 0; i < n.param_sorts.size(); ++i) out += (i ? " " : "") + n.param_sorts[i];
      out += "))";
    }
    out += ")\n";
  }
  return out;
}

}  // namespace esem
