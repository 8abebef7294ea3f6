// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "esem/settheory.hpp"
#include "esem/transitions.hpp"
#include "support/fixtures.hpp"

using namespace esem;
using namespace fixtures;

TEST_CASE("initial states") {
  Problem p = bundle().problem;
  SolverState s = initial_state(p);
  CHECK(s.W.size() == 34);
  CHECK(s.A.empty());
  CHECK(s.E.basis().size() == 2);
  CHECK(classify_terminal(s) == TerminalKind::Sat);

  Term a = S("a"), b = S("b");
  SolverState bad = initial_state(p.axioms, {make_eq(a, b), make_neq(b, a)});
  CHECK(classify_terminal(bad) == TerminalKind::Bot);
  auto cs = choices(bad);
  REQUIRE(cs.size() == 1);
  CHECK(cs[0].rule() == "bot");
  CHECK(apply(bad, cs[0]).status == Status::Inconsistent);

  CHECK(classify_terminal(initial_state(load("example2.prob"))) == TerminalKind::None);
}

TEST_CASE("verify_clause") {
  Term t = T("t"), a = S("a"), b = S("b");
  EInterface e = EInterface().extend({make_pred(member(t, a), true)});
  Clause c = {make_pred(member(t, a), false), make_pred(member(t, diff(b, a)), false)};
  CHECK_FALSE(verify_clause({}, e, c));
  EInterface e2 = e.extend({make_pred(member(t, diff(b, a)), false)});
  CHECK(verify_clause({}, e2, c));
  Clause eqc = {make_eq(a, b), make_pred(member(t, b), true)};
  CHECK(verify_clause({}, e.extend({make_eq(a, b)}), eqc));
  auto q = bundle().problem.axioms.front();
  CHECK(verify_clause({q}, e, Clause{make_eq(a, b), ExtLiteral(q)}));
}

TEST_CASE("update_quantifiers in both modes") {
  Problem p = bundle().problem;
  auto templates = inner_templates(p.axioms);
  const InnerTemplate* sub = nullptr;
  for (const auto& t : templates)
    if (t.tag == "subset-elim") sub = &t;
  REQUIRE(sub);
  Term a = S("a"), b = S("b"), c = S("c");
  auto inst = [&](Term x, Term y) {
    return substitute(sub->inner, Subst{{sub->outer_vars[0], x}, {sub->outer_vars[1], y}});
  };
  EInterface e = EInterface().extend({make_eq(a, c), make_neq(a, b)});
  auto W = update_quantifiers({}, {inst(a, b)}, e, true);
  CHECK(W.size() == 1);
  CHECK(update_quantifiers(W, {inst(c, b)}, e, true).size() == 1);
  CHECK(update_quantifiers(W, {inst(c, b)}, e, false).size() == 2);
  CHECK(update_quantifiers(W, {inst(b, a)}, e, true).size() == 2);
  CHECK(update_quantifiers(W, {}, e, true).size() == 1);
}

TEST_CASE("rule side conditions are enforced") {
  Problem p = load("example2.prob");
  SolverState s = initial_state(p);
  auto ms = enabled_matches(s);
  SolverState s2 = step_inst(s, ms[0]);
  CHECK_THROWS_AS(step_inst(s2, ms[0]), std::invalid_argument);
  CHECK_THROWS_AS(step_split(s2, Choice{Choice::Kind::Split, {}, {}, {}}), std::invalid_argument);
  const Clause& c = s2.A.front();
  SolverState s3 = step_split(s2, Choice{Choice::Kind::Split, {c[0]}, {c}, {}});
  CHECK(verify_clause(s3.W, s3.E, c));
  CHECK_THROWS_AS(step_split(s3, Choice{Choice::Kind::Split, {c[1]}, {c}, {}}), std::invalid_argument);
  EMatch fake = ms[0];
  fake.terms[0] = S("zzz");
  CHECK_THROWS_AS(step_inst(s, fake), std::invalid_argument);
}

TEST_CASE("inst keeps unit literals out of A") {
  Problem p = bundle().problem;
  Term x = T("x1"), s0 = S("s0");
  p.literals.push_back(make_eq(S("s1"), mk_app("add", "SetT", {x, s0})));
  SolverState s = initial_state(p);
  EMatch m;
  for (const auto& c : enabled_matches(s))
    if (c.quantifier->tag.name == "add-intro-2") m = c;
  REQUIRE(m.quantifier);
  SolverState s2 = step_inst(s, m);
  CHECK(s2.A.size() == s.A.size());
  CHECK(s2.E.equal(member(x, mk_app("add", "SetT", {x, s0})), top()));
  CHECK(s2.H.size() == 1);
}

TEST_CASE("split choices are singletons unless subsets are requested") {
  Problem p = load("example2.prob");
  SolverState s = initial_state(p);
  s = step_inst(s, enabled_matches(s)[0]);
  std::size_t splits = 0;
  for (const auto& c : choices(s)) splits += c.rule() == "split";
  CHECK(splits == 2);
  Options opt;
  opt.subset_split = true;
  splits = 0;
  for (const auto& c : choices(s, opt)) splits += c.rule() == "split";
  CHECK(splits == 3);
}

TEST_CASE("runs terminate and are reproducible") {
  Problem p = bundle().problem;
  p.literals.push_back(parse_literal(p, "(member t a)", true));
  p.literals.push_back(parse_literal(p, "(= c (union a b))", true));
  for (const char* name : {"random", "inst-first", "split-first", "loop-seeking"}) {
    auto s1 = make_scheduler(name, 9);
    auto s2 = make_scheduler(name, 9);
    std::vector<std::string> d1, d2;
    RunResult r1 = run(initial_state(p), *s1, 10000, {}, [&](std::size_t, const SolverState&, const Choice&, const SolverState& a) { d1.push_back(state_digest(a)); });
    RunResult r2 = run(initial_state(p), *s2, 10000, {}, [&](std::size_t, const SolverState&, const Choice&, const SolverState& a) { d2.push_back(state_digest(a)); });
    CHECK(r1.terminal != Terminal::BudgetExhausted);
    CHECK(d1 == d2);
  }
}

TEST_CASE("exhaustive exploration of a small instance") {
  Problem p = load("example1.prob");
  ExploreLimits lim;
  lim.max_depth = 12;
  ExploreResult r = explore(initial_state(p), lim);
  CHECK(r.complete());
  CHECK_FALSE(r.cycle);
  CHECK_FALSE(r.stuck);
  CHECK(r.frontier == 0);
  CHECK(r.bot_reachable);
}

TEST_CASE("the loop-seeking scheduler runs Example 2 out of budget") {
  Problem p = load("example2.prob");
  auto sched = make_scheduler("loop-seeking", 0);
  RunResult r = run(initial_state(p), *sched, 50, {});
  CHECK(r.terminal == Terminal::BudgetExhausted);
  CHECK(r.steps == 50);
}
