// SPDX-License-Identifier: Apache-2.0
#include "esem/transitions.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace esem {

std::string Choice::rule() const {
  switch (kind) {
    case Kind::Split: return "split";
    case Kind::Inst: return "inst";
    case Kind::Bot: return "bot";
    case Kind::Sat: return "sat";
  }
  return "?";
}

std::string Choice::describe() const {
  switch (kind) {
    case Kind::Split: {
      std::string s;
      for (std::size_t i = 0; i < phi.size(); ++i) {
        if (i) s += "; ";
        s += to_string(phi[i]) + " from " + to_string(sources[i]);
      }
      return s;
    }
    case Kind::Inst:
      return to_string(match) + " via trigger " + std::to_string(match.trigger_index);
    default:
      return "";
  }
}

namespace {

bool contains_key(const std::vector<QuantPtr>& W, const QuantPtr& q) {
  return std::binary_search(W.begin(), W.end(), q, QuantLess{});
}

void insert_sorted(std::vector<QuantPtr>& W, const QuantPtr& q) {
  auto it = std::lower_bound(W.begin(), W.end(), q, QuantLess{});
  if (it == W.end() || (*it)->key != q->key) W.insert(it, q);
}

bool trigger_known(const EInterface& e, const Quantifier& q, const std::vector<Term>& terms) {
  Subst s;
  for (std::size_t i = 0; i < q.vars.size(); ++i) s[q.vars[i]] = terms[i];
  for (const auto& ts : q.triggers) {
    bool all = true;
    for (Term t : ts)
      if (!e.known(substitute(t, s))) {
        all = false;
        break;
      }
    if (all) return true;
  }
  return false;
}

}  // namespace

SolverState initial_state(const std::vector<QuantPtr>& w0, const std::vector<Literal>& lits) {
  SolverState s;
  for (const auto& q : w0) insert_sorted(s.W, q);
  s.E = EInterface().extend(lits);
  return s;
}

SolverState initial_state(const Problem& p) { return initial_state(p.axioms, p.literals); }

bool verify_clause(const std::vector<QuantPtr>& W, const EInterface& e, const Clause& c,
                   const Options& opt) {
  for (const auto& d : c) {
    if (d.index() == 1) {
      const QuantPtr& q = std::get<1>(d);
      if (contains_key(W, q)) return true;
      if (opt.optimised_wupdate)
        for (const auto& w : W)
          if (e.tags_equivalent(w->tag, q->tag)) return true;
      continue;
    }
    const Literal& l = std::get<0>(d);
    if (l.eq ? e.equal(l.lhs, l.rhs) : e.disequal(l.lhs, l.rhs)) return true;
  }
  return false;
}

std::vector<Clause> unverified_clauses(const SolverState& s, const Options& opt) {
  std::vector<Clause> out;
  for (const auto& c : s.A)
    if (!verify_clause(s.W, s.E, c, opt)) out.push_back(c);
  return out;
}

std::vector<QuantPtr> update_quantifiers(const std::vector<QuantPtr>& W,
                                         const std::vector<QuantPtr>& quants, const EInterface& e,
                                         bool optimised) {
  std::vector<QuantPtr> out = W;
  for (const auto& q : quants) {
    if (optimised) {
      bool dup = std::any_of(out.begin(), out.end(),
                             [&](const QuantPtr& w) { return e.tags_equivalent(w->tag, q->tag); });
      if (dup) continue;
    }
    insert_sorted(out, q);
  }
  return out;
}

std::vector<EMatch> enabled_matches(const SolverState& s, const Options& opt) {
  if (!s.active()) return {};
  return enabled_matches(s.E, s.H, s.W, opt.matching);
}

TerminalKind classify_terminal(const SolverState& s, const Options& opt) {
  if (!s.active()) return TerminalKind::None;
  if (s.E.inconsistent()) return TerminalKind::Bot;
  for (const auto& c : s.A)
    if (!verify_clause(s.W, s.E, c, opt)) return TerminalKind::None;
  return enabled_matches(s, opt).empty() ? TerminalKind::Sat : TerminalKind::None;
}

std::vector<Choice> choices(const SolverState& s, const Options& opt) {
  std::vector<Choice> out;
  if (!s.active()) return out;
  if (s.E.inconsistent()) {
    out.push_back(Choice{Choice::Kind::Bot, {}, {}, {}});
    return out;
  }
  auto open = unverified_clauses(s, opt);
  auto matches = enabled_matches(s, opt);
  if (open.empty() && matches.empty()) {
    out.push_back(Choice{Choice::Kind::Sat, {}, {}, {}});
    return out;
  }
  for (const auto& c : open) {
    if (!opt.subset_split) {
      for (const auto& d : c) out.push_back(Choice{Choice::Kind::Split, {d}, {c}, {}});
      continue;
    }
    std::size_t n = c.size();
    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
      Choice ch{Choice::Kind::Split, {}, {}, {}};
      for (std::size_t i = 0; i < n; ++i)
        if (mask & (std::size_t{1} << i)) {
          ch.phi.push_back(c[i]);
          ch.sources.push_back(c);
        }
      out.push_back(std::move(ch));
    }
  }
  for (auto& m : matches) out.push_back(Choice{Choice::Kind::Inst, {}, {}, std::move(m)});
  return out;
}

SolverState step_split(const SolverState& s, const Choice& c, const Options& opt) {
  if (!s.active()) throw std::invalid_argument("split on a terminal state");
  if (c.phi.empty()) throw std::invalid_argument("split with an empty selection");
  if (c.sources.size() != c.phi.size()) throw std::invalid_argument("split selection without source clauses");
  for (std::size_t i = 0; i < c.phi.size(); ++i) {
    const Clause& src = c.sources[i];
    if (!std::binary_search(s.A.begin(), s.A.end(), src, ClauseLess{}))
      throw std::invalid_argument("split source is not a current clause");
    if (verify_clause(s.W, s.E, src, opt))
      throw std::invalid_argument("split source is already verified");
    bool member = std::any_of(src.begin(), src.end(),
                              [&](const ExtLiteral& d) { return compare(d, c.phi[i]) == 0; });
    if (!member) throw std::invalid_argument("selected disjunct is not in its clause");
  }
  Filtered f = filter_literals_and_quantifiers(c.phi);
  SolverState out = s;
  out.W = update_quantifiers(s.W, f.quantifiers, s.E, opt.optimised_wupdate);
  out.E = s.E.extend(f.literals);
  return out;
}

SolverState step_inst(const SolverState& s, const EMatch& m, const Options& opt) {
  if (!s.active()) throw std::invalid_argument("inst on a terminal state");
  const Quantifier& q = *m.quantifier;
  if (!contains_key(s.W, m.quantifier)) throw std::invalid_argument("quantifier not current");
  if (m.terms.size() != q.vars.size()) throw std::invalid_argument("match arity mismatch");
  for (Term t : m.terms)
    if (!s.E.known(t)) throw std::invalid_argument("match term not known: " + to_string(t));
  if (!trigger_known(s.E, q, m.terms)) throw std::invalid_argument("no trigger set is known");
  if (!history_enables(s.E, s.H, q.tag, m.terms, opt.matching))
    throw std::invalid_argument("match is not enabled by the history");

  Ecnf a12 = substitute(q.body, q.vars, m.terms);
  std::vector<ExtLiteral> units;
  SolverState out = s;
  for (auto& c : a12) {
    if (c.size() == 1) {
      units.push_back(c[0]);
      continue;
    }
    auto it = std::lower_bound(out.A.begin(), out.A.end(), c, ClauseLess{});
    if (it == out.A.end() || compare(*it, c) != 0) out.A.insert(it, std::move(c));
  }
  Filtered f = filter_literals_and_quantifiers(units);
  out.W = update_quantifiers(s.W, f.quantifiers, s.E, opt.optimised_wupdate);
  out.E = s.E.extend(f.literals);
  out.H = record(s.H, q.tag, m.terms);
  return out;
}

SolverState apply(const SolverState& s, const Choice& c, const Options& opt) {
  switch (c.kind) {
    case Choice::Kind::Split: return step_split(s, c, opt);
    case Choice::Kind::Inst: return step_inst(s, c.match, opt);
    case Choice::Kind::Bot: {
      if (!s.active() || !s.E.inconsistent()) throw std::invalid_argument("bot does not apply");
      SolverState out = s;
      out.status = Status::Inconsistent;
      return out;
    }
    case Choice::Kind::Sat: {
      if (classify_terminal(s, opt) != TerminalKind::Sat) throw std::invalid_argument("sat does not apply");
      SolverState out = s;
      out.status = Status::Saturated;
      return out;
    }
  }
  throw std::invalid_argument("unknown choice");
}

std::string canonical_string(const SolverState& s) {
  if (s.status == Status::Saturated) return "saturated\n";
  if (s.status == Status::Inconsistent) return "inconsistent\n";
  std::string out = "W\n";
  for (const auto& q : s.W) out += q->key + "\n";
  out += "A\n";
  std::vector<std::string> cs;
  for (const auto& c : s.A) cs.push_back(to_string(c));
  std::sort(cs.begin(), cs.end());
  for (const auto& c : cs) out += c + "\n";
  out += "E\n" + s.E.dump() + "H\n";
  for (const auto& h : s.H) out += to_string(h) + "\n";
  return out;
}

std::string state_digest(const SolverState& s) { return hex64(fnv1a(canonical_string(s))); }

std::string to_string(Terminal t) {
  switch (t) {
    case Terminal::Saturated: return "saturated";
    case Terminal::Inconsistent: return "inconsistent";
    case Terminal::BudgetExhausted: return "budget-exhausted";
  }
  return "?";
}

namespace {

std::size_t terminal_index(const std::vector<Choice>& cs) {
  for (std::size_t i = 0; i < cs.size(); ++i)
    if (cs[i].kind == Choice::Kind::Bot || cs[i].kind == Choice::Kind::Sat) return i;
  return cs.size();
}

class RandomScheduler : public Scheduler {
 public:
  explicit RandomScheduler(std::uint64_t seed) : rng_(seed) {}
  std::string name() const override { return "random"; }
  std::size_t pick(const SolverState&, const std::vector<Choice>& cs) override {
    return static_cast<std::size_t>(rng_() % cs.size());
  }

 private:
  std::mt19937_64 rng_;
};

class PreferScheduler : public Scheduler {
 public:
  explicit PreferScheduler(Choice::Kind first) : first_(first) {}
  std::string name() const override {
    return first_ == Choice::Kind::Inst ? "inst-first" : "split-first";
  }
  std::size_t pick(const SolverState&, const std::vector<Choice>& cs) override {
    for (std::size_t i = 0; i < cs.size(); ++i)
      if (cs[i].kind == first_) return i;
    return 0;
  }

 private:
  Choice::Kind first_;
};

std::size_t unknown_subterms(const EInterface& e, Term t) {
  std::vector<Term> subs;
  collect_subterms(t, subs);
  std::sort(subs.begin(), subs.end());
  subs.erase(std::unique(subs.begin(), subs.end()), subs.end());
  return static_cast<std::size_t>(
      std::count_if(subs.begin(), subs.end(), [&](Term x) { return !e.known(x); }));
}

std::size_t total_size(const std::vector<Term>& ts) {
  std::size_t n = 0;
  for (Term t : ts) n += t->size;
  return n;
}

// Instantiates the most recent quantifier again on the largest terms, then
// splits the resulting clause on the disjunct that brings in the most new
// terms without contradicting the interface.
class LoopSeekingScheduler : public Scheduler {
 public:
  explicit LoopSeekingScheduler(const Options& opt) : opt_(opt) {}
  std::string name() const override { return "loop-seeking"; }

  std::size_t pick(const SolverState& s, const std::vector<Choice>& cs) override {
    std::size_t best = cs.size();
    long best_score = -1;
    for (std::size_t i = 0; i < cs.size(); ++i) {
      const Choice& c = cs[i];
      if (c.kind != Choice::Kind::Split || c.phi.size() != 1) continue;
      bool fresh = std::any_of(pending_.begin(), pending_.end(),
                               [&](const Clause& p) { return compare(p, c.sources[0]) == 0; });
      if (!fresh) continue;
      long score = split_score(s, c.phi[0]);
      if (score > best_score) {
        best_score = score;
        best = i;
      }
    }
    if (best < cs.size()) return best;

    for (int pass = 0; pass < 2 && best == cs.size(); ++pass) {
      std::size_t best_size = 0;
      for (std::size_t i = 0; i < cs.size(); ++i) {
        const Choice& c = cs[i];
        if (c.kind != Choice::Kind::Inst) continue;
        if (pass == 0 && c.match.quantifier->tag.name != last_tag_) continue;
        std::size_t sz = total_size(c.match.terms);
        if (best == cs.size() || sz > best_size ||
            (sz == best_size && compare(c.match.terms, cs[best].match.terms) > 0)) {
          best = i;
          best_size = sz;
        }
      }
    }
    if (best < cs.size()) return best;

    for (std::size_t i = 0; i < cs.size(); ++i) {
      if (cs[i].kind != Choice::Kind::Split) continue;
      long score = split_score(s, cs[i].phi[0]);
      if (score > best_score) {
        best_score = score;
        best = i;
      }
    }
    return best < cs.size() ? best : 0;
  }

  void observe(const SolverState& before, const Choice& c, const SolverState& after) override {
    if (c.kind == Choice::Kind::Inst) {
      last_tag_ = c.match.quantifier->tag.name;
      pending_.clear();
      const Quantifier& q = *c.match.quantifier;
      for (auto& cl : substitute(q.body, q.vars, c.match.terms))
        if (cl.size() > 1) pending_.push_back(std::move(cl));
    } else if (c.kind == Choice::Kind::Split) {
      for (const auto& src : c.sources)
        pending_.erase(std::remove_if(pending_.begin(), pending_.end(),
                                      [&](const Clause& p) { return compare(p, src) == 0; }),
                       pending_.end());
    }
    (void)before;
    (void)after;
  }

 private:
  long split_score(const SolverState& s, const ExtLiteral& d) const {
    if (d.index() == 1) return 0;
    const Literal& l = std::get<0>(d);
    if (s.E.extend({l}).inconsistent()) return -1;
    return static_cast<long>(unknown_subterms(s.E, l.lhs) + unknown_subterms(s.E, l.rhs)) + 1;
  }

  Options opt_;
  std::string last_tag_;
  std::vector<Clause> pending_;
};

}  // namespace

std::unique_ptr<Scheduler> make_scheduler(const std::string& name, std::uint64_t seed,
                                          const Options& opt) {
  if (name == "random") return std::make_unique<RandomScheduler>(seed);
  if (name == "inst-first") return std::make_unique<PreferScheduler>(Choice::Kind::Inst);
  if (name == "split-first") return std::make_unique<PreferScheduler>(Choice::Kind::Split);
  if (name == "loop-seeking") return std::make_unique<LoopSeekingScheduler>(opt);
  throw std::invalid_argument("unknown scheduler " + name);
}

RunResult run(const SolverState& init, Scheduler& sched, std::size_t max_steps, const Options& opt,
              const StepObserver& obs) {
  RunResult r;
  SolverState cur = init;
  while (cur.active()) {
    auto cs = choices(cur, opt);
    // bot and sat are never postponed, and a terminal step is always taken
    // even when the budget is spent so that the classification is reported.
    std::size_t ti = terminal_index(cs);
    if (ti == cs.size() && r.steps >= max_steps) {
      r.final_state = cur;
      r.terminal = Terminal::BudgetExhausted;
      return r;
    }
    if (cs.empty()) throw std::logic_error("stuck active state");
    std::size_t k = ti < cs.size() ? ti : sched.pick(cur, cs);
    SolverState next = apply(cur, cs[k], opt);
    sched.observe(cur, cs[k], next);
    if (obs) obs(r.steps, cur, cs[k], next);
    ++r.steps;
    cur = std::move(next);
  }
  r.terminal = cur.status == Status::Saturated ? Terminal::Saturated : Terminal::Inconsistent;
  r.final_state = std::move(cur);
  return r;
}

namespace {

struct Explorer {
  const ExploreLimits& lim;
  const Options& opt;
  const StepObserver& obs;
  ExploreResult res;
  std::unordered_map<std::uint64_t, std::size_t> visited;  // digest -> shallowest depth
  std::unordered_set<std::uint64_t> on_path;

  bool done() const { return res.truncated || res.classified; }

  void leaf() {
    ++res.leaves;
    if (lim.max_leaves && res.leaves >= lim.max_leaves) res.truncated = true;
  }

  void dfs(const SolverState& s, std::size_t depth) {
    if (done()) return;
    std::uint64_t d = fnv1a(canonical_string(s));
    if (on_path.count(d)) {
      res.cycle = true;
      leaf();
      return;
    }
    auto [it, fresh] = visited.try_emplace(d, depth);
    if (!fresh) {
      // Re-expand only when reached closer to the root than before.
      if (it->second <= depth) {
        leaf();
        return;
      }
      it->second = depth;
    } else {
      ++res.states;
      if (lim.max_states && res.states > lim.max_states) {
        res.truncated = true;
        return;
      }
    }
    if (s.status == Status::Saturated) res.sat_reachable = true;
    if (s.status == Status::Inconsistent) res.bot_reachable = true;
    if (!s.active()) {
      leaf();
      if (lim.stop_when_classified && res.sat_reachable && res.bot_reachable) res.classified = true;
      return;
    }
    auto cs = choices(s, opt);
    if (cs.empty()) {
      res.stuck = true;
      leaf();
      return;
    }
    if (depth >= lim.max_depth) {
      ++res.frontier;
      if (lim.keep_frontier) res.frontier_states.push_back(s);
      leaf();
      return;
    }
    on_path.insert(d);
    for (const auto& c : cs) {
      SolverState next = apply(s, c, opt);
      if (obs) obs(depth, s, c, next);
      dfs(next, depth + 1);
      if (done()) break;
    }
    on_path.erase(d);
  }
};

}  // namespace

ExploreResult explore(const SolverState& init, const ExploreLimits& limits, const Options& opt,
                      const StepObserver& obs) {
  Explorer ex{limits, opt, obs, {}, {}, {}};
  ex.dfs(init, 0);
  return ex.res;
}

}  // namespace esem
