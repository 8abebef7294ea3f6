// SPDX-License-Identifier: Apache-2.0
#include "esem/termination.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <json.hpp>

namespace esem {

std::string to_string(const MeasureValue& m) {
  return "(" + std::to_string(m.sigma) + ", " + std::to_string(m.theta) + ")";
}

namespace {

std::vector<Term> of_sort(const std::vector<Term>& basis, const std::string& sort) {
  std::vector<Term> out;
  for (Term t : basis)
    if (t->sort == sort) out.push_back(t);
  return out;
}

// Calls f on every tuple of the cartesian product.
template <typename F>
void for_each_tuple(const std::vector<std::vector<Term>>& doms, F&& f) {
  for (const auto& d : doms)
    if (d.empty()) return;
  std::vector<std::size_t> idx(doms.size(), 0);
  std::vector<Term> cur(doms.size());
  for (;;) {
    for (std::size_t i = 0; i < doms.size(); ++i) cur[i] = doms[i][idx[i]];
    f(cur);
    std::size_t k = doms.size();
    while (k > 0) {
      --k;
      if (++idx[k] < doms[k].size()) break;
      idx[k] = 0;
      if (k == 0) return;
    }
    if (doms.empty()) return;
  }
}

}  // namespace

Overapprox overapprox_basis(const std::vector<Term>& basis, const MeasureConfig& cfg,
                            const EInterface* e) {
  Overapprox o;
  o.o1 = of_sort(basis, cfg.set_sort);
  o.o2 = of_sort(basis, cfg.elem_sort);
  for (const auto& sk : cfg.skolems) {
    std::vector<std::vector<Term>> doms;
    for (const auto& s : sk.arg_sorts) doms.push_back(s == cfg.set_sort ? o.o1 : of_sort(basis, s));
    std::string result = cfg.elem_sort;
    for_each_tuple(doms, [&](const std::vector<Term>& args) {
      Term t = mk_app(sk.name, result, args);
      if (e && e->known(t)) return;
      o.o2.push_back(t);
    });
  }
  std::sort(o.o2.begin(), o.o2.end(), TermLess{});
  o.o2.erase(std::unique(o.o2.begin(), o.o2.end()), o.o2.end());
  return o;
}

MeasureContext MeasureContext::from_problem(const Problem& p) {
  MeasureContext ctx;
  if (p.measure) ctx.cfg = *p.measure;
  ctx.originals = p.axioms;
  for (const auto& t : inner_templates(p.axioms)) {
    for (const auto& n : ctx.cfg.nested)
      if (n.tag == t.tag) ctx.templates.push_back(t);
  }
  return ctx;
}

std::vector<PTerm> p_estimation(const SolverState& s, const MeasureContext& ctx,
                                bool unordered_params) {
  std::vector<PTerm> out;
  if (!s.active() || s.E.inconsistent()) return out;
  const EInterface& E = s.E;
  std::vector<Term> B = E.basis();
  Overapprox O = overapprox_basis(B, ctx.cfg, &E);
  auto domain = [&](const std::string& sort) {
    if (sort == ctx.cfg.set_sort) return O.o1;
    if (sort == ctx.cfg.elem_sort) return O.o2;
    return of_sort(B, sort);
  };

  // History entries as representative tuples, keyed by tag name and the
  // representatives of the tag parameters.
  std::map<std::pair<std::string, std::vector<Term>>, std::set<std::vector<Term>>> hist;
  for (const auto& h : s.H) {
    std::vector<Term> ps, ts;
    bool ok = true;
    for (Term p : h.tag.params) {
      Term r = E.rep_of(p);
      ok = ok && r;
      ps.push_back(r);
    }
    for (Term t : h.terms) {
      Term r = E.rep_of(t);
      ok = ok && r;
      ts.push_back(r);
    }
    if (ok) hist[{h.tag.name, ps}].insert(ts);
  }

  auto fill = [&](PTerm& p, const std::vector<Term>& vars) {
    std::vector<std::set<Term>> members;
    p.domain_size = 1;
    for (Term v : vars) {
      p.domains.push_back(domain(v->sort));
      members.emplace_back(p.domains.back().begin(), p.domains.back().end());
      p.domain_size *= static_cast<long>(p.domains.back().size());
    }
    auto it = hist.find({p.tag.name, p.tag.params});
    if (it == hist.end()) return;
    for (const auto& tup : it->second) {
      if (tup.size() != vars.size()) continue;
      bool inside = true;
      for (std::size_t i = 0; i < tup.size() && inside; ++i) inside = members[i].count(tup[i]) > 0;
      if (inside) ++p.blocked;
    }
  };

  for (const auto& q : ctx.originals) {
    PTerm p;
    p.tag = q->tag;
    fill(p, q->vars);
    out.push_back(std::move(p));
  }
  for (const auto& t : ctx.templates) {
    std::vector<std::vector<Term>> pdoms;
    for (Term v : t.outer_vars) pdoms.push_back(domain(v->sort));
    for_each_tuple(pdoms, [&](const std::vector<Term>& params) {
      if (unordered_params) {
        for (std::size_t i = 1; i < params.size(); ++i)
          if (params[i - 1]->sort == params[i]->sort && compare(params[i - 1], params[i]) >= 0) return;
      }
      PTerm p;
      p.tag = Tag{t.tag, params};
      fill(p, t.inner->vars);
      out.push_back(std::move(p));
    });
  }
  return out;
}

long sigma(const SolverState& s, const MeasureContext& ctx, bool unordered_params) {
  if (!s.active()) return -1;
  long total = 0;
  for (const auto& p : p_estimation(s, ctx, unordered_params)) total += p.size();
  return total;
}

long theta(const SolverState& s, const Options& opt) {
  if (!s.active()) return -1;
  return static_cast<long>(unverified_clauses(s, opt).size());
}

MeasureValue measure(const SolverState& s, const MeasureContext& ctx, const Options& opt) {
  if (!s.active()) return MeasureValue{-1, -1};
  return MeasureValue{sigma(s, ctx), theta(s, opt)};
}

std::string to_json_line(const ReportRecord& r) {
  nlohmann::ordered_json j;
  j["traceId"] = r.trace_id;
  j["stepIndex"] = r.step_index;
  j["check"] = r.check;
  j["status"] = r.status;
  j["detail"] = r.detail;
  return j.dump();
}

std::vector<ReportRecord> check_descent_step(const std::string& rule, const MeasureValue& before,
                                             const MeasureValue& after) {
  std::vector<ReportRecord> out;
  std::string ctx = rule + " " + to_string(before) + " -> " + to_string(after);
  auto fail = [&](const std::string& check) { out.push_back(ReportRecord{"", -1, check, "fail", ctx}); };
  if (!(after < before)) fail("descent:M");
  bool terminal = after.sigma == -1 && after.theta == -1;
  if (terminal) return out;
  if (rule == "split") {
    if (after.sigma > before.sigma) fail("descent:split-sigma");
    if (after.theta >= before.theta) fail("descent:split-theta");
  } else if (rule == "inst") {
    if (after.sigma >= before.sigma) fail("descent:inst-sigma");
  }
  return out;
}

std::vector<ReportRecord> check_descent(const std::vector<TraceStep>& trace,
                                        const MeasureContext& ctx, const Options& opt) {
  std::vector<ReportRecord> out;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    auto mb = measure(trace[i].before, ctx, opt);
    auto ma = measure(trace[i].after, ctx, opt);
    for (auto& r : check_descent_step(trace[i].choice.rule(), mb, ma)) {
      r.step_index = static_cast<long>(i);
      out.push_back(std::move(r));
    }
  }
  return out;
}

const std::vector<std::string>& general_checks() {
  static const std::vector<std::string> v = {"G:QT", "G:NA", "G:EQ", "G:EE", "G:HE", "G:KB",
                                             "G:IG", "G:HG", "G:QG", "G:CG", "G:VV"};
  return v;
}

const std::vector<std::string>& problem_checks() {
  static const std::vector<std::string> v = {"P:OC", "P:FQ", "P:IC", "P:IQ", "P:BS", "P:IB"};
  return v;
}

namespace {

std::vector<Term> cover_of(const EInterface& e, const MeasureConfig& cfg) {
  Overapprox o = overapprox_basis(e.basis(), cfg);
  std::vector<Term> all = o.o1;
  all.insert(all.end(), o.o2.begin(), o.o2.end());
  return all;
}

// Set- and element-sorted classes of `e` not equal to any term of `cover`.
std::vector<Term> uncovered(const EInterface& e, const std::vector<Term>& cover,
                            const MeasureConfig& cfg) {
  std::set<int> hit;
  for (Term t : cover) {
    int r = e.class_of(t);
    if (r >= 0) hit.insert(r);
  }
  std::vector<Term> out;
  for (int r : e.class_roots()) {
    Term rep = e.rep_of_class(r);
    if (rep->sort != cfg.set_sort && rep->sort != cfg.elem_sort) continue;
    if (!hit.count(r)) out.push_back(rep);
  }
  return out;
}

bool trigger_instance_known(const EInterface& e, const Quantifier& q, const std::vector<Term>& r) {
  Subst s;
  for (std::size_t i = 0; i < q.vars.size(); ++i) s[q.vars[i]] = r[i];
  for (const auto& ts : q.triggers) {
    bool all = std::all_of(ts.begin(), ts.end(), [&](Term t) { return e.known(substitute(t, s)); });
    if (all) return true;
  }
  return false;
}

bool fq_condition(const QuantPtr& q, const SolverState& s, const InvariantContext& ctx) {
  for (const auto& t : ctx.templates) {
    if (t.tag != q->tag.name || t.outer_vars.size() != q->tag.params.size()) continue;
    Subst sub;
    for (std::size_t i = 0; i < t.outer_vars.size(); ++i) sub[t.outer_vars[i]] = q->tag.params[i];
    if (substitute(t.inner, sub)->key != q->key) continue;
    if (s.H.count(HistEntry{Tag{t.tag, {}}, q->tag.params})) return true;
  }
  return false;
}

std::vector<Term> class_members(const EInterface& e, Term t, std::size_t limit) {
  std::vector<Term> out;
  int r = e.class_of(t);
  if (r < 0) return out;
  const Closure& c = e.closure();
  auto it = c.members.find(r);
  if (it == c.members.end()) return out;
  for (int id : it->second) {
    if (c.nodes[id] == t) continue;
    out.push_back(c.nodes[id]);
    if (out.size() >= limit) break;
  }
  return out;
}

}  // namespace

InvariantContext InvariantContext::make(const Problem& p, const SolverState& init,
                                        const Options& opt, bool problem_specific) {
  InvariantContext ctx;
  ctx.opt = opt;
  ctx.w0 = p.axioms;
  ctx.problem_specific = problem_specific;
  ctx.rows = lookup_rows(p.axioms);
  ctx.templates = inner_templates(p.axioms);
  ctx.cfg = p.measure;
  if (ctx.cfg && init.active() && !init.E.inconsistent()) ctx.initial_cover = cover_of(init.E, *ctx.cfg);
  return ctx;
}

std::vector<ReportRecord> check_state(const SolverState& s, const InvariantContext& ctx) {
  std::vector<ReportRecord> out;
  if (!s.active()) return out;
  auto fail = [&](const char* check, const std::string& detail) {
    out.push_back(ReportRecord{"", -1, check, "fail", detail});
  };
  const EInterface& E = s.E;

  for (std::size_t i = 0; i < s.W.size(); ++i)
    for (std::size_t j = i + 1; j < s.W.size(); ++j) {
      const Tag& a = s.W[i]->tag;
      const Tag& b = s.W[j]->tag;
      if (a == b || (ctx.opt.optimised_wupdate && E.tags_equivalent(a, b)))
        fail("G:QT", to_string(a) + " and " + to_string(b));
    }

  for (const auto& c : s.A)
    if (c.size() < 2) fail("G:NA", to_string(c));

  for (const auto& h : s.H) {
    bool eq = false, ee = false;
    for (const auto& w : s.W) {
      if (!(w->tag == h.tag)) continue;
      if (w->vars.size() == h.terms.size()) eq = true;
      bool known = std::all_of(h.terms.begin(), h.terms.end(), [&](Term t) { return E.known(t); });
      if (known && w->vars.size() == h.terms.size() && trigger_instance_known(E, *w, h.terms)) ee = true;
    }
    if (!eq) fail("G:EQ", to_string(h));
    if (!ee) fail("G:EE", to_string(h));
  }

  // Enabledness must not depend on which member of a class is used.
  {
    auto probe = [&](const Tag& tag, const std::vector<Term>& r, bool expect) {
      for (std::size_t i = 0; i < r.size(); ++i)
        for (Term alt : class_members(E, r[i], ctx.he_samples)) {
          std::vector<Term> r2 = r;
          r2[i] = alt;
          if (history_enables(E, s.H, tag, r2, ctx.opt.matching) != expect)
            fail("G:HE", to_string(tag) + " " + to_string(r) + " vs " + to_string(r2));
        }
    };
    for (const auto& h : s.H) probe(h.tag, h.terms, false);
    auto ms = enabled_matches(s, ctx.opt);
    for (std::size_t k = 0; k < ms.size() && k < 50; ++k) probe(ms[k].quantifier->tag, ms[k].terms, true);
  }

  if (!E.inconsistent()) {
    std::vector<Term> B = E.basis();
    std::set<int> roots;
    for (Term b : B) {
      int r = E.class_of(b);
      if (r < 0 || !roots.insert(r).second) fail("G:KB", "basis element " + to_string(b));
    }
    if (roots.size() != E.class_roots().size()) fail("G:KB", "basis misses a class");
    for (Term n : E.closure().nodes) {
      Term r = E.rep_of(n);
      if (!r || !std::binary_search(B.begin(), B.end(), r, TermLess{}) || !E.equal(n, r))
        fail("G:KB", "known term " + to_string(n));
    }
  }

  if (!ctx.problem_specific) return out;

  for (const auto& c : s.A) {
    bool matched = false, origin = false;
    for (const auto& row : ctx.rows) {
      for (const auto& sub : match_row(row, c)) {
        matched = true;
        Tag tag{row.tag, {}};
        for (Term v : row.outer_vars) tag.params.push_back(sub.at(v));
        std::vector<Term> terms;
        for (Term v : row.vars) terms.push_back(sub.at(v));
        if (s.H.count(HistEntry{tag, terms})) origin = true;
      }
    }
    if (!matched) fail("P:IC", to_string(c));
    if (matched && !origin) fail("P:OC", to_string(c));
    for (const auto& d : c)
      if (d.index() == 1 && !fq_condition(std::get<1>(d), s, ctx))
        fail("P:FQ", to_string(std::get<1>(d)->tag));
  }

  for (const auto& w : ctx.w0)
    if (!std::binary_search(s.W.begin(), s.W.end(), w, QuantLess{})) fail("P:IQ", "missing " + to_string(w->tag));
  for (const auto& w : s.W) {
    if (std::binary_search(ctx.w0.begin(), ctx.w0.end(), w, QuantLess{})) continue;
    bool original = std::any_of(ctx.w0.begin(), ctx.w0.end(), [&](const QuantPtr& q) { return q->key == w->key; });
    if (!original && !fq_condition(w, s, ctx)) fail("P:IQ", to_string(w->tag));
  }

  if (ctx.cfg && !E.inconsistent() && !ctx.initial_cover.empty()) {
    for (Term t : uncovered(E, ctx.initial_cover, *ctx.cfg)) fail("P:IB", to_string(t));
  }
  return out;
}

std::vector<ReportRecord> check_step(const SolverState& before, const SolverState& after,
                                     const InvariantContext& ctx) {
  std::vector<ReportRecord> out;
  if (!before.active() || !after.active()) return out;
  auto fail = [&](const char* check, const std::string& detail) {
    out.push_back(ReportRecord{"", -1, check, "fail", detail});
  };
  const EInterface& E = before.E;
  const EInterface& E2 = after.E;

  for (Term n : E.closure().nodes) {
    Term r = E.rep_of(n);
    if (!E2.known(n) || !E2.equal(n, r)) fail("G:IG", "lost " + to_string(n));
  }
  for (auto [a, b] : E.closure().diseq_roots)
    if (!E2.disequal(E.rep_of_class(a), E.rep_of_class(b)))
      fail("G:IG", "lost disequality " + to_string(E.rep_of_class(a)) + " " + to_string(E.rep_of_class(b)));
  for (const auto& l : E.asserted())
    if (!(l.eq ? E2.equal(l.lhs, l.rhs) : E2.disequal(l.lhs, l.rhs))) fail("G:IG", "lost " + to_string(l));

  for (const auto& h : before.H)
    if (!after.H.count(h)) fail("G:HG", to_string(h));
  for (const auto& w : before.W)
    if (!std::binary_search(after.W.begin(), after.W.end(), w, QuantLess{})) fail("G:QG", to_string(w->tag));
  for (const auto& c : before.A) {
    bool kept = std::binary_search(after.A.begin(), after.A.end(), c, ClauseLess{});
    if (!kept) fail("G:CG", to_string(c));
    if (verify_clause(before.W, E, c, ctx.opt) && (!kept || !verify_clause(after.W, E2, c, ctx.opt)))
      fail("G:VV", to_string(c));
  }

  if (ctx.problem_specific && ctx.cfg && !E.inconsistent() && !E2.inconsistent()) {
    for (Term t : uncovered(E2, cover_of(E, *ctx.cfg), *ctx.cfg)) fail("P:BS", to_string(t));
  }
  return out;
}

}  // namespace esem
