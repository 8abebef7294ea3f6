// SPDX-License-Identifier: Apache-2.0
// Brute-force recomputation of Sigma and Theta: enumerate every candidate
// tuple and ask the history directly whether it is still enabled.
#pragma once

#include <functional>
#include <set>

#include "esem/termination.hpp"

namespace oracle {

using namespace esem;

inline std::vector<Term> candidates(const SolverState& s, const MeasureConfig& cfg,
                                    const std::string& sort) {
  std::vector<Term> B = s.E.basis();
  std::vector<Term> out;
  for (Term t : B)
    if (t->sort == sort) out.push_back(t);
  if (sort != cfg.elem_sort) return out;
  std::vector<Term> sets;
  for (Term t : B)
    if (t->sort == cfg.set_sort) sets.push_back(t);
  for (const auto& sk : cfg.skolems) {
    std::vector<Term> args(sk.arg_sorts.size());
    std::function<void(std::size_t)> go = [&](std::size_t i) {
      if (i == args.size()) {
        Term t = mk_app(sk.name, cfg.elem_sort, args);
        if (!s.E.known(t)) out.push_back(t);
        return;
      }
      for (Term x : sets) {
        args[i] = x;
        go(i + 1);
      }
    };
    go(0);
  }
  return out;
}

inline long count_enabled(const SolverState& s, const MeasureConfig& cfg, const Tag& tag,
                          const std::vector<Term>& vars) {
  std::vector<std::vector<Term>> doms;
  for (Term v : vars) doms.push_back(candidates(s, cfg, v->sort));
  long n = 0;
  std::vector<Term> tup(vars.size());
  std::function<void(std::size_t)> go = [&](std::size_t i) {
    if (i == tup.size()) {
      if (history_enables(s.E, s.H, tag, tup, MatchMode::Optimised)) ++n;
      return;
    }
    for (Term t : doms[i]) {
      tup[i] = t;
      go(i + 1);
    }
  };
  go(0);
  return n;
}

inline long sigma(const SolverState& s, const Problem& p) {
  if (!s.active()) return -1;
  const MeasureConfig& cfg = *p.measure;
  long total = 0;
  for (const auto& q : p.axioms) total += count_enabled(s, cfg, q->tag, q->vars);
  for (const auto& n : cfg.nested) {
    for (const auto& t : inner_templates(p.axioms)) {
      if (t.tag != n.tag) continue;
      std::vector<std::vector<Term>> pd;
      for (Term v : t.outer_vars) pd.push_back(candidates(s, cfg, v->sort));
      std::vector<Term> params(pd.size());
      std::function<void(std::size_t)> go = [&](std::size_t i) {
        if (i == params.size()) {
          total += count_enabled(s, cfg, Tag{t.tag, params}, t.inner->vars);
          return;
        }
        for (Term x : pd[i]) {
          params[i] = x;
          go(i + 1);
        }
      };
      go(0);
    }
  }
  return total;
}

inline long theta(const SolverState& s, bool optimised_wupdate) {
  if (!s.active()) return -1;
  long open = 0;
  for (const auto& c : s.A) {
    bool ok = false;
    for (const auto& d : c) {
      if (const auto* l = std::get_if<Literal>(&d)) {
        ok = ok || (l->eq ? s.E.equal(l->lhs, l->rhs) : s.E.disequal(l->lhs, l->rhs));
      } else {
        const QuantPtr& q = std::get<QuantPtr>(d);
        for (const auto& w : s.W)
          ok = ok || w->key == q->key || (optimised_wupdate && s.E.tags_equivalent(w->tag, q->tag));
      }
    }
    if (!ok) ++open;
  }
  return open;
}

}  // namespace oracle
