// SPDX-License-Identifier: Apache-2.0
#include "esem/matching.hpp"

#include <algorithm>
#include <map>

namespace esem {

std::string to_string(const HistEntry& e) {
  return "(" + to_string(e.tag) + " : " + to_string(e.terms) + ")";
}

EHistory record(const EHistory& h, const Tag& tag, const std::vector<Term>& terms) {
  EHistory out = h;
  out.insert(HistEntry{tag, terms});
  return out;
}

bool history_enables(const EInterface& e, const EHistory& h, const Tag& tag,
                     const std::vector<Term>& terms, MatchMode mode) {
  for (const auto& entry : h) {
    if (entry.terms.size() != terms.size()) continue;
    bool same_tag = mode == MatchMode::Plain ? entry.tag == tag : e.tags_equivalent(entry.tag, tag);
    if (!same_tag) continue;
    bool all = true;
    for (std::size_t i = 0; i < terms.size() && all; ++i)
      all = entry.terms[i] == terms[i] ? e.known(terms[i]) : e.equal(entry.terms[i], terms[i]);
    if (all) return false;
  }
  return true;
}

std::string to_string(const EMatch& m) {
  return "(" + to_string(m.quantifier->tag) + " : " + to_string(m.terms) + ")";
}

namespace {

using Binding = std::vector<int>;  // per bound variable, class root or -1

struct Matcher {
  const EInterface& e;
  const Closure& c;
  const std::vector<Term>& vars;

  int var_index(Term v) const {
    for (std::size_t i = 0; i < vars.size(); ++i)
      if (vars[i] == v) return static_cast<int>(i);
    return -1;
  }

  // Extend each binding so that pattern p lands in class `cls`.
  void match_in_class(Term p, int cls, const Binding& b, std::vector<Binding>& out) const {
    if (p->ground) {
      if (e.class_of(p) == cls) out.push_back(b);
      return;
    }
    if (p->is_var()) {
      int vi = var_index(p);
      if (vi < 0) return;
      if (b[vi] < 0) {
        Binding nb = b;
        nb[vi] = cls;
        out.push_back(std::move(nb));
      } else if (b[vi] == cls) {
        out.push_back(b);
      }
      return;
    }
    auto mit = c.members.find(cls);
    if (mit == c.members.end()) return;
    for (int id : mit->second) {
      Term n = c.nodes[id];
      if (n->name != p->name || n->args.size() != p->args.size()) continue;
      match_args(p, n, b, out);
    }
  }

  void match_args(Term p, Term n, const Binding& b, std::vector<Binding>& out) const {
    std::vector<Binding> cur{b};
    for (std::size_t i = 0; i < p->args.size() && !cur.empty(); ++i) {
      std::vector<Binding> next;
      int cls = c.root[c.index.at(n->args[i])];
      for (const auto& bb : cur) match_in_class(p->args[i], cls, bb, next);
      cur = std::move(next);
    }
    for (auto& bb : cur) out.push_back(std::move(bb));
  }

  // Top-level trigger term: any materialised node with the right head.
  void match_anywhere(Term p, const Binding& b, std::vector<Binding>& out) const {
    if (p->ground) {
      if (e.known(p)) out.push_back(b);
      return;
    }
    auto hit = c.by_head.find(p->name);
    if (hit == c.by_head.end()) return;
    for (int id : hit->second) {
      Term n = c.nodes[id];
      if (n->args.size() != p->args.size()) continue;
      match_args(p, n, b, out);
    }
  }
};

}  // namespace

std::vector<std::vector<int>> trigger_matches(const EInterface& e, const Quantifier& q,
                                              std::size_t trigger_index) {
  const Closure& c = e.closure();
  Matcher m{e, c, q.vars};
  std::vector<Binding> cur{Binding(q.vars.size(), -1)};
  for (Term p : q.triggers[trigger_index]) {
    std::vector<Binding> next;
    for (const auto& b : cur) m.match_anywhere(p, b, next);
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    cur = std::move(next);
    if (cur.empty()) break;
  }
  std::vector<std::vector<int>> out;
  for (auto& b : cur)
    if (std::all_of(b.begin(), b.end(), [](int x) { return x >= 0; })) out.push_back(std::move(b));
  return out;
}

std::vector<EMatch> enabled_matches(const EInterface& e, const EHistory& h,
                                    const std::vector<QuantPtr>& quants, MatchMode mode) {
  std::vector<EMatch> out;
  for (const auto& q : quants) {
    std::map<std::vector<int>, int> seen;
    for (std::size_t k = 0; k < q->triggers.size(); ++k) {
      for (auto& b : trigger_matches(e, *q, k)) seen.emplace(std::move(b), static_cast<int>(k));
    }
    std::vector<EMatch> local;
    for (const auto& [b, k] : seen) {
      std::vector<Term> terms;
      terms.reserve(b.size());
      for (int r : b) terms.push_back(e.rep_of_class(r));
      if (!history_enables(e, h, q->tag, terms, mode)) continue;
      local.push_back(EMatch{q, std::move(terms), k});
    }
    std::sort(local.begin(), local.end(),
              [](const EMatch& a, const EMatch& b) { return compare(a.terms, b.terms) < 0; });
    for (auto& m : local) out.push_back(std::move(m));
  }
  return out;
}

}  // namespace esem
