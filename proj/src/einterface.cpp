// SPDX-License-Identifier: Apache-2.0
#include "esem/einterface.hpp"

#include <algorithm>
#include <stdexcept>

namespace esem {
namespace {

int find(std::vector<int>& parent, int x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

int add_term(Closure& c, Term t) {
  auto it = c.index.find(t);
  if (it != c.index.end()) return it->second;
  for (Term a : t->args) add_term(c, a);
  int id = static_cast<int>(c.nodes.size());
  c.nodes.push_back(t);
  c.index.emplace(t, id);
  c.root.push_back(id);
  c.by_head[t->name].push_back(id);
  return id;
}

void unite(std::vector<int>& parent, int a, int b) {
  a = find(parent, a);
  b = find(parent, b);
  if (a == b) return;
  // Keep the older node as root so ids stay small and deterministic.
  if (b < a) std::swap(a, b);
  parent[b] = a;
}

void close(Closure& c, const std::vector<std::pair<int, int>>& eqs) {
  auto& parent = c.root;
  for (auto [a, b] : eqs) unite(parent, a, b);
  bool changed = true;
  while (changed) {
    changed = false;
    std::map<std::pair<std::string, std::vector<int>>, int> table;
    for (std::size_t i = 0; i < c.nodes.size(); ++i) {
      Term t = c.nodes[i];
      std::vector<int> key;
      key.reserve(t->args.size());
      for (Term a : t->args) key.push_back(find(parent, c.index.at(a)));
      auto [it, fresh] = table.emplace(std::make_pair(t->name, std::move(key)), static_cast<int>(i));
      if (!fresh && find(parent, it->second) != find(parent, static_cast<int>(i))) {
        unite(parent, it->second, static_cast<int>(i));
        changed = true;
      }
    }
    if (!changed) {
      for (std::size_t i = 0; i < parent.size(); ++i) find(parent, static_cast<int>(i));
      for (auto& [k, v] : table) v = find(parent, v);
      c.sigs = std::move(table);
    }
  }
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = find(parent, static_cast<int>(i));

  c.members.clear();
  for (std::size_t i = 0; i < c.nodes.size(); ++i) c.members[parent[i]].push_back(static_cast<int>(i));

  c.diseq_roots.clear();
  c.inconsistent = false;
  for (auto [a, b] : c.diseq_nodes) {
    int ra = parent[a], rb = parent[b];
    if (ra == rb) c.inconsistent = true;
    c.diseq_roots.emplace_back(std::min(ra, rb), std::max(ra, rb));
  }
  std::sort(c.diseq_roots.begin(), c.diseq_roots.end());
  c.diseq_roots.erase(std::unique(c.diseq_roots.begin(), c.diseq_roots.end()), c.diseq_roots.end());

  // Representative of a class is its smallest known term. Known terms are
  // closed under congruence, so the minimum is reached by rebuilding some
  // materialised node from the representatives of its argument classes.
  c.rep.assign(c.nodes.size(), nullptr);
  bool again = true;
  while (again) {
    again = false;
    for (std::size_t i = 0; i < c.nodes.size(); ++i) {
      Term t = c.nodes[i];
      std::vector<Term> args;
      bool ready = true;
      for (Term a : t->args) {
        Term r = c.rep[parent[c.index.at(a)]];
        if (!r) {
          ready = false;
          break;
        }
        args.push_back(r);
      }
      if (!ready) continue;
      Term cand = args == t->args ? t : mk_app(t->name, t->sort, std::move(args));
      Term& slot = c.rep[parent[i]];
      if (!slot || compare(cand, slot) < 0) {
        slot = cand;
        again = true;
      }
    }
  }
}

}  // namespace

EInterface::EInterface() {
  auto c = std::make_shared<Closure>();
  int t = add_term(*c, top());
  int f = add_term(*c, bot());
  c->diseq_nodes.emplace_back(t, f);
  close(*c, {});
  c_ = std::move(c);
}

EInterface EInterface::extend(const std::vector<Literal>& lits) const {
  if (lits.empty()) return *this;
  auto c = std::make_shared<Closure>(*c_);
  std::vector<std::pair<int, int>> eqs;
  for (const auto& l : lits) {
    if (!is_ground(l)) throw std::invalid_argument("non-ground literal " + to_string(l));
    int a = add_term(*c, l.lhs);
    int b = add_term(*c, l.rhs);
    if (l.eq)
      eqs.emplace_back(a, b);
    else
      c->diseq_nodes.emplace_back(a, b);
    if (std::find(c->asserted.begin(), c->asserted.end(), l) == c->asserted.end())
      c->asserted.push_back(l);
  }
  close(*c, eqs);
  return EInterface(std::move(c));
}

int EInterface::class_of(Term t) const {
  auto it = c_->index.find(t);
  if (it != c_->index.end()) return c_->root[it->second];
  if (!t->ground || t->args.empty()) return -1;
  std::vector<int> key;
  key.reserve(t->args.size());
  for (Term a : t->args) {
    int r = class_of(a);
    if (r < 0) return -1;
    key.push_back(r);
  }
  auto s = c_->sigs.find(std::make_pair(t->name, key));
  return s == c_->sigs.end() ? -1 : s->second;
}

bool EInterface::equal(Term a, Term b) const {
  int ra = class_of(a);
  return ra >= 0 && ra == class_of(b);
}

bool EInterface::disequal(Term a, Term b) const {
  int ra = class_of(a), rb = class_of(b);
  if (ra < 0 || rb < 0) return false;
  auto p = std::make_pair(std::min(ra, rb), std::max(ra, rb));
  return std::binary_search(c_->diseq_roots.begin(), c_->diseq_roots.end(), p);
}

Term EInterface::rep_of(Term t) const {
  int r = class_of(t);
  return r < 0 ? nullptr : c_->rep[r];
}

std::vector<int> EInterface::class_roots() const {
  std::vector<int> out;
  for (const auto& [r, m] : c_->members) out.push_back(r);
  return out;
}

std::vector<Term> EInterface::basis() const {
  if (c_->inconsistent) throw std::logic_error("basis of an inconsistent interface");
  std::vector<Term> out;
  for (const auto& [r, m] : c_->members) out.push_back(c_->rep[r]);
  std::sort(out.begin(), out.end(), TermLess{});
  return out;
}

bool EInterface::tags_equivalent(const Tag& a, const Tag& b) const {
  if (a.name != b.name || a.params.size() != b.params.size()) return false;
  for (std::size_t i = 0; i < a.params.size(); ++i)
    if (a.params[i] != b.params[i] && !equal(a.params[i], b.params[i])) return false;
  return true;
}

std::string EInterface::dump() const {
  std::vector<std::string> lines;
  for (const auto& [r, ids] : c_->members) {
    std::vector<Term> ms;
    for (int i : ids) ms.push_back(c_->nodes[i]);
    std::sort(ms.begin(), ms.end(), TermLess{});
    std::string line = "class " + to_string(c_->rep[r]) + ":";
    for (Term m : ms) line += " " + to_string(m);
    lines.push_back(line);
  }
  std::sort(lines.begin(), lines.end());
  std::vector<std::string> dl;
  for (auto [a, b] : c_->diseq_roots) {
    std::string x = to_string(c_->rep[a]), y = to_string(c_->rep[b]);
    if (y < x) std::swap(x, y);
    dl.push_back("diseq " + x + " " + y);
  }
  std::sort(dl.begin(), dl.end());
  std::string s;
  for (const auto& l : lines) s += l + "\n";
  for (const auto& l : dl) s += l + "\n";
  if (c_->inconsistent) s += "inconsistent\n";
  return s;
}

}  // namespace esem
