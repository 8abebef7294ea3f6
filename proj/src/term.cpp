// SPDX-License-Identifier: Apache-2.0
#include "esem/term.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <unordered_set>

namespace esem {
namespace {

struct NodeKey {
  const Node* n;
};

struct KeyHash {
  std::size_t operator()(const NodeKey& k) const { return k.n->hash; }
};

struct KeyEq {
  bool operator()(const NodeKey& a, const NodeKey& b) const {
    return a.n->kind == b.n->kind && a.n->name == b.n->name &&
           a.n->sort == b.n->sort && a.n->args == b.n->args;
  }
};

struct Table {
  std::mutex mu;
  std::unordered_set<NodeKey, KeyHash, KeyEq> set;
  std::vector<std::unique_ptr<Node>> owned;
};

Table& table() {
  static Table* t = new Table();
  return *t;
}

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

Term intern(Kind kind, const std::string& name, const std::string& sort,
            std::vector<Term> args) {
  auto node = std::make_unique<Node>();
  node->kind = kind;
  node->name = name;
  node->sort = sort;
  node->size = 1;
  node->ground = kind == Kind::App;
  std::size_t h = mix(std::hash<std::string>{}(name), std::hash<std::string>{}(sort));
  h = mix(h, static_cast<std::size_t>(kind));
  for (Term a : args) {
    node->size += a->size;
    node->ground = node->ground && a->ground;
    h = mix(h, a->hash);
  }
  node->hash = h;
  node->args = std::move(args);

  Table& t = table();
  std::lock_guard<std::mutex> lock(t.mu);
  auto it = t.set.find(NodeKey{node.get()});
  if (it != t.set.end()) return it->n;
  Term res = node.get();
  t.set.insert(NodeKey{res});
  t.owned.push_back(std::move(node));
  return res;
}

}  // namespace

Term mk_var(const std::string& name, const std::string& sort) {
  return intern(Kind::Var, name, sort, {});
}

Term mk_app(const std::string& name, const std::string& sort, std::vector<Term> args) {
  return intern(Kind::App, name, sort, std::move(args));
}

Term top() {
  static Term t = mk_app(kTrue, kBool);
  return t;
}

Term bot() {
  static Term t = mk_app(kFalse, kBool);
  return t;
}

bool is_bool_const(Term t) { return t == top() || t == bot(); }

int compare(Term a, Term b) {
  if (a == b) return 0;
  if (a->size != b->size) return a->size < b->size ? -1 : 1;
  if (int c = a->name.compare(b->name)) return c < 0 ? -1 : 1;
  if (int c = a->sort.compare(b->sort)) return c < 0 ? -1 : 1;
  if (a->kind != b->kind) return a->kind < b->kind ? -1 : 1;
  return compare(a->args, b->args);
}

int compare(const std::vector<Term>& a, const std::vector<Term>& b) {
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i)
    if (int c = compare(a[i], b[i])) return c;
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  return 0;
}

std::string to_string(Term t) {
  if (t->args.empty()) return t->name;
  std::string s = "(" + t->name;
  for (Term a : t->args) s += " " + to_string(a);
  return s + ")";
}

std::string to_string(const std::vector<Term>& ts) {
  std::string s = "(";
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (i) s += " ";
    s += to_string(ts[i]);
  }
  return s + ")";
}

bool contains_var(Term t) { return !t->ground; }

bool occurs(Term var, Term t) {
  if (t == var) return true;
  for (Term a : t->args)
    if (occurs(var, a)) return true;
  return false;
}

void collect_vars(Term t, std::vector<Term>& out) {
  if (t->is_var()) {
    if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
    return;
  }
  for (Term a : t->args) collect_vars(a, out);
}

void collect_subterms(Term t, std::vector<Term>& out) {
  for (Term a : t->args) collect_subterms(a, out);
  out.push_back(t);
}

}  // namespace esem
