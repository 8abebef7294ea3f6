// SPDX-License-Identifier: Apache-2.0
// Naive fixed-point reference for the E-interface judgements. Every rule is
// applied over an explicit finite universe of terms until nothing changes.
#pragma once

#include <random>
#include <string>
#include <vector>

#include "esem/einterface.hpp"

namespace oracle {

using esem::Literal;
using esem::Term;

// Terms over constants a, b, unary f and binary g, up to depth 3, plus the
// two Boolean constants.
inline std::vector<Term> universe() {
  const std::string U = "U";
  std::vector<Term> d1 = {esem::mk_app("a", U), esem::mk_app("b", U)};
  std::vector<Term> upto2 = d1;
  for (Term x : d1) upto2.push_back(esem::mk_app("f", U, {x}));
  for (Term x : d1)
    for (Term y : d1) upto2.push_back(esem::mk_app("g", U, {x, y}));
  std::vector<Term> all = upto2;
  auto depth2 = [&](Term t) { return !t->args.empty(); };
  for (Term x : upto2)
    if (depth2(x)) all.push_back(esem::mk_app("f", U, {x}));
  for (Term x : upto2)
    for (Term y : upto2)
      if (depth2(x) || depth2(y)) all.push_back(esem::mk_app("g", U, {x, y}));
  all.push_back(esem::top());
  all.push_back(esem::bot());
  return all;
}

struct Result {
  std::vector<char> known;
  std::vector<std::vector<char>> eq, dq;
  bool inconsistent = false;
};

inline Result closure(const std::vector<Term>& terms, const std::vector<Literal>& lits) {
  const std::size_t n = terms.size();
  auto id = [&](Term t) -> int {
    for (std::size_t i = 0; i < n; ++i)
      if (terms[i] == t) return static_cast<int>(i);
    return -1;
  };
  Result r;
  r.known.assign(n, 0);
  r.eq.assign(n, std::vector<char>(n, 0));
  r.dq.assign(n, std::vector<char>(n, 0));

  std::vector<Term> sub;
  for (const auto& l : lits) {
    esem::collect_subterms(l.lhs, sub);
    esem::collect_subterms(l.rhs, sub);
  }
  sub.push_back(esem::top());
  sub.push_back(esem::bot());
  for (Term t : sub) r.known[id(t)] = 1;
  for (std::size_t i = 0; i < n; ++i) r.eq[i][i] = r.known[i];
  auto add_dq = [&](int a, int b) { r.dq[a][b] = r.dq[b][a] = 1; };
  add_dq(id(esem::top()), id(esem::bot()));
  for (const auto& l : lits) {
    int a = id(l.lhs), b = id(l.rhs);
    if (l.eq) r.eq[a][b] = r.eq[b][a] = 1;
    else add_dq(a, b);
  }

  std::vector<std::vector<int>> args(n);
  for (std::size_t i = 0; i < n; ++i)
    for (Term a : terms[i]->args) args[i].push_back(id(a));
  auto congruent = [&](std::size_t i, std::size_t j) {
    if (terms[i]->name != terms[j]->name || args[i].size() != args[j].size()) return false;
    for (std::size_t k = 0; k < args[i].size(); ++k)
      if (!r.eq[args[i][k]][args[j][k]]) return false;
    return true;
  };

  for (bool changed = true; changed;) {
    changed = false;
    auto set = [&](char& c) {
      if (!c) c = 1, changed = true;
    };
    // Equivalence: symmetry and transitivity.
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        if (r.eq[i][k])
          for (std::size_t j = 0; j < n; ++j)
            if (r.eq[k][j]) set(r.eq[i][j]);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (r.eq[i][j]) set(r.eq[j][i]);
    // A term whose arguments are known and equal to those of a known term
    // with the same head is known, and equal to that term.
    for (std::size_t i = 0; i < n; ++i) {
      if (args[i].empty()) continue;
      bool args_known = true;
      for (int a : args[i]) args_known = args_known && r.known[a];
      if (!args_known) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (j != i && r.known[j] && congruent(i, j)) {
          set(r.known[i]);
          set(r.eq[i][i]);
          set(r.eq[i][j]);
          set(r.eq[j][i]);
        }
    }
    // Disequality is preserved under equality.
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (!r.dq[i][j]) continue;
        for (std::size_t i2 = 0; i2 < n; ++i2) {
          if (!r.eq[i][i2]) continue;
          for (std::size_t j2 = 0; j2 < n; ++j2)
            if (r.eq[j][j2]) set(r.dq[i2][j2]);
        }
      }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (r.dq[i][j] && r.eq[i][j]) r.inconsistent = true;
  return r;
}

// Up to `max_lits` random (dis)equalities over the universe.
inline std::vector<Literal> random_literals(const std::vector<Term>& terms, std::mt19937_64& rng,
                                            std::size_t max_lits) {
  std::vector<Term> pool;
  for (Term t : terms)
    if (t->sort == "U") pool.push_back(t);
  // Prefer shallow terms so that equalities interact through congruence.
  auto pick = [&]() {
    std::size_t cut = rng() % 3 == 0 ? pool.size() : std::min<std::size_t>(pool.size(), 8);
    return pool[rng() % cut];
  };
  std::vector<Literal> out;
  std::size_t k = 1 + rng() % max_lits;
  for (std::size_t i = 0; i < k; ++i) {
    Term a = pick(), b = pick();
    if (a == b) continue;
    out.push_back(rng() % 4 == 0 ? esem::make_neq(a, b) : esem::make_eq(a, b));
  }
  return out;
}

struct Mismatch {
  std::string query;
};

// Compares every known/equal/disequal query over the universe, plus the
// inconsistency flag. Returns the mismatching queries.
inline std::vector<std::string> compare(const esem::EInterface& e, const std::vector<Term>& terms,
                                        const Result& r) {
  std::vector<std::string> bad;
  if (e.inconsistent() != r.inconsistent) bad.push_back("inconsistent");
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (e.known(terms[i]) != static_cast<bool>(r.known[i])) bad.push_back("known " + esem::to_string(terms[i]));
    for (std::size_t j = 0; j < terms.size(); ++j) {
      if (e.equal(terms[i], terms[j]) != static_cast<bool>(r.eq[i][j]))
        bad.push_back("equal " + esem::to_string(terms[i]) + " " + esem::to_string(terms[j]));
      if (e.disequal(terms[i], terms[j]) != static_cast<bool>(r.dq[i][j]))
        bad.push_back("disequal " + esem::to_string(terms[i]) + " " + esem::to_string(terms[j]));
    }
  }
  return bad;
}

}  // namespace oracle
