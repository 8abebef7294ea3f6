// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "esem/formula.hpp"

namespace esem {

// Congruence closure over the materialised subterms of all asserted literals.
// Node ids are stable across extensions; roots are not.
struct Closure {
  std::vector<Term> nodes;
  std::map<Term, int> index;
  std::vector<int> root;
  std::map<std::pair<std::string, std::vector<int>>, int> sigs;
  std::vector<std::pair<int, int>> diseq_nodes;
  std::vector<std::pair<int, int>> diseq_roots;  // normalised, sorted, unique
  std::vector<Literal> asserted;
  std::vector<Term> rep;                 // indexed by root id
  std::map<int, std::vector<int>> members;  // root -> member node ids
  std::map<std::string, std::vector<int>> by_head;
  bool inconsistent = false;
};

class EInterface {
 public:
  // Fresh interface holding only the preloaded true != false.
  EInterface();

  EInterface extend(const std::vector<Literal>& lits) const;

  bool known(Term t) const { return class_of(t) >= 0; }
  bool equal(Term a, Term b) const;
  bool disequal(Term a, Term b) const;
  bool inconsistent() const { return c_->inconsistent; }

  // Class root id of a ground term, or -1 when the term is not known.
  int class_of(Term t) const;
  // Smallest known term equal to t, or nullptr when t is unknown.
  Term rep_of(Term t) const;
  Term rep_of_class(int root) const { return c_->rep[root]; }

  // One representative per class, sorted. Throws when inconsistent.
  std::vector<Term> basis() const;
  // All classes, including when inconsistent.
  std::vector<int> class_roots() const;

  bool tags_equivalent(const Tag& a, const Tag& b) const;

  const Closure& closure() const { return *c_; }
  const std::vector<Literal>& asserted() const { return c_->asserted; }

  // One line per class, then one line per disequal pair of classes.
  std::string dump() const;

 private:
  explicit EInterface(std::shared_ptr<const Closure> c) : c_(std::move(c)) {}
  std::shared_ptr<const Closure> c_;
};

}  // namespace esem
