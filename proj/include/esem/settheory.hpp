// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <string>
#include <vector>

#include "esem/problem.hpp"

namespace esem {

enum class AxiomClass { NonGenerative, Generative, Nested, Inner };

std::string to_string(AxiomClass c);

// generative: the body applies a Skolem symbol to bound variables.
// nested: the body contains a quantifier. inner: the tag is parameterised.
AxiomClass classify(const Quantifier& q, const std::vector<std::string>& skolems);

// A clause shape that instances of a quantifier can leave in A. For rows
// coming from an inner quantifier, `outer_vars` are the enclosing binders
// that parameterise its tag.
struct LookupRow {
  std::string tag;
  std::vector<Term> outer_vars;  // empty for top-level axioms
  std::vector<Term> vars;        // bound variables of the instantiated quantifier
  Clause shape;
};

// Every clause with two or more disjuncts in an axiom body or in the body of
// an inner quantifier.
std::vector<LookupRow> lookup_rows(const std::vector<QuantPtr>& axioms);

// Substitutions under which `row.shape` becomes exactly `c`. Variables are
// ordered as outer_vars followed by vars.
std::vector<Subst> match_row(const LookupRow& row, const Clause& c);

// Inner quantifier templates of nested axioms: tag name -> (outer binders,
// inner quantifier with those binders free).
struct InnerTemplate {
  std::string tag;
  std::vector<Term> outer_vars;
  QuantPtr inner;
};
std::vector<InnerTemplate> inner_templates(const std::vector<QuantPtr>& axioms);

struct AxiomBundle {
  Problem problem;
  std::vector<std::string> functions;  // the twelve uninterpreted set functions
  std::vector<std::string> skolems;
  std::vector<std::string> nested_tags;
  std::map<std::string, AxiomClass> classification;
};

const std::string& settheory_source();
const AxiomBundle& bundle();

}  // namespace esem
