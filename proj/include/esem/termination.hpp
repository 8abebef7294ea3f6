// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "esem/settheory.hpp"
#include "esem/transitions.hpp"

namespace esem {

struct MeasureValue {
  long sigma = -1;
  long theta = -1;

  bool operator==(const MeasureValue&) const = default;
  bool operator<(const MeasureValue& o) const {
    return sigma != o.sigma ? sigma < o.sigma : theta < o.theta;
  }
};

std::string to_string(const MeasureValue& m);

struct Overapprox {
  std::vector<Term> o1;
  std::vector<Term> o2;
};

// O1 is the set-sorted part of the basis. O2 is the element-sorted part plus
// each configured Skolem symbol applied to O1 tuples. Given an interface,
// lifted Skolem applications that are already known are left out, since
// their class is already represented.
Overapprox overapprox_basis(const std::vector<Term>& basis, const MeasureConfig& cfg,
                            const EInterface* e = nullptr);

struct PTerm {
  Tag tag;                                  // parameters are O1 terms for inner templates
  std::vector<std::vector<Term>> domains;   // one per bound variable
  long domain_size = 0;
  long blocked = 0;
  long size() const { return domain_size - blocked; }
};

// Static data shared by all measure computations for one problem.
struct MeasureContext {
  MeasureConfig cfg;
  std::vector<QuantPtr> originals;      // W0
  std::vector<InnerTemplate> templates;  // only those named in cfg.nested

  static MeasureContext from_problem(const Problem& p);
};

std::vector<PTerm> p_estimation(const SolverState& s, const MeasureContext& ctx,
                                bool unordered_params = false);
long sigma(const SolverState& s, const MeasureContext& ctx, bool unordered_params = false);
long theta(const SolverState& s, const Options& opt = {});
MeasureValue measure(const SolverState& s, const MeasureContext& ctx, const Options& opt = {});

// Report records -------------------------------------------------------------

struct ReportRecord {
  std::string trace_id;
  long step_index = -1;
  std::string check;
  std::string status;  // pass | fail
  std::string detail;
};

std::string to_json_line(const ReportRecord& r);

// Descent of M across one step, with the per-rule expectations: split keeps
// Sigma from growing and lowers Theta, inst lowers Sigma.
std::vector<ReportRecord> check_descent_step(const std::string& rule, const MeasureValue& before,
                                             const MeasureValue& after);

struct TraceStep {
  SolverState before;
  Choice choice;
  SolverState after;
};

std::vector<ReportRecord> check_descent(const std::vector<TraceStep>& trace,
                                        const MeasureContext& ctx, const Options& opt = {});

// Invariant checking ---------------------------------------------------------

struct InvariantContext {
  Options opt;
  std::vector<QuantPtr> w0;
  bool problem_specific = false;  // enables the P:* checks
  std::vector<LookupRow> rows;
  std::vector<InnerTemplate> templates;
  std::optional<MeasureConfig> cfg;
  std::vector<Term> initial_cover;  // O1(B0) and O2(B0)
  std::size_t he_samples = 3;       // class members tried per position

  static InvariantContext make(const Problem& p, const SolverState& init, const Options& opt,
                               bool problem_specific);
};

// Single-state predicates: G:QT G:NA G:EQ G:EE G:HE G:KB, and when enabled
// P:OC P:FQ P:IC P:IQ P:IB. Returns only failures.
std::vector<ReportRecord> check_state(const SolverState& s, const InvariantContext& ctx);

// Step predicates: G:IG G:HG G:QG G:CG G:VV and, when enabled, P:BS.
std::vector<ReportRecord> check_step(const SolverState& before, const SolverState& after,
                                     const InvariantContext& ctx);

// All check names, in report order.
const std::vector<std::string>& general_checks();
const std::vector<std::string>& problem_checks();

}  // namespace esem
