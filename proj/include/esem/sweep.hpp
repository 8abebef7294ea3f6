// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "esem/trace_io.hpp"

namespace esem {

struct CheckSet {
  bool invariants = false;
  bool descent = false;
};

struct RunSpec {
  std::string scheduler = "random";
  std::uint64_t seed = 0;
  std::size_t max_steps = 10000;
  Options opt;
  CheckSet checks;
  std::string trace_id;
};

struct TracedRun {
  TraceDocument doc;
  Terminal terminal = Terminal::BudgetExhausted;
  std::vector<ReportRecord> reports;  // failures only
  std::size_t invariant_violations = 0;
  std::size_t descent_violations = 0;
};

// True when the problem's axioms are exactly the bundled set theory, which
// is what the problem-specific invariants are written against.
bool is_settheory(const Problem& p);

// Runs one trace and records it. Descent is only checked when the problem
// carries a measure configuration.
TracedRun traced_run(const Problem& p, const RunSpec& spec);

// Bounds for random ground-literal instances.
struct GenSpec {
  int sets = 3;
  int elems = 3;
  int lits = 6;
};

// Parses "sets=3,elems=3,lits=6"; missing keys keep their defaults.
GenSpec parse_gen_spec(const std::string& text);

// Adds fresh constants S0.., e0.. and random literals to a copy of `base`.
// Shapes: member and its negation, set equalities and disequalities over
// constants or one application of union/inter/diff/add where declared.
Problem generate_instance(const Problem& base, const GenSpec& g, std::uint64_t seed);

struct SweepConfig {
  std::size_t instances = 0;
  std::uint64_t seed = 0;
  GenSpec gen;
  std::vector<std::string> schedulers = {"random", "inst-first", "split-first"};
  std::size_t max_steps = 10000;
  Options opt;
  CheckSet checks;
  unsigned threads = 1;
};

struct SweepSummary {
  std::size_t instances = 0;
  std::size_t runs = 0;
  std::size_t terminated = 0;
  std::size_t saturated = 0;
  std::size_t inconsistent = 0;
  std::size_t budget_exhausted = 0;
  std::size_t invariant_violations = 0;
  std::size_t descent_violations = 0;
  std::size_t total_steps = 0;
  std::vector<ReportRecord> reports;
};

// Called once per run, in instance then scheduler order.
using RunSink = std::function<void(std::size_t instance, const Problem&, const TracedRun&)>;

SweepSummary sweep(const Problem& base, const SweepConfig& cfg, const RunSink& sink = {});

std::string to_json_line(const SweepSummary& s);

}  // namespace esem
