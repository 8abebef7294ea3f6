// SPDX-License-Identifier: Apache-2.0
// esem: run, explore and sweep the transition system on a problem file.
#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "esem/sexpr.hpp"
#include "esem/sweep.hpp"

using namespace esem;

namespace {

enum Exit { kOk = 0, kUsage = 1, kBudget = 2, kInvariant = 3, kDescent = 4 };

struct Sink {
  std::ofstream trace, report;
  void traces(const std::string& text) {
    if (trace.is_open()) trace << text;
  }
  void records(const std::vector<ReportRecord>& rs) {
    if (report.is_open())
      for (const auto& r : rs) report << to_json_line(r) << "\n";
  }
};

int worst(int a, int b) { return std::max(a, b); }

int code_for(const TracedRun& r) {
  int c = kOk;
  if (r.terminal == Terminal::BudgetExhausted) c = worst(c, kBudget);
  if (r.invariant_violations) c = worst(c, kInvariant);
  if (r.descent_violations) c = worst(c, kDescent);
  return c;
}

// One pass record per enabled check with no failures, so reports list
// every check that ran.
std::vector<ReportRecord> passes(const std::string& id, const CheckSet& checks, bool problem_specific,
                                 bool measured, const std::vector<ReportRecord>& failures) {
  std::vector<std::string> names;
  if (checks.invariants) {
    names = general_checks();
    if (problem_specific)
      for (const auto& n : problem_checks()) names.push_back(n);
  }
  if (checks.descent && measured)
    for (const char* n : {"descent:M", "descent:split-sigma", "descent:split-theta", "descent:inst-sigma"})
      names.push_back(n);
  std::vector<ReportRecord> out;
  for (const auto& n : names) {
    bool failed = std::any_of(failures.begin(), failures.end(), [&](const ReportRecord& r) { return r.check == n; });
    if (!failed) out.push_back(ReportRecord{id, -1, n, "pass", ""});
  }
  return out;
}

int run_exhaustive(const Problem& p, const Options& opt, const CheckSet& checks, std::size_t depth,
                   std::size_t max_traces, Sink& sink) {
  SolverState init = initial_state(p);
  bool measured = p.measure.has_value();
  MeasureContext mctx;
  if (measured) mctx = MeasureContext::from_problem(p);
  bool ps = is_settheory(p);
  InvariantContext ictx = InvariantContext::make(p, init, opt, ps);
  std::vector<ReportRecord> fails;
  std::size_t inv = 0, desc = 0;
  auto add = [&](std::vector<ReportRecord> rs, long idx, std::size_t& counter) {
    for (auto& r : rs) {
      r.trace_id = "exhaustive";
      r.step_index = idx;
      fails.push_back(std::move(r));
      ++counter;
    }
  };
  if (checks.invariants) add(check_state(init, ictx), -1, inv);
  auto obs = [&](std::size_t d, const SolverState& before, const Choice& c, const SolverState& after) {
    long idx = static_cast<long>(d);
    if (checks.invariants) {
      add(check_state(after, ictx), idx, inv);
      add(check_step(before, after, ictx), idx, inv);
    }
    if (checks.descent && measured)
      add(check_descent_step(c.rule(), measure(before, mctx, opt), measure(after, mctx, opt)), idx, desc);
  };
  ExploreLimits lim;
  lim.max_depth = depth;
  lim.max_leaves = max_traces;
  ExploreResult r = explore(init, lim, opt, obs);
  std::cout << "states " << r.states << " leaves " << r.leaves << " frontier " << r.frontier
            << " cycle " << (r.cycle ? "yes" : "no") << " stuck " << (r.stuck ? "yes" : "no")
            << " truncated " << (r.truncated ? "yes" : "no") << " sat-reachable "
            << (r.sat_reachable ? "yes" : "no") << " bot-reachable " << (r.bot_reachable ? "yes" : "no")
            << " invariant-violations " << inv << " descent-violations " << desc << "\n";
  sink.records(fails);
  sink.records(passes("exhaustive", checks, ps, measured, fails));
  int code = kOk;
  if (r.frontier || r.cycle || r.truncated) code = worst(code, kBudget);
  if (inv || r.stuck) code = worst(code, kInvariant);
  if (desc) code = worst(code, kDescent);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Explore E-matching based solver semantics on a problem file"};
  std::string input, scheduler = "random", check = "none", trace_out, report_out, gen = "sets=3,elems=3,lits=6";
  std::vector<std::string> asserts;
  std::uint64_t seed = 0;
  std::size_t max_steps = 10000, max_traces = 1, sweep_n = 0;
  unsigned threads = 1;
  bool plain_matching = false, plain_wupdate = false, subset_split = false, seed_given = false;

  app.add_option("--input", input, "Problem file (default: the bundled set theory)");
  app.add_option("--assert", asserts, "Extra ground literal; unknown constants are declared");
  app.add_option("--scheduler", scheduler, "Choice policy")
      ->check(CLI::IsMember({"exhaustive", "random", "inst-first", "split-first", "loop-seeking"}));
  auto* seed_opt = app.add_option("--seed", seed, "Seed for random choices and instance generation");
  app.add_option("--max-steps", max_steps, "Step budget per trace (depth for exhaustive)")
      ->check(CLI::PositiveNumber);
  app.add_option("--max-traces", max_traces, "Traces per run (leaf cap for exhaustive, 0 = none)");
  app.add_option("--check", check, "Checks to enable")->check(CLI::IsMember({"none", "invariants", "descent", "all"}));
  app.add_flag("--plain-matching", plain_matching, "Block only syntactically identical history entries");
  app.add_flag("--plain-wupdate", plain_wupdate, "Add inner quantifiers without the tag-equivalence test");
  app.add_flag("--subset-split", subset_split, "Offer every non-empty subset of a clause as a split");
  app.add_option("--trace-out", trace_out, "Write trace documents here");
  app.add_option("--report-out", report_out, "Write check records here");
  app.add_option("--sweep", sweep_n, "Run N generated instances instead of a single problem");
  app.add_option("--gen", gen, "Instance bounds for --sweep");
  app.add_option("--threads", threads, "Worker threads for --sweep")->check(CLI::PositiveNumber);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }
  seed_given = seed_opt->count() > 0;

  Options opt;
  opt.matching = plain_matching ? MatchMode::Plain : MatchMode::Optimised;
  opt.optimised_wupdate = !plain_wupdate;
  opt.subset_split = subset_split;
  CheckSet checks{check == "invariants" || check == "all", check == "descent" || check == "all"};

  Problem p;
  try {
    if (input.empty()) {
      p = bundle().problem;
    } else {
      std::ifstream f(input);
      if (!f) {
        std::cerr << input << ": cannot open\n";
        return kUsage;
      }
      std::stringstream ss;
      ss << f.rdbuf();
      p = parse_problem(ss.str());
    }
    for (const auto& w : p.warnings) std::cerr << (input.empty() ? "settheory" : input) << ": warning: " << w << "\n";
    for (const auto& a : asserts) p.literals.push_back(parse_literal(p, a, true));
  } catch (const ParseError& e) {
    std::cerr << (input.empty() ? "settheory" : input) << ":" << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  if (scheduler == "random" && !seed_given && !app.count("--sweep")) {
    std::cerr << "error: --seed is required with the random scheduler\n";
    return kUsage;
  }

  Sink sink;
  if (!trace_out.empty()) {
    sink.trace.open(trace_out, std::ios::binary);
    if (!sink.trace) {
      std::cerr << trace_out << ": cannot write\n";
      return kUsage;
    }
  }
  if (!report_out.empty()) {
    sink.report.open(report_out, std::ios::binary);
    if (!sink.report) {
      std::cerr << report_out << ": cannot write\n";
      return kUsage;
    }
  }

  if (sweep_n > 0 || app.count("--sweep")) {
    SweepConfig cfg;
    cfg.instances = sweep_n;
    cfg.seed = seed;
    try {
      cfg.gen = parse_gen_spec(gen);
    } catch (const std::exception& e) {
      std::cerr << "error: --gen: " << e.what() << "\n";
      return kUsage;
    }
    if (scheduler != "random" && app.count("--scheduler")) cfg.schedulers = {scheduler};
    if (scheduler == "exhaustive") {
      std::cerr << "error: --sweep runs step schedulers only\n";
      return kUsage;
    }
    cfg.max_steps = max_steps;
    cfg.opt = opt;
    cfg.checks = checks;
    cfg.threads = threads;
    bool ps = is_settheory(p);
    bool measured = p.measure.has_value();
    SweepSummary s = sweep(p, cfg, [&](std::size_t, const Problem&, const TracedRun& r) {
      sink.traces(serialize_trace(r.doc));
    });
    sink.records(s.reports);
    sink.records(passes("sweep", checks, ps, measured, s.reports));
    std::cout << to_json_line(s) << "\n";
    int code = kOk;
    if (s.budget_exhausted) code = worst(code, kBudget);
    if (s.invariant_violations) code = worst(code, kInvariant);
    if (s.descent_violations) code = worst(code, kDescent);
    return code;
  }

  if (scheduler == "exhaustive") {
    if (!trace_out.empty()) std::cerr << "note: exhaustive mode writes no trace documents\n";
    return run_exhaustive(p, opt, checks, max_steps, app.count("--max-traces") ? max_traces : 0, sink);
  }

  int code = kOk;
  bool ps = is_settheory(p);
  for (std::size_t i = 0; i < std::max<std::size_t>(1, max_traces); ++i) {
    RunSpec spec;
    spec.scheduler = scheduler;
    spec.seed = seed + i;
    spec.max_steps = max_steps;
    spec.opt = opt;
    spec.checks = checks;
    spec.trace_id = "t" + std::to_string(i);
    TracedRun r = traced_run(p, spec);
    sink.traces(serialize_trace(r.doc));
    sink.records(r.reports);
    sink.records(passes(spec.trace_id, checks, ps, p.measure.has_value(), r.reports));
    std::cout << spec.trace_id << " " << r.doc.terminal << " steps " << r.doc.steps.size();
    if (r.doc.final_measure) std::cout << " measure " << to_string(*r.doc.final_measure);
    std::cout << " invariant-violations " << r.invariant_violations << " descent-violations "
              << r.descent_violations << "\n";
    code = worst(code, code_for(r));
  }
  return code;
}
