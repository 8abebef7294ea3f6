// SPDX-License-Identifier: Apache-2.0
#include "esem/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace esem {

bool is_settheory(const Problem& p) {
  const auto& ref = bundle().problem.axioms;
  if (p.axioms.size() != ref.size()) return false;
  for (std::size_t i = 0; i < ref.size(); ++i)
    if (p.axioms[i]->key != ref[i]->key) return false;
  return true;
}

TracedRun traced_run(const Problem& p, const RunSpec& spec) {
  TracedRun out;
  SolverState init = initial_state(p);
  auto sched = make_scheduler(spec.scheduler, spec.seed, spec.opt);
  bool measured = p.measure.has_value();
  MeasureContext mctx;
  if (measured) mctx = MeasureContext::from_problem(p);
  InvariantContext ictx;
  if (spec.checks.invariants) ictx = InvariantContext::make(p, init, spec.opt, is_settheory(p));

  auto note = [&](std::vector<ReportRecord> rs, long index, bool invariant,
                  std::vector<std::string>& sink) {
    for (auto& r : rs) {
      r.trace_id = spec.trace_id;
      r.step_index = index;
      sink.push_back(r.check + ": " + r.detail);
      (invariant ? out.invariant_violations : out.descent_violations)++;
      out.reports.push_back(std::move(r));
    }
  };

  out.doc.header.problem_digest = problem_digest(p);
  out.doc.header.scheduler = sched->name();
  out.doc.header.seed = spec.seed;
  out.doc.header.initial_digest = state_digest(init);

  if (spec.checks.invariants) {
    std::vector<std::string> ignored;
    note(check_state(init, ictx), -1, true, ignored);
  }

  std::optional<MeasureValue> carried;
  if (measured) carried = measure(init, mctx, spec.opt);
  auto obs = [&](std::size_t i, const SolverState& before, const Choice& c, const SolverState& after) {
    TraceStepRecord rec;
    rec.index = static_cast<long>(i);
    rec.rule = c.rule();
    rec.choice = c.describe();
    rec.before = state_digest(before);
    rec.after = state_digest(after);
    if (measured) {
      rec.measure_before = carried;
      rec.measure_after = measure(after, mctx, spec.opt);
      carried = rec.measure_after;
    }
    long idx = static_cast<long>(i);
    if (spec.checks.invariants) {
      note(check_state(after, ictx), idx, true, rec.violations);
      note(check_step(before, after, ictx), idx, true, rec.violations);
    }
    if (spec.checks.descent && measured)
      note(check_descent_step(rec.rule, *rec.measure_before, *rec.measure_after), idx, false,
           rec.violations);
    out.doc.steps.push_back(std::move(rec));
  };
  RunResult r = run(init, *sched, spec.max_steps, spec.opt, obs);
  out.terminal = r.terminal;
  out.doc.terminal = to_string(r.terminal);
  if (measured) out.doc.final_measure = measure(r.final_state, mctx, spec.opt);
  return out;
}

GenSpec parse_gen_spec(const std::string& text) {
  GenSpec g;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("expected key=value in '" + item + "'");
    std::string key = item.substr(0, eq);
    int v = 0;
    try {
      v = std::stoi(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw std::invalid_argument("bad number in '" + item + "'");
    }
    if (v < 0) throw std::invalid_argument("negative bound in '" + item + "'");
    if (key == "sets") g.sets = v;
    else if (key == "elems") g.elems = v;
    else if (key == "lits") g.lits = v;
    else throw std::invalid_argument("unknown generator key '" + key + "'");
  }
  return g;
}

namespace {

Term declare_const(Problem& p, const std::string& name, const std::string& sort) {
  if (!p.function(name)) {
    p.functions[name] = FunctionSymbol{name, {}, sort, SymbolKind::Const};
    p.function_order.push_back(name);
  }
  return mk_app(name, sort, {});
}

bool declared_as(const Problem& p, const std::string& name, const std::vector<std::string>& args,
                 const std::string& result) {
  const FunctionSymbol* f = p.function(name);
  return f && f->arg_sorts == args && f->result == result;
}

}  // namespace

Problem generate_instance(const Problem& base, const GenSpec& g, std::uint64_t seed) {
  Problem p = base;
  std::string set_sort = p.measure ? p.measure->set_sort : "SetT";
  std::string elem_sort = p.measure ? p.measure->elem_sort : "T";
  std::mt19937_64 rng(seed);
  auto below = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };

  std::vector<Term> sets, elems;
  std::size_t nsets = g.sets > 0 ? 1 + below(g.sets) : 0;
  std::size_t nelems = g.elems > 0 ? 1 + below(g.elems) : 0;
  for (std::size_t i = 0; i < nsets; ++i) sets.push_back(declare_const(p, "S" + std::to_string(i), set_sort));
  for (std::size_t i = 0; i < nelems; ++i) elems.push_back(declare_const(p, "e" + std::to_string(i), elem_sort));
  if (sets.empty() || g.lits == 0) return p;

  std::vector<std::string> binary;
  for (const char* f : {"union", "inter", "diff"})
    if (declared_as(p, f, {set_sort, set_sort}, set_sort)) binary.push_back(f);
  bool has_add = declared_as(p, "add", {elem_sort, set_sort}, set_sort) && !elems.empty();
  bool has_member = declared_as(p, "member", {elem_sort, set_sort}, "Bool") && !elems.empty();

  auto set_term = [&]() -> Term {
    std::size_t layers = binary.size() + (has_add ? 1 : 0);
    if (layers == 0 || below(2) == 0) return sets[below(sets.size())];
    std::size_t k = below(layers);
    if (k < binary.size())
      return mk_app(binary[k], set_sort, {sets[below(sets.size())], sets[below(sets.size())]});
    return mk_app("add", set_sort, {elems[below(elems.size())], sets[below(sets.size())]});
  };

  std::size_t nlits = 1 + below(g.lits);
  std::set<std::string> seen;
  // Degenerate draws are redrawn, with a cap so tiny bounds cannot spin.
  for (std::size_t tries = 0; p.literals.size() - base.literals.size() < nlits && tries < 20 * nlits; ++tries) {
    Literal l;
    std::size_t shape = has_member ? below(4) : 2 + below(2);
    if (shape < 2) {
      l = make_pred(mk_app("member", "Bool", {elems[below(elems.size())], set_term()}), shape == 0);
    } else {
      Term a = set_term(), b = set_term();
      if (a == b) {
        if (shape == 3) continue;  // trivially inconsistent, skip
        b = sets[below(sets.size())];
        if (a == b) continue;
      }
      l = shape == 2 ? make_eq(a, b) : make_neq(a, b);
    }
    if (seen.insert(to_string(l)).second) p.literals.push_back(l);
  }
  return p;
}

SweepSummary sweep(const Problem& base, const SweepConfig& cfg, const RunSink& sink) {
  SweepSummary s;
  s.instances = cfg.instances;
  bundle();  // build shared static data before any worker starts

  struct Slot {
    Problem p;
    std::vector<TracedRun> runs;
  };
  std::vector<Slot> slots(cfg.instances);
  auto work = [&](std::size_t i) {
    Slot& slot = slots[i];
    slot.p = generate_instance(base, cfg.gen, cfg.seed + i);
    for (const auto& name : cfg.schedulers) {
      RunSpec spec;
      spec.scheduler = name;
      spec.seed = cfg.seed + i;
      spec.max_steps = cfg.max_steps;
      spec.opt = cfg.opt;
      spec.checks = cfg.checks;
      spec.trace_id = "i" + std::to_string(i) + "-" + name;
      slot.runs.push_back(traced_run(slot.p, spec));
    }
  };

  unsigned threads = std::max(1u, cfg.threads);
  if (threads == 1 || cfg.instances < 2) {
    for (std::size_t i = 0; i < cfg.instances; ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < cfg.instances; i = next++) work(i);
      });
    for (auto& th : pool) th.join();
  }

  for (std::size_t i = 0; i < slots.size(); ++i) {
    for (auto& r : slots[i].runs) {
      ++s.runs;
      s.total_steps += r.doc.steps.size();
      switch (r.terminal) {
        case Terminal::Saturated: ++s.saturated; ++s.terminated; break;
        case Terminal::Inconsistent: ++s.inconsistent; ++s.terminated; break;
        case Terminal::BudgetExhausted: ++s.budget_exhausted; break;
      }
      s.invariant_violations += r.invariant_violations;
      s.descent_violations += r.descent_violations;
      for (auto& rec : r.reports) s.reports.push_back(rec);
      if (sink) sink(i, slots[i].p, r);
    }
  }
  return s;
}

std::string to_json_line(const SweepSummary& s) {
  nlohmann::ordered_json j;
  j["instances"] = s.instances;
  j["runs"] = s.runs;
  j["terminated"] = s.terminated;
  j["saturated"] = s.saturated;
  j["inconsistent"] = s.inconsistent;
  j["budgetExhausted"] = s.budget_exhausted;
  j["invariantViolations"] = s.invariant_violations;
  j["descentViolations"] = s.descent_violations;
  j["steps"] = s.total_steps;
  return j.dump();
}

}  // namespace esem
