// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "esem/matching.hpp"
#include "esem/problem.hpp"

namespace esem {

struct Options {
  MatchMode matching = MatchMode::Optimised;
  bool optimised_wupdate = true;
  bool subset_split = false;
};

enum class Status { Active, Saturated, Inconsistent };

struct SolverState {
  Status status = Status::Active;
  std::vector<QuantPtr> W;  // sorted by key
  std::vector<Clause> A;    // sorted, unique
  EInterface E;
  EHistory H;

  bool active() const { return status == Status::Active; }
};

struct Choice {
  enum class Kind { Split, Inst, Bot, Sat };
  Kind kind = Kind::Sat;
  std::vector<ExtLiteral> phi;  // split: selected disjuncts
  std::vector<Clause> sources;  // split: the clause each disjunct came from
  EMatch match;                 // inst

  std::string rule() const;
  std::string describe() const;
};

SolverState initial_state(const Problem& p);
SolverState initial_state(const std::vector<QuantPtr>& w0, const std::vector<Literal>& lits);

bool verify_clause(const std::vector<QuantPtr>& W, const EInterface& e, const Clause& c,
                   const Options& opt = {});
std::vector<Clause> unverified_clauses(const SolverState& s, const Options& opt = {});

std::vector<QuantPtr> update_quantifiers(const std::vector<QuantPtr>& W,
                                         const std::vector<QuantPtr>& quants, const EInterface& e,
                                         bool optimised);

enum class TerminalKind { None, Bot, Sat };
TerminalKind classify_terminal(const SolverState& s, const Options& opt = {});

std::vector<EMatch> enabled_matches(const SolverState& s, const Options& opt = {});

// Every applicable choice. Bot or Sat, when applicable, is the only choice.
std::vector<Choice> choices(const SolverState& s, const Options& opt = {});

// Throw std::invalid_argument when the rule's side conditions fail.
SolverState step_split(const SolverState& s, const Choice& c, const Options& opt = {});
SolverState step_inst(const SolverState& s, const EMatch& m, const Options& opt = {});
SolverState apply(const SolverState& s, const Choice& c, const Options& opt = {});

std::string canonical_string(const SolverState& s);
std::string state_digest(const SolverState& s);

// Scheduling -----------------------------------------------------------------

class Scheduler {
 public:
  virtual ~Scheduler() = default;
  virtual std::string name() const = 0;
  virtual std::size_t pick(const SolverState& s, const std::vector<Choice>& cs) = 0;
  // Called after the chosen step has been applied.
  virtual void observe(const SolverState&, const Choice&, const SolverState&) {}
};

// Names: random, inst-first, split-first, loop-seeking.
std::unique_ptr<Scheduler> make_scheduler(const std::string& name, std::uint64_t seed,
                                          const Options& opt = {});

enum class Terminal { Saturated, Inconsistent, BudgetExhausted };
std::string to_string(Terminal t);

using StepObserver = std::function<void(std::size_t index, const SolverState& before,
                                        const Choice& choice, const SolverState& after)>;

struct RunResult {
  Terminal terminal = Terminal::BudgetExhausted;
  std::size_t steps = 0;
  SolverState final_state;
};

RunResult run(const SolverState& init, Scheduler& sched, std::size_t max_steps,
              const Options& opt = {}, const StepObserver& obs = {});

struct ExploreLimits {
  std::size_t max_depth = 12;
  std::size_t max_leaves = 0;   // 0 = unbounded
  std::size_t max_states = 0;   // expanded states, 0 = unbounded
  bool keep_frontier = false;   // return states cut off at max_depth
  bool stop_when_classified = false;  // stop once both sat and bot were reached
};

struct ExploreResult {
  std::size_t states = 0;       // distinct states visited
  std::size_t leaves = 0;       // completed paths
  std::size_t frontier = 0;     // states cut off at the depth limit
  bool cycle = false;           // a state repeated on the current path
  bool stuck = false;           // active, non-terminal, no choice
  bool truncated = false;       // a leaf or state cap was hit
  bool classified = false;      // stopped early with both outcomes seen
  bool sat_reachable = false;
  bool bot_reachable = false;
  std::vector<SolverState> frontier_states;

  bool complete() const { return !truncated && !classified; }
};

// Depth-bounded DFS over all choices. States are deduplicated by digest and
// re-expanded only when reached at a smaller depth than before.
ExploreResult explore(const SolverState& init, const ExploreLimits& limits, const Options& opt = {},
                      const StepObserver& obs = {});

}  // namespace esem
