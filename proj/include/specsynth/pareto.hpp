#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "specsynth/game.hpp"

namespace specsynth {

struct DimensionMismatch : Error {
  using Error::Error;
};

struct IterationBoundExceeded : Error {
  using Error::Error;
};

struct PointNotAchievable : Error {
  using Error::Error;
};

struct InternalInconsistency : Error {
  using Error::Error;
};

using Payoff = std::vector<double>;

Payoff payoff_inf(int dim);
Payoff payoff_zero(int dim);
Payoff payoff_add(const Payoff& a, const Payoff& b);
Payoff payoff_cmax(const Payoff& a, const Payoff& b);
bool payoff_finite(const Payoff& v);

// v dominates w iff v is componentwise <= w (smaller payoffs dominate).
bool dominates(const Payoff& v, const Payoff& w);
bool strictly_dominates(const Payoff& v, const Payoff& w);

// Antichain of payoff vectors, canonically ordered. Represents the upper set
// generated by its points: everything componentwise above some generator.
struct ParetoSet {
  std::vector<Payoff> points;

  int size() const { return static_cast<int>(points.size()); }
  bool operator==(const ParetoSet&) const = default;
  // True iff v lies in the represented upper set.
  bool contains(const Payoff& v, double eps = 0.0) const;
};

// Minimal elements under dominance; duplicates collapse.
ParetoSet pareto_min(std::vector<Payoff> points);

ParetoSet upset_union(const ParetoSet& a, const ParetoSet& b);
// Generators of upset(a) n upset(b): componentwise maxima of generator pairs.
ParetoSet upset_intersection(const ParetoSet& a, const ParetoSet& b);

ParetoSet shift(const ParetoSet& s, const Payoff& w);

bool sets_equal(const ParetoSet& a, const ParetoSet& b, double eps);

// One Pareto set per product state. U(terminal) is pinned to {0}.
struct ValueMap {
  std::vector<ParetoSet> sets;

  const ParetoSet& at(int state) const { return sets.at(state); }
};

ValueMap initial_value_map(const ProductGame& pg);

// One back-propagation step: union over edges at robot states, intersection
// at environment states, each shifted by the edge weight, then reduced to
// Pareto-minimal generators. Non-terminal states without outgoing edges keep
// the infinite top value.
ValueMap apply_fp(const ProductGame& pg, const ValueMap& u);

struct FrontResult {
  ValueMap values;
  int iterations = 0;
};

// Iterates apply_fp to its fixed point. Each iteration asserts the
// monotonicity invariant (new sets dominate old ones); the iteration count
// is bounded by |S|(|S|+|E|).
FrontResult compute_pareto_front(const ProductGame& pg, double eps = 0.0);

struct Strategy {
  std::map<int, int> choice;          // robot product state -> chosen edge index
  std::map<int, Payoff> budget;       // first-visit remaining payoff annotations
  std::vector<int> reachable_edges;   // strategy graph restricted to reachable states
  Payoff target;                      // the Pareto point this strategy enforces
};

// Budget-tracking breadth-first extraction for a chosen Pareto point,
// followed by loop removal: only choices on paths backward-reachable from
// the terminal survive, which makes the strategy graph acyclic.
Strategy extract_strategy(const ProductGame& pg, const ValueMap& u, const Payoff& point);

struct EnvPolicy {
  enum class Kind { Random, AdversarialGreedy, Scripted };
  Kind kind = Kind::Random;
  uint64_t seed = 0;
  int component = 0;                 // adversarial-greedy objective component
  std::vector<std::string> script;   // scripted action names, in env-turn order
};

struct EpisodeReport {
  Payoff payoff;
  bool terminated = false;
  bool step_cap_exceeded = false;
  bool within_target = false;  // payoff bounded by the strategy's Pareto point
  int steps = 0;
};

struct RolloutReport {
  std::vector<EpisodeReport> episodes;
  int completed = 0;
  int within_target = 0;
};

RolloutReport simulate(const ProductGame& pg, const Strategy& strat, const EnvPolicy& policy,
                       int episodes, const ValueMap* values = nullptr);

std::string pareto_front_to_csv(const ProductGame& pg, const ValueMap& u);
std::string strategy_to_text(const ProductGame& pg, const Strategy& strat);
std::string rollouts_to_csv(const RolloutReport& report);

}  // namespace specsynth
