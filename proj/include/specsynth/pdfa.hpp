#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "specsynth/safety.hpp"
#include "specsynth/symbols.hpp"

namespace specsynth {

struct EmptyIntersection : Error {
  using Error::Error;
};

struct MaxLengthExceeded : Error {
  using Error::Error;
};

struct NonGenerativeState : Error {
  using Error::Error;
};

struct TraceProbability {
  double value = 0.0;
  double log_value = 0.0;  // -ln(value), +inf when value == 0
};

// Deterministic automaton whose transitions carry probabilities and whose
// states carry a termination probability. At every state the retained
// outgoing mass plus the termination mass is 1: termination acts as a
// reserved pseudo-symbol. Transitions with zero probability are simply not
// stored; runs taking a missing transition have probability zero.
class Pdfa {
 public:
  struct Transition {
    Symbol symbol;
    int dst = -1;
    double prob = 0.0;
  };

  struct State {
    std::vector<Transition> transitions;  // sorted by symbol, at most one each
    double term_prob = 0.0;
    bool accepting = false;
  };

  Alphabet alphabet;
  std::vector<State> states;
  int initial = 0;

  int num_states() const { return static_cast<int>(states.size()); }
  int num_edges() const;
  const Transition* find_transition(int state, Symbol sym) const;

  // Enforces the stochasticity invariant (within 1e-9) and the coupling
  // between termination probability and acceptance.
  void validate() const;
};

double trace_probability_value(const Pdfa& p, const Trace& trace);
TraceProbability trace_probability(const Pdfa& p, const Trace& trace);

// Random walk: at state q stop with probability F_P(q), otherwise draw a
// transition with probability proportional to delta_P. Deterministic per seed.
Trace sample_trace(const Pdfa& p, uint64_t seed, int max_len = 10000);

// Language intersection with a safety DFA (post-process path). States not
// co-reachable to an accepting product state are pruned before the per-state
// renormalization, so the result is stochastic again. The termination mass is
// divided by the same normalizer as the transitions.
Pdfa product_with_safety(const Pdfa& p, const Dfa& safe);

struct EmptinessResult {
  bool empty = true;
  std::optional<Trace> witness;  // shortest accepted-by-both trace when not empty
};

EmptinessResult language_empty_intersection(const Pdfa& p, const Dfa& bad);

std::string pdfa_to_text(const Pdfa& p);
Pdfa pdfa_from_text(const std::string& text);
std::string pdfa_to_dot(const Pdfa& p);

}  // namespace specsynth
