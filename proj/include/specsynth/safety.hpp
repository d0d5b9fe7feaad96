#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "specsynth/symbols.hpp"

namespace specsynth {

struct SyntaxError : Error {
  SyntaxError(const std::string& what, size_t position)
      : Error(what + " at position " + std::to_string(position)), position(position) {}
  size_t position;
};

struct NegationOnCompound : Error {
  using Error::Error;
};

struct StateBlowup : Error {
  using Error::Error;
};

// Safe-LTL expression tree. Negation appears only on atoms, so the node set
// is closed under progression. Nodes are immutable and canonically keyed:
// conjuncts/disjuncts are flattened, deduplicated and sorted, constants are
// folded. The key doubles as the state identity in the residual automaton.
enum class LtlKind { True, False, Atom, NotAtom, And, Or, Next, Globally };

struct LtlNode;
using LtlRef = std::shared_ptr<const LtlNode>;

struct LtlNode {
  LtlKind kind;
  int prop = -1;                 // Atom / NotAtom
  std::vector<LtlRef> children;  // And / Or / Next / Globally
  std::string key;
};

LtlRef ltl_true();
LtlRef ltl_false();
LtlRef ltl_atom(int prop);
LtlRef ltl_not_atom(int prop);
LtlRef ltl_and(std::vector<LtlRef> children);
LtlRef ltl_or(std::vector<LtlRef> children);
LtlRef ltl_next(LtlRef child);
LtlRef ltl_globally(LtlRef child);

struct SafeLtl {
  LtlRef root;
  Alphabet alphabet;
};

// Operators: ! (atoms only), &, |, -> (sugar for !a | b, a must be a
// literal), X, G, parentheses, true/false, and visit_until(a,b,k) which
// unrolls to a & (b | X(a & (b | X(...)))) with k levels.
SafeLtl parse_safe_ltl(const std::string& text, const Alphabet& alphabet);
std::string ltl_to_string(const LtlRef& node, const Alphabet& alphabet);

// Residual obligation after reading one symbol.
LtlRef formula_progression(const LtlRef& node, Symbol sigma);

// Mask of propositions that occur in the formula.
uint32_t ltl_support(const LtlRef& node);

// Complete DFA over 2^Pi. Transitions are stored densely per symbol, which
// keeps lookups trivial; construction guards |Pi| <= 12.
struct Dfa {
  Alphabet alphabet;
  int initial = 0;
  std::vector<std::vector<int>> trans;  // [state][symbol.bits] -> state
  std::vector<bool> accepting;

  int num_states() const { return static_cast<int>(trans.size()); }
  int step(int state, Symbol sym) const { return trans[state][sym.bits]; }
  void validate() const;
};

// States are the canonical residuals reachable from phi under progression;
// the `false` residual is the single accepting (violation) sink.
Dfa build_violating_dfa(const SafeLtl& phi, size_t state_cap = 1000000);

Dfa complement(const Dfa& d);
Dfa minimize(const Dfa& d);
Dfa complement_and_minimize(const Dfa& d);

bool dfa_accepts(const Dfa& d, const Trace& trace);

// Single accepting state looping on every symbol.
Dfa universal_dfa(const Alphabet& alphabet);

std::string dfa_to_text(const Dfa& d);
Dfa dfa_from_text(const std::string& text);
std::string dfa_to_dot(const Dfa& d);

}  // namespace specsynth
