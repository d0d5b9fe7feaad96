#pragma once

#include <string>
#include <vector>

#include "specsynth/pdfa.hpp"
#include "specsynth/symbols.hpp"

namespace specsynth {

enum class Owner { Robot, Environment };

struct GridSpecError : Error {
  using Error::Error;
};

struct PathNotTerminal : Error {
  using Error::Error;
};

// Turn-based two-player weighted game graph. Each state belongs to one
// player; transitions are deterministic per (state, action); every edge
// carries an m-dimensional nonnegative weight vector. Strict alternation of
// ownership is not required.
struct GameGraph {
  struct Edge {
    std::string action;
    int dst = -1;
    std::vector<double> weight;
  };

  struct State {
    std::string name;
    Owner owner = Owner::Robot;
    Symbol label;
    std::vector<Edge> edges;
  };

  Alphabet alphabet;
  std::vector<State> states;
  int initial = 0;
  int weight_dim = 1;

  int num_states() const { return static_cast<int>(states.size()); }
  int num_edges() const;
  int state_index(const std::string& name) const;
  void validate() const;
};

// Adds a fresh robot-owned initial state with a single zero-weight "init"
// action into the original initial state, so the original initial label is
// consumed by the automaton on the first product transition.
GameGraph augment(const GameGraph& g);

enum class FinishPolicy { RobotOnly, AnyState };

// Synchronous product of an augmented game with a PDFA. Edges exist only
// where the PDFA assigns positive probability to the destination label; the
// preference weight is the negative log of that probability. States with
// positive termination mass gain a "finish" edge to the terminal state.
struct ProductGame {
  struct Edge {
    int src = -1;
    std::string action;
    int dst = -1;
    std::vector<double> weight;  // m+1 components
  };

  struct State {
    std::string name;
    Owner owner = Owner::Robot;
    int game_state = -1;  // -1 for the terminal state
    int pdfa_state = -1;
    std::vector<int> out_edges;
  };

  std::vector<State> states;
  std::vector<Edge> edges;
  int initial = 0;
  int terminal = -1;
  int payoff_dim = 2;
  bool accepting_reachable = true;

  int num_states() const { return static_cast<int>(states.size()); }
  int num_edges() const { return static_cast<int>(edges.size()); }
  int state_index(const std::string& name) const;
  int add_state(const std::string& name, Owner owner, bool is_terminal = false);
  void add_edge(int src, const std::string& action, int dst, std::vector<double> weight);
  void validate() const;
};

ProductGame build_product(const GameGraph& augmented, const Pdfa& p,
                          FinishPolicy policy = FinishPolicy::RobotOnly);

// Componentwise sum of edge weights along a path (given as edge indices).
// The path must form a chain from `from` and end at the terminal state.
std::vector<double> total_payoff(const ProductGame& pg, const std::vector<int>& path,
                                 int from = -1);

// Declarative gridworld -> turn-based game. See the JSON schema in the
// README; robot and environment agents move on a bounded grid, multi-step
// moves advance cell by cell and clip at walls and region borders.
GameGraph build_gridworld(const std::string& json_text);
GameGraph load_gridworld(const std::string& path);

std::string game_to_text(const GameGraph& g);
GameGraph game_from_text(const std::string& text);
GameGraph load_game(const std::string& path);
std::string game_to_dot(const GameGraph& g);

std::string product_to_text(const ProductGame& pg);
ProductGame product_from_text(const std::string& text);
std::string product_to_dot(const ProductGame& pg);

}  // namespace specsynth
