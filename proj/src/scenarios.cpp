#include "specsynth/scenarios.hpp"

#include <algorithm>
#include <tuple>

namespace specsynth::scenarios {

namespace {

Pdfa make_pdfa(const Alphabet& alphabet, int num_states, int initial,
               const std::vector<std::tuple<int, std::string, int, double>>& edges,
               const std::vector<std::pair<int, double>>& terms) {
  Pdfa p;
  p.alphabet = alphabet;
  p.initial = initial;
  p.states.resize(num_states);
  for (const auto& [src, sym, dst, prob] : edges)
    p.states[src].transitions.push_back({parse_symbol(sym, alphabet), dst, prob});
  for (auto& st : p.states)
    std::sort(st.transitions.begin(), st.transitions.end(),
              [](const auto& a, const auto& b) { return a.symbol < b.symbol; });
  for (auto [q, prob] : terms) {
    p.states[q].term_prob = prob;
    p.states[q].accepting = true;
  }
  p.validate();
  return p;
}

}  // namespace

Pdfa sea_mission_pdfa() {
  Alphabet alphabet({"shipwreck", "fish", "coral-reefs"});
  return make_pdfa(alphabet, 4, 0,
                   {
                       {0, "{}", 0, 0.8},
                       {0, "{shipwreck}", 1, 0.15},
                       {0, "{fish}", 2, 0.05},
                       {1, "{}", 1, 0.8},
                       {1, "{fish}", 3, 0.2},
                       {2, "{}", 2, 0.8},
                       {2, "{shipwreck}", 3, 0.2},
                   },
                   {{3, 1.0}});
}

Pdfa two_goal_truth_pdfa() {
  Alphabet alphabet({"ship", "fish"});
  return make_pdfa(alphabet, 4, 0,
                   {
                       {0, "{}", 0, 0.5},
                       {0, "{ship}", 1, 0.4},
                       {0, "{fish}", 2, 0.1},
                       {1, "{}", 1, 0.5},
                       {1, "{fish}", 3, 0.5},
                       {2, "{}", 2, 0.5},
                       {2, "{ship}", 3, 0.5},
                   },
                   {{3, 1.0}});
}

Pdfa catch_task_pdfa() {
  Alphabet alphabet({"ship", "fish"});
  return make_pdfa(alphabet, 4, 0,
                   {
                       {0, "{}", 0, 0.5},
                       {0, "{ship}", 1, 0.4},
                       {0, "{fish}", 2, 0.1},
                       {1, "{}", 1, 0.35},
                       {1, "{ship}", 1, 0.15},
                       {1, "{fish}", 3, 0.5},
                       {2, "{}", 2, 0.35},
                       {2, "{fish}", 2, 0.15},
                       {2, "{ship}", 3, 0.5},
                       {3, "{}", 3, 0.2},
                       {3, "{ship}", 3, 0.1},
                       {3, "{fish}", 3, 0.1},
                   },
                   {{3, 0.6}});
}

Alphabet charge_alphabet() { return Alphabet({"lava", "water", "carpet", "charge"}); }

std::string charge_safety_formula(int k) {
  return "G !lava & G (water -> X visit_until(!charge, carpet, " + std::to_string(k) + "))";
}

DemoSet charge_demos() {
  DemoSet demos;
  demos.alphabet = charge_alphabet();
  auto add = [&](const std::string& line) {
    demos.traces.push_back(parse_trace(line, demos.alphabet));
  };
  add("{} {} {charge}");
  add("{} {charge}");
  add("{} {carpet} {charge}");
  add("{water} {} {carpet} {charge}");
  add("{water} {water} {carpet} {charge}");
  return demos;
}

Pdfa charge_truth_pdfa() {
  return make_pdfa(charge_alphabet(), 4, 0,
                   {
                       {0, "{}", 0, 0.5},
                       {0, "{water}", 1, 0.2},
                       {0, "{charge}", 3, 0.3},
                       {1, "{}", 1, 0.25},
                       {1, "{water}", 1, 0.15},
                       {1, "{carpet}", 2, 0.6},
                       {2, "{charge}", 3, 1.0},
                   },
                   {{3, 1.0}});
}

DemoSet merge_corpus_demos() {
  DemoSet demos;
  demos.alphabet = Alphabet({"a", "b", "c"});
  auto add = [&](const std::string& line) {
    demos.traces.push_back(parse_trace(line, demos.alphabet));
  };
  add("{a} {a} {a}");
  add("{a} {a} {a}");
  add("{a} {a} {c}");
  add("{a} {c} {b}");
  add("{c} {b} {b}");
  return demos;
}

ChainScenario preference_chain() {
  Alphabet alphabet({"o1"});
  GameGraph g;
  g.alphabet = alphabet;
  g.weight_dim = 1;
  g.states.resize(3);
  g.states[0] = {"s0", Owner::Robot, Symbol(0), {{"E", 1, {1.0}}}};
  g.states[1] = {"s1", Owner::Robot, Symbol(0), {{"E", 2, {1.0}}}};
  g.states[2] = {"s2", Owner::Robot, parse_symbol("{o1}", alphabet), {{"stay", 2, {1.0}}}};
  g.initial = 0;
  ChainScenario out;
  out.game = augment(g);
  out.task = make_pdfa(alphabet, 2, 0, {{0, "{}", 0, 0.6}, {0, "{o1}", 1, 0.4}}, {{1, 1.0}});
  return out;
}

ProductGame tradeoff_game() {
  ProductGame pg;
  pg.payoff_dim = 2;
  int init = pg.add_state("init", Owner::Robot);
  int s0 = pg.add_state("s0", Owner::Robot);
  int s1 = pg.add_state("s1", Owner::Environment);
  int s2 = pg.add_state("s2", Owner::Robot);
  int s3 = pg.add_state("s3", Owner::Robot);
  int s4 = pg.add_state("s4", Owner::Environment);
  int s5 = pg.add_state("s5", Owner::Environment);
  int s6 = pg.add_state("s6", Owner::Environment);
  int s7 = pg.add_state("s7", Owner::Environment);
  int s8 = pg.add_state("s8", Owner::Environment);
  int s9 = pg.add_state("s9", Owner::Robot);
  int goal = pg.add_state("goal", Owner::Robot, true);
  pg.initial = init;
  auto zero = std::vector<double>{0.0, 0.0};
  pg.add_edge(init, "go", s0, zero);
  pg.add_edge(s0, "go", s1, zero);
  pg.add_edge(s1, "left", s2, zero);
  pg.add_edge(s1, "right", s3, zero);
  pg.add_edge(s2, "a", s4, zero);
  pg.add_edge(s2, "b", s5, {5.0, 5.0});
  pg.add_edge(s2, "c", s6, {5.0, 5.0});
  pg.add_edge(s3, "a", s7, {10.0, 1.0});
  pg.add_edge(s3, "b", s8, {1.0, 10.0});
  pg.add_edge(s4, "loop", s4, zero);
  pg.add_edge(s4, "go", s9, zero);
  pg.add_edge(s5, "go", s9, zero);
  pg.add_edge(s6, "go", s9, zero);
  pg.add_edge(s7, "go", s9, zero);
  pg.add_edge(s8, "go", s9, zero);
  pg.add_edge(s9, "finish", goal, zero);
  pg.validate();
  return pg;
}

std::string dynamic_catch_gridworld_json() {
  return R"json({
  "grid": {"width": 4, "height": 3},
  "propositions": ["ship", "fish"],
  "cells": [{"x": 3, "y": 2, "prop": "ship"}],
  "robot": {
    "start": [0, 0],
    "actions": [
      {"name": "N", "dx": 0, "dy": 1, "steps": 1, "cost": [2]},
      {"name": "S", "dx": 0, "dy": -1, "steps": 1, "cost": [2]},
      {"name": "E", "dx": 1, "dy": 0, "steps": 1, "cost": [2]},
      {"name": "W", "dx": -1, "dy": 0, "steps": 1, "cost": [2]},
      {"name": "N2", "dx": 0, "dy": 1, "steps": 2, "cost": [5]},
      {"name": "S2", "dx": 0, "dy": -1, "steps": 2, "cost": [5]},
      {"name": "E2", "dx": 1, "dy": 0, "steps": 2, "cost": [5]},
      {"name": "W2", "dx": -1, "dy": 0, "steps": 2, "cost": [5]}
    ]
  },
  "agents": [
    {
      "name": "fish",
      "start": [2, 1],
      "prop": "fish",
      "region": [1, 0, 2, 1],
      "actions": [
        {"name": "stay", "dx": 0, "dy": 0, "steps": 0},
        {"name": "N", "dx": 0, "dy": 1, "steps": 1},
        {"name": "S", "dx": 0, "dy": -1, "steps": 1},
        {"name": "E", "dx": 1, "dy": 0, "steps": 1},
        {"name": "W", "dx": -1, "dy": 0, "steps": 1}
      ]
    }
  ]
}
)json";
}

}  // namespace specsynth::scenarios
