#pragma once

#include <string>

#include "specsynth/game.hpp"
#include "specsynth/learning.hpp"
#include "specsynth/pdfa.hpp"

namespace specsynth::scenarios {

// Sea-exploration task: visit the shipwreck and the school of fish in either
// order, never linger. Termination only once both were seen.
Pdfa sea_mission_pdfa();

// Ground truth for the two-goal learning study: prefer the ship first.
Pdfa two_goal_truth_pdfa();

// Variant of the two-goal task for turn-based games: every state can consume
// the empty observation and a held goal observation, so plays never strand
// the environment player.
Pdfa catch_task_pdfa();

// Charging scenario: reach the charging station; after getting wet, dry on
// the carpet before charging; lava is forbidden.
Alphabet charge_alphabet();
std::string charge_safety_formula(int k = 10);
DemoSet charge_demos();
Pdfa charge_truth_pdfa();

// Three-letter corpus used to exercise the merge machinery.
DemoSet merge_corpus_demos();

// Single-proposition chain game plus a two-state task automaton; the product
// is a four-edge chain whose preference weights are -ln 0.6, -ln 0.6,
// -ln 0.4 and 0.
struct ChainScenario {
  GameGraph game;  // already augmented
  Pdfa task;
};
ChainScenario preference_chain();

// Hand-built 12-node product game with a two-point front at the initial
// state: {(5,10),(10,5)}.
ProductGame tradeoff_game();

// Dynamic grid: the robot must reach the ship cell and catch a moving fish;
// single and double moves trade energy against trace length.
std::string dynamic_catch_gridworld_json();

}  // namespace specsynth::scenarios
