#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "specsynth/pdfa.hpp"
#include "specsynth/safety.hpp"
#include "specsynth/symbols.hpp"

namespace specsynth {

struct UnsafeDemonstration : Error {
  UnsafeDemonstration(Trace t, int position)
      : Error("demonstration violates the safety property at position " +
              std::to_string(position)),
        trace(std::move(t)),
        position(position) {}
  Trace trace;
  int position;  // 1-based index of the violating symbol
};

struct SafetyStateMismatch : Error {
  using Error::Error;
};

enum class LearnMode { Vanilla, Preprocess };
enum class BlueOrder { FrequencyThenPath, PathOnly };

struct MergeParams {
  double alpha = 1.0;
  BlueOrder blue_order = BlueOrder::FrequencyThenPath;
  LearnMode mode = LearnMode::Vanilla;
};

enum class NodeColor { White, Blue, Red };

// Node of the frequency prefix tree acceptor, later reused as the node type
// of the merged frequency DFA. Edge frequencies count demonstration
// traversals; freq_through is derived (end mass plus outgoing mass).
struct FptaNode {
  struct ChildEdge {
    int child = -1;
    int64_t freq = 0;
  };

  std::vector<int> merged_source_ids;
  int64_t freq_end = 0;
  std::map<uint32_t, ChildEdge> children;  // keyed by symbol bits
  int safety_state = -1;                   // pre-process annotation, else -1
  bool alive = true;

  int64_t freq_through() const {
    int64_t t = freq_end;
    for (const auto& [sym, e] : children) t += e.freq;
    return t;
  }
};

struct Fdfa {
  Alphabet alphabet;
  std::vector<FptaNode> nodes;
  int initial = 0;
  std::vector<NodeColor> coloring;

  int num_alive() const;
  const FptaNode& node(int id) const { return nodes.at(id); }
};

// Prefix tree with per-node frequencies. With a safety DFA, every node is
// annotated with the safety state its prefix reaches; a demonstration whose
// prefix leaves the accepting region is rejected.
Fdfa build_fpta(const DemoSet& demos, const Dfa* safety = nullptr);

// MDI-style compatibility: likelihood loss of the tentative merge per state
// removed, thresholded by alpha. Pre-process mode additionally requires equal
// safety annotations before any score is computed.
bool compatible(const Fdfa& f, int red, int blue, const MergeParams& params);
std::optional<double> merge_score(const Fdfa& f, int red, int blue, const MergeParams& params);

// Redirects blue's single incoming edge to red and folds blue's subtree into
// red recursively, summing frequencies per node and merging children per
// symbol.
void stochastic_merge(Fdfa& f, int red, int blue);

// Lexicographically smallest symbol sequence reaching the node (prefix-free
// comparison, so shorter prefixes win over their extensions).
std::vector<uint32_t> access_path(const Fdfa& f, int id);

Pdfa fdfa_to_pdfa(const Fdfa& f);

struct LearnResult {
  Pdfa pdfa;
  std::vector<std::string> merge_log;
};

LearnResult edsm_learn(const DemoSet& demos, const MergeParams& params,
                       const Dfa* safety = nullptr);

// Vanilla learning followed by intersection with the safety DFA.
LearnResult postprocess_learn(const DemoSet& demos, const MergeParams& params,
                              const Dfa& safety);

// Mean absolute trace-probability error over a probe set.
double l1_trace_error(const Pdfa& truth, const Pdfa& learned, const std::vector<Trace>& probe);

}  // namespace specsynth
