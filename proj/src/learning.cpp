#include "specsynth/learning.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <set>
#include <sstream>

namespace specsynth {

int Fdfa::num_alive() const {
  int n = 0;
  for (const auto& node : nodes)
    if (node.alive) ++n;
  return n;
}

Fdfa build_fpta(const DemoSet& demos, const Dfa* safety) {
  if (demos.traces.empty()) throw EmptyDemoSet("cannot build an FPTA from zero traces");
  if (safety && !(safety->alphabet == demos.alphabet))
    throw Error("safety dfa alphabet differs from demonstration alphabet");

  Fdfa f;
  f.alphabet = demos.alphabet;
  f.nodes.emplace_back();
  f.nodes[0].merged_source_ids = {0};
  if (safety) {
    f.nodes[0].safety_state = safety->initial;
    if (!safety->accepting[safety->initial])
      throw UnsafeDemonstration(Trace{}, 0);
  }

  for (const auto& trace : demos.traces) {
    int cur = 0;
    for (size_t i = 0; i < trace.size(); ++i) {
      Symbol sym = trace[i];
      auto it = f.nodes[cur].children.find(sym.bits);
      if (it == f.nodes[cur].children.end()) {
        int child = static_cast<int>(f.nodes.size());
        f.nodes[cur].children[sym.bits] = {child, 0};
        f.nodes.emplace_back();
        f.nodes[child].merged_source_ids = {child};
        if (safety) {
          int s = safety->step(f.nodes[cur].safety_state, sym);
          if (!safety->accepting[s])
            throw UnsafeDemonstration(trace, static_cast<int>(i) + 1);
          f.nodes[child].safety_state = s;
        }
        it = f.nodes[cur].children.find(sym.bits);
      }
      it->second.freq += 1;
      cur = it->second.child;
    }
    f.nodes[cur].freq_end += 1;
  }
  f.coloring.assign(f.nodes.size(), NodeColor::White);
  return f;
}

namespace {

// Log-likelihood contribution of one node under frequency-normalized
// distributions. Zero-frequency terms contribute nothing.
double node_loglik(const FptaNode& n) {
  int64_t through = n.freq_through();
  if (through == 0) return 0.0;
  double ll = 0.0;
  double lt = std::log(static_cast<double>(through));
  for (const auto& [sym, e] : n.children)
    if (e.freq > 0) ll += static_cast<double>(e.freq) * (std::log(static_cast<double>(e.freq)) - lt);
  if (n.freq_end > 0)
    ll += static_cast<double>(n.freq_end) * (std::log(static_cast<double>(n.freq_end)) - lt);
  return ll;
}

// Copy-on-write fold used for tentative merges: touched nodes are copied
// into the overlay, the originals stay intact.
struct Overlay {
  const Fdfa& base;
  std::map<int, FptaNode> touched;
  std::set<int> killed;

  explicit Overlay(const Fdfa& f) : base(f) {}

  FptaNode& edit(int id) {
    auto it = touched.find(id);
    if (it == touched.end()) it = touched.emplace(id, base.nodes[id]).first;
    return it->second;
  }

  const FptaNode& view(int id) const {
    auto it = touched.find(id);
    return it == touched.end() ? base.nodes[id] : it->second;
  }

  void fold(int a, int b) {
    assert(a != b);
    if (view(a).safety_state != view(b).safety_state)
      throw SafetyStateMismatch("folding nodes with different safety annotations");
    FptaNode bcopy = view(b);  // children of b may be edited below
    {
      FptaNode& an = edit(a);
      an.freq_end += bcopy.freq_end;
      std::vector<int> ids;
      std::merge(an.merged_source_ids.begin(), an.merged_source_ids.end(),
                 bcopy.merged_source_ids.begin(), bcopy.merged_source_ids.end(),
                 std::back_inserter(ids));
      ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
      an.merged_source_ids = std::move(ids);
    }
    edit(b).alive = false;
    killed.insert(b);
    for (const auto& [sym, bedge] : bcopy.children) {
      FptaNode& an = edit(a);
      auto it = an.children.find(sym);
      if (it == an.children.end()) {
        an.children[sym] = bedge;
      } else {
        it->second.freq += bedge.freq;
        int ac = it->second.child;
        if (ac != bedge.child) fold(ac, bedge.child);
      }
    }
  }
};

int find_parent(const Fdfa& f, int id, uint32_t* via = nullptr) {
  int parent = -1;
  for (int q = 0; q < static_cast<int>(f.nodes.size()); ++q) {
    if (!f.nodes[q].alive) continue;
    for (const auto& [sym, e] : f.nodes[q].children)
      if (e.child == id) {
        if (parent >= 0) throw Error("node has more than one incoming edge");
        parent = q;
        if (via) *via = sym;
      }
  }
  return parent;
}

// Redirect blue's incoming edge to red, then fold. Working on the overlay
// keeps tentative scoring and the committed merge on the same code path.
Overlay apply_merge(const Fdfa& f, int red, int blue) {
  uint32_t via = 0;
  int parent = find_parent(f, blue, &via);
  if (parent < 0) throw Error("blue node has no incoming edge");
  Overlay ov(f);
  ov.edit(parent).children[via].child = red;
  ov.fold(red, blue);
  return ov;
}

struct TentativeScore {
  double score;
  int states_removed;
};

std::optional<TentativeScore> tentative_merge_score(const Fdfa& f, int red, int blue,
                                                    const MergeParams& params) {
  if (params.mode == LearnMode::Preprocess &&
      f.nodes[red].safety_state != f.nodes[blue].safety_state)
    return std::nullopt;

  Overlay ov = apply_merge(f, red, blue);
  double ll_before = 0.0, ll_after = 0.0;
  for (const auto& [id, node] : ov.touched) {
    if (f.nodes[id].alive) ll_before += node_loglik(f.nodes[id]);
    if (node.alive) ll_after += node_loglik(node);
  }
  int removed = static_cast<int>(ov.killed.size());
  double score = (ll_before - ll_after) / std::max(1, removed);
  return TentativeScore{score, removed};
}

}  // namespace

std::optional<double> merge_score(const Fdfa& f, int red, int blue, const MergeParams& params) {
  auto t = tentative_merge_score(f, red, blue, params);
  if (!t) return std::nullopt;
  return t->score;
}

bool compatible(const Fdfa& f, int red, int blue, const MergeParams& params) {
  auto t = tentative_merge_score(f, red, blue, params);
  return t && t->score < params.alpha;
}

void stochastic_merge(Fdfa& f, int red, int blue) {
  if (!f.nodes[red].alive || !f.nodes[blue].alive)
    throw Error("stochastic_merge on a dead node");
  if (red == blue) throw Error("cannot merge a node with itself");
  Overlay ov = apply_merge(f, red, blue);
  for (auto& [id, node] : ov.touched) f.nodes[id] = std::move(node);
}

std::vector<uint32_t> access_path(const Fdfa& f, int id) {
  // Lexicographic Dijkstra; extensions compare greater than their prefixes,
  // so the first finalization is the lex-minimal path.
  std::set<std::pair<std::vector<uint32_t>, int>> frontier;
  std::set<int> done;
  frontier.insert({{}, f.initial});
  while (!frontier.empty()) {
    auto [path, cur] = *frontier.begin();
    frontier.erase(frontier.begin());
    if (done.count(cur)) continue;
    done.insert(cur);
    if (cur == id) return path;
    for (const auto& [sym, e] : f.nodes[cur].children) {
      if (!f.nodes[e.child].alive || done.count(e.child)) continue;
      auto next = path;
      next.push_back(sym);
      frontier.insert({std::move(next), e.child});
    }
  }
  throw Error("node is not reachable from the root");
}

Pdfa fdfa_to_pdfa(const Fdfa& f) {
  // BFS renumbering in symbol order keeps the output canonical.
  std::vector<int> new_id(f.nodes.size(), -1);
  std::vector<int> order;
  new_id[f.initial] = 0;
  order.push_back(f.initial);
  for (size_t i = 0; i < order.size(); ++i)
    for (const auto& [sym, e] : f.nodes[order[i]].children)
      if (new_id[e.child] < 0) {
        new_id[e.child] = static_cast<int>(order.size());
        order.push_back(e.child);
      }

  Pdfa p;
  p.alphabet = f.alphabet;
  p.initial = 0;
  p.states.resize(order.size());
  for (size_t i = 0; i < order.size(); ++i) {
    const FptaNode& n = f.nodes[order[i]];
    auto& st = p.states[i];
    double through = static_cast<double>(n.freq_through());
    if (through <= 0) throw Error("reachable fdfa node with zero frequency");
    for (const auto& [sym, e] : n.children)
      st.transitions.push_back({Symbol(sym), new_id[e.child],
                                static_cast<double>(e.freq) / through});
    st.term_prob = static_cast<double>(n.freq_end) / through;
    st.accepting = n.freq_end > 0;
  }
  p.validate();
  return p;
}

namespace {

std::string render_path(const Fdfa& f, const std::vector<uint32_t>& path) {
  std::string out;
  for (size_t i = 0; i < path.size(); ++i) {
    if (i) out += ' ';
    out += render_symbol(Symbol(path[i]), f.alphabet);
  }
  return out.empty() ? "<root>" : out;
}

}  // namespace

LearnResult edsm_learn(const DemoSet& demos, const MergeParams& params, const Dfa* safety) {
  if (params.alpha <= 0) throw Error("merge consistency parameter alpha must be positive");
  if (params.mode == LearnMode::Preprocess && !safety)
    throw Error("pre-process learning requires a safety dfa");

  Fdfa f = build_fpta(demos, params.mode == LearnMode::Preprocess ? safety : nullptr);
  std::vector<std::string> log;
  std::set<int> red{f.initial};
  f.coloring.assign(f.nodes.size(), NodeColor::White);
  f.coloring[f.initial] = NodeColor::Red;

  while (true) {
    // Blue frontier: alive children of red nodes that are not red themselves.
    std::set<int> blue;
    for (int r : red)
      for (const auto& [sym, e] : f.nodes[r].children)
        if (f.nodes[e.child].alive && !red.count(e.child)) blue.insert(e.child);
    for (size_t i = 0; i < f.coloring.size(); ++i)
      if (f.coloring[i] == NodeColor::Blue) f.coloring[i] = NodeColor::White;
    for (int b : blue) f.coloring[b] = NodeColor::Blue;
    if (blue.empty()) break;

    int chosen = -1;
    std::vector<uint32_t> chosen_path;
    for (int b : blue) {
      if (chosen < 0) {
        chosen = b;
        chosen_path = access_path(f, b);
        continue;
      }
      if (params.blue_order == BlueOrder::FrequencyThenPath) {
        int64_t tb = f.nodes[b].freq_through();
        int64_t tc = f.nodes[chosen].freq_through();
        if (tb < tc) continue;
        if (tb > tc) {
          chosen = b;
          chosen_path = access_path(f, b);
          continue;
        }
      }
      auto path = access_path(f, b);
      if (path < chosen_path) {
        chosen = b;
        chosen_path = std::move(path);
      }
    }

    // Best-scoring compatible red, ties broken by smallest id.
    int best_red = -1;
    double best_score = 0.0;
    for (int r : red) {
      auto t = tentative_merge_score(f, r, chosen, params);
      if (!t) {
        std::ostringstream line;
        line << "reject merge " << r << " <- " << chosen << " [" << render_path(f, chosen_path)
             << "]: safety state mismatch";
        log.push_back(line.str());
        continue;
      }
      std::ostringstream line;
      line << (t->score < params.alpha ? "accept" : "reject") << " merge " << r << " <- "
           << chosen << " [" << render_path(f, chosen_path) << "]: score " << t->score;
      log.push_back(line.str());
      if (t->score < params.alpha && (best_red < 0 || t->score < best_score))
        best_red = r, best_score = t->score;
    }

    if (best_red >= 0) {
      std::ostringstream line;
      line << "merge " << best_red << " <- " << chosen << " [" << render_path(f, chosen_path)
           << "] score " << best_score;
      log.push_back(line.str());
      stochastic_merge(f, best_red, chosen);
    } else {
      std::ostringstream line;
      line << "promote " << chosen << " [" << render_path(f, chosen_path) << "]";
      log.push_back(line.str());
      red.insert(chosen);
      f.coloring[chosen] = NodeColor::Red;
    }
  }

  return {fdfa_to_pdfa(f), std::move(log)};
}

LearnResult postprocess_learn(const DemoSet& demos, const MergeParams& params,
                              const Dfa& safety) {
  MergeParams vanilla = params;
  vanilla.mode = LearnMode::Vanilla;
  LearnResult res = edsm_learn(demos, vanilla, nullptr);
  res.pdfa = product_with_safety(res.pdfa, safety);
  res.merge_log.push_back("intersected with safety dfa (" +
                          std::to_string(res.pdfa.num_states()) + " states kept)");
  return res;
}

double l1_trace_error(const Pdfa& truth, const Pdfa& learned, const std::vector<Trace>& probe) {
  if (probe.empty()) throw Error("probe set is empty");
  double total = 0.0;
  for (const auto& t : probe)
    total += std::abs(trace_probability_value(truth, t) - trace_probability_value(learned, t));
  return total / static_cast<double>(probe.size());
}

}  // namespace specsynth
