#include "specsynth/pdfa.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <random>
#include <sstream>

namespace specsynth {

int Pdfa::num_edges() const {
  int n = 0;
  for (const auto& st : states) n += static_cast<int>(st.transitions.size());
  return n;
}

const Pdfa::Transition* Pdfa::find_transition(int state, Symbol sym) const {
  const auto& ts = states[state].transitions;
  auto it = std::lower_bound(ts.begin(), ts.end(), sym,
                             [](const Transition& t, Symbol s) { return t.symbol < s; });
  if (it == ts.end() || it->symbol != sym) return nullptr;
  return &*it;
}

void Pdfa::validate() const {
  if (states.empty()) throw Error("pdfa has no states");
  if (initial < 0 || initial >= num_states()) throw Error("pdfa initial state out of range");
  for (int q = 0; q < num_states(); ++q) {
    const auto& st = states[q];
    double mass = st.term_prob;
    Symbol prev;
    bool first = true;
    for (const auto& t : st.transitions) {
      if (t.dst < 0 || t.dst >= num_states()) throw Error("pdfa transition target out of range");
      if (t.prob < 0.0 || t.prob > 1.0) throw Error("pdfa transition probability out of range");
      if (!first && !(prev < t.symbol)) throw Error("pdfa transitions not sorted by symbol");
      prev = t.symbol;
      first = false;
      mass += t.prob;
    }
    if (st.term_prob < 0.0 || st.term_prob > 1.0)
      throw Error("pdfa termination probability out of range");
    if (std::abs(mass - 1.0) > 1e-9)
      throw Error("pdfa state " + std::to_string(q) + " is not stochastic: mass " +
                  std::to_string(mass));
    if (st.term_prob > 0.0 && !st.accepting)
      throw Error("pdfa state " + std::to_string(q) + " terminates but is not accepting");
  }
}

double trace_probability_value(const Pdfa& p, const Trace& trace) {
  double prob = 1.0;
  int q = p.initial;
  for (Symbol sym : trace) {
    const auto* t = p.find_transition(q, sym);
    if (!t || t->prob == 0.0) return 0.0;
    prob *= t->prob;
    q = t->dst;
  }
  return prob * p.states[q].term_prob;
}

TraceProbability trace_probability(const Pdfa& p, const Trace& trace) {
  TraceProbability out;
  out.value = trace_probability_value(p, trace);
  out.log_value = out.value > 0.0 ? -std::log(out.value)
                                  : std::numeric_limits<double>::infinity();
  return out;
}

Trace sample_trace(const Pdfa& p, uint64_t seed, int max_len) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Trace trace;
  int q = p.initial;
  while (true) {
    const auto& st = p.states[q];
    double r = unif(rng);
    if (r < st.term_prob) return trace;
    if (st.transitions.empty()) throw NonGenerativeState("state has no outgoing mass");
    if (static_cast<int>(trace.size()) >= max_len)
      throw MaxLengthExceeded("sampled trace exceeds max length " + std::to_string(max_len));
    // Rescale the remainder of the draw over the transition mass.
    double x = (r - st.term_prob) / (1.0 - st.term_prob);
    double acc = 0.0;
    const Pdfa::Transition* chosen = &st.transitions.back();
    double total = 0.0;
    for (const auto& t : st.transitions) total += t.prob;
    if (total <= 0.0) throw NonGenerativeState("state has no outgoing mass");
    for (const auto& t : st.transitions) {
      acc += t.prob / total;
      if (x < acc) {
        chosen = &t;
        break;
      }
    }
    trace.push_back(chosen->symbol);
    q = chosen->dst;
  }
}

Pdfa product_with_safety(const Pdfa& p, const Dfa& safe) {
  if (!(p.alphabet == safe.alphabet))
    throw Error("pdfa and safety dfa alphabets differ");

  // Forward-reachable product states over positive-probability transitions.
  std::map<std::pair<int, int>, int> id_of;
  std::vector<std::pair<int, int>> prod;
  std::deque<int> queue;
  auto intern = [&](int q, int s) {
    auto [it, inserted] = id_of.emplace(std::make_pair(q, s), static_cast<int>(prod.size()));
    if (inserted) {
      prod.emplace_back(q, s);
      queue.push_back(it->second);
    }
    return it->second;
  };
  intern(p.initial, safe.initial);
  std::vector<std::vector<std::pair<Symbol, int>>> succ;  // per product state
  while (!queue.empty()) {
    int id = queue.front();
    queue.pop_front();
    auto [q, s] = prod[id];
    if (static_cast<int>(succ.size()) <= id) succ.resize(id + 1);
    for (const auto& t : p.states[q].transitions) {
      if (t.prob <= 0.0) continue;
      int dst = intern(t.dst, safe.step(s, t.symbol));
      succ[id].emplace_back(t.symbol, dst);
    }
  }
  succ.resize(prod.size());

  // Keep only states co-reachable to an accepting product state.
  int n = static_cast<int>(prod.size());
  std::vector<std::vector<int>> preds(n);
  for (int id = 0; id < n; ++id)
    for (const auto& [sym, dst] : succ[id]) preds[dst].push_back(id);
  std::vector<bool> keep(n, false);
  std::deque<int> back;
  for (int id = 0; id < n; ++id) {
    auto [q, s] = prod[id];
    if (p.states[q].term_prob > 0.0 && safe.accepting[s]) {
      keep[id] = true;
      back.push_back(id);
    }
  }
  while (!back.empty()) {
    int id = back.front();
    back.pop_front();
    for (int pr : preds[id])
      if (!keep[pr]) {
        keep[pr] = true;
        back.push_back(pr);
      }
  }
  if (!keep[0]) throw EmptyIntersection("no safe accepting trace remains after intersection");

  // Renumber kept states in BFS order from the initial product state.
  std::vector<int> new_id(n, -1);
  std::vector<int> order;
  new_id[0] = 0;
  order.push_back(0);
  for (size_t i = 0; i < order.size(); ++i)
    for (const auto& [sym, dst] : succ[order[i]])
      if (keep[dst] && new_id[dst] < 0) {
        new_id[dst] = static_cast<int>(order.size());
        order.push_back(dst);
      }

  Pdfa out;
  out.alphabet = p.alphabet;
  out.initial = 0;
  out.states.resize(order.size());
  for (size_t i = 0; i < order.size(); ++i) {
    int id = order[i];
    auto [q, s] = prod[id];
    auto& st = out.states[i];
    double norm = 0.0;
    for (const auto& [sym, dst] : succ[id]) {
      if (!keep[dst]) continue;
      norm += p.find_transition(q, sym)->prob;
    }
    bool can_terminate = p.states[q].term_prob > 0.0 && safe.accepting[s];
    if (can_terminate) norm += p.states[q].term_prob;
    for (const auto& [sym, dst] : succ[id]) {
      if (!keep[dst]) continue;
      st.transitions.push_back({sym, new_id[dst], p.find_transition(q, sym)->prob / norm});
    }
    std::sort(st.transitions.begin(), st.transitions.end(),
              [](const auto& a, const auto& b) { return a.symbol < b.symbol; });
    st.accepting = p.states[q].accepting && safe.accepting[s];
    st.term_prob = can_terminate ? p.states[q].term_prob / norm : 0.0;
  }
  out.validate();
  return out;
}

EmptinessResult language_empty_intersection(const Pdfa& p, const Dfa& bad) {
  if (!(p.alphabet == bad.alphabet))
    throw Error("pdfa and dfa alphabets differ");
  struct Node {
    int q, b;
    int parent;
    Symbol via;
  };
  std::map<std::pair<int, int>, int> seen;
  std::vector<Node> nodes;
  std::deque<int> queue;
  auto push = [&](int q, int b, int parent, Symbol via) {
    if (seen.emplace(std::make_pair(q, b), static_cast<int>(nodes.size())).second) {
      nodes.push_back({q, b, parent, via});
      queue.push_back(static_cast<int>(nodes.size()) - 1);
    }
  };
  push(p.initial, bad.initial, -1, Symbol());
  while (!queue.empty()) {
    int id = queue.front();
    queue.pop_front();
    const Node node = nodes[id];
    if (p.states[node.q].term_prob > 0.0 && bad.accepting[node.b]) {
      Trace witness;
      for (int cur = id; nodes[cur].parent >= 0; cur = nodes[cur].parent)
        witness.push_back(nodes[cur].via);
      std::reverse(witness.begin(), witness.end());
      return {false, std::move(witness)};
    }
    for (const auto& t : p.states[node.q].transitions) {
      if (t.prob <= 0.0) continue;
      push(t.dst, bad.step(node.b, t.symbol), id, t.symbol);
    }
  }
  return {true, std::nullopt};
}

std::string pdfa_to_text(const Pdfa& p) {
  std::ostringstream out;
  out.precision(17);
  out << "pdfa\nalphabet:";
  for (int i = 0; i < p.alphabet.size(); ++i) out << (i ? "," : " ") << p.alphabet.name(i);
  out << "\n";
  for (int q = 0; q < p.num_states(); ++q) {
    out << "state " << q;
    if (q == p.initial) out << " initial";
    if (p.states[q].accepting) out << " accepting";
    out << "\n";
  }
  for (int q = 0; q < p.num_states(); ++q) {
    for (const auto& t : p.states[q].transitions)
      out << "edge " << q << " " << render_symbol(t.symbol, p.alphabet) << " " << t.dst
          << " prob " << t.prob << "\n";
    if (p.states[q].term_prob > 0.0)
      out << "term " << q << " " << p.states[q].term_prob << "\n";
  }
  return out.str();
}

Pdfa pdfa_from_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  Pdfa p;
  bool have_header = false;
  int max_state = -1;
  struct Edge {
    int src;
    Symbol sym;
    int dst;
    double prob;
  };
  std::vector<Edge> edges;
  std::vector<std::pair<int, double>> terms;
  std::vector<int> accepting_states;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok) || tok[0] == '#') continue;
    if (tok == "pdfa") continue;
    if (tok == "alphabet:") {
      std::string rest;
      std::getline(ls, rest);
      std::vector<std::string> props;
      std::stringstream ps(rest);
      std::string name;
      while (std::getline(ps, name, ',')) {
        auto b = name.find_first_not_of(" \t\r");
        auto e = name.find_last_not_of(" \t\r");
        if (b == std::string::npos) continue;
        props.push_back(name.substr(b, e - b + 1));
      }
      p.alphabet = Alphabet(props);
      have_header = true;
      continue;
    }
    if (!have_header) throw Error("pdfa file must declare its alphabet first");
    if (tok == "state") {
      int q;
      ls >> q;
      max_state = std::max(max_state, q);
      std::string flag;
      while (ls >> flag) {
        if (flag == "initial")
          p.initial = q;
        else if (flag == "accepting")
          accepting_states.push_back(q);
        else
          throw Error("bad state flag '" + flag + "' on line " + std::to_string(line_no));
      }
    } else if (tok == "edge") {
      int src, dst;
      std::string sym, kw;
      double prob;
      if (!(ls >> src >> sym >> dst >> kw >> prob) || kw != "prob")
        throw Error("bad edge on line " + std::to_string(line_no));
      edges.push_back({src, parse_symbol(sym, p.alphabet), dst, prob});
      max_state = std::max({max_state, src, dst});
    } else if (tok == "term") {
      int q;
      double prob;
      if (!(ls >> q >> prob)) throw Error("bad term on line " + std::to_string(line_no));
      terms.emplace_back(q, prob);
      max_state = std::max(max_state, q);
    } else {
      throw Error("unknown directive '" + tok + "' on line " + std::to_string(line_no));
    }
  }
  if (max_state < 0) throw Error("pdfa file has no states");
  p.states.resize(max_state + 1);
  for (int q : accepting_states) p.states[q].accepting = true;
  for (const auto& e : edges) p.states[e.src].transitions.push_back({e.sym, e.dst, e.prob});
  for (auto& st : p.states)
    std::sort(st.transitions.begin(), st.transitions.end(),
              [](const auto& a, const auto& b) { return a.symbol < b.symbol; });
  for (auto [q, prob] : terms) p.states[q].term_prob = prob;
  p.validate();
  return p;
}

std::string pdfa_to_dot(const Pdfa& p) {
  std::ostringstream out;
  out.precision(3);
  out << "digraph pdfa {\n  rankdir=LR;\n  node [shape=circle];\n"
      << "  init [shape=point];\n  init -> q" << p.initial << ";\n";
  for (int q = 0; q < p.num_states(); ++q) {
    out << "  q" << q << " [label=\"q" << q;
    if (p.states[q].term_prob > 0.0) out << "\\nF_P=" << p.states[q].term_prob;
    out << "\"" << (p.states[q].accepting ? ", shape=doublecircle" : "") << "];\n";
  }
  for (int q = 0; q < p.num_states(); ++q)
    for (const auto& t : p.states[q].transitions)
      out << "  q" << q << " -> q" << t.dst << " [label=\""
          << render_symbol(t.symbol, p.alphabet) << ": " << t.prob << "\"];\n";
  out << "}\n";
  return out.str();
}

}  // namespace specsynth
