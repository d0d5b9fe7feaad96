#include "specsynth/game.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace specsynth {

int GameGraph::num_edges() const {
  int n = 0;
  for (const auto& st : states) n += static_cast<int>(st.edges.size());
  return n;
}

int GameGraph::state_index(const std::string& name) const {
  for (int i = 0; i < num_states(); ++i)
    if (states[i].name == name) return i;
  throw Error("unknown game state: " + name);
}

void GameGraph::validate() const {
  if (states.empty()) throw Error("game has no states");
  if (initial < 0 || initial >= num_states()) throw Error("game initial state out of range");
  std::set<std::string> names;
  for (const auto& st : states) {
    if (!names.insert(st.name).second) throw Error("duplicate game state name: " + st.name);
    if (st.edges.empty())
      throw Error("game state '" + st.name + "' has no actions");
    std::set<std::string> actions;
    for (const auto& e : st.edges) {
      if (e.dst < 0 || e.dst >= num_states())
        throw Error("edge target out of range at state '" + st.name + "'");
      if (static_cast<int>(e.weight.size()) != weight_dim)
        throw Error("weight dimension mismatch at state '" + st.name + "'");
      for (double w : e.weight)
        if (w < 0.0) throw Error("negative weight at state '" + st.name + "'");
      if (!actions.insert(e.action).second)
        throw Error("nondeterministic action '" + e.action + "' at state '" + st.name + "'");
    }
    if (st.label.bits >= static_cast<uint32_t>(alphabet.num_symbols()))
      throw Error("label outside alphabet at state '" + st.name + "'");
  }
}

GameGraph augment(const GameGraph& g) {
  g.validate();
  GameGraph out = g;
  GameGraph::State init;
  init.name = "_init";
  while (std::any_of(out.states.begin(), out.states.end(),
                     [&](const auto& s) { return s.name == init.name; }))
    init.name += "_";
  init.owner = Owner::Robot;
  init.label = Symbol();
  init.edges.push_back({"init", g.initial, std::vector<double>(g.weight_dim, 0.0)});
  out.states.push_back(std::move(init));
  out.initial = out.num_states() - 1;
  return out;
}

int ProductGame::state_index(const std::string& name) const {
  for (int i = 0; i < num_states(); ++i)
    if (states[i].name == name) return i;
  throw Error("unknown product state: " + name);
}

int ProductGame::add_state(const std::string& name, Owner owner, bool is_terminal) {
  State st;
  st.name = name;
  st.owner = owner;
  states.push_back(std::move(st));
  int id = num_states() - 1;
  if (is_terminal) terminal = id;
  return id;
}

void ProductGame::add_edge(int src, const std::string& action, int dst,
                           std::vector<double> weight) {
  if (static_cast<int>(weight.size()) != payoff_dim)
    throw Error("product edge weight dimension mismatch");
  edges.push_back({src, action, dst, std::move(weight)});
  states.at(src).out_edges.push_back(num_edges() - 1);
}

void ProductGame::validate() const {
  if (states.empty()) throw Error("product game has no states");
  if (initial < 0 || initial >= num_states()) throw Error("product initial out of range");
  if (terminal < 0 || terminal >= num_states()) throw Error("product terminal out of range");
  if (!states[terminal].out_edges.empty()) throw Error("terminal state must have no edges");
  for (const auto& e : edges) {
    if (e.src < 0 || e.src >= num_states() || e.dst < 0 || e.dst >= num_states())
      throw Error("product edge endpoint out of range");
    if (static_cast<int>(e.weight.size()) != payoff_dim)
      throw Error("product edge weight dimension mismatch");
    for (double w : e.weight)
      if (w < 0.0 || std::isnan(w)) throw Error("product edge weight must be nonnegative");
  }
}

ProductGame build_product(const GameGraph& augmented, const Pdfa& p, FinishPolicy policy) {
  augmented.validate();
  p.validate();
  if (!(augmented.alphabet == p.alphabet))
    throw Error("game and pdfa alphabets differ");

  ProductGame pg;
  pg.payoff_dim = augmented.weight_dim + 1;
  pg.terminal = pg.add_state("terminal", Owner::Robot, true);

  std::map<std::pair<int, int>, int> id_of;
  std::deque<int> queue;
  std::vector<std::pair<int, int>> pairs{{-1, -1}};  // slot for terminal
  auto intern = [&](int gs, int q) {
    auto [it, inserted] = id_of.emplace(std::make_pair(gs, q), 0);
    if (inserted) {
      int id = pg.add_state("(" + augmented.states[gs].name + "," + std::to_string(q) + ")",
                            augmented.states[gs].owner);
      pg.states[id].game_state = gs;
      pg.states[id].pdfa_state = q;
      it->second = id;
      pairs.push_back({gs, q});
      queue.push_back(id);
    }
    return it->second;
  };

  pg.initial = intern(augmented.initial, p.initial);
  while (!queue.empty()) {
    int id = queue.front();
    queue.pop_front();
    int gs = pg.states[id].game_state;
    int q = pg.states[id].pdfa_state;
    for (const auto& ge : augmented.states[gs].edges) {
      Symbol label = augmented.states[ge.dst].label;
      const auto* t = p.find_transition(q, label);
      if (!t || t->prob <= 0.0) continue;  // zero-probability move: edge omitted
      std::vector<double> w = ge.weight;
      w.push_back(-std::log(t->prob));
      pg.add_edge(id, ge.action, intern(ge.dst, t->dst), std::move(w));
    }
    if (p.states[q].term_prob > 0.0 &&
        (policy == FinishPolicy::AnyState || pg.states[id].owner == Owner::Robot)) {
      std::vector<double> w(augmented.weight_dim, 0.0);
      w.push_back(-std::log(p.states[q].term_prob));
      pg.add_edge(id, "finish", pg.terminal, std::move(w));
    }
  }

  pg.accepting_reachable = std::any_of(pg.edges.begin(), pg.edges.end(),
                                       [&](const auto& e) { return e.dst == pg.terminal; });
  pg.validate();
  return pg;
}

std::vector<double> total_payoff(const ProductGame& pg, const std::vector<int>& path, int from) {
  std::vector<double> total(pg.payoff_dim, 0.0);
  int cur = from < 0 ? pg.initial : from;
  for (int ei : path) {
    const auto& e = pg.edges.at(ei);
    if (e.src != cur) throw PathNotTerminal("path edges do not form a chain");
    for (int k = 0; k < pg.payoff_dim; ++k) total[k] += e.weight[k];
    cur = e.dst;
  }
  if (cur != pg.terminal) throw PathNotTerminal("path does not end at the terminal state");
  return total;
}

// ---------------------------------------------------------------------------
// Gridworld builder

namespace {

using nlohmann::json;

struct Vec2 {
  int x = 0;
  int y = 0;
  auto operator<=>(const Vec2&) const = default;
};

struct Rect {
  int x0, y0, x1, y1;
  bool contains(Vec2 p) const { return p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1; }
};

struct MoveSpec {
  std::string name;
  int dx = 0, dy = 0, steps = 1;
  std::vector<double> cost;
};

struct AgentSpec {
  std::string name;
  Vec2 start;
  Rect region;
  std::string prop;  // fires when the robot shares the agent's cell
  std::vector<MoveSpec> moves;
};

Vec2 clipped_move(Vec2 from, const MoveSpec& m, const Rect& region) {
  Vec2 cur = from;
  for (int i = 0; i < m.steps; ++i) {
    Vec2 next{cur.x + m.dx, cur.y + m.dy};
    if (!region.contains(next)) break;
    cur = next;
  }
  return cur;
}

json require(const json& j, const std::string& field, const std::string& path) {
  if (!j.contains(field)) throw GridSpecError("missing field: " + path + "." + field);
  return j.at(field);
}

std::vector<MoveSpec> parse_moves(const json& arr, const std::string& path, int cost_dim,
                                  bool costs_required) {
  if (!arr.is_array() || arr.empty())
    throw GridSpecError("expected a nonempty action array at " + path);
  std::vector<MoveSpec> out;
  for (size_t i = 0; i < arr.size(); ++i) {
    const auto& a = arr[i];
    std::string p = path + "[" + std::to_string(i) + "]";
    MoveSpec m;
    m.name = require(a, "name", p).get<std::string>();
    m.dx = a.value("dx", 0);
    m.dy = a.value("dy", 0);
    m.steps = a.value("steps", 1);
    if (m.steps < 0) throw GridSpecError("negative steps at " + p);
    if (a.contains("cost")) {
      m.cost = a.at("cost").get<std::vector<double>>();
      if (static_cast<int>(m.cost.size()) != cost_dim)
        throw GridSpecError("cost dimension mismatch at " + p);
    } else if (costs_required) {
      throw GridSpecError("missing cost at " + p);
    } else {
      m.cost.assign(cost_dim, 0.0);
    }
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace

GameGraph build_gridworld(const std::string& json_text) {
  json spec;
  try {
    spec = json::parse(json_text);
  } catch (const std::exception& e) {
    throw GridSpecError(std::string("invalid gridworld json: ") + e.what());
  }

  json grid = require(spec, "grid", "spec");
  int width = require(grid, "width", "spec.grid").get<int>();
  int height = require(grid, "height", "spec.grid").get<int>();
  if (width <= 0 || height <= 0) throw GridSpecError("grid dimensions must be positive");
  Rect world{0, 0, width - 1, height - 1};

  // Colored cells -> propositions that fire when the robot stands on them.
  std::map<Vec2, std::string> cell_prop;
  std::vector<std::string> props;
  auto add_prop = [&](const std::string& p) {
    if (std::find(props.begin(), props.end(), p) == props.end()) props.push_back(p);
  };
  if (spec.contains("propositions"))
    for (const auto& p : spec.at("propositions")) add_prop(p.get<std::string>());
  if (spec.contains("cells"))
    for (size_t i = 0; i < spec.at("cells").size(); ++i) {
      const auto& c = spec.at("cells")[i];
      std::string path = "spec.cells[" + std::to_string(i) + "]";
      Vec2 at{require(c, "x", path).get<int>(), require(c, "y", path).get<int>()};
      if (!world.contains(at)) throw GridSpecError("cell outside grid at " + path);
      std::string prop = require(c, "prop", path).get<std::string>();
      add_prop(prop);
      cell_prop[at] = prop;
    }

  json robot = require(spec, "robot", "spec");
  json rstart = require(robot, "start", "spec.robot");
  Vec2 robot_start{rstart.at(0).get<int>(), rstart.at(1).get<int>()};
  if (!world.contains(robot_start)) throw GridSpecError("robot start outside grid");
  Rect robot_region = world;
  if (robot.contains("region")) {
    auto r = robot.at("region");
    robot_region = {r.at(0).get<int>(), r.at(1).get<int>(), r.at(2).get<int>(), r.at(3).get<int>()};
  }
  int cost_dim = 1;
  {
    const auto& acts = require(robot, "actions", "spec.robot");
    for (const auto& a : acts)
      if (a.contains("cost")) {
        cost_dim = static_cast<int>(a.at("cost").size());
        break;
      }
  }
  std::vector<MoveSpec> robot_moves =
      parse_moves(robot.at("actions"), "spec.robot.actions", cost_dim, true);

  std::vector<AgentSpec> agents;
  if (spec.contains("agents"))
    for (size_t i = 0; i < spec.at("agents").size(); ++i) {
      const auto& a = spec.at("agents")[i];
      std::string path = "spec.agents[" + std::to_string(i) + "]";
      AgentSpec ag;
      ag.name = require(a, "name", path).get<std::string>();
      json astart = require(a, "start", path);
      ag.start = {astart.at(0).get<int>(), astart.at(1).get<int>()};
      if (!world.contains(ag.start)) throw GridSpecError("agent start outside grid at " + path);
      ag.region = world;
      if (a.contains("region")) {
        auto r = a.at("region");
        ag.region = {r.at(0).get<int>(), r.at(1).get<int>(), r.at(2).get<int>(), r.at(3).get<int>()};
      }
      if (a.contains("prop")) {
        ag.prop = a.at("prop").get<std::string>();
        add_prop(ag.prop);
      }
      ag.moves = parse_moves(require(a, "actions", path), path + ".actions", cost_dim, false);
      agents.push_back(std::move(ag));
    }

  Alphabet alphabet(props);

  // Game state: robot cell, agent cells, whose turn. Canonical ids come from
  // BFS discovery order with actions in declared order.
  struct GridState {
    Vec2 robot;
    std::vector<Vec2> agents;
    Owner turn;
    auto operator<=>(const GridState&) const = default;
  };

  auto label_of = [&](const GridState& s) {
    Symbol sym;
    auto it = cell_prop.find(s.robot);
    if (it != cell_prop.end()) sym.bits |= 1u << alphabet.index(it->second);
    for (size_t i = 0; i < agents.size(); ++i)
      if (!agents[i].prop.empty() && s.robot == s.agents[i])
        sym.bits |= 1u << alphabet.index(agents[i].prop);
    return sym;
  };

  auto name_of = [&](const GridState& s) {
    std::string n = "r(" + std::to_string(s.robot.x) + "," + std::to_string(s.robot.y) + ")";
    for (size_t i = 0; i < agents.size(); ++i)
      n += "|" + agents[i].name + "(" + std::to_string(s.agents[i].x) + "," +
           std::to_string(s.agents[i].y) + ")";
    return n + (s.turn == Owner::Robot ? "|R" : "|E");
  };

  GameGraph g;
  g.alphabet = alphabet;
  g.weight_dim = cost_dim;

  std::map<GridState, int> id_of;
  std::deque<GridState> queue;
  auto intern = [&](const GridState& s) {
    auto [it, inserted] = id_of.emplace(s, g.num_states());
    if (inserted) {
      GameGraph::State st;
      st.name = name_of(s);
      st.owner = s.turn;
      st.label = label_of(s);
      g.states.push_back(std::move(st));
      queue.push_back(s);
    }
    return it->second;
  };

  GridState start{robot_start, {}, Owner::Robot};
  for (const auto& ag : agents) start.agents.push_back(ag.start);
  g.initial = intern(start);

  // Joint environment moves: cartesian product over agents, declared order.
  std::vector<std::vector<int>> joint;
  {
    std::vector<int> idx(agents.size(), 0);
    if (agents.empty()) {
      joint.push_back({});
    } else {
      while (true) {
        joint.push_back(idx);
        int k = static_cast<int>(agents.size()) - 1;
        while (k >= 0 && ++idx[k] == static_cast<int>(agents[k].moves.size())) idx[k--] = 0;
        if (k < 0) break;
      }
    }
  }

  while (!queue.empty()) {
    GridState s = queue.front();
    queue.pop_front();
    int id = id_of.at(s);
    if (s.turn == Owner::Robot) {
      for (const auto& m : robot_moves) {
        GridState next = s;
        Rect reg{std::max(world.x0, robot_region.x0), std::max(world.y0, robot_region.y0),
                 std::min(world.x1, robot_region.x1), std::min(world.y1, robot_region.y1)};
        next.robot = clipped_move(s.robot, m, reg);
        next.turn = Owner::Environment;
        g.states[id].edges.push_back({m.name, intern(next), m.cost});
      }
    } else {
      for (const auto& choice : joint) {
        GridState next = s;
        std::string action;
        for (size_t i = 0; i < agents.size(); ++i) {
          const auto& m = agents[i].moves[choice[i]];
          Rect reg{std::max(world.x0, agents[i].region.x0), std::max(world.y0, agents[i].region.y0),
                   std::min(world.x1, agents[i].region.x1), std::min(world.y1, agents[i].region.y1)};
          next.agents[i] = clipped_move(s.agents[i], m, reg);
          if (i) action += "|";
          action += agents[i].name + ":" + m.name;
        }
        if (agents.empty()) action = "wait";
        next.turn = Owner::Robot;
        int dst = intern(next);
        g.states[id].edges.push_back({action, dst, std::vector<double>(cost_dim, 0.0)});
      }
    }
  }

  g.validate();
  return g;
}

GameGraph load_gridworld(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return build_gridworld(ss.str());
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

Alphabet parse_alphabet_line(std::istringstream& ls) {
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
  return Alphabet(props);
}

}  // namespace

std::string game_to_text(const GameGraph& g) {
  std::ostringstream out;
  out.precision(17);
  out << "game\nalphabet:";
  for (int i = 0; i < g.alphabet.size(); ++i) out << (i ? "," : " ") << g.alphabet.name(i);
  out << "\n";
  for (int q = 0; q < g.num_states(); ++q) {
    const auto& st = g.states[q];
    out << "state " << st.name << " " << (st.owner == Owner::Robot ? "robot" : "env") << " "
        << render_symbol(st.label, g.alphabet);
    if (q == g.initial) out << " initial";
    out << "\n";
  }
  for (int q = 0; q < g.num_states(); ++q)
    for (const auto& e : g.states[q].edges) {
      out << "edge " << g.states[q].name << " " << e.action << " " << g.states[e.dst].name
          << " w";
      for (double w : e.weight) out << " " << w;
      out << "\n";
    }
  return out.str();
}

GameGraph game_from_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  GameGraph g;
  bool have_header = false;
  std::map<std::string, int> ids;
  struct RawEdge {
    std::string src, action, dst;
    std::vector<double> weight;
  };
  std::vector<RawEdge> edges;
  int weight_dim = -1;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok) || tok[0] == '#') continue;
    if (tok == "game") continue;
    if (tok == "alphabet:") {
      g.alphabet = parse_alphabet_line(ls);
      have_header = true;
      continue;
    }
    if (!have_header) throw Error("game file must declare its alphabet first");
    if (tok == "state") {
      std::string name, owner, label;
      if (!(ls >> name >> owner >> label))
        throw Error("bad state on line " + std::to_string(line_no));
      GameGraph::State st;
      st.name = name;
      if (owner == "robot")
        st.owner = Owner::Robot;
      else if (owner == "env")
        st.owner = Owner::Environment;
      else
        throw Error("bad owner '" + owner + "' on line " + std::to_string(line_no));
      st.label = parse_symbol(label, g.alphabet);
      std::string flag;
      ids[name] = g.num_states();
      if (ls >> flag) {
        if (flag != "initial") throw Error("bad flag on line " + std::to_string(line_no));
        g.initial = g.num_states();
      }
      g.states.push_back(std::move(st));
    } else if (tok == "edge") {
      RawEdge e;
      std::string w;
      if (!(ls >> e.src >> e.action >> e.dst >> w) || w != "w")
        throw Error("bad edge on line " + std::to_string(line_no));
      double v;
      while (ls >> v) e.weight.push_back(v);
      if (weight_dim < 0) weight_dim = static_cast<int>(e.weight.size());
      if (static_cast<int>(e.weight.size()) != weight_dim)
        throw Error("inconsistent weight dimension on line " + std::to_string(line_no));
      edges.push_back(std::move(e));
    } else {
      throw Error("unknown directive '" + tok + "' on line " + std::to_string(line_no));
    }
  }
  if (weight_dim <= 0) weight_dim = 1;
  g.weight_dim = weight_dim;
  for (auto& e : edges) {
    auto si = ids.find(e.src);
    auto di = ids.find(e.dst);
    if (si == ids.end() || di == ids.end()) throw Error("edge references unknown state");
    g.states[si->second].edges.push_back({e.action, di->second, std::move(e.weight)});
  }
  g.validate();
  return g;
}

GameGraph load_game(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return game_from_text(ss.str());
}

std::string game_to_dot(const GameGraph& g) {
  std::ostringstream out;
  out << "digraph game {\n  rankdir=LR;\n";
  for (int q = 0; q < g.num_states(); ++q) {
    const auto& st = g.states[q];
    out << "  s" << q << " [label=\"" << st.name << "\\n"
        << render_symbol(st.label, g.alphabet) << "\", shape="
        << (st.owner == Owner::Robot ? "circle" : "box") << "];\n";
  }
  out << "  init [shape=point];\n  init -> s" << g.initial << ";\n";
  for (int q = 0; q < g.num_states(); ++q)
    for (const auto& e : g.states[q].edges) {
      out << "  s" << q << " -> s" << e.dst << " [label=\"" << e.action << ":";
      for (double w : e.weight) out << " " << w;
      out << "\"];\n";
    }
  out << "}\n";
  return out.str();
}

std::string product_to_text(const ProductGame& pg) {
  std::ostringstream out;
  out.precision(17);
  out << "product\n";
  for (int q = 0; q < pg.num_states(); ++q) {
    const auto& st = pg.states[q];
    out << "state " << st.name << " " << (st.owner == Owner::Robot ? "robot" : "env");
    if (q == pg.initial) out << " initial";
    if (q == pg.terminal) out << " terminal";
    out << "\n";
  }
  for (const auto& e : pg.edges) {
    out << "edge " << pg.states[e.src].name << " " << e.action << " " << pg.states[e.dst].name
        << " w";
    for (double w : e.weight) out << " " << w;
    out << "\n";
  }
  return out.str();
}

ProductGame product_from_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  ProductGame pg;
  std::map<std::string, int> ids;
  int payoff_dim = -1;
  int line_no = 0;
  std::vector<std::tuple<std::string, std::string, std::string, std::vector<double>>> edges;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok) || tok[0] == '#') continue;
    if (tok == "product") continue;
    if (tok == "state") {
      std::string name, owner;
      if (!(ls >> name >> owner)) throw Error("bad state on line " + std::to_string(line_no));
      Owner o;
      if (owner == "robot")
        o = Owner::Robot;
      else if (owner == "env")
        o = Owner::Environment;
      else
        throw Error("bad owner '" + owner + "' on line " + std::to_string(line_no));
      ids[name] = pg.num_states();
      bool is_terminal = false;
      std::string flag;
      while (ls >> flag) {
        if (flag == "initial")
          pg.initial = pg.num_states();
        else if (flag == "terminal")
          is_terminal = true;
        else
          throw Error("bad flag '" + flag + "' on line " + std::to_string(line_no));
      }
      pg.add_state(name, o, is_terminal);
    } else if (tok == "edge") {
      std::string src, action, dst, w;
      if (!(ls >> src >> action >> dst >> w) || w != "w")
        throw Error("bad edge on line " + std::to_string(line_no));
      std::vector<double> weight;
      double v;
      while (ls >> v) weight.push_back(v);
      if (payoff_dim < 0) payoff_dim = static_cast<int>(weight.size());
      if (static_cast<int>(weight.size()) != payoff_dim)
        throw Error("inconsistent weight dimension on line " + std::to_string(line_no));
      edges.emplace_back(src, action, dst, std::move(weight));
    } else {
      throw Error("unknown directive '" + tok + "' on line " + std::to_string(line_no));
    }
  }
  if (payoff_dim > 0) pg.payoff_dim = payoff_dim;
  for (auto& [src, action, dst, weight] : edges) {
    auto si = ids.find(src);
    auto di = ids.find(dst);
    if (si == ids.end() || di == ids.end()) throw Error("edge references unknown state");
    pg.add_edge(si->second, action, di->second, std::move(weight));
  }
  if (pg.terminal < 0) throw Error("product file declares no terminal state");
  pg.validate();
  return pg;
}

std::string product_to_dot(const ProductGame& pg) {
  std::ostringstream out;
  out.precision(4);
  out << "digraph product {\n  rankdir=LR;\n";
  for (int q = 0; q < pg.num_states(); ++q) {
    const auto& st = pg.states[q];
    out << "  s" << q << " [label=\"" << st.name << "\", shape="
        << (q == pg.terminal ? "doublecircle"
                             : (st.owner == Owner::Robot ? "circle" : "box"))
        << "];\n";
  }
  out << "  init [shape=point];\n  init -> s" << pg.initial << ";\n";
  for (const auto& e : pg.edges) {
    out << "  s" << e.src << " -> s" << e.dst << " [label=\"" << e.action << ": [";
    for (int k = 0; k < pg.payoff_dim; ++k) out << (k ? "," : "") << e.weight[k];
    out << "]\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace specsynth
