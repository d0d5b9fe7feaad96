#include "specsynth/pareto.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <random>
#include <set>
#include <sstream>

namespace specsynth {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_dim(const Payoff& a, const Payoff& b) {
  if (a.size() != b.size())
    throw DimensionMismatch("payoff dimensions differ: " + std::to_string(a.size()) + " vs " +
                            std::to_string(b.size()));
}

}  // namespace

Payoff payoff_inf(int dim) { return Payoff(dim, kInf); }
Payoff payoff_zero(int dim) { return Payoff(dim, 0.0); }

Payoff payoff_add(const Payoff& a, const Payoff& b) {
  check_dim(a, b);
  Payoff out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

Payoff payoff_cmax(const Payoff& a, const Payoff& b) {
  check_dim(a, b);
  Payoff out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = std::max(a[i], b[i]);
  return out;
}

bool payoff_finite(const Payoff& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return x < kInf; });
}

bool dominates(const Payoff& v, const Payoff& w) {
  check_dim(v, w);
  for (size_t i = 0; i < v.size(); ++i)
    if (!(v[i] <= w[i] || w[i] == kInf)) return false;
  return true;
}

bool strictly_dominates(const Payoff& v, const Payoff& w) {
  check_dim(v, w);
  for (size_t i = 0; i < v.size(); ++i)
    if (!(v[i] < w[i])) return false;
  return true;
}

bool ParetoSet::contains(const Payoff& v, double eps) const {
  for (const auto& g : points) {
    bool below = true;
    for (size_t i = 0; i < v.size(); ++i)
      if (!(g[i] <= v[i] + eps)) {
        below = false;
        break;
      }
    if (below) return true;
  }
  return false;
}

ParetoSet pareto_min(std::vector<Payoff> points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  // After duplicate removal, domination between distinct points is proper.
  ParetoSet out;
  for (size_t i = 0; i < points.size(); ++i) {
    bool removed = false;
    for (size_t j = 0; j < points.size() && !removed; ++j)
      if (i != j && dominates(points[j], points[i])) removed = true;
    if (!removed) out.points.push_back(points[i]);
  }
  return out;
}

ParetoSet upset_union(const ParetoSet& a, const ParetoSet& b) {
  if (!a.points.empty() && !b.points.empty()) check_dim(a.points[0], b.points[0]);
  std::vector<Payoff> all = a.points;
  all.insert(all.end(), b.points.begin(), b.points.end());
  return pareto_min(std::move(all));
}

ParetoSet upset_intersection(const ParetoSet& a, const ParetoSet& b) {
  if (!a.points.empty() && !b.points.empty()) check_dim(a.points[0], b.points[0]);
  std::vector<Payoff> all;
  all.reserve(a.points.size() * b.points.size());
  for (const auto& x : a.points)
    for (const auto& y : b.points) all.push_back(payoff_cmax(x, y));
  return pareto_min(std::move(all));
}

ParetoSet shift(const ParetoSet& s, const Payoff& w) {
  ParetoSet out;
  out.points.reserve(s.points.size());
  for (const auto& p : s.points) out.points.push_back(payoff_add(p, w));
  return out;
}

bool sets_equal(const ParetoSet& a, const ParetoSet& b, double eps) {
  if (a.points.size() != b.points.size()) return false;
  for (size_t i = 0; i < a.points.size(); ++i) {
    const auto& x = a.points[i];
    const auto& y = b.points[i];
    if (x.size() != y.size()) return false;
    for (size_t k = 0; k < x.size(); ++k) {
      if (x[k] == kInf && y[k] == kInf) continue;
      if (!(std::abs(x[k] - y[k]) <= eps)) return false;
    }
  }
  return true;
}

ValueMap initial_value_map(const ProductGame& pg) {
  ValueMap u;
  u.sets.resize(pg.num_states());
  for (int s = 0; s < pg.num_states(); ++s)
    u.sets[s].points = {s == pg.terminal ? payoff_zero(pg.payoff_dim)
                                         : payoff_inf(pg.payoff_dim)};
  return u;
}

ValueMap apply_fp(const ProductGame& pg, const ValueMap& u) {
  ValueMap next;
  next.sets.resize(pg.num_states());
  for (int s = 0; s < pg.num_states(); ++s) {
    if (s == pg.terminal) {
      next.sets[s].points = {payoff_zero(pg.payoff_dim)};
      continue;
    }
    const auto& out_edges = pg.states[s].out_edges;
    if (out_edges.empty()) {
      // A stuck state never reaches the terminal; its value stays at top.
      next.sets[s].points = {payoff_inf(pg.payoff_dim)};
      continue;
    }
    if (pg.states[s].owner == Owner::Robot) {
      std::vector<Payoff> candidates;
      for (int ei : out_edges) {
        const auto& e = pg.edges[ei];
        for (const auto& p : u.at(e.dst).points) candidates.push_back(payoff_add(p, e.weight));
      }
      next.sets[s] = pareto_min(std::move(candidates));
    } else {
      ParetoSet acc;
      bool first = true;
      for (int ei : out_edges) {
        const auto& e = pg.edges[ei];
        ParetoSet shifted = shift(u.at(e.dst), e.weight);
        acc = first ? pareto_min(std::move(shifted.points)) : upset_intersection(acc, shifted);
        first = false;
      }
      next.sets[s] = std::move(acc);
    }
  }
  return next;
}

namespace {

// upset(b) must contain upset(a): every generator of a sits above some
// generator of b.
bool upset_contains(const ParetoSet& b, const ParetoSet& a, double slack) {
  for (const auto& g : a.points)
    if (!b.contains(g, slack)) return false;
  return true;
}

}  // namespace

FrontResult compute_pareto_front(const ProductGame& pg, double eps) {
  pg.validate();
  ValueMap u = initial_value_map(pg);
  const long long bound =
      static_cast<long long>(pg.num_states()) * (pg.num_states() + pg.num_edges()) + 1;
  for (long long it = 1; it <= bound; ++it) {
    ValueMap next = apply_fp(pg, u);
    for (int s = 0; s < pg.num_states(); ++s)
      if (!upset_contains(next.sets[s], u.sets[s], 1e-12))
        throw InternalInconsistency("monotonicity violated at state " + pg.states[s].name +
                                    " in iteration " + std::to_string(it));
    bool converged = true;
    for (int s = 0; s < pg.num_states() && converged; ++s)
      converged = sets_equal(next.sets[s], u.sets[s], eps);
    if (converged) return {std::move(next), static_cast<int>(it - 1)};
    u = std::move(next);
  }
  throw IterationBoundExceeded("pareto iteration exceeded |S|(|S|+|E|) = " +
                               std::to_string(bound) + " iterations");
}

Strategy extract_strategy(const ProductGame& pg, const ValueMap& u, const Payoff& point) {
  if (static_cast<int>(point.size()) != pg.payoff_dim)
    throw DimensionMismatch("pareto point dimension mismatch");
  const double eps = 1e-9;
  bool member = false;
  for (const auto& g : u.at(pg.initial).points) {
    bool eq = true;
    for (size_t k = 0; k < g.size(); ++k)
      if (std::abs(g[k] - point[k]) > eps && !(g[k] == point[k])) {
        eq = false;
        break;
      }
    if (eq) member = true;
  }
  if (!member || !payoff_finite(point))
    throw PointNotAchievable("the requested point is not on the initial state's front");

  // Breadth-first budget propagation (first visit pins the budget).
  std::vector<char> visited(pg.num_states(), 0);
  std::map<int, Payoff> budget;
  std::vector<std::vector<int>> admitted(pg.num_states());
  std::deque<int> queue;
  visited[pg.initial] = 1;
  budget[pg.initial] = point;
  queue.push_back(pg.initial);
  while (!queue.empty()) {
    int s = queue.front();
    queue.pop_front();
    if (s == pg.terminal) continue;
    const Payoff& b = budget.at(s);
    for (int ei : pg.states[s].out_edges) {
      const auto& e = pg.edges[ei];
      // Remaining budget after the edge must dominate some successor point.
      Payoff rem(b.size());
      bool ok = true;
      for (size_t k = 0; k < b.size(); ++k) {
        rem[k] = b[k] - e.weight[k];
        if (std::isnan(rem[k])) ok = false;
      }
      if (!ok) continue;
      const Payoff* succ_point = nullptr;
      for (const auto& cand : u.at(e.dst).points) {
        bool fits = true;
        for (size_t k = 0; k < cand.size(); ++k)
          if (!(cand[k] <= rem[k] + eps)) {
            fits = false;
            break;
          }
        if (fits) {
          succ_point = &cand;
          break;  // canonical order makes the pick deterministic
        }
      }
      if (!succ_point) continue;
      admitted[s].push_back(ei);
      if (!visited[e.dst]) {
        visited[e.dst] = 1;
        budget[e.dst] = *succ_point;
        queue.push_back(e.dst);
      }
    }
    if (pg.states[s].owner == Owner::Environment &&
        admitted[s].size() != pg.states[s].out_edges.size())
      throw InternalInconsistency("environment edge not admitted at " + pg.states[s].name +
                                  "; the value map is not a fixed point");
    if (admitted[s].empty())
      throw InternalInconsistency("no admissible action at " + pg.states[s].name);
  }

  // Loop removal. Backward reachability over admitted edges: a robot state
  // grounds through its first admitted edge into the grounded set, an
  // environment state grounds when every successor is grounded. Choices made
  // this way strictly decrease the grounding rank, so the strategy graph is
  // acyclic.
  std::vector<char> grounded(pg.num_states(), 0);
  std::map<int, int> choice;
  grounded[pg.terminal] = 1;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int s = 0; s < pg.num_states(); ++s) {
      if (!visited[s] || grounded[s] || s == pg.terminal) continue;
      if (pg.states[s].owner == Owner::Robot) {
        for (int ei : admitted[s])
          if (grounded[pg.edges[ei].dst]) {
            grounded[s] = 1;
            choice[s] = ei;
            changed = true;
            break;
          }
      } else {
        bool all = !admitted[s].empty();
        for (int ei : admitted[s])
          if (!grounded[pg.edges[ei].dst]) {
            all = false;
            break;
          }
        if (all) {
          grounded[s] = 1;
          changed = true;
        }
      }
    }
  }

  // Forward restriction to states actually reachable under the strategy.
  Strategy strat;
  strat.target = point;
  std::deque<int> fwd;
  std::vector<char> reach(pg.num_states(), 0);
  reach[pg.initial] = 1;
  fwd.push_back(pg.initial);
  while (!fwd.empty()) {
    int s = fwd.front();
    fwd.pop_front();
    if (s == pg.terminal) continue;
    if (!grounded[s])
      throw InternalInconsistency("reachable state " + pg.states[s].name +
                                  " cannot be grounded to the terminal");
    std::vector<int> follow;
    if (pg.states[s].owner == Owner::Robot) {
      strat.choice[s] = choice.at(s);
      follow.push_back(choice.at(s));
    } else {
      follow = admitted[s];
    }
    for (int ei : follow) {
      strat.reachable_edges.push_back(ei);
      int dst = pg.edges[ei].dst;
      if (!reach[dst]) {
        reach[dst] = 1;
        fwd.push_back(dst);
      }
    }
  }
  for (const auto& [s, b] : budget)
    if (reach[s]) strat.budget[s] = b;
  return strat;
}

RolloutReport simulate(const ProductGame& pg, const Strategy& strat, const EnvPolicy& policy,
                       int episodes, const ValueMap* values) {
  if (episodes < 1) throw Error("episode count must be at least 1");
  if (policy.kind == EnvPolicy::Kind::AdversarialGreedy && !values)
    throw Error("adversarial-greedy policy needs the value map");
  RolloutReport report;
  const int step_cap = pg.num_states();
  for (int ep = 0; ep < episodes; ++ep) {
    std::mt19937_64 rng(policy.seed + static_cast<uint64_t>(ep) * 0x9e3779b97f4a7c15ULL);
    EpisodeReport r;
    r.payoff = payoff_zero(pg.payoff_dim);
    int s = pg.initial;
    size_t env_step = 0;
    while (s != pg.terminal) {
      if (r.steps >= step_cap) {
        r.step_cap_exceeded = true;
        break;
      }
      int edge = -1;
      if (pg.states[s].owner == Owner::Robot) {
        auto it = strat.choice.find(s);
        if (it == strat.choice.end())
          throw InternalInconsistency("strategy has no choice at " + pg.states[s].name);
        edge = it->second;
      } else {
        const auto& out = pg.states[s].out_edges;
        if (out.empty()) throw Error("environment state has no moves: " + pg.states[s].name);
        switch (policy.kind) {
          case EnvPolicy::Kind::Random: {
            std::uniform_int_distribution<size_t> pick(0, out.size() - 1);
            edge = out[pick(rng)];
            break;
          }
          case EnvPolicy::Kind::AdversarialGreedy: {
            double best = -1.0;
            for (int ei : out) {
              double worst = 0.0;
              for (const auto& p : values->at(pg.edges[ei].dst).points)
                worst = std::max(worst, p.at(policy.component));
              if (worst > best) {
                best = worst;
                edge = ei;
              }
            }
            break;
          }
          case EnvPolicy::Kind::Scripted: {
            edge = out[0];
            if (env_step < policy.script.size()) {
              const std::string& want = policy.script[env_step];
              for (int ei : out)
                if (pg.edges[ei].action == want) {
                  edge = ei;
                  break;
                }
            }
            ++env_step;
            break;
          }
        }
      }
      const auto& e = pg.edges[edge];
      for (int k = 0; k < pg.payoff_dim; ++k) r.payoff[k] += e.weight[k];
      s = e.dst;
      ++r.steps;
    }
    r.terminated = s == pg.terminal;
    r.within_target = r.terminated;
    for (size_t k = 0; k < strat.target.size() && r.within_target; ++k)
      if (!(r.payoff[k] <= strat.target[k] + 1e-9)) r.within_target = false;
    report.completed += r.terminated ? 1 : 0;
    report.within_target += r.within_target ? 1 : 0;
    report.episodes.push_back(std::move(r));
  }
  return report;
}

std::string pareto_front_to_csv(const ProductGame& pg, const ValueMap& u) {
  std::ostringstream out;
  out.precision(17);
  out << "state";
  for (int k = 0; k < pg.payoff_dim; ++k) out << ",c" << k;
  out << "\n";
  for (int s = 0; s < pg.num_states(); ++s)
    for (const auto& p : u.at(s).points) {
      out << pg.states[s].name;
      for (double v : p) out << "," << v;
      out << "\n";
    }
  return out.str();
}

std::string strategy_to_text(const ProductGame& pg, const Strategy& strat) {
  std::ostringstream out;
  out.precision(17);
  out << "# target";
  for (double v : strat.target) out << " " << v;
  out << "\n";
  for (const auto& [s, ei] : strat.choice) {
    out << "at " << pg.states[s].name << " do " << pg.edges[ei].action << " budget";
    auto it = strat.budget.find(s);
    if (it != strat.budget.end())
      for (double v : it->second) out << " " << v;
    out << "\n";
  }
  return out.str();
}

std::string rollouts_to_csv(const RolloutReport& report) {
  std::ostringstream out;
  out.precision(17);
  if (report.episodes.empty()) return "";
  out << "episode";
  for (size_t k = 0; k < report.episodes[0].payoff.size(); ++k) out << ",payoff" << k;
  out << ",terminated,dominated_by_target,steps\n";
  for (size_t i = 0; i < report.episodes.size(); ++i) {
    const auto& e = report.episodes[i];
    out << i;
    for (double v : e.payoff) out << "," << v;
    out << "," << (e.terminated ? 1 : 0) << "," << (e.within_target ? 1 : 0) << "," << e.steps
        << "\n";
  }
  return out.str();
}

}  // namespace specsynth
