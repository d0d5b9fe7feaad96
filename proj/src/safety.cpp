#include "specsynth/safety.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <set>
#include <sstream>

namespace specsynth {

namespace {

LtlRef make_node(LtlKind kind, int prop, std::vector<LtlRef> children, std::string key) {
  auto n = std::make_shared<LtlNode>();
  n->kind = kind;
  n->prop = prop;
  n->children = std::move(children);
  n->key = std::move(key);
  return n;
}

}  // namespace

LtlRef ltl_true() {
  static const LtlRef t = make_node(LtlKind::True, -1, {}, "T");
  return t;
}

LtlRef ltl_false() {
  static const LtlRef f = make_node(LtlKind::False, -1, {}, "F");
  return f;
}

LtlRef ltl_atom(int prop) {
  return make_node(LtlKind::Atom, prop, {}, "p" + std::to_string(prop));
}

LtlRef ltl_not_atom(int prop) {
  return make_node(LtlKind::NotAtom, prop, {}, "!p" + std::to_string(prop));
}

namespace {

// Shared builder for the two commutative connectives. Flattens same-kind
// children, folds constants, deduplicates and sorts by key.
LtlRef make_junction(LtlKind kind, std::vector<LtlRef> children) {
  const bool is_and = kind == LtlKind::And;
  const LtlRef unit = is_and ? ltl_true() : ltl_false();
  const LtlRef zero = is_and ? ltl_false() : ltl_true();

  std::vector<LtlRef> flat;
  std::deque<LtlRef> queue(children.begin(), children.end());
  while (!queue.empty()) {
    LtlRef c = queue.front();
    queue.pop_front();
    if (c->kind == kind) {
      for (const auto& g : c->children) queue.push_back(g);
      continue;
    }
    if (c->key == zero->key) return zero;
    if (c->key == unit->key) continue;
    flat.push_back(std::move(c));
  }
  std::sort(flat.begin(), flat.end(),
            [](const LtlRef& a, const LtlRef& b) { return a->key < b->key; });
  flat.erase(std::unique(flat.begin(), flat.end(),
                         [](const LtlRef& a, const LtlRef& b) { return a->key == b->key; }),
             flat.end());
  if (flat.empty()) return unit;
  if (flat.size() == 1) return flat[0];

  std::string key(is_and ? "&(" : "|(");
  for (size_t i = 0; i < flat.size(); ++i) {
    if (i) key += ',';
    key += flat[i]->key;
  }
  key += ')';
  return make_node(kind, -1, std::move(flat), std::move(key));
}

}  // namespace

LtlRef ltl_and(std::vector<LtlRef> children) {
  return make_junction(LtlKind::And, std::move(children));
}

LtlRef ltl_or(std::vector<LtlRef> children) {
  return make_junction(LtlKind::Or, std::move(children));
}

LtlRef ltl_next(LtlRef child) {
  if (child->kind == LtlKind::True || child->kind == LtlKind::False) return child;
  std::string key = "X(" + child->key + ")";
  return make_node(LtlKind::Next, -1, {std::move(child)}, std::move(key));
}

LtlRef ltl_globally(LtlRef child) {
  if (child->kind == LtlKind::True || child->kind == LtlKind::False) return child;
  if (child->kind == LtlKind::Globally) return child;
  std::string key = "G(" + child->key + ")";
  return make_node(LtlKind::Globally, -1, {std::move(child)}, std::move(key));
}

LtlRef formula_progression(const LtlRef& node, Symbol sigma) {
  switch (node->kind) {
    case LtlKind::True:
    case LtlKind::False:
      return node;
    case LtlKind::Atom:
      return sigma.has(node->prop) ? ltl_true() : ltl_false();
    case LtlKind::NotAtom:
      return sigma.has(node->prop) ? ltl_false() : ltl_true();
    case LtlKind::And: {
      std::vector<LtlRef> out;
      out.reserve(node->children.size());
      for (const auto& c : node->children) out.push_back(formula_progression(c, sigma));
      return ltl_and(std::move(out));
    }
    case LtlKind::Or: {
      std::vector<LtlRef> out;
      out.reserve(node->children.size());
      for (const auto& c : node->children) out.push_back(formula_progression(c, sigma));
      return ltl_or(std::move(out));
    }
    case LtlKind::Next:
      return node->children[0];
    case LtlKind::Globally:
      return ltl_and({formula_progression(node->children[0], sigma), node});
  }
  throw Error("unreachable");
}

uint32_t ltl_support(const LtlRef& node) {
  switch (node->kind) {
    case LtlKind::Atom:
    case LtlKind::NotAtom:
      return 1u << node->prop;
    default: {
      uint32_t mask = 0;
      for (const auto& c : node->children) mask |= ltl_support(c);
      return mask;
    }
  }
}

std::string ltl_to_string(const LtlRef& node, const Alphabet& alphabet) {
  switch (node->kind) {
    case LtlKind::True:
      return "true";
    case LtlKind::False:
      return "false";
    case LtlKind::Atom:
      return alphabet.name(node->prop);
    case LtlKind::NotAtom:
      return "!" + alphabet.name(node->prop);
    case LtlKind::And:
    case LtlKind::Or: {
      std::string sep = node->kind == LtlKind::And ? " & " : " | ";
      std::string out = "(";
      for (size_t i = 0; i < node->children.size(); ++i) {
        if (i) out += sep;
        out += ltl_to_string(node->children[i], alphabet);
      }
      return out + ")";
    }
    case LtlKind::Next:
      return "X " + ltl_to_string(node->children[0], alphabet);
    case LtlKind::Globally:
      return "G " + ltl_to_string(node->children[0], alphabet);
  }
  throw Error("unreachable");
}

namespace {

struct Parser {
  const std::string& text;
  const Alphabet& alphabet;
  size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!eat(c)) throw SyntaxError(std::string("expected '") + c + "'", pos);
  }

  // Identifiers may contain '-' (e.g. coral-reefs) but '->' always ends one.
  std::optional<std::string> peek_ident() {
    skip_ws();
    size_t p = pos;
    std::string out;
    while (p < text.size()) {
      char c = text[p];
      if (c == '-' && p + 1 < text.size() && text[p + 1] == '>') break;
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-')
        out += c, ++p;
      else
        break;
    }
    if (out.empty()) return std::nullopt;
    return out;
  }

  std::string take_ident() {
    auto id = peek_ident();
    if (!id) throw SyntaxError("expected identifier", pos);
    pos += id->size();
    return *id;
  }

  LtlRef parse_formula() { return parse_implication(); }

  LtlRef parse_implication() {
    LtlRef lhs = parse_disjunction();
    skip_ws();
    if (pos + 1 < text.size() && text[pos] == '-' && text[pos + 1] == '>') {
      pos += 2;
      LtlRef rhs = parse_implication();
      return ltl_or({negate_literal(lhs), rhs});
    }
    return lhs;
  }

  LtlRef negate_literal(const LtlRef& n) {
    if (n->kind == LtlKind::Atom) return ltl_not_atom(n->prop);
    if (n->kind == LtlKind::NotAtom) return ltl_atom(n->prop);
    if (n->kind == LtlKind::True) return ltl_false();
    if (n->kind == LtlKind::False) return ltl_true();
    throw NegationOnCompound("negation is only allowed on atoms in the safe fragment");
  }

  LtlRef parse_disjunction() {
    LtlRef lhs = parse_conjunction();
    while (eat('|')) lhs = ltl_or({lhs, parse_conjunction()});
    return lhs;
  }

  LtlRef parse_conjunction() {
    LtlRef lhs = parse_unary();
    while (true) {
      skip_ws();
      if (pos < text.size() && text[pos] == '&') {
        ++pos;
        lhs = ltl_and({lhs, parse_unary()});
      } else {
        return lhs;
      }
    }
  }

  LtlRef parse_unary() {
    skip_ws();
    if (pos >= text.size()) throw SyntaxError("unexpected end of formula", pos);
    char c = text[pos];
    if (c == '!') {
      ++pos;
      return negate_literal(parse_unary());
    }
    if (c == '(') {
      ++pos;
      LtlRef inner = parse_formula();
      expect(')');
      return inner;
    }
    auto id = peek_ident();
    if (!id) throw SyntaxError("unexpected character", pos);
    if (*id == "X" || *id == "G") {
      pos += 1;
      LtlRef child = parse_unary();
      return *id == "X" ? ltl_next(child) : ltl_globally(child);
    }
    pos += id->size();
    if (*id == "true") return ltl_true();
    if (*id == "false") return ltl_false();
    if (*id == "visit_until") {
      expect('(');
      LtlRef a = parse_formula();
      expect(',');
      LtlRef b = parse_formula();
      expect(',');
      skip_ws();
      size_t start = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      if (pos == start) throw SyntaxError("expected step count", pos);
      int k = std::stoi(text.substr(start, pos - start));
      expect(')');
      // visit a for k steps unless b is visited
      LtlRef out = a;
      for (int i = 0; i < k; ++i) out = ltl_and({a, ltl_or({b, ltl_next(out)})});
      return out;
    }
    if (!alphabet.contains(*id)) throw UnknownProposition(*id);
    return ltl_atom(alphabet.index(*id));
  }
};

}  // namespace

SafeLtl parse_safe_ltl(const std::string& text, const Alphabet& alphabet) {
  Parser p{text, alphabet};
  LtlRef root = p.parse_formula();
  p.skip_ws();
  if (p.pos != text.size()) throw SyntaxError("trailing input", p.pos);
  return SafeLtl{std::move(root), alphabet};
}

void Dfa::validate() const {
  if (trans.empty()) throw Error("dfa has no states");
  if (initial < 0 || initial >= num_states()) throw Error("dfa initial state out of range");
  if (accepting.size() != trans.size()) throw Error("dfa accepting set size mismatch");
  size_t n_sym = static_cast<size_t>(alphabet.num_symbols());
  for (const auto& row : trans) {
    if (row.size() != n_sym) throw Error("dfa transition function is not total");
    for (int dst : row)
      if (dst < 0 || dst >= num_states()) throw Error("dfa transition target out of range");
  }
}

Dfa build_violating_dfa(const SafeLtl& phi, size_t state_cap) {
  const Alphabet& alphabet = phi.alphabet;
  if (alphabet.size() > 12)
    throw Error("alphabet too large for explicit symbol enumeration (|Pi| > 12); "
                "project to the propositions occurring in the formula first");
  const int n_sym = alphabet.num_symbols();
  const uint32_t support = ltl_support(phi.root);

  Dfa d;
  d.alphabet = alphabet;
  std::map<std::string, int> id_of;
  std::vector<LtlRef> residuals;
  auto intern = [&](const LtlRef& n) {
    auto [it, inserted] = id_of.emplace(n->key, static_cast<int>(residuals.size()));
    if (inserted) {
      residuals.push_back(n);
      if (residuals.size() > state_cap)
        throw StateBlowup("residual automaton exceeds state cap");
    }
    return it->second;
  };

  d.initial = intern(phi.root);
  for (size_t q = 0; q < residuals.size(); ++q) {
    d.trans.emplace_back(n_sym, -1);
    // Only the formula's own propositions matter; other bits are projected
    // away so distinct symbols with equal projection share one residual.
    std::map<uint32_t, int> proj_cache;
    for (int s = 0; s < n_sym; ++s) {
      uint32_t proj = static_cast<uint32_t>(s) & support;
      auto it = proj_cache.find(proj);
      if (it == proj_cache.end()) {
        int dst = intern(formula_progression(residuals[q], Symbol(proj)));
        it = proj_cache.emplace(proj, dst).first;
      }
      d.trans[q][s] = it->second;
    }
  }
  d.accepting.assign(d.trans.size(), false);
  auto it = id_of.find("F");
  if (it != id_of.end()) d.accepting[it->second] = true;
  d.validate();
  return d;
}

Dfa complement(const Dfa& d) {
  Dfa out = d;
  for (size_t q = 0; q < out.accepting.size(); ++q) out.accepting[q] = !out.accepting[q];
  return out;
}

Dfa minimize(const Dfa& d) {
  d.validate();
  const int n_sym = d.alphabet.num_symbols();

  // Reachable states only.
  std::vector<int> reach_id(d.num_states(), -1);
  std::vector<int> order;
  reach_id[d.initial] = 0;
  order.push_back(d.initial);
  for (size_t i = 0; i < order.size(); ++i)
    for (int s = 0; s < n_sym; ++s) {
      int dst = d.trans[order[i]][s];
      if (reach_id[dst] < 0) {
        reach_id[dst] = static_cast<int>(order.size());
        order.push_back(dst);
      }
    }

  // Partition refinement on the reachable part.
  int n = static_cast<int>(order.size());
  std::vector<int> block(n);
  for (int i = 0; i < n; ++i) block[i] = d.accepting[order[i]] ? 1 : 0;
  int num_blocks = 2;
  while (true) {
    std::map<std::vector<int>, int> sig_to_block;
    std::vector<int> next_block(n);
    for (int i = 0; i < n; ++i) {
      std::vector<int> sig;
      sig.reserve(n_sym + 1);
      sig.push_back(block[i]);
      for (int s = 0; s < n_sym; ++s) sig.push_back(block[reach_id[d.trans[order[i]][s]]]);
      auto [it, inserted] = sig_to_block.emplace(std::move(sig), static_cast<int>(sig_to_block.size()));
      next_block[i] = it->second;
    }
    int new_count = static_cast<int>(sig_to_block.size());
    block.swap(next_block);
    if (new_count == num_blocks) break;
    num_blocks = new_count;
  }

  // Rebuild with BFS-canonical block numbering.
  std::vector<int> block_state(num_blocks, -1);
  Dfa out;
  out.alphabet = d.alphabet;
  std::vector<int> bfs;
  auto claim = [&](int b) {
    if (block_state[b] < 0) {
      block_state[b] = static_cast<int>(bfs.size());
      bfs.push_back(b);
    }
    return block_state[b];
  };
  std::vector<int> rep_of_block(num_blocks, -1);
  for (int i = 0; i < n; ++i)
    if (rep_of_block[block[i]] < 0) rep_of_block[block[i]] = order[i];
  out.initial = claim(block[reach_id[d.initial]]);
  for (size_t i = 0; i < bfs.size(); ++i) {
    int rep = rep_of_block[bfs[i]];
    out.trans.emplace_back(n_sym, -1);
    out.accepting.push_back(d.accepting[rep]);
    for (int s = 0; s < n_sym; ++s)
      out.trans[i][s] = claim(block[reach_id[d.trans[rep][s]]]);
  }
  out.validate();
  return out;
}

Dfa complement_and_minimize(const Dfa& d) {
  return minimize(complement(d));
}

bool dfa_accepts(const Dfa& d, const Trace& trace) {
  int q = d.initial;
  for (Symbol sym : trace) {
    if (sym.bits >= static_cast<uint32_t>(d.alphabet.num_symbols()))
      throw Error("trace symbol outside dfa alphabet");
    q = d.step(q, sym);
  }
  return d.accepting[q];
}

Dfa universal_dfa(const Alphabet& alphabet) {
  Dfa d;
  d.alphabet = alphabet;
  d.initial = 0;
  d.trans.assign(1, std::vector<int>(alphabet.num_symbols(), 0));
  d.accepting.assign(1, true);
  return d;
}

std::string dfa_to_text(const Dfa& d) {
  std::ostringstream out;
  out << "dfa\nalphabet:";
  for (int i = 0; i < d.alphabet.size(); ++i) out << (i ? "," : " ") << d.alphabet.name(i);
  out << "\n";
  for (int q = 0; q < d.num_states(); ++q) {
    out << "state " << q;
    if (q == d.initial) out << " initial";
    if (d.accepting[q]) out << " accepting";
    out << "\n";
  }
  for (int q = 0; q < d.num_states(); ++q)
    for (int s = 0; s < d.alphabet.num_symbols(); ++s)
      out << "edge " << q << " " << render_symbol(Symbol(static_cast<uint32_t>(s)), d.alphabet)
          << " " << d.trans[q][s] << "\n";
  return out.str();
}

Dfa dfa_from_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  Dfa d;
  bool have_header = false;
  int max_state = -1;
  std::vector<std::tuple<int, uint32_t, int>> edges;
  std::vector<int> accepting_states;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok) || tok[0] == '#') continue;
    if (tok == "dfa") continue;
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
      d.alphabet = Alphabet(props);
      have_header = true;
      continue;
    }
    if (!have_header) throw Error("dfa file must declare its alphabet first");
    if (tok == "state") {
      int q;
      ls >> q;
      max_state = std::max(max_state, q);
      std::string flag;
      while (ls >> flag) {
        if (flag == "initial")
          d.initial = q;
        else if (flag == "accepting")
          accepting_states.push_back(q);
        else
          throw Error("bad state flag '" + flag + "' on line " + std::to_string(line_no));
      }
    } else if (tok == "edge") {
      int src, dst;
      std::string sym;
      if (!(ls >> src >> sym >> dst))
        throw Error("bad edge on line " + std::to_string(line_no));
      edges.emplace_back(src, parse_symbol(sym, d.alphabet).bits, dst);
      max_state = std::max({max_state, src, dst});
    } else {
      throw Error("unknown directive '" + tok + "' on line " + std::to_string(line_no));
    }
  }
  if (max_state < 0) throw Error("dfa file has no states");
  d.trans.assign(max_state + 1, std::vector<int>(d.alphabet.num_symbols(), -1));
  d.accepting.assign(max_state + 1, false);
  for (int q : accepting_states) d.accepting[q] = true;
  for (auto [src, sym, dst] : edges) d.trans[src][sym] = dst;
  d.validate();
  return d;
}

std::string dfa_to_dot(const Dfa& d) {
  std::ostringstream out;
  out << "digraph dfa {\n  rankdir=LR;\n  node [shape=circle];\n"
      << "  init [shape=point];\n  init -> q" << d.initial << ";\n";
  for (int q = 0; q < d.num_states(); ++q)
    out << "  q" << q << " [label=\"q" << q << "\""
        << (d.accepting[q] ? ", shape=doublecircle" : "") << "];\n";
  for (int q = 0; q < d.num_states(); ++q) {
    std::map<int, std::string> grouped;
    for (int s = 0; s < d.alphabet.num_symbols(); ++s) {
      std::string& lbl = grouped[d.trans[q][s]];
      if (!lbl.empty()) lbl += " ";
      lbl += render_symbol(Symbol(static_cast<uint32_t>(s)), d.alphabet);
    }
    for (const auto& [dst, lbl] : grouped)
      out << "  q" << q << " -> q" << dst << " [label=\"" << lbl << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace specsynth
