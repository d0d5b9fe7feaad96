#include <doctest.h>

#include <functional>

#include "specsynth/safety.hpp"
#include "specsynth/scenarios.hpp"

using namespace specsynth;

namespace {

// All traces over the alphabet up to the given length.
std::vector<Trace> all_traces(const Alphabet& ab, int max_len) {
  std::vector<Trace> out{{}};
  std::vector<Trace> layer{{}};
  for (int l = 0; l < max_len; ++l) {
    std::vector<Trace> next;
    for (const auto& t : layer)
      for (int s = 0; s < ab.num_symbols(); ++s) {
        Trace e = t;
        e.push_back(Symbol(static_cast<uint32_t>(s)));
        next.push_back(e);
        out.push_back(std::move(e));
      }
    layer = std::move(next);
  }
  return out;
}

}  // namespace

TEST_CASE("implication desugars to literal negation plus disjunction") {
  Alphabet ab({"coral"});
  SafeLtl parsed = parse_safe_ltl("G(coral -> X !coral)", ab);
  LtlRef manual =
      ltl_globally(ltl_or({ltl_not_atom(0), ltl_next(ltl_not_atom(0))}));
  CHECK(parsed.root->key == manual->key);
}

TEST_CASE("visit_until unrolls per its recursive definition") {
  Alphabet ab({"charge", "carpet"});
  CHECK(parse_safe_ltl("visit_until(!charge, carpet, 0)", ab).root->key ==
        ltl_not_atom(0)->key);
  LtlRef a = ltl_not_atom(0), b = ltl_atom(1);
  LtlRef once = ltl_and({a, ltl_or({b, ltl_next(a)})});
  CHECK(parse_safe_ltl("visit_until(!charge, carpet, 1)", ab).root->key == once->key);
  CHECK(parse_safe_ltl("visit_until(!charge, carpet, 2)", ab).root->key ==
        ltl_and({a, ltl_or({b, ltl_next(once)})})->key);
}

TEST_CASE("negation on compound subformulas is rejected") {
  Alphabet ab({"a", "b"});
  CHECK_THROWS_AS(parse_safe_ltl("G(!(a & b))", ab), NegationOnCompound);
  CHECK_THROWS_AS(parse_safe_ltl("!X a", ab), NegationOnCompound);
  CHECK_THROWS_AS(parse_safe_ltl("(a & b) -> a", ab), NegationOnCompound);
  CHECK(parse_safe_ltl("!!a", ab).root->key == ltl_atom(0)->key);
}

TEST_CASE("syntax errors carry a position") {
  Alphabet ab({"a"});
  CHECK_THROWS_AS(parse_safe_ltl("G (a", ab), SyntaxError);
  CHECK_THROWS_AS(parse_safe_ltl("a | ", ab), SyntaxError);
  CHECK_THROWS_AS(parse_safe_ltl("a b", ab), SyntaxError);
  CHECK_THROWS_AS(parse_safe_ltl("G zz", ab), UnknownProposition);
}

TEST_CASE("progression basics") {
  Alphabet ab({"lava"});
  LtlRef g = parse_safe_ltl("G !lava", ab).root;
  CHECK(formula_progression(g, parse_symbol("{lava}", ab))->kind == LtlKind::False);
  CHECK(formula_progression(g, parse_symbol("{}", ab))->key == g->key);
  CHECK(formula_progression(ltl_true(), parse_symbol("{lava}", ab))->kind == LtlKind::True);
}

TEST_CASE("progression of the escape-in-one-step property") {
  Alphabet ab({"coral"});
  LtlRef g = parse_safe_ltl("G(coral -> X !coral)", ab).root;
  Symbol coral = parse_symbol("{coral}", ab);
  // One coral step leaves the obligation to escape now, conjoined with the
  // original invariant.
  LtlRef after = formula_progression(g, coral);
  CHECK(after->key == ltl_and({ltl_not_atom(0), g})->key);
  // A second coral step violates.
  CHECK(formula_progression(after, coral)->kind == LtlKind::False);
  // Escaping returns to the invariant.
  CHECK(formula_progression(after, Symbol())->key == g->key);
}

TEST_CASE("violating dfa for the escape property has three states") {
  Alphabet ab({"coral"});
  Dfa d = build_violating_dfa(parse_safe_ltl("G(coral -> X !coral)", ab));
  CHECK(d.num_states() == 3);
  int accepting = 0;
  for (bool a : d.accepting) accepting += a;
  CHECK(accepting == 1);
  Symbol c = parse_symbol("{coral}", ab);
  Symbol e;
  CHECK(dfa_accepts(d, {e, c, c}));
  CHECK(dfa_accepts(d, {c, c}));
  CHECK_FALSE(dfa_accepts(d, {c, e, c, e}));
  CHECK_FALSE(dfa_accepts(d, {}));
  // The violating sink is absorbing.
  CHECK(dfa_accepts(d, {c, c, e, e, c}));
}

TEST_CASE("violating dfa for a plain invariant has two states") {
  Alphabet ab({"lava"});
  Dfa d = build_violating_dfa(parse_safe_ltl("G !lava", ab));
  CHECK(d.num_states() == 2);
  CHECK(dfa_accepts(d, {parse_symbol("{lava}", ab)}));
  CHECK_FALSE(dfa_accepts(d, {Symbol(), Symbol()}));
}

TEST_CASE("minimized safety dfa keeps two accepting states plus a sink") {
  Alphabet ab({"coral"});
  Dfa violating = build_violating_dfa(parse_safe_ltl("G(coral -> X !coral)", ab));
  Dfa safe = complement_and_minimize(violating);
  CHECK(safe.num_states() == 3);
  int accepting = 0;
  for (bool a : safe.accepting) accepting += a;
  CHECK(accepting == 2);
  Symbol c = parse_symbol("{coral}", ab);
  Symbol e;
  CHECK_FALSE(dfa_accepts(safe, {c, c}));
  CHECK(dfa_accepts(safe, {c, e, c, e}));
  CHECK(dfa_accepts(safe, {}));
  CHECK(dfa_accepts(safe, {e, e, c}));
}

TEST_CASE("complement is an involution on the language") {
  Alphabet ab({"p"});
  Dfa d = build_violating_dfa(parse_safe_ltl("G(p -> X !p)", ab));
  Dfa cc = complement_and_minimize(complement_and_minimize(d));
  for (const auto& t : all_traces(ab, 5)) CHECK(dfa_accepts(d, t) == dfa_accepts(cc, t));
}

TEST_CASE("minimization merges bisimilar states and preserves the language") {
  Alphabet ab({"p"});
  // Two copies of an accepting state with identical behavior.
  Dfa d;
  d.alphabet = ab;
  d.initial = 0;
  d.trans = {{1, 2}, {1, 1}, {2, 2}};  // state 1 and 2 both loop on everything
  d.accepting = {false, true, true};
  d.validate();
  Dfa m = minimize(d);
  CHECK(m.num_states() == 2);
  for (const auto& t : all_traces(ab, 5)) CHECK(dfa_accepts(d, t) == dfa_accepts(m, t));
  CHECK(m.num_states() <= d.num_states());
}

TEST_CASE("progression and the violating dfa agree on bad prefixes") {
  Alphabet ab({"p", "q"});
  std::vector<std::string> formulas = {
      "G !p",
      "G(p -> X !p)",
      "G(p -> X (q | X q))",
      "G !p | G !q",
      "p & X q",
      "visit_until(!p, q, 2)",
  };
  for (const auto& text : formulas) {
    SafeLtl phi = parse_safe_ltl(text, ab);
    Dfa d = build_violating_dfa(phi);
    for (const auto& t : all_traces(ab, 6)) {
      bool bad_prefix = false;
      LtlRef cur = phi.root;
      for (Symbol sym : t) {
        cur = formula_progression(cur, sym);
        if (cur->kind == LtlKind::False) {
          bad_prefix = true;
          break;
        }
      }
      CHECK(dfa_accepts(d, t) == bad_prefix);
    }
  }
}

TEST_CASE("exactly one of violating dfa and safety dfa accepts any trace") {
  Alphabet ab({"p", "q"});
  SafeLtl phi = parse_safe_ltl("G(p -> X !q)", ab);
  Dfa bad = build_violating_dfa(phi);
  Dfa safe = complement_and_minimize(bad);
  for (const auto& t : all_traces(ab, 5))
    CHECK(dfa_accepts(bad, t) != dfa_accepts(safe, t));
}

TEST_CASE("projection keeps residuals over irrelevant propositions small") {
  Alphabet ab({"a", "b", "c", "d"});
  Dfa d = build_violating_dfa(parse_safe_ltl("G !a", ab));
  CHECK(d.num_states() == 2);
  // Symbols differing only in irrelevant propositions behave identically.
  CHECK(d.step(d.initial, parse_symbol("{b,c,d}", ab)) == d.initial);
}

TEST_CASE("dfa serialization round-trips") {
  Alphabet ab({"coral"});
  Dfa d = complement_and_minimize(build_violating_dfa(parse_safe_ltl("G(coral -> X !coral)", ab)));
  Dfa back = dfa_from_text(dfa_to_text(d));
  CHECK(back.num_states() == d.num_states());
  for (const auto& t : all_traces(ab, 5)) CHECK(dfa_accepts(d, t) == dfa_accepts(back, t));
  CHECK(dfa_to_dot(d).find("doublecircle") != std::string::npos);
}

TEST_CASE("charge-station safety formula builds a counter automaton") {
  Alphabet ab = scenarios::charge_alphabet();
  SafeLtl phi = parse_safe_ltl(scenarios::charge_safety_formula(10), ab);
  Dfa bad = build_violating_dfa(phi);
  Dfa safe = complement_and_minimize(bad);
  CHECK(safe.num_states() >= 10);  // the k-step window needs a counter
  Symbol w = parse_symbol("{water}", ab);
  Symbol g = parse_symbol("{charge}", ab);
  Symbol c = parse_symbol("{carpet}", ab);
  Symbol l = parse_symbol("{lava}", ab);
  Symbol e;
  CHECK(dfa_accepts(bad, {w, g}));                 // charging while wet
  CHECK_FALSE(dfa_accepts(bad, {w, c, g}));        // dried on the carpet
  CHECK(dfa_accepts(bad, {e, l}));                 // lava is always fatal
  CHECK(dfa_accepts(bad, {w, e, e, g}));           // still inside the k-window
  Trace long_dry{w};
  for (int i = 0; i < 11; ++i) long_dry.push_back(e);
  long_dry.push_back(g);
  CHECK_FALSE(dfa_accepts(bad, long_dry));         // window expired, charge is fine
}
