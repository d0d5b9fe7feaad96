#include <doctest.h>

#include <cstdio>

#include "specsynth/scenarios.hpp"
#include "specsynth/symbols.hpp"

using namespace specsynth;

TEST_CASE("parse_symbol basics") {
  Alphabet ab({"fish", "ship"});
  CHECK(parse_symbol("{}", ab).bits == 0);
  CHECK(parse_symbol("{fish}", ab).bits == 1);
  CHECK(parse_symbol("{ship}", ab).bits == 2);
  CHECK(parse_symbol("{fish,ship}", ab).bits == 3);

  Alphabet sea({"shipwreck", "fish", "coral-reefs"});
  CHECK(parse_symbol("{shipwreck}", sea).bits == 1);

  CHECK_THROWS_AS(parse_symbol("{ship,lava}", ab), UnknownProposition);
  CHECK_THROWS_AS(parse_symbol("fish", ab), MalformedSymbol);
  CHECK_THROWS_AS(parse_symbol("{fish", ab), MalformedSymbol);
}

TEST_CASE("symbol rendering round-trips exhaustively") {
  for (int n = 0; n <= 4; ++n) {
    std::vector<std::string> props;
    for (int i = 0; i < n; ++i) props.push_back("p" + std::to_string(i));
    Alphabet ab(props);
    for (uint32_t bits = 0; bits < (1u << n); ++bits) {
      Symbol sym(bits);
      CHECK(parse_symbol(render_symbol(sym, ab), ab) == sym);
    }
  }
}

TEST_CASE("alphabet invariants") {
  CHECK_THROWS_AS(Alphabet({"a", "a"}), Error);
  CHECK_THROWS_AS(Alphabet({"a b"}), Error);
  CHECK_THROWS_AS(Alphabet({""}), Error);
  std::vector<std::string> many;
  for (int i = 0; i < 31; ++i) many.push_back("p" + std::to_string(i));
  CHECK_THROWS_AS(Alphabet(many), Error);
}

TEST_CASE("demo parsing keeps multiplicities") {
  Alphabet ab({"s", "f"});
  std::string content =
      "# a comment\n"
      "{} {s} {} {f}\n"
      "\n"
      "{} {s} {} {f}\n";
  DemoSet demos = parse_demos(content, &ab);
  CHECK(demos.size() == 2);
  auto counts = demos.counts();
  REQUIRE(counts.size() == 1);
  CHECK(counts[0].second == 2);
  CHECK(counts[0].first == parse_trace("{} {s} {} {f}", ab));
}

TEST_CASE("empty demo file is rejected") {
  Alphabet ab({"s"});
  CHECK_THROWS_AS(parse_demos("# nothing here\n", &ab), EmptyDemoSet);
}

TEST_CASE("alphabet header is honored and checked") {
  DemoSet demos = parse_demos("alphabet: a,b\n{a} {b}\n", nullptr);
  CHECK(demos.alphabet.propositions() == std::vector<std::string>{"a", "b"});
  Alphabet other({"x"});
  CHECK_THROWS_AS(parse_demos("alphabet: a,b\n{a}\n", &other), Error);
}

TEST_CASE("malformed symbol reports line and column") {
  Alphabet ab({"a"});
  try {
    parse_demos("{a}\n{a} {zzz}\n", &ab);
    FAIL("expected MalformedSymbol");
  } catch (const MalformedSymbol& e) {
    CHECK(e.line == 2);
    CHECK(e.column == 2);
  }
}

TEST_CASE("save and load round-trip") {
  DemoSet demos = scenarios::charge_demos();
  CHECK(demos.size() == 5);
  std::string path = "demo_roundtrip.txt";
  save_demos(demos, path);
  DemoSet loaded = load_demos(path);
  CHECK(loaded.traces == demos.traces);
  CHECK(loaded.alphabet == demos.alphabet);
  std::remove(path.c_str());
}
