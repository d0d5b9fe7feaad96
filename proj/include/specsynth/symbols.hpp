#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace specsynth {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnknownProposition : Error {
  explicit UnknownProposition(const std::string& name)
      : Error("unknown proposition: " + name), name(name) {}
  std::string name;
};

struct MalformedSymbol : Error {
  MalformedSymbol(const std::string& what, int line = 0, int column = 0)
      : Error(line > 0 ? what + " at line " + std::to_string(line) + ", column " +
                             std::to_string(column)
                       : what),
        line(line),
        column(column) {}
  int line;
  int column;
};

struct IoError : Error {
  using Error::Error;
};

struct EmptyDemoSet : Error {
  using Error::Error;
};

// Ordered set of atomic propositions. Symbols are subsets of it, stored as
// bitsets, which caps the size at 30 propositions.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> propositions);

  int size() const { return static_cast<int>(props_.size()); }
  const std::string& name(int i) const { return props_.at(i); }
  const std::vector<std::string>& propositions() const { return props_; }
  int index(const std::string& name) const;  // throws UnknownProposition
  bool contains(const std::string& name) const;
  int num_symbols() const { return 1 << size(); }

  bool operator==(const Alphabet& other) const { return props_ == other.props_; }

 private:
  std::vector<std::string> props_;
  std::map<std::string, int> index_;
};

// One element of 2^Pi: bit i set means proposition i holds.
struct Symbol {
  uint32_t bits = 0;

  Symbol() = default;
  explicit Symbol(uint32_t b) : bits(b) {}

  bool has(int prop) const { return (bits >> prop) & 1u; }
  bool empty() const { return bits == 0; }
  auto operator<=>(const Symbol&) const = default;
};

using Trace = std::vector<Symbol>;

// `{a,b}` -> Symbol with bits for a and b; `{}` is the empty symbol.
Symbol parse_symbol(const std::string& text, const Alphabet& alphabet);
std::string render_symbol(Symbol sym, const Alphabet& alphabet);

Trace parse_trace(const std::string& line, const Alphabet& alphabet, int line_no = 0);
std::string render_trace(const Trace& trace, const Alphabet& alphabet);

// A multiset of demonstration traces. Duplicates are kept: repetition is how
// preference frequency enters the data.
struct DemoSet {
  Alphabet alphabet;
  std::vector<Trace> traces;

  int size() const { return static_cast<int>(traces.size()); }
  std::vector<std::pair<Trace, int>> counts() const;
};

// Trace file: optional `alphabet: p1,p2,...` header, then one trace per line,
// symbols whitespace-separated. `#` lines and blank lines are ignored.
DemoSet load_demos(const std::string& path, const Alphabet& alphabet);
DemoSet load_demos(const std::string& path);
DemoSet parse_demos(const std::string& content, const Alphabet* alphabet);
void save_demos(const DemoSet& demos, const std::string& path);

}  // namespace specsynth
