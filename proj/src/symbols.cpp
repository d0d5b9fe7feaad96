#include "specsynth/symbols.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace specsynth {

namespace {

bool has_whitespace(const std::string& s) {
  return s.find_first_of(" \t\r\n") != std::string::npos;
}

}  // namespace

Alphabet::Alphabet(std::vector<std::string> propositions) : props_(std::move(propositions)) {
  if (props_.size() > 30)
    throw Error("alphabet too large: " + std::to_string(props_.size()) + " > 30 propositions");
  for (int i = 0; i < static_cast<int>(props_.size()); ++i) {
    const auto& p = props_[i];
    if (p.empty() || has_whitespace(p))
      throw Error("invalid proposition name: '" + p + "'");
    if (!index_.emplace(p, i).second)
      throw Error("duplicate proposition: " + p);
  }
}

int Alphabet::index(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw UnknownProposition(name);
  return it->second;
}

bool Alphabet::contains(const std::string& name) const {
  return index_.count(name) > 0;
}

Symbol parse_symbol(const std::string& text, const Alphabet& alphabet) {
  if (text.size() < 2 || text.front() != '{' || text.back() != '}')
    throw MalformedSymbol("symbol must be brace-delimited: '" + text + "'");
  Symbol sym;
  std::string inner = text.substr(1, text.size() - 2);
  if (inner.empty()) return sym;
  std::stringstream ss(inner);
  std::string name;
  while (std::getline(ss, name, ',')) {
    if (name.empty()) throw MalformedSymbol("empty proposition in symbol: '" + text + "'");
    sym.bits |= 1u << alphabet.index(name);
  }
  return sym;
}

std::string render_symbol(Symbol sym, const Alphabet& alphabet) {
  std::string out = "{";
  bool first = true;
  for (int i = 0; i < alphabet.size(); ++i) {
    if (!sym.has(i)) continue;
    if (!first) out += ',';
    out += alphabet.name(i);
    first = false;
  }
  out += '}';
  return out;
}

Trace parse_trace(const std::string& line, const Alphabet& alphabet, int line_no) {
  Trace trace;
  std::stringstream ss(line);
  std::string tok;
  int col = 1;
  while (ss >> tok) {
    try {
      trace.push_back(parse_symbol(tok, alphabet));
    } catch (const MalformedSymbol& e) {
      throw MalformedSymbol(e.what(), line_no, col);
    } catch (const UnknownProposition& e) {
      throw MalformedSymbol(std::string(e.what()), line_no, col);
    }
    ++col;
  }
  return trace;
}

std::string render_trace(const Trace& trace, const Alphabet& alphabet) {
  std::string out;
  for (size_t i = 0; i < trace.size(); ++i) {
    if (i) out += ' ';
    out += render_symbol(trace[i], alphabet);
  }
  return out;
}

std::vector<std::pair<Trace, int>> DemoSet::counts() const {
  std::vector<std::pair<Trace, int>> out;
  std::vector<Trace> sorted = traces;
  std::sort(sorted.begin(), sorted.end());
  for (const auto& t : sorted) {
    if (!out.empty() && out.back().first == t)
      ++out.back().second;
    else
      out.emplace_back(t, 1);
  }
  return out;
}

DemoSet parse_demos(const std::string& content, const Alphabet* alphabet) {
  DemoSet demos;
  bool have_alphabet = alphabet != nullptr;
  if (have_alphabet) demos.alphabet = *alphabet;

  std::stringstream ss(content);
  std::string line;
  int line_no = 0;
  while (std::getline(ss, line)) {
    ++line_no;
    auto start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos) continue;
    if (line[start] == '#') continue;
    if (line.compare(start, 9, "alphabet:") == 0) {
      std::vector<std::string> props;
      std::stringstream ps(line.substr(start + 9));
      std::string name;
      while (std::getline(ps, name, ',')) {
        auto b = name.find_first_not_of(" \t\r");
        auto e = name.find_last_not_of(" \t\r");
        if (b == std::string::npos) continue;
        props.push_back(name.substr(b, e - b + 1));
      }
      Alphabet declared(props);
      if (have_alphabet && !(declared == demos.alphabet))
        throw Error("alphabet header does not match the expected alphabet");
      demos.alphabet = std::move(declared);
      have_alphabet = true;
      continue;
    }
    if (!have_alphabet)
      throw Error("no alphabet: pass one explicitly or declare an 'alphabet:' header");
    demos.traces.push_back(parse_trace(line.substr(start), demos.alphabet, line_no));
  }
  if (demos.traces.empty()) throw EmptyDemoSet("demonstration set is empty");
  return demos;
}

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

DemoSet load_demos(const std::string& path, const Alphabet& alphabet) {
  return parse_demos(read_file(path), &alphabet);
}

DemoSet load_demos(const std::string& path) {
  return parse_demos(read_file(path), nullptr);
}

void save_demos(const DemoSet& demos, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write file: " + path);
  out << "alphabet:";
  for (int i = 0; i < demos.alphabet.size(); ++i)
    out << (i ? "," : " ") << demos.alphabet.name(i);
  out << "\n";
  for (const auto& t : demos.traces) out << render_trace(t, demos.alphabet) << "\n";
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace specsynth
