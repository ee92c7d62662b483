#include "slowsync/dfa_io.hpp"

#include <fstream>
#include <sstream>
#include <vector>

namespace slowsync {

namespace {

std::vector<long long> parse_ints(const std::string& line, int lineno) {
  std::istringstream in(line);
  std::vector<long long> out;
  std::string tok;
  while (in >> tok) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(tok, &used);
    } catch (const std::exception&) {
      throw ParseError(lineno, "expected an integer, got '" + tok + "'");
    }
    if (used != tok.size()) throw ParseError(lineno, "expected an integer, got '" + tok + "'");
    out.push_back(v);
  }
  return out;
}

bool is_blank_or_comment(const std::string& line) {
  auto pos = line.find_first_not_of(" \t\r");
  return pos == std::string::npos || line[pos] == '#';
}

}  // namespace

Dfa parse_dfa(std::string_view text, bool require_basic) {
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  int n = -1;
  long long k = -1;
  int header_line = 0;
  std::vector<Transformation> symbols;
  while (std::getline(in, line)) {
    ++lineno;
    if (is_blank_or_comment(line)) continue;
    auto vals = parse_ints(line, lineno);
    if (n < 0) {
      if (vals.size() != 2) throw ParseError(lineno, "header must be 'n k'");
      if (vals[0] < 1 || vals[0] > kMaxStates) {
        throw ParseError(lineno, "state count must be in [1, " + std::to_string(kMaxStates) + "]");
      }
      if (vals[1] < 0) throw ParseError(lineno, "symbol count must be non-negative");
      n = static_cast<int>(vals[0]);
      k = vals[1];
      header_line = lineno;
      continue;
    }
    if (static_cast<long long>(symbols.size()) == k) {
      throw ParseError(lineno, "more symbol rows than declared");
    }
    if (static_cast<int>(vals.size()) != n) {
      throw ParseError(lineno, "expected " + std::to_string(n) + " images, got " +
                                   std::to_string(vals.size()));
    }
    std::vector<State> images;
    for (long long v : vals) {
      if (v < 1 || v > n) {
        throw ParseError(lineno, "image " + std::to_string(v) + " outside [1, " +
                                     std::to_string(n) + "]");
      }
      images.push_back(static_cast<State>(v - 1));
    }
    Transformation t(images);
    if (require_basic) {
      if (t.is_identity()) throw ParseError(lineno, "identity symbol in basic DFA");
      for (const auto& prev : symbols) {
        if (prev == t) throw ParseError(lineno, "duplicate symbol in basic DFA");
      }
    }
    symbols.push_back(t);
  }
  if (n < 0) throw ParseError(lineno == 0 ? 1 : lineno, "missing header");
  if (static_cast<long long>(symbols.size()) != k) {
    throw ParseError(lineno, "expected " + std::to_string(k) + " symbol rows after line " +
                                 std::to_string(header_line) + ", got " +
                                 std::to_string(symbols.size()));
  }
  return Dfa(n, std::move(symbols));
}

std::string serialize_dfa(const Dfa& dfa) {
  std::string out = std::to_string(dfa.states()) + " " + std::to_string(dfa.alphabet_size()) + "\n";
  for (const auto& t : dfa.symbols()) {
    for (int q = 0; q < dfa.states(); ++q) {
      if (q) out += ' ';
      out += std::to_string(t(q) + 1);
    }
    out += '\n';
  }
  return out;
}

Dfa read_dfa_file(const std::string& path, bool require_basic) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_dfa(buf.str(), require_basic);
}

}  // namespace slowsync
