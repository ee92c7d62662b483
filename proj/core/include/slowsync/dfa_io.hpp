#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "slowsync/automaton.hpp"

namespace slowsync {

class ParseError : public InvalidInput {
 public:
  ParseError(int line, const std::string& what)
      : InvalidInput("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Text format:
//   n k
//   <n 1-based images of symbol 0>
//   ...
//   <n 1-based images of symbol k-1>
// '#' starts a comment line; blank lines are ignored.
// With require_basic, identity and duplicate symbols are rejected.
Dfa parse_dfa(std::string_view text, bool require_basic = true);

std::string serialize_dfa(const Dfa& dfa);

Dfa read_dfa_file(const std::string& path, bool require_basic = true);

}  // namespace slowsync
