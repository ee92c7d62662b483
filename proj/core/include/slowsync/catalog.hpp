#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "slowsync/automaton.hpp"

namespace slowsync {

// A named critical DFA together with the data it must reproduce.
struct CatalogEntry {
  std::string name;
  Dfa dfa;
  int expected_length = 0;
  std::uint64_t expected_count = 0;
  // Not an extension of a smaller critical DFA on the same states.
  bool minimal = false;
  // No basic critical extension exists.
  bool maximal = false;
};

class CatalogError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// All 14 entries, ordered by state count. Each entry is checked against its
// expected length and word count the first time the catalog is built; a
// mismatch throws CatalogError naming the entry.
std::span<const CatalogEntry> catalog();

// Throws InvalidInput for unknown names.
const CatalogEntry& catalog_entry(std::string_view name);

struct CatalogCheck {
  std::string name;
  int length = -1;
  std::uint64_t count = 0;
  bool passed = false;
};

// Recomputes every entry without throwing.
std::vector<CatalogCheck> verify_catalog();

}  // namespace slowsync
