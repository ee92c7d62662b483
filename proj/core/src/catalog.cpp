#include "slowsync/catalog.hpp"

#include <array>

#include "slowsync/dfa_io.hpp"
#include "slowsync/families.hpp"
#include "slowsync/powerset.hpp"

namespace slowsync {
namespace {

struct RawEntry {
  const char* name;
  const char* table;  // empty: use the Cerny automaton
  int n;
  int length;
  std::uint64_t count;
  bool minimal;
  bool maximal;
};

// Tables in the text format. Sub-automata that are restrictions of A3 or A4
// are stored explicitly so they can be checked against those restrictions.
constexpr std::array<RawEntry, 14> kRaw{{
    {"C3", "", 3, 4, 1, true, false},
    {"T3-1", "3 2\n2 3 1\n3 3 2\n", 3, 4, 1, true, false},
    {"T3-2", "3 3\n3 3 2\n1 3 2\n2 1 3\n", 3, 4, 1, true, false},
    {"T3-3", "3 3\n2 1 3\n2 2 3\n1 3 2\n", 3, 4, 1, true, false},
    {"A3", "3 5\n2 3 1\n2 2 3\n2 1 3\n3 3 2\n1 3 2\n", 3, 4, 16, false, true},
    {"C4", "", 4, 9, 1, true, true},
    {"CPR", "4 2\n1 3 4 2\n3 1 1 4\n", 4, 9, 1, true, false},
    {"T4-1", "4 3\n3 1 1 4\n1 3 2 4\n1 2 4 3\n", 4, 9, 1, true, false},
    {"T4-2", "4 3\n2 3 1 1\n3 2 1 4\n2 1 4 3\n", 4, 9, 4, true, true},
    {"A4", "4 5\n1 3 4 2\n3 1 1 4\n1 3 3 4\n1 3 2 4\n1 2 4 3\n", 4, 9, 256, false, true},
    {"C5", "", 5, 16, 1, true, true},
    {"Roman", "5 3\n1 2 4 3 3\n1 2 3 5 4\n3 4 1 2 5\n", 5, 16, 1, true, true},
    {"C6", "", 6, 25, 1, true, true},
    {"Kari", "6 2\n2 3 1 5 6 4\n1 2 4 3 5 3\n", 6, 25, 2, true, true},
}};

CatalogEntry load(const RawEntry& raw) {
  CatalogEntry e;
  e.name = raw.name;
  e.dfa = *raw.table ? parse_dfa(raw.table) : cerny(raw.n);
  e.expected_length = raw.length;
  e.expected_count = raw.count;
  e.minimal = raw.minimal;
  e.maximal = raw.maximal;
  return e;
}

CatalogCheck check(const CatalogEntry& e) {
  CatalogCheck c;
  c.name = e.name;
  if (auto r = shortest_sync(e.dfa)) {
    c.length = r->length;
    c.count = r->count;
  }
  c.passed = c.length == e.expected_length && c.count == e.expected_count;
  return c;
}

std::vector<CatalogEntry> build() {
  std::vector<CatalogEntry> out;
  out.reserve(kRaw.size());
  for (const auto& raw : kRaw) {
    out.push_back(load(raw));
    auto c = check(out.back());
    if (!c.passed) {
      throw CatalogError("catalog entry " + c.name + " has length " + std::to_string(c.length) +
                         " and " + std::to_string(c.count) + " shortest words, expected " +
                         std::to_string(raw.length) + " and " + std::to_string(raw.count));
    }
  }
  return out;
}

}  // namespace

std::span<const CatalogEntry> catalog() {
  static const std::vector<CatalogEntry> entries = build();
  return entries;
}

const CatalogEntry& catalog_entry(std::string_view name) {
  for (const auto& e : catalog()) {
    if (e.name == name) return e;
  }
  throw InvalidInput("unknown catalog entry: " + std::string(name));
}

std::vector<CatalogCheck> verify_catalog() {
  std::vector<CatalogCheck> out;
  for (const auto& raw : kRaw) out.push_back(check(load(raw)));
  return out;
}

}  // namespace slowsync
