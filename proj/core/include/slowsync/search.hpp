#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "slowsync/automaton.hpp"
#include "slowsync/count_table.hpp"
#include "slowsync/extension_bound.hpp"

namespace slowsync {

// (n-1)^2 - e_max + 1 with e_max = 2 ceil(n/2) - 1.
int default_min_sync(int n);

struct SearchConfig {
  int n = 3;
  std::optional<int> min_sync;      // defaults to default_min_sync(n)
  std::optional<int> max_sync;      // longer DFAs are tallied in above_max
  std::optional<int> max_alphabet;  // defaults to n^n - 1
  bool symmetry = true;
  bool pruning = true;
  bool heuristic = true;
  bool capture_witnesses = false;
  // Keeps the symbol-index list of every visited node (instrumentation).
  bool record_visits = false;
  ExtensionBoundOptions bound_options;

  int threads = 1;
  // Nodes with this many symbols become independent work units.
  int split_depth = 2;
  std::string checkpoint_path;
  // Stop after this many work units complete in this run (checkpoint kept).
  std::optional<std::size_t> stop_after_tasks;

  int resolved_min_sync() const;
  int resolved_max_alphabet() const;
};

struct Witness {
  Dfa dfa;
  int length = 0;
};

struct SearchStats {
  std::uint64_t nodes = 0;
  std::uint64_t canonical_rejects = 0;
  std::uint64_t pruned_fast = 0;
  std::uint64_t pruned_bound = 0;
  std::uint64_t bound_computations = 0;
};

struct SearchResult {
  CountTable table;
  std::uint64_t above_max = 0;
  std::vector<Witness> witnesses;
  std::vector<std::vector<std::uint32_t>> visits;
  SearchStats stats;
  bool complete = false;
  std::size_t tasks_total = 0;
  std::size_t tasks_done = 0;
};

// Depth-first enumeration of basic DFAs on n states by adding symbols in
// increasing transformation order. Synchronizing nodes shorter than
// min_sync are dropped with their subtree; non-synchronizing nodes are
// dropped with their subtree when extension_bound() is below min_sync.
// With symmetry on, only canonical representatives are visited and counted.
SearchResult enumerate(const SearchConfig& config);

// Candidates sorted by decreasing reducible_pair_count of the one-symbol
// extension; ties keep transformation order.
std::vector<Transformation> heuristic_order(const Dfa& dfa, std::span<const Transformation> candidates);

class CheckpointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace slowsync
