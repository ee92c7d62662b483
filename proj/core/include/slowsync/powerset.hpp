#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "slowsync/automaton.hpp"
#include "slowsync/state_set.hpp"

namespace slowsync {

// Precomputed images of every subset under every symbol (2^n entries per
// symbol). Cheap for the state counts this library targets.
class PowerAutomaton {
 public:
  explicit PowerAutomaton(const Dfa& dfa);

  int states() const { return n_; }
  int alphabet_size() const { return k_; }
  std::uint32_t subset_count() const { return std::uint32_t{1} << n_; }

  StateSet step(StateSet s, Symbol x) const {
    return StateSet(table_[static_cast<std::size_t>(x) * subset_count() + s.bits()]);
  }
  StateSet apply(StateSet s, const Word& w) const;

 private:
  int n_;
  int k_;
  std::vector<std::uint16_t> table_;
};

StateSet step_set(const Dfa& dfa, StateSet s, Symbol x);
StateSet apply_set(const Dfa& dfa, StateSet s, const Word& w);

struct SyncResult {
  int length = 0;
  // Lexicographically least shortest synchronizing word.
  Word witness;
  // Number of distinct synchronizing words of the shortest length
  // (saturates at UINT64_MAX).
  std::uint64_t count = 0;
  // Singletons reached by some shortest synchronizing word.
  StateSet sync_states;
};

// Breadth-first search over subsets from Q; nullopt when no singleton is
// reachable.
std::optional<SyncResult> shortest_sync(const Dfa& dfa);
std::optional<SyncResult> shortest_sync(const PowerAutomaton& power);

// Length only; skips witness and counting bookkeeping.
std::optional<int> shortest_sync_length(const PowerAutomaton& power);
std::optional<int> shortest_sync_length(const Dfa& dfa);

// Number of 2-subsets that some word maps to a singleton.
int reducible_pair_count(const Dfa& dfa);

// A DFA synchronizes iff every pair of states is reducible.
bool is_synchronizing_by_pairs(const Dfa& dfa);

}  // namespace slowsync
