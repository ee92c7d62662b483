#pragma once

#include <vector>

#include "slowsync/automaton.hpp"

namespace slowsync {

struct SizeClassBound {
  int size = 0;
  // Number of strongly connected components among irreducible sets of this
  // size plus the sum of their directed diameters.
  int components_plus_diameters = 0;
  // Longest shortest reduction word over reducible sets of this size.
  int longest_reduction = 0;
  int components = 0;
  int irreducible_sets = 0;
  int reducible_sets = 0;
};

// Upper bound on the shortest synchronizing word of any synchronizing
// extension of a DFA:
//   total = distance_to_smallest + sum over sizes 2..smallest_size of
//           (components_plus_diameters + longest_reduction).
struct ExtensionBound {
  int smallest_size = 0;
  int distance_to_smallest = 0;
  std::vector<SizeClassBound> per_size;  // sizes 2..smallest_size, ascending
  int total = 0;
};

struct ExtensionBoundOptions {
  // When false, single-node components without a self-loop add nothing to
  // the component count.
  bool count_trivial_components = true;
};

ExtensionBound extension_bound(const Dfa& dfa, ExtensionBoundOptions options = {});

}  // namespace slowsync
