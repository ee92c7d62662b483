#pragma once

#include <cstdint>
#include <vector>

#include "slowsync/automaton.hpp"

namespace slowsync {

// Representative of the class of dfa under state relabeling and symbol
// reordering: the least sorted symbol list over all n! relabelings.
// Two DFAs are isomorphic iff their canonical forms are equal.
Dfa canonical_form(const Dfa& dfa);

bool isomorphic(const Dfa& a, const Dfa& b);

// Number of state permutations fixing the symbol set (as a set).
std::uint64_t automorphism_count(const Dfa& dfa);

// Calls fn(perm) for every permutation of {0..n-1}, identity first.
template <class Fn>
void for_each_permutation(int n, Fn&& fn);

}  // namespace slowsync

#include <algorithm>
#include <numeric>

namespace slowsync {

template <class Fn>
void for_each_permutation(int n, Fn&& fn) {
  std::vector<State> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), State{0});
  do {
    fn(static_cast<const std::vector<State>&>(perm));
  } while (std::next_permutation(perm.begin(), perm.end()));
}

}  // namespace slowsync
