#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "slowsync/automaton.hpp"

namespace slowsync {

// Cerny automaton C_n: a = cyclic shift q -> q+1, b merges state 1 into 2
// and fixes the rest (1-based).
Dfa cerny(int n);

// b (a^{n-1} b)^{n-2}, synchronizing C_n into state 2.
Word cerny_word(int n);

// The five-symbol automaton {a,b,c,d,e} with sub-alphabets that synchronize
// in n^2 - 3n + O(1) steps. Symbols keep their relative order, so e.g.
// A-cd has symbols (a, b, e) at indices (0, 1, 2).
enum class FamilyVariant { kFull, kMinusD, kMinusC, kMinusCD, kMinusBCD };

std::string_view variant_name(FamilyVariant v);
FamilyVariant parse_variant(std::string_view name);
// Letters of the full alphabet retained by the variant, e.g. "abe".
std::string_view variant_letters(FamilyVariant v);

inline constexpr int kFamilyMinStates = 5;

// n >= 5.
Dfa thm3_family(int n, FamilyVariant variant = FamilyVariant::kFull);

// Shortest synchronizing length the family is known to reach.
int thm3_expected_length(int n, FamilyVariant variant);

inline constexpr std::uint64_t kDefaultPaddingCap = std::uint64_t{1} << 20;

// Embeds a basic DFA on n - m states into n states by taking, for every
// symbol and the identity, all n^m completions on the new states, then
// dropping the global identity. The result has (k+1) n^m - 1 symbols.
Dfa pad_construction(const Dfa& base, int n, std::uint64_t alphabet_cap = kDefaultPaddingCap);

// (n - m - 1)^2 with m the least integer such that 3 n^m >= k + 1.
// Requires n >= 2 and 2 <= k <= 3 n^{n-2} - 1.
std::int64_t corollary2_bound(int n, std::uint64_t k);

// Maximal shortest synchronizing length d(n, k) for small n, from exhaustive
// enumeration results (n = 2..6, k up to 41).
std::optional<int> known_max_sync_length(int n, std::uint64_t k);

struct LowerBoundReport {
  int n = 0;
  std::uint64_t k = 0;
  std::optional<std::int64_t> corollary2;
  std::optional<std::int64_t> family;          // k = 3, 4, 5
  std::optional<std::int64_t> extra_state;     // k = 3: (n-2)^2 + 1
  std::optional<std::int64_t> padded_family;   // 3n <= k <= 6n - 1: n^2 - 5n + 6
  std::optional<int> known_exact;
  std::optional<std::int64_t> best;
};

LowerBoundReport lower_bounds(int n, std::uint64_t k);

}  // namespace slowsync
