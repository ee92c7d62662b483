#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

#include "slowsync/automaton.hpp"
#include "slowsync/state_set.hpp"

namespace slowsync {

// Loop structure of an extra symbol c added to C_n. For a permutation with
// qc <= q+1 the loops partition {1..n}; for a deficiency-1 symbol with
// Qc = Q\{1} and 1c = 2 they partition {2..n}. Within a loop c steps
// q -> q+1 and the last state returns to the first.
struct LoopStructure {
  int loop_count = 0;
  std::vector<int> lengths;

  friend bool operator==(const LoopStructure&, const LoopStructure&) = default;
};

enum class ExtensionCase {
  kPermutationJump,           // some qc >= q+2
  kPermutationLongLoop,       // a loop of length >= 3
  kPermutationInnerTwoLoop,   // a 2-loop that is not the last loop
  kPermutationLastTwoLoop,    // only the last loop has length 2
  kMissesOtherState,          // Qc = Q\{q}, q != 1
  kSquareMissesOneTwo,        // Qc = Q\{1}, Qc^2 = Q\{1,2}
  kSquareMissesHighState,     // Qc = Q\{1}, Qc^2 misses some q >= 3
  kFirstStateNotToTwo,        // c permutes Q\{1}, 1c != 2
  kDeficientJump,             // c permutes Q\{1}, 1c = 2, some qc >= q+2
  kDeficientFirstLoopLong,    // loop structure on {2..n}, first loop length >= 2
  kDeficientLift,             // loop structure on {2..n}, 2c = 2
  kDeficiencyTwoOrMore,
  kResidual,                  // no constructive rule applies
};

std::string_view case_name(ExtensionCase c);

struct Classification {
  int deficiency = 0;
  ExtensionCase tag = ExtensionCase::kResidual;
};

// c must act on n >= 2 states and differ from the identity and from both
// symbols of C_n.
Classification classify(const Transformation& c);

LoopStructure loop_decomposition(const Transformation& c);
// Inverse of loop_decomposition(). With deficient set, 1 maps to 2 and the
// loops cover {2..n}.
Transformation transformation_from_loops(int n, const LoopStructure& loops, bool deficient);

// Replacement of a segment of the unique shortest synchronizing path of C_n
// by a shorter word over {a, b, c} (symbol indices 0, 1, 2).
struct ShorterWordPlan {
  ExtensionCase tag = ExtensionCase::kResidual;
  StateSet from;
  StateSet target;  // from * word is a subset of target
  Word word;
  // Shortest {a,b}-word length from `from` to `target` in C_n.
  int baseline_distance = 0;
  // Full synchronizing word for C_n + c of length (n-1)^2 - baseline + |word|.
  Word sync_word;
};

// n >= 5. The plan is verified by direct application before it is returned;
// a failed verification throws std::logic_error.
ShorterWordPlan build_shorter_word(const Transformation& c);
// Same, for a permutation c, using the given loop (0-based) of length >= 3
// instead of the first one.
ShorterWordPlan build_shorter_word(const Transformation& c, int loop_index);

// C_n with c appended as symbol index 2.
Dfa cerny_extension(const Transformation& c);

struct ExtensionRow {
  Transformation c;
  ExtensionCase tag = ExtensionCase::kResidual;
  int bfs_length = 0;
  int plan_length = -1;  // -1 when no plan was built
};

struct ExtensionReport {
  int n = 0;
  std::uint64_t total_maps = 0;
  std::uint64_t trivial_skipped = 0;
  std::uint64_t checked = 0;
  bool all_below = true;
  int max_length_found = 0;
  std::uint64_t constructive_checked = 0;
  std::uint64_t constructive_failures = 0;
  std::map<ExtensionCase, std::uint64_t> case_counts;
  std::vector<Transformation> counterexamples;
  std::vector<ExtensionRow> rows;  // filled when keep_rows is set
};

struct ExtensionVerifyOptions {
  bool constructive = false;
  bool keep_rows = false;
  int threads = 1;
};

inline constexpr int kMaxExtensionStates = 8;

// Checks every map c on n states (2 <= n <= 8): C_n + c synchronizes in
// fewer than (n-1)^2 steps unless c is trivial.
ExtensionReport verify_no_critical_extension(int n, ExtensionVerifyOptions options = {});

}  // namespace slowsync
