#include <gtest/gtest.h>

#include "oracles.hpp"
#include "slowsync/cerny_extension.hpp"
#include "slowsync/families.hpp"
#include "slowsync/powerset.hpp"

using namespace slowsync;

namespace {

// 1-based images.
Transformation t1(std::initializer_list<int> images) {
  std::vector<State> v;
  for (int x : images) v.push_back(static_cast<State>(x - 1));
  return Transformation(v);
}

// Loops (1 2 3)(4 5 6 7)(8)(9 10).
Transformation ten_state_example() { return t1({2, 3, 1, 5, 6, 7, 4, 8, 10, 9}); }

std::uint64_t power(int n) {
  std::uint64_t p = 1;
  for (int i = 0; i < n; ++i) p *= static_cast<std::uint64_t>(n);
  return p;
}

}  // namespace

TEST(Classify, RejectsTrivialSymbols) {
  auto c5 = cerny(5);
  EXPECT_THROW(classify(c5.symbol(0)), InvalidInput);
  EXPECT_THROW(classify(c5.symbol(1)), InvalidInput);
  EXPECT_THROW(classify(Transformation::identity(5)), InvalidInput);
}

TEST(Classify, TenStateExample) {
  auto cls = classify(ten_state_example());
  EXPECT_EQ(cls.deficiency, 0);
  EXPECT_EQ(cls.tag, ExtensionCase::kPermutationLongLoop);
  EXPECT_EQ(loop_decomposition(ten_state_example()), (LoopStructure{4, {3, 4, 1, 2}}));
}

TEST(Classify, JumpDetected) {
  // 1 -> 3 is a jump of two.
  auto cls = classify(t1({3, 2, 1, 4, 5}));
  EXPECT_EQ(cls.tag, ExtensionCase::kPermutationJump);
}

TEST(Classify, DeficiencyClasses) {
  EXPECT_EQ(classify(t1({1, 1, 1, 4, 5})).tag, ExtensionCase::kDeficiencyTwoOrMore);
  EXPECT_EQ(classify(t1({1, 1, 2, 4, 5})).deficiency, 1);
  // Qc = Q \ {3}
  EXPECT_EQ(classify(t1({1, 2, 2, 4, 5})).tag, ExtensionCase::kMissesOtherState);
}

TEST(LoopDecomposition, TrivialShapes) {
  EXPECT_EQ(loop_decomposition(Transformation::identity(6)), (LoopStructure{6, {1, 1, 1, 1, 1, 1}}));
  EXPECT_EQ(loop_decomposition(cerny(6).symbol(0)), (LoopStructure{1, {6}}));
  EXPECT_THROW(loop_decomposition(t1({3, 2, 1, 4, 5})), InvalidInput);
}

TEST(LoopDecomposition, ReconstructionRoundTrip) {
  for (int n = 2; n <= 8; ++n) {
    for (std::uint64_t i = 0; i < power(n); ++i) {
      auto c = Transformation::from_index(n, i);
      LoopStructure loops;
      try {
        loops = loop_decomposition(c);
      } catch (const InvalidInput&) {
        continue;
      }
      int sum = 0;
      for (int l : loops.lengths) sum += l;
      bool deficient = !c.is_permutation();
      EXPECT_EQ(sum, deficient ? n - 1 : n);
      EXPECT_EQ(transformation_from_loops(n, loops, deficient), c);
    }
  }
}

TEST(LoopDecomposition, EveryCompositionIsRealized) {
  // Compositions of 7 into positive parts: 2^6.
  int seen = 0;
  for (int mask = 0; mask < 64; ++mask) {
    LoopStructure loops;
    int run = 1;
    for (int bit = 0; bit < 6; ++bit) {
      if (mask >> bit & 1) {
        loops.lengths.push_back(run);
        run = 1;
      } else {
        ++run;
      }
    }
    loops.lengths.push_back(run);
    loops.loop_count = static_cast<int>(loops.lengths.size());
    auto c = transformation_from_loops(7, loops, false);
    EXPECT_EQ(loop_decomposition(c), loops);
    ++seen;
  }
  EXPECT_EQ(seen, 64);
}

TEST(ShorterWord, TenStateExampleWithLoopOfLengthFour) {
  auto plan = build_shorter_word(ten_state_example(), 1);
  EXPECT_EQ(plan.from, StateSet::interval(1, 8));    // {2..9}
  EXPECT_EQ(plan.target, StateSet::interval(1, 6));  // {2..7}
  EXPECT_EQ(plan.word.to_string(), "aaabaaacccaaab");
  EXPECT_EQ(plan.baseline_distance, 20);
  EXPECT_EQ(plan.sync_word.size(), 75u);
  EXPECT_TRUE(apply_set(cerny_extension(ten_state_example()), StateSet::full(10), plan.sync_word).is_singleton());
}

TEST(ShorterWord, TenStateExampleDefaultsToFirstLongLoop) {
  auto plan = build_shorter_word(ten_state_example());
  EXPECT_EQ(plan.tag, ExtensionCase::kPermutationLongLoop);
  EXPECT_EQ(plan.baseline_distance, 20);
  EXPECT_LT(plan.word.size(), 20u);
  EXPECT_THROW(build_shorter_word(ten_state_example(), 2), InvalidInput);
}

TEST(ShorterWord, MissingStateWordLength) {
  for (int n = 5; n <= 8; ++n) {
    for (int q = 2; q <= n; ++q) {
      // Qc = Q \ {q}: q goes to q-1, everything else fixed.
      std::vector<State> img(static_cast<std::size_t>(n));
      for (int s = 0; s < n; ++s) img[s] = static_cast<State>(s);
      img[q - 1] = static_cast<State>(q - 2);
      Transformation c(img);
      if (c == cerny(n).symbol(1)) continue;
      auto plan = build_shorter_word(c);
      EXPECT_EQ(plan.tag, ExtensionCase::kMissesOtherState);
      EXPECT_EQ(static_cast<int>(plan.sync_word.size()), (n - 1) * (n - 1) - q + 1) << n << ' ' << q;
      // c a^{n-q} b (a^{n-1} b)^{n-3}
      Word expected;
      expected.append_letter(2).append_letter(0, n - q).append_letter(1);
      for (int i = 0; i < n - 3; ++i) expected.append_letter(0, n - 1).append_letter(1);
      EXPECT_TRUE(apply_set(cerny_extension(c), StateSet::full(n), expected).is_singleton());
      EXPECT_EQ(expected.size(), plan.sync_word.size());
    }
  }
}

TEST(ShorterWord, PermutationLoopPlansBeatTwoRounds) {
  for (int n = 5; n <= 8; ++n) {
    for (std::uint64_t i = 0; i < power(n); ++i) {
      auto c = Transformation::from_index(n, i);
      if (!c.is_permutation() || c.is_identity() || c == cerny(n).symbol(0)) continue;
      auto tag = classify(c).tag;
      if (tag != ExtensionCase::kPermutationLongLoop && tag != ExtensionCase::kPermutationInnerTwoLoop &&
          tag != ExtensionCase::kPermutationLastTwoLoop) {
        continue;
      }
      auto plan = build_shorter_word(c);
      EXPECT_EQ(plan.baseline_distance, 2 * n);
      EXPECT_LT(static_cast<int>(plan.word.size()), 2 * n);
      EXPECT_TRUE(apply_set(cerny_extension(c), plan.from, plan.word).subset_of(plan.target));
    }
  }
}

TEST(ShorterWord, DeficiencyTwoAgreesWithSearch) {
  std::mt19937_64 rng(13);
  int checked = 0;
  while (checked < 200) {
    auto c = oracle::random_transformation(6, rng);
    if (c.deficiency() < 2) continue;
    auto plan = build_shorter_word(c);
    auto len = shortest_sync_length(cerny_extension(c));
    ASSERT_TRUE(len);
    EXPECT_LE(*len, static_cast<int>(plan.sync_word.size()));
    EXPECT_LT(static_cast<int>(plan.sync_word.size()), 25);
    ++checked;
  }
}

// With c deficient (1c = 2, loops on {2..n}, 2c = 2) and its lift fixing 1:
// S c^k is contained in S lift^k whenever 1 is not in S or 2 is in S.
TEST(ShorterWord, LiftContainsDeficientImages) {
  for (int n = 5; n <= 7; ++n) {
    for (int mask = 0; mask < (1 << (n - 2)); ++mask) {
      LoopStructure loops;
      int run = 1;
      for (int bit = 0; bit < n - 2; ++bit) {
        if (mask >> bit & 1) {
          loops.lengths.push_back(run);
          run = 1;
        } else {
          ++run;
        }
      }
      loops.lengths.push_back(run);
      loops.loop_count = static_cast<int>(loops.lengths.size());
      if (loops.lengths.front() != 1) continue;
      auto c = transformation_from_loops(n, loops, true);
      std::vector<State> img(c.images().begin(), c.images().end());
      img[0] = 0;
      Transformation lift(img);
      for (std::uint32_t bits = 1; bits < (1U << n); ++bits) {
        StateSet s(bits);
        if (s.contains(0) && !s.contains(1)) continue;
        StateSet sc = s, sl = s;
        for (int k = 1; k <= n; ++k) {
          sc = image(c, sc);
          sl = image(lift, sl);
          EXPECT_TRUE(sc.subset_of(sl)) << n << ' ' << mask << ' ' << bits << ' ' << k;
        }
      }
    }
  }
}

TEST(ShorterWord, EveryNonTrivialMapHasAPlan) {
  for (int n = 5; n <= 6; ++n) {
    auto c_n = cerny(n);
    for (std::uint64_t i = 0; i < power(n); ++i) {
      auto c = Transformation::from_index(n, i);
      if (c.is_identity() || c == c_n.symbol(0) || c == c_n.symbol(1)) continue;
      auto plan = build_shorter_word(c);
      EXPECT_NE(plan.tag, ExtensionCase::kResidual);
      EXPECT_LT(static_cast<int>(plan.sync_word.size()), (n - 1) * (n - 1));
      EXPECT_EQ(static_cast<int>(plan.sync_word.size()),
                (n - 1) * (n - 1) - plan.baseline_distance + static_cast<int>(plan.word.size()));
    }
  }
}

TEST(Verify, FiveStates) {
  auto r = verify_no_critical_extension(5, {.constructive = true});
  EXPECT_EQ(r.total_maps, 3125u);
  EXPECT_EQ(r.trivial_skipped, 3u);
  EXPECT_EQ(r.checked, 3122u);
  EXPECT_TRUE(r.all_below);
  EXPECT_LT(r.max_length_found, 16);
  EXPECT_EQ(r.constructive_checked, 3122u);
  EXPECT_EQ(r.constructive_failures, 0u);
  EXPECT_TRUE(r.counterexamples.empty());
  EXPECT_EQ(r.case_counts.count(ExtensionCase::kResidual), 0u);
}

TEST(Verify, SixStates) {
  auto r = verify_no_critical_extension(6, {.constructive = true, .threads = 2});
  EXPECT_EQ(r.checked, 46653u);
  EXPECT_TRUE(r.all_below);
  EXPECT_EQ(r.constructive_failures, 0u);
}

TEST(Verify, ThreadCountDoesNotChangeReport) {
  auto a = verify_no_critical_extension(5, {.constructive = true, .keep_rows = true, .threads = 1});
  auto b = verify_no_critical_extension(5, {.constructive = true, .keep_rows = true, .threads = 3});
  EXPECT_EQ(a.case_counts, b.case_counts);
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_EQ(a.rows[i].c, b.rows[i].c);
    EXPECT_EQ(a.rows[i].bfs_length, b.rows[i].bfs_length);
  }
}

TEST(Verify, FourStatesIsReportOnly) {
  auto r = verify_no_critical_extension(4);
  EXPECT_EQ(r.checked, 253u);
  EXPECT_EQ(r.max_length_found, 8);
}

TEST(Verify, RowsAgreeWithSearch) {
  auto r = verify_no_critical_extension(5, {.constructive = true, .keep_rows = true});
  ASSERT_EQ(r.rows.size(), 3122u);
  for (const auto& row : r.rows) {
    EXPECT_EQ(row.bfs_length, oracle::tuple_bfs(cerny_extension(row.c)).value_or(-1));
    EXPECT_GE(row.plan_length, row.bfs_length);
  }
}
