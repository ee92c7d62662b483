#include <gtest/gtest.h>

#include <unistd.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>

#include "slowsync/canonical.hpp"
#include "slowsync/catalog.hpp"
#include "slowsync/families.hpp"
#include "slowsync/powerset.hpp"
#include "slowsync/search.hpp"

using namespace slowsync;
namespace fs = std::filesystem;

namespace {

SearchResult run(int n, int min_sync, bool symmetry = true, bool pruning = true) {
  SearchConfig cfg;
  cfg.n = n;
  cfg.min_sync = min_sync;
  cfg.symmetry = symmetry;
  cfg.pruning = pruning;
  return enumerate(cfg);
}

fs::path temp_path(const std::string& name) {
  auto p = fs::temp_directory_path() / ("slowsync_" + name + "_" + std::to_string(::getpid()));
  fs::remove(p);
  return p;
}

}  // namespace

TEST(DefaultMinSync, Values) {
  EXPECT_EQ(default_min_sync(3), 2);
  EXPECT_EQ(default_min_sync(4), 7);
  EXPECT_EQ(default_min_sync(5), 12);
  EXPECT_EQ(default_min_sync(6), 21);
}

TEST(Enumerate, TwoStates) {
  auto r = run(2, 1);
  EXPECT_TRUE(r.complete);
  EXPECT_EQ(r.table.at(1, 1), 1u);
  EXPECT_EQ(r.table.at(2, 1), 2u);
  EXPECT_EQ(r.table.at(3, 1), 1u);
  EXPECT_EQ(r.table.total(1), 4u);
}

TEST(Enumerate, ThreeStatesCritical) {
  auto r = run(3, 4);
  const std::uint64_t col[] = {0, 2, 7, 5, 1};
  for (int k = 1; k <= 5; ++k) EXPECT_EQ(r.table.at(k, 4), col[k - 1]) << k;
  EXPECT_EQ(r.table.total(4), 15u);
  EXPECT_EQ(r.table.max_length(), 4);
}

TEST(Enumerate, ThreeStatesLengthThree) {
  auto r = run(3, 3);
  const std::uint64_t col[] = {0, 4, 32, 85, 107, 81, 39, 10, 2};
  for (int k = 1; k <= 9; ++k) EXPECT_EQ(r.table.at(k, 3), col[k - 1]) << k;
  EXPECT_EQ(r.table.total(3), 360u);
  EXPECT_EQ(r.table.total(4), 15u);
}

TEST(Enumerate, FourStatesCritical) {
  auto r = run(4, 9);
  const std::uint64_t col[] = {0, 2, 5, 4, 1};
  for (int k = 1; k <= 5; ++k) EXPECT_EQ(r.table.at(k, 9), col[k - 1]) << k;
  EXPECT_EQ(r.table.total(9), 12u);
}

TEST(Enumerate, MaxSyncAndAlphabetCaps) {
  SearchConfig cfg;
  cfg.n = 3;
  cfg.min_sync = 3;
  cfg.max_sync = 3;
  cfg.max_alphabet = 4;
  auto r = enumerate(cfg);
  EXPECT_EQ(r.table.total(4), 0u);
  EXPECT_EQ(r.table.total(3), 4u + 32 + 85);
  EXPECT_EQ(r.above_max, 2u + 7 + 5);
  EXPECT_EQ(r.table.max_alphabet_size(), 4);
}

TEST(Enumerate, RejectsBadConfig) {
  SearchConfig cfg;
  cfg.n = 1;
  EXPECT_THROW(enumerate(cfg), InvalidInput);
  cfg.n = 3;
  cfg.min_sync = 4;
  cfg.max_sync = 3;
  EXPECT_THROW(enumerate(cfg), InvalidInput);
}

TEST(Enumerate, PruningNeverChangesCounts) {
  for (int s = 1; s <= 4; ++s) {
    auto on = run(3, s, true, true);
    auto off = run(3, s, true, false);
    EXPECT_EQ(on.table, off.table) << s;
    EXPECT_LE(on.stats.nodes, off.stats.nodes);
  }
}

TEST(Enumerate, HeuristicNeverChangesCounts) {
  SearchConfig cfg;
  cfg.n = 4;
  cfg.min_sync = 8;
  auto with = enumerate(cfg);
  cfg.heuristic = false;
  auto without = enumerate(cfg);
  EXPECT_EQ(with.table, without.table);
}

TEST(Enumerate, ThreadsNeverChangeCounts) {
  SearchConfig cfg;
  cfg.n = 4;
  cfg.min_sync = 8;
  auto one = enumerate(cfg);
  cfg.threads = 3;
  auto three = enumerate(cfg);
  EXPECT_EQ(one.table, three.table);
  EXPECT_EQ(one.stats.nodes, three.stats.nodes);
}

// Labelled counts equal the sum of orbit sizes n!/|Aut| over classes.
TEST(Enumerate, SymmetryMatchesLabelledCounts) {
  for (auto [n, s] : {std::pair{2, 1}, std::pair{3, 3}}) {
    SearchConfig cfg;
    cfg.n = n;
    cfg.min_sync = s;
    cfg.capture_witnesses = true;
    auto sym = enumerate(cfg);
    cfg.symmetry = false;
    cfg.capture_witnesses = false;
    auto labelled = enumerate(cfg);

    std::uint64_t fact = 1;
    for (int i = 2; i <= n; ++i) fact *= static_cast<std::uint64_t>(i);
    CountTable expected;
    for (const auto& w : sym.witnesses) {
      expected.add(w.dfa.alphabet_size(), w.length, fact / automorphism_count(w.dfa));
    }
    EXPECT_EQ(labelled.table, expected) << n;
    EXPECT_EQ(sym.table.grand_total(), sym.witnesses.size());
  }
}

TEST(Enumerate, WitnessesAreCanonicalAndCorrect) {
  SearchConfig cfg;
  cfg.n = 4;
  cfg.min_sync = 8;
  cfg.capture_witnesses = true;
  auto r = enumerate(cfg);
  std::set<std::vector<Transformation>> seen;
  for (const auto& w : r.witnesses) {
    EXPECT_TRUE(is_basic(w.dfa));
    EXPECT_EQ(canonical_form(w.dfa), w.dfa);
    EXPECT_EQ(shortest_sync_length(w.dfa), w.length);
    EXPECT_TRUE(seen.insert(w.dfa.symbols()).second);
  }
  EXPECT_EQ(r.table.total(8), 447u);
  EXPECT_EQ(r.table.max_alphabet_size(), 8);
}

TEST(Enumerate, NoNodeVisitedTwice) {
  SearchConfig cfg;
  cfg.n = 3;
  cfg.min_sync = 2;
  cfg.record_visits = true;
  auto r = enumerate(cfg);
  std::set<std::vector<std::uint32_t>> unique(r.visits.begin(), r.visits.end());
  EXPECT_EQ(unique.size(), r.visits.size());
  EXPECT_EQ(r.visits.size(), r.stats.nodes);
  // Visited symbol sets are pairwise non-isomorphic.
  std::set<std::vector<Transformation>> classes;
  for (const auto& v : r.visits) {
    std::vector<Transformation> syms;
    for (auto i : v) syms.push_back(Transformation::from_index(3, i));
    EXPECT_TRUE(classes.insert(canonical_form(Dfa(3, syms)).symbols()).second);
  }
}

// Discarded fast synchronizers stay fast under any extension.
TEST(Enumerate, DiscardedSubtreesStayBelowThreshold) {
  std::mt19937_64 rng(17);
  SearchConfig cfg;
  cfg.n = 3;
  cfg.min_sync = 4;
  cfg.record_visits = true;
  auto r = enumerate(cfg);
  int checked = 0;
  for (const auto& v : r.visits) {
    std::vector<Transformation> syms;
    for (auto i : v) syms.push_back(Transformation::from_index(3, i));
    Dfa d(3, syms);
    auto len = shortest_sync_length(d);
    if (!len || *len >= 4) continue;
    for (int e = 0; e < 20; ++e) {
      auto t = Transformation::from_index(3, rng() % 27);
      if (auto l2 = shortest_sync_length(d.with_symbol(t))) {
        EXPECT_LE(*l2, *len);
      }
    }
    ++checked;
  }
  EXPECT_GT(checked, 0);
}

TEST(Heuristic, Ordering) {
  auto c3 = cerny(3);
  Dfa seed = c3.restricted("a");
  std::vector<Transformation> candidates;
  for (std::uint64_t i = 0; i < 27; ++i) {
    auto t = Transformation::from_index(3, i);
    if (!t.is_identity() && t != seed.symbol(0)) candidates.push_back(t);
  }
  ASSERT_EQ(candidates.size(), 25u);
  auto ordered = heuristic_order(seed, candidates);
  ASSERT_EQ(ordered.size(), candidates.size());
  EXPECT_TRUE(std::is_permutation(ordered.begin(), ordered.end(), candidates.begin()));
  for (std::size_t i = 0; i + 1 < ordered.size(); ++i) {
    int a = reducible_pair_count(seed.with_symbol(ordered[i]));
    int b = reducible_pair_count(seed.with_symbol(ordered[i + 1]));
    EXPECT_GE(a, b);
    if (a == b) {
      EXPECT_LT(ordered[i], ordered[i + 1]);
    }
  }
  // b merges a pair and completes synchronization with a; permutations come last.
  EXPECT_EQ(reducible_pair_count(seed.with_symbol(ordered.front())), 3);
  EXPECT_TRUE(ordered.back().is_permutation());
}

TEST(Checkpoint, ResumeMatchesStraightRun) {
  auto path = temp_path("resume");
  SearchConfig cfg;
  cfg.n = 3;
  cfg.min_sync = 3;
  cfg.split_depth = 2;
  auto straight = enumerate(cfg);

  cfg.checkpoint_path = path.string();
  std::mt19937_64 rng(23);
  std::size_t runs = 0;
  SearchResult r;
  do {
    cfg.stop_after_tasks = 1 + rng() % 7;
    r = enumerate(cfg);
    ++runs;
    ASSERT_LT(runs, 1000u);
  } while (!r.complete);
  EXPECT_GT(runs, 1u);
  EXPECT_EQ(r.table, straight.table);
  EXPECT_EQ(r.table.to_csv(3, 4), straight.table.to_csv(3, 4));

  // Finished checkpoint: nothing left to do, same answer.
  cfg.stop_after_tasks.reset();
  auto again = enumerate(cfg);
  EXPECT_TRUE(again.complete);
  EXPECT_EQ(again.table, straight.table);
  EXPECT_LE(again.stats.nodes, straight.stats.nodes);
  fs::remove(path);
}

TEST(Checkpoint, WitnessesSurviveResume) {
  auto path = temp_path("witness");
  SearchConfig cfg;
  cfg.n = 3;
  cfg.min_sync = 4;
  cfg.capture_witnesses = true;
  auto straight = enumerate(cfg);
  cfg.checkpoint_path = path.string();
  cfg.stop_after_tasks = 3;
  SearchResult r;
  do {
    r = enumerate(cfg);
  } while (!r.complete);
  std::set<std::vector<Transformation>> a, b;
  for (const auto& w : straight.witnesses) a.insert(w.dfa.symbols());
  for (const auto& w : r.witnesses) b.insert(w.dfa.symbols());
  EXPECT_EQ(a, b);
  fs::remove(path);
}

TEST(Checkpoint, EmptyFileStartsFresh) {
  auto path = temp_path("empty");
  { std::ofstream(path.string()); }
  SearchConfig cfg;
  cfg.n = 3;
  cfg.min_sync = 4;
  cfg.checkpoint_path = path.string();
  auto r = enumerate(cfg);
  EXPECT_TRUE(r.complete);
  EXPECT_EQ(r.table.total(4), 15u);
  fs::remove(path);
}

TEST(Checkpoint, Errors) {
  auto path = temp_path("bad");
  SearchConfig cfg;
  cfg.n = 3;
  cfg.min_sync = 4;
  cfg.checkpoint_path = path.string();

  { std::ofstream(path.string()) << "{ not json"; }
  EXPECT_THROW(enumerate(cfg), CheckpointError);

  fs::remove(path);
  enumerate(cfg);
  SearchConfig other = cfg;
  other.min_sync = 3;
  EXPECT_THROW(enumerate(other), CheckpointError);

  other = cfg;
  other.split_depth = 3;
  EXPECT_THROW(enumerate(other), CheckpointError);

  std::string text;
  {
    std::ifstream in(path.string());
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  auto pos = text.find("\"version\":");
  ASSERT_NE(pos, std::string::npos);
  text.insert(pos + 10, "9");
  { std::ofstream(path.string()) << text; }
  EXPECT_THROW(enumerate(cfg), CheckpointError);
  fs::remove(path);
}

TEST(CountTable, CsvLayout) {
  CountTable t;
  t.add(2, 4, 2);
  t.add(3, 4, 7);
  t.add(3, 3, 32);
  EXPECT_EQ(t.to_csv(3, 4), "alphabet_size,sync_4,sync_3\n1,0,0\n2,2,0\n3,7,32\ntotal,9,32\n");
  EXPECT_EQ(t.total(4), 9u);
  EXPECT_EQ(t.grand_total(), 41u);
  CountTable u;
  u.add(2, 4, 1);
  t.merge(u);
  EXPECT_EQ(t.at(2, 4), 3u);
}
