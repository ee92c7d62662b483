#include "slowsync/cerny_extension.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "slowsync/families.hpp"
#include "slowsync/powerset.hpp"

namespace slowsync {

namespace {

constexpr Symbol kA = 0;
constexpr Symbol kB = 1;
constexpr Symbol kC = 2;

// The constructions below follow 1-based state arithmetic; these helpers
// convert at the boundary.
int img1(const Transformation& c, int q) { return c(q - 1) + 1; }

StateSet range1(int lo, int hi) { return StateSet::interval(lo - 1, hi - 1); }

StateSet all_but1(int n, std::initializer_list<int> missing) {
  StateSet s = StateSet::full(n);
  for (int q : missing) s.erase(q - 1);
  return s;
}

bool is_trivial(const Transformation& c) {
  const Dfa cn = cerny(c.size());
  return c.is_identity() || c == cn.symbol(kA) || c == cn.symbol(kB);
}

std::optional<int> first_jump(const Transformation& c, int from) {
  for (int q = from; q <= c.size(); ++q) {
    if (img1(c, q) >= q + 2) return q;
  }
  return std::nullopt;
}

// Loops laid out consecutively over {first..n}; throws if c does not have
// that shape there.
LoopStructure decompose_from(const Transformation& c, int first) {
  const int n = c.size();
  LoopStructure loops;
  int start = first;
  while (start <= n) {
    int end = start;
    while (end < n && img1(c, end) == end + 1) ++end;
    if (img1(c, end) != start) throw InvalidInput("symbol does not have a loop structure");
    loops.lengths.push_back(end - start + 1);
    start = end + 1;
  }
  loops.loop_count = static_cast<int>(loops.lengths.size());
  return loops;
}

StateSet image_of_all(const Transformation& c) { return image(c, StateSet::full(c.size())); }

struct PermutationCase {
  ExtensionCase tag;
  int k = 0;  // 0-based loop index used by the construction
};

PermutationCase permutation_case(const LoopStructure& loops) {
  const int count = loops.loop_count;
  for (int i = 0; i < count; ++i) {
    if (count >= 2 && loops.lengths[i] >= 3) return {ExtensionCase::kPermutationLongLoop, i};
  }
  if (count >= 3) {
    for (int i = 0; i + 1 < count; ++i) {
      if (loops.lengths[i] == 2) return {ExtensionCase::kPermutationInnerTwoLoop, i};
    }
    if (loops.lengths.back() == 2) return {ExtensionCase::kPermutationLastTwoLoop, count - 1};
  }
  return {ExtensionCase::kResidual, 0};
}

struct Segment {
  StateSet from;
  StateSet target;
  Word word;
};

Segment permutation_segment(int n, const LoopStructure& loops, PermutationCase pc) {
  const auto& l = loops.lengths;
  auto sum = [&](int lo, int hi) {
    int s = 0;
    for (int i = lo; i < hi; ++i) s += l[i];
    return s;
  };
  Segment seg;
  switch (pc.tag) {
    case ExtensionCase::kPermutationLongLoop: {
      const int lk = l[pc.k];
      const int before = sum(0, pc.k);
      const int after = sum(pc.k + 1, loops.loop_count);
      seg.from = range1(2, n - lk + 3);
      seg.target = range1(2, n - lk + 1);
      seg.word.append_letter(kA, lk - 1).append_letter(kB).append_letter(kA, before)
          .append_letter(kC, lk - 1).append_letter(kA, after).append_letter(kB);
      break;
    }
    case ExtensionCase::kPermutationInnerTwoLoop: {
      const int before = sum(0, pc.k);
      const int after = sum(pc.k + 2, loops.loop_count);
      const int rest = before + after;
      seg.from = range1(2, rest + 3);
      seg.target = range1(2, rest + 1);
      seg.word.append_letter(kA, l[pc.k] + l[pc.k + 1] - 1).append_letter(kB).append_letter(kA, before)
          .append_letter(kC).append_letter(kA, after).append_letter(kB);
      break;
    }
    case ExtensionCase::kPermutationLastTwoLoop:
      seg.from = range1(2, n);
      seg.target = range1(2, n - 2);
      seg.word.append_letter(kA, 2).append_letter(kB).append_letter(kA, n - 3)
          .append_letter(kC).append_letter(kA).append_letter(kB);
      break;
    default:
      throw std::logic_error("no permutation construction for this loop structure");
  }
  return seg;
}

// Largest state q >= lowest missing from s (1-based).
int largest_missing(int n, StateSet s, int lowest) {
  for (int q = n; q >= lowest; --q) {
    if (!s.contains(q - 1)) return q;
  }
  throw std::logic_error("expected a missing state");
}

Segment segment_for(const Transformation& c, ExtensionCase tag) {
  const int n = c.size();
  Segment seg;
  const StateSet all = StateSet::full(n);
  switch (tag) {
    case ExtensionCase::kPermutationJump:
    case ExtensionCase::kDeficientJump: {
      const int q = *first_jump(c, tag == ExtensionCase::kPermutationJump ? 1 : 2);
      seg.from = all_but1(n, {q});
      seg.target = all_but1(n, {img1(c, q)});
      seg.word.append_letter(kC);
      return seg;
    }
    case ExtensionCase::kPermutationLongLoop:
    case ExtensionCase::kPermutationInnerTwoLoop:
    case ExtensionCase::kPermutationLastTwoLoop: {
      const auto loops = loop_decomposition(c);
      return permutation_segment(n, loops, permutation_case(loops));
    }
    case ExtensionCase::kMissesOtherState: {
      seg.from = all;
      seg.target = image_of_all(c);
      seg.word.append_letter(kC);
      return seg;
    }
    case ExtensionCase::kSquareMissesOneTwo:
      seg.from = all;
      seg.target = all_but1(n, {1, 2});
      seg.word.append_letter(kC, 2);
      return seg;
    case ExtensionCase::kSquareMissesHighState: {
      const StateSet sq = image(c, image_of_all(c));
      seg.from = all;
      seg.target = all_but1(n, {largest_missing(n, sq, 3)});
      seg.word.append_letter(kC, 2);
      return seg;
    }
    case ExtensionCase::kFirstStateNotToTwo: {
      int pre = 0;
      for (int q = 2; q <= n; ++q) {
        if (img1(c, q) == 2) pre = q;
      }
      seg.from = all_but1(n, {pre});
      seg.target = all_but1(n, {1, 2});
      seg.word.append_letter(kC);
      return seg;
    }
    case ExtensionCase::kDeficientFirstLoopLong: {
      const int l1 = loop_decomposition(c).lengths.front();
      seg.from = all_but1(n, {l1});
      seg.target = all_but1(n, {1, 2});
      seg.word.append_letter(kC, 2);
      return seg;
    }
    case ExtensionCase::kDeficientLift: {
      // The permutation agreeing with c off state 1 and fixing 1; its
      // construction carries over with c in place of the permutation.
      std::vector<State> lifted(c.images().begin(), c.images().end());
      lifted[0] = 0;
      const Transformation perm(lifted);
      const auto loops = loop_decomposition(perm);
      return permutation_segment(n, loops, permutation_case(loops));
    }
    case ExtensionCase::kDeficiencyTwoOrMore:
      seg.from = all;
      seg.target = all_but1(n, {largest_missing(n, image_of_all(c), 2)});
      seg.word.append_letter(kC);
      return seg;
    case ExtensionCase::kResidual:
      break;
  }
  throw std::logic_error("no construction for case " + std::string(case_name(tag)));
}

}  // namespace

std::string_view case_name(ExtensionCase c) {
  switch (c) {
    case ExtensionCase::kPermutationJump: return "permutation/jump";
    case ExtensionCase::kPermutationLongLoop: return "permutation/long-loop";
    case ExtensionCase::kPermutationInnerTwoLoop: return "permutation/inner-2-loop";
    case ExtensionCase::kPermutationLastTwoLoop: return "permutation/last-2-loop";
    case ExtensionCase::kMissesOtherState: return "deficiency-1/misses-q";
    case ExtensionCase::kSquareMissesOneTwo: return "deficiency-1/square-misses-1-2";
    case ExtensionCase::kSquareMissesHighState: return "deficiency-1/square-misses-high";
    case ExtensionCase::kFirstStateNotToTwo: return "deficiency-1/1c-not-2";
    case ExtensionCase::kDeficientJump: return "deficiency-1/jump";
    case ExtensionCase::kDeficientFirstLoopLong: return "deficiency-1/first-loop-long";
    case ExtensionCase::kDeficientLift: return "deficiency-1/lift";
    case ExtensionCase::kDeficiencyTwoOrMore: return "deficiency-2+";
    case ExtensionCase::kResidual: return "residual";
  }
  return "?";
}

Classification classify(const Transformation& c) {
  const int n = c.size();
  if (n < 2) throw InvalidInput("extension symbols need n >= 2");
  if (is_trivial(c)) throw InvalidInput("trivial extension symbol");
  Classification out;
  out.deficiency = c.deficiency();
  if (out.deficiency == 0) {
    if (first_jump(c, 1)) {
      out.tag = ExtensionCase::kPermutationJump;
    } else {
      out.tag = permutation_case(loop_decomposition(c)).tag;
    }
    return out;
  }
  if (out.deficiency >= 2) {
    out.tag = ExtensionCase::kDeficiencyTwoOrMore;
    return out;
  }
  const StateSet img = image_of_all(c);
  if (img.contains(0)) {
    out.tag = ExtensionCase::kMissesOtherState;
    return out;
  }
  const StateSet sq = image(c, img);
  if (sq.size() <= n - 2) {
    out.tag = sq == all_but1(n, {1, 2}) ? ExtensionCase::kSquareMissesOneTwo
                                        : ExtensionCase::kSquareMissesHighState;
    return out;
  }
  if (img1(c, 1) != 2) {
    out.tag = ExtensionCase::kFirstStateNotToTwo;
  } else if (first_jump(c, 2)) {
    out.tag = ExtensionCase::kDeficientJump;
  } else {
    const auto loops = loop_decomposition(c);
    out.tag = loops.lengths.front() >= 2 ? ExtensionCase::kDeficientFirstLoopLong
                                         : ExtensionCase::kDeficientLift;
  }
  return out;
}

LoopStructure loop_decomposition(const Transformation& c) {
  const int n = c.size();
  if (c.is_permutation()) return decompose_from(c, 1);
  if (c.deficiency() == 1 && !image_of_all(c).contains(0) && img1(c, 1) == 2) {
    return decompose_from(c, 2);
  }
  throw InvalidInput("symbol of size " + std::to_string(n) + " does not have a loop structure");
}

Transformation transformation_from_loops(int n, const LoopStructure& loops, bool deficient) {
  int total = 0;
  for (int l : loops.lengths) {
    if (l < 1) throw InvalidInput("loop lengths must be positive");
    total += l;
  }
  const int first = deficient ? 2 : 1;
  if (total != n - first + 1 || loops.loop_count != static_cast<int>(loops.lengths.size())) {
    throw InvalidInput("loop lengths do not cover the states");
  }
  std::vector<State> img(n);
  if (deficient) img[0] = 1;
  int start = first;
  for (int l : loops.lengths) {
    const int end = start + l - 1;
    for (int q = start; q < end; ++q) img[q - 1] = static_cast<State>(q);
    img[end - 1] = static_cast<State>(start - 1);
    start = end + 1;
  }
  return Transformation(img);
}

Dfa cerny_extension(const Transformation& c) { return cerny(c.size()).with_symbol(c); }

namespace {

ShorterWordPlan splice(const Transformation& c, ExtensionCase tag, const Segment& seg) {
  const int n = c.size();
  const Dfa dfa = cerny_extension(c);
  const PowerAutomaton power(dfa);
  if (!power.apply(seg.from, seg.word).subset_of(seg.target)) {
    throw std::logic_error("construction for " + std::string(case_name(tag)) +
                           " does not reach its target set");
  }

  // Locate both sets on the shortest synchronizing path of C_n.
  const Word path_word = cerny_word(n);
  std::vector<StateSet> path{StateSet::full(n)};
  for (Symbol x : path_word.letters()) path.push_back(power.step(path.back(), x));
  auto pos_from = std::find(path.begin(), path.end(), seg.from);
  auto pos_target = pos_from == path.end() ? path.end() : std::find(pos_from, path.end(), seg.target);
  if (pos_target == path.end()) {
    throw std::logic_error("construction sets are not on the shortest synchronizing path");
  }
  const auto i = static_cast<std::size_t>(pos_from - path.begin());
  const auto j = static_cast<std::size_t>(pos_target - path.begin());

  ShorterWordPlan plan;
  plan.tag = tag;
  plan.from = seg.from;
  plan.target = seg.target;
  plan.word = seg.word;
  plan.baseline_distance = static_cast<int>(j - i);
  std::vector<Symbol> letters(path_word.letters().begin(), path_word.letters().begin() + static_cast<long>(i));
  letters.insert(letters.end(), seg.word.letters().begin(), seg.word.letters().end());
  letters.insert(letters.end(), path_word.letters().begin() + static_cast<long>(j), path_word.letters().end());
  plan.sync_word = Word(std::move(letters));

  if (static_cast<int>(plan.word.size()) >= plan.baseline_distance) {
    throw std::logic_error("construction is not shorter than the path segment");
  }
  if (!power.apply(StateSet::full(n), plan.sync_word).is_singleton()) {
    throw std::logic_error("spliced word does not synchronize");
  }
  return plan;
}

}  // namespace

ShorterWordPlan build_shorter_word(const Transformation& c) {
  if (c.size() < kFamilyMinStates) throw InvalidInput("constructions need n >= 5");
  const auto cls = classify(c);
  return splice(c, cls.tag, segment_for(c, cls.tag));
}

ShorterWordPlan build_shorter_word(const Transformation& c, int loop_index) {
  const int n = c.size();
  if (n < kFamilyMinStates) throw InvalidInput("constructions need n >= 5");
  if (classify(c).deficiency != 0) throw InvalidInput("loop choice needs a permutation");
  const auto loops = loop_decomposition(c);
  if (loops.loop_count < 2 || loop_index < 0 || loop_index >= loops.loop_count ||
      loops.lengths[static_cast<std::size_t>(loop_index)] < 3) {
    throw InvalidInput("loop " + std::to_string(loop_index + 1) + " is not a loop of length >= 3");
  }
  const PermutationCase pc{ExtensionCase::kPermutationLongLoop, loop_index};
  return splice(c, pc.tag, permutation_segment(n, loops, pc));
}

ExtensionReport verify_no_critical_extension(int n, ExtensionVerifyOptions options) {
  if (n < 2 || n > kMaxExtensionStates) {
    throw InvalidInput("extension check supports 2 <= n <= " + std::to_string(kMaxExtensionStates));
  }
  if (options.threads < 1) throw InvalidInput("threads must be >= 1");
  std::uint64_t total = 1;
  for (int i = 0; i < n; ++i) total *= static_cast<std::uint64_t>(n);
  const int critical = (n - 1) * (n - 1);
  const bool constructive = options.constructive && n >= kFamilyMinStates;

  ExtensionReport report;
  report.n = n;
  report.total_maps = total;
  std::mutex mutex;
  std::atomic<std::uint64_t> next{0};
  constexpr std::uint64_t kChunk = 4096;
  std::vector<std::vector<ExtensionRow>> chunk_rows(options.keep_rows ? (total + kChunk - 1) / kChunk : 0);

  auto worker = [&] {
    const Dfa base = cerny(n);
    for (;;) {
      const std::uint64_t begin = next.fetch_add(kChunk);
      if (begin >= total) return;
      const std::uint64_t end = std::min(total, begin + kChunk);
      ExtensionReport local;
      std::vector<ExtensionRow> rows;
      for (std::uint64_t idx = begin; idx < end; ++idx) {
        const Transformation c = Transformation::from_index(n, idx);
        if (c.is_identity() || c == base.symbol(kA) || c == base.symbol(kB)) {
          ++local.trivial_skipped;
          continue;
        }
        ++local.checked;
        ExtensionRow row{c, classify(c).tag, 0, -1};
        const auto length = shortest_sync_length(PowerAutomaton(base.with_symbol(c)));
        row.bfs_length = length ? *length : -1;
        if (!length || *length >= critical) {
          local.all_below = false;
          local.counterexamples.push_back(c);
        }
        if (length) local.max_length_found = std::max(local.max_length_found, *length);
        ++local.case_counts[row.tag];
        if (constructive) {
          ++local.constructive_checked;
          try {
            const auto plan = build_shorter_word(c);
            row.plan_length = static_cast<int>(plan.sync_word.size());
            if (!length || *length > row.plan_length || row.plan_length >= critical) {
              ++local.constructive_failures;
            }
          } catch (const std::logic_error&) {
            ++local.constructive_failures;
          }
        }
        if (options.keep_rows) rows.push_back(row);
      }
      std::lock_guard lock(mutex);
      report.trivial_skipped += local.trivial_skipped;
      report.checked += local.checked;
      report.all_below = report.all_below && local.all_below;
      report.max_length_found = std::max(report.max_length_found, local.max_length_found);
      report.constructive_checked += local.constructive_checked;
      report.constructive_failures += local.constructive_failures;
      for (const auto& [tag, count] : local.case_counts) report.case_counts[tag] += count;
      report.counterexamples.insert(report.counterexamples.end(), local.counterexamples.begin(),
                                    local.counterexamples.end());
      if (options.keep_rows) chunk_rows[begin / kChunk] = std::move(rows);
    }
  };

  if (options.threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < options.threads; ++t) pool.emplace_back(worker);
  }
  std::sort(report.counterexamples.begin(), report.counterexamples.end());
  for (auto& rows : chunk_rows) {
    for (auto& r : rows) report.rows.push_back(std::move(r));
  }
  return report;
}

}  // namespace slowsync
