#include "slowsync/powerset.hpp"

#include <algorithm>
#include <limits>

namespace slowsync {

namespace {

constexpr std::uint16_t kUnvisited = std::numeric_limits<std::uint16_t>::max();

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a + b;
  return s < a ? std::numeric_limits<std::uint64_t>::max() : s;
}

}  // namespace

PowerAutomaton::PowerAutomaton(const Dfa& dfa) : n_(dfa.states()), k_(dfa.alphabet_size()) {
  const std::uint32_t subsets = subset_count();
  table_.assign(static_cast<std::size_t>(k_) * subsets, 0);
  for (int x = 0; x < k_; ++x) {
    const auto& t = dfa.symbols()[x];
    auto* row = table_.data() + static_cast<std::size_t>(x) * subsets;
    for (std::uint32_t s = 1; s < subsets; ++s) {
      const std::uint32_t low = s & (0U - s);
      row[s] = static_cast<std::uint16_t>(row[s ^ low] | (1U << t(std::countr_zero(low))));
    }
  }
}

StateSet PowerAutomaton::apply(StateSet s, const Word& w) const {
  for (Symbol x : w.letters()) {
    if (x >= k_) throw InvalidInput("symbol index out of range");
    s = step(s, x);
  }
  return s;
}

StateSet step_set(const Dfa& dfa, StateSet s, Symbol x) {
  if (x >= dfa.alphabet_size()) throw InvalidInput("symbol index out of range");
  return image(dfa.symbols()[x], s);
}

StateSet apply_set(const Dfa& dfa, StateSet s, const Word& w) {
  for (Symbol x : w.letters()) s = step_set(dfa, s, x);
  return s;
}

std::optional<SyncResult> shortest_sync(const Dfa& dfa) { return shortest_sync(PowerAutomaton(dfa)); }

std::optional<SyncResult> shortest_sync(const PowerAutomaton& power) {
  const int n = power.states();
  const int k = power.alphabet_size();
  const StateSet start = StateSet::full(n);
  if (start.is_singleton()) return SyncResult{0, Word{}, 1, start};

  std::vector<std::uint16_t> dist(power.subset_count(), kUnvisited);
  std::vector<std::uint64_t> paths(power.subset_count(), 0);
  std::vector<std::uint16_t> parent(power.subset_count(), 0);
  std::vector<Symbol> via(power.subset_count(), 0);

  dist[start.bits()] = 0;
  paths[start.bits()] = 1;
  std::vector<std::uint16_t> frontier{static_cast<std::uint16_t>(start.bits())};
  std::vector<std::uint16_t> next;
  for (std::uint16_t level = 0; !frontier.empty(); ++level) {
    next.clear();
    for (std::uint16_t cur : frontier) {
      for (int x = 0; x < k; ++x) {
        const auto img = static_cast<std::uint16_t>(power.step(StateSet(cur), static_cast<Symbol>(x)).bits());
        if (dist[img] == kUnvisited) {
          dist[img] = static_cast<std::uint16_t>(level + 1);
          parent[img] = cur;
          via[img] = static_cast<Symbol>(x);
          next.push_back(img);
        }
        if (dist[img] == level + 1) paths[img] = saturating_add(paths[img], paths[cur]);
      }
    }
    SyncResult result;
    bool found = false;
    for (std::uint16_t s : next) {
      if (!std::has_single_bit(static_cast<unsigned>(s))) continue;
      if (!found) {
        result.length = level + 1;
        std::vector<Symbol> letters;
        for (std::uint16_t v = s; v != start.bits(); v = parent[v]) letters.push_back(via[v]);
        std::reverse(letters.begin(), letters.end());
        result.witness = Word(std::move(letters));
        found = true;
      }
      result.count = saturating_add(result.count, paths[s]);
      result.sync_states.insert(std::countr_zero(static_cast<unsigned>(s)));
    }
    if (found) return result;
    frontier.swap(next);
  }
  return std::nullopt;
}

std::optional<int> shortest_sync_length(const PowerAutomaton& power) {
  const int n = power.states();
  const int k = power.alphabet_size();
  const StateSet start = StateSet::full(n);
  if (start.is_singleton()) return 0;
  std::vector<std::uint8_t> seen(power.subset_count(), 0);
  seen[start.bits()] = 1;
  std::vector<std::uint32_t> frontier{start.bits()};
  std::vector<std::uint32_t> next;
  for (int level = 0; !frontier.empty(); ++level) {
    next.clear();
    for (std::uint32_t cur : frontier) {
      for (int x = 0; x < k; ++x) {
        const std::uint32_t img = power.step(StateSet(cur), static_cast<Symbol>(x)).bits();
        if (seen[img]) continue;
        if (std::has_single_bit(img)) return level + 1;
        seen[img] = 1;
        next.push_back(img);
      }
    }
    frontier.swap(next);
  }
  return std::nullopt;
}

std::optional<int> shortest_sync_length(const Dfa& dfa) {
  return shortest_sync_length(PowerAutomaton(dfa));
}

int reducible_pair_count(const Dfa& dfa) {
  const int n = dfa.states();
  auto id = [n](int p, int q) { return p * n + q; };
  std::vector<std::uint8_t> reducible(static_cast<std::size_t>(n) * n, 0);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        if (reducible[id(p, q)]) continue;
        for (const auto& t : dfa.symbols()) {
          int a = t(p), b = t(q);
          if (a > b) std::swap(a, b);
          if (a == b || reducible[id(a, b)]) {
            reducible[id(p, q)] = 1;
            changed = true;
            break;
          }
        }
      }
    }
  }
  return static_cast<int>(std::count(reducible.begin(), reducible.end(), 1));
}

bool is_synchronizing_by_pairs(const Dfa& dfa) {
  const int n = dfa.states();
  return reducible_pair_count(dfa) == n * (n - 1) / 2;
}

}  // namespace slowsync
