#include "slowsync/canonical.hpp"

#include <algorithm>

namespace slowsync {

namespace {

std::vector<Transformation> relabel_sorted(const Dfa& dfa, const std::vector<State>& perm) {
  std::vector<Transformation> out;
  out.reserve(dfa.symbols().size());
  for (const auto& t : dfa.symbols()) out.push_back(t.relabeled(perm));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

Dfa canonical_form(const Dfa& dfa) {
  std::vector<Transformation> best;
  bool first = true;
  for_each_permutation(dfa.states(), [&](const std::vector<State>& perm) {
    auto cand = relabel_sorted(dfa, perm);
    if (first || cand < best) {
      best = std::move(cand);
      first = false;
    }
  });
  return Dfa(dfa.states(), std::move(best));
}

bool isomorphic(const Dfa& a, const Dfa& b) {
  if (a.states() != b.states() || a.alphabet_size() != b.alphabet_size()) return false;
  return canonical_form(a) == canonical_form(b);
}

std::uint64_t automorphism_count(const Dfa& dfa) {
  auto base = relabel_sorted(dfa, [&] {
    std::vector<State> id(static_cast<std::size_t>(dfa.states()));
    for (int q = 0; q < dfa.states(); ++q) id[q] = static_cast<State>(q);
    return id;
  }());
  std::uint64_t count = 0;
  for_each_permutation(dfa.states(), [&](const std::vector<State>& perm) {
    if (relabel_sorted(dfa, perm) == base) ++count;
  });
  return count;
}

}  // namespace slowsync
