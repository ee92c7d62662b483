#include "slowsync/extension_bound.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <queue>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/strong_components.hpp>

#include "slowsync/powerset.hpp"

namespace slowsync {

namespace {

constexpr int kInf = std::numeric_limits<int>::max();

using Graph = boost::adjacency_list<boost::vecS, boost::vecS, boost::directedS>;

// BFS distances inside one component, using only edges between its members.
int component_diameter(const std::vector<std::vector<int>>& adj, const std::vector<int>& comp_of,
                       const std::vector<int>& members, int comp) {
  int diameter = 0;
  std::vector<int> dist(adj.size(), -1);
  std::queue<int> queue;
  for (int src : members) {
    for (int v : members) dist[v] = -1;
    dist[src] = 0;
    queue.push(src);
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop();
      diameter = std::max(diameter, dist[u]);
      for (int v : adj[u]) {
        if (comp_of[v] != comp || dist[v] >= 0) continue;
        dist[v] = dist[u] + 1;
        queue.push(v);
      }
    }
  }
  return diameter;
}

SizeClassBound bound_for_size(const PowerAutomaton& power, int size, ExtensionBoundOptions options) {
  const int k = power.alphabet_size();
  std::vector<std::uint32_t> sets;
  for (std::uint32_t s = 0; s < power.subset_count(); ++s) {
    if (std::popcount(s) == size) sets.push_back(s);
  }
  std::vector<int> local(power.subset_count(), -1);
  for (std::size_t i = 0; i < sets.size(); ++i) local[sets[i]] = static_cast<int>(i);

  // Shortest reduction word lengths by backward BFS from sets some symbol
  // shrinks.
  const int count = static_cast<int>(sets.size());
  std::vector<std::vector<int>> forward(count), backward(count);
  std::vector<int> reduce(count, kInf);
  std::queue<int> queue;
  for (int i = 0; i < count; ++i) {
    for (int x = 0; x < k; ++x) {
      StateSet img = power.step(StateSet(sets[i]), static_cast<Symbol>(x));
      if (img.size() < size) {
        if (reduce[i] == kInf) {
          reduce[i] = 1;
          queue.push(i);
        }
      } else {
        int j = local[img.bits()];
        forward[i].push_back(j);
        backward[j].push_back(i);
      }
    }
  }
  while (!queue.empty()) {
    int j = queue.front();
    queue.pop();
    for (int i : backward[j]) {
      if (reduce[i] != kInf) continue;
      reduce[i] = reduce[j] + 1;
      queue.push(i);
    }
  }

  SizeClassBound out;
  out.size = size;
  std::vector<int> irreducible;
  for (int i = 0; i < count; ++i) {
    if (reduce[i] == kInf) {
      irreducible.push_back(i);
    } else {
      ++out.reducible_sets;
      out.longest_reduction = std::max(out.longest_reduction, reduce[i]);
    }
  }
  out.irreducible_sets = static_cast<int>(irreducible.size());
  if (irreducible.empty()) return out;

  // Images of irreducible sets are irreducible, so forward edges of
  // irreducible nodes stay inside the subgraph.
  std::vector<int> node_of(count, -1);
  for (std::size_t i = 0; i < irreducible.size(); ++i) node_of[irreducible[i]] = static_cast<int>(i);
  const int nodes = static_cast<int>(irreducible.size());
  Graph graph(nodes);
  std::vector<std::vector<int>> adj(nodes);
  std::vector<bool> self_loop(nodes, false);
  for (int u = 0; u < nodes; ++u) {
    for (int j : forward[irreducible[u]]) {
      int v = node_of[j];
      adj[u].push_back(v);
      boost::add_edge(u, v, graph);
      if (u == v) self_loop[u] = true;
    }
  }
  std::vector<int> comp_of(nodes);
  const int comps = static_cast<int>(boost::strong_components(graph, comp_of.data()));
  std::vector<std::vector<int>> members(comps);
  for (int u = 0; u < nodes; ++u) members[comp_of[u]].push_back(u);

  for (int c = 0; c < comps; ++c) {
    const auto& m = members[c];
    const bool trivial = m.size() == 1 && !self_loop[m.front()];
    if (options.count_trivial_components || !trivial) ++out.components;
    out.components_plus_diameters += component_diameter(adj, comp_of, m, c);
  }
  out.components_plus_diameters += out.components;
  return out;
}

}  // namespace

ExtensionBound extension_bound(const Dfa& dfa, ExtensionBoundOptions options) {
  PowerAutomaton power(dfa);
  const int n = dfa.states();
  ExtensionBound bound;

  // Step 1: reachable subsets from Q.
  std::vector<int> dist(power.subset_count(), -1);
  const std::uint32_t start = StateSet::full(n).bits();
  dist[start] = 0;
  std::queue<std::uint32_t> queue;
  queue.push(start);
  bound.smallest_size = n;
  bound.distance_to_smallest = 0;
  while (!queue.empty()) {
    std::uint32_t cur = queue.front();
    queue.pop();
    const int sz = std::popcount(cur);
    if (sz < bound.smallest_size) {
      bound.smallest_size = sz;
      bound.distance_to_smallest = dist[cur];
    }
    for (int x = 0; x < power.alphabet_size(); ++x) {
      std::uint32_t img = power.step(StateSet(cur), static_cast<Symbol>(x)).bits();
      if (dist[img] >= 0) continue;
      dist[img] = dist[cur] + 1;
      queue.push(img);
    }
  }

  // Steps 2-4.
  bound.total = bound.distance_to_smallest;
  for (int size = 2; size <= bound.smallest_size; ++size) {
    auto cls = bound_for_size(power, size, options);
    bound.total += cls.components_plus_diameters + cls.longest_reduction;
    bound.per_size.push_back(cls);
  }
  return bound;
}

}  // namespace slowsync
