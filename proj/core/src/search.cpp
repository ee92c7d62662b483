#include "slowsync/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "slowsync/canonical.hpp"
#include "slowsync/powerset.hpp"

namespace slowsync {

namespace {

constexpr int kCheckpointVersion = 1;
constexpr int kMaxSearchStates = 7;
// n! * n^n entries; above this the relabeling is computed on the fly.
constexpr std::size_t kRelabelCacheLimit = std::size_t{1} << 22;

using Node = std::vector<std::uint32_t>;

class Universe {
 public:
  explicit Universe(int n) : n_(n) {
    std::uint32_t count = 1;
    for (int i = 0; i < n; ++i) count *= static_cast<std::uint32_t>(n);
    all_.reserve(count);
    for (std::uint32_t i = 0; i < count; ++i) all_.push_back(Transformation::from_index(n, i));
    identity_ = static_cast<std::uint32_t>(Transformation::identity(n).index());
    for_each_permutation(n, [&](const std::vector<State>& p) {
      if (!std::is_sorted(p.begin(), p.end())) perms_.push_back(p);
    });
    if (perms_.size() * all_.size() <= kRelabelCacheLimit) {
      relabel_.resize(perms_.size() * all_.size());
      for (std::size_t p = 0; p < perms_.size(); ++p) {
        for (std::uint32_t i = 0; i < count; ++i) {
          relabel_[p * count + i] = static_cast<std::uint32_t>(all_[i].relabeled(perms_[p]).index());
        }
      }
    }
  }

  int n() const { return n_; }
  std::uint32_t count() const { return static_cast<std::uint32_t>(all_.size()); }
  std::uint32_t identity() const { return identity_; }
  std::size_t permutations() const { return perms_.size(); }
  const Transformation& at(std::uint32_t i) const { return all_[i]; }

  std::uint32_t relabel(std::size_t p, std::uint32_t i) const {
    if (!relabel_.empty()) return relabel_[p * all_.size() + i];
    return static_cast<std::uint32_t>(all_[i].relabeled(perms_[p]).index());
  }

  Dfa dfa(const Node& node) const {
    std::vector<Transformation> syms;
    syms.reserve(node.size());
    for (auto i : node) syms.push_back(all_[i]);
    return Dfa(n_, std::move(syms));
  }

 private:
  int n_;
  std::vector<Transformation> all_;
  std::uint32_t identity_ = 0;
  std::vector<std::vector<State>> perms_;
  std::vector<std::uint32_t> relabel_;
};

struct Partial {
  CountTable table;
  std::uint64_t above_max = 0;
  std::vector<Witness> witnesses;
  std::vector<Node> visits;
  SearchStats stats;
};

void add_stats(SearchStats& into, const SearchStats& s) {
  into.nodes += s.nodes;
  into.canonical_rejects += s.canonical_rejects;
  into.pruned_fast += s.pruned_fast;
  into.pruned_bound += s.pruned_bound;
  into.bound_computations += s.bound_computations;
}

class Explorer {
 public:
  Explorer(const SearchConfig& config, const Universe& universe, Partial& out)
      : config_(config),
        universe_(universe),
        out_(out),
        min_sync_(config.resolved_min_sync()),
        max_alphabet_(config.resolved_max_alphabet()) {}

  void explore(Node& node) {
    if (!visit(node)) return;
    for (auto& child : children(node)) explore(child);
  }

  // Like explore(), but nodes reaching split_size symbols are collected
  // instead of visited.
  void generate(Node& node, std::size_t split_size, std::vector<Node>& tasks) {
    if (!node.empty() && !visit(node)) return;
    for (auto& child : children(node)) {
      if (child.size() >= split_size) {
        tasks.push_back(std::move(child));
      } else {
        generate(child, split_size, tasks);
      }
    }
  }

 private:
  // Records the node and reports whether its extensions must be explored.
  bool visit(const Node& node) {
    ++out_.stats.nodes;
    if (config_.record_visits) out_.visits.push_back(node);
    const Dfa dfa = universe_.dfa(node);
    const auto length = shortest_sync_length(PowerAutomaton(dfa));
    if (length) {
      if (*length < min_sync_) {
        if (config_.pruning) {
          ++out_.stats.pruned_fast;
          return false;
        }
      } else if (config_.max_sync && *length > *config_.max_sync) {
        ++out_.above_max;
      } else {
        out_.table.add(dfa.alphabet_size(), *length);
        if (config_.capture_witnesses) out_.witnesses.push_back({dfa, *length});
      }
    } else if (config_.pruning && static_cast<int>(node.size()) < max_alphabet_) {
      ++out_.stats.bound_computations;
      if (extension_bound(dfa, config_.bound_options).total < min_sync_) {
        ++out_.stats.pruned_bound;
        return false;
      }
    }
    return static_cast<int>(node.size()) < max_alphabet_;
  }

  bool is_canonical(const Node& node) {
    if (!config_.symmetry) return true;
    scratch_.resize(node.size());
    for (std::size_t p = 0; p < universe_.permutations(); ++p) {
      for (std::size_t i = 0; i < node.size(); ++i) scratch_[i] = universe_.relabel(p, node[i]);
      std::sort(scratch_.begin(), scratch_.end());
      if (scratch_ < node) return false;
    }
    return true;
  }

  std::vector<Node> children(Node& node) {
    std::vector<Node> out;
    if (static_cast<int>(node.size()) >= max_alphabet_) return out;
    const std::uint32_t first = node.empty() ? 0 : node.back() + 1;
    for (std::uint32_t i = first; i < universe_.count(); ++i) {
      if (i == universe_.identity()) continue;
      node.push_back(i);
      if (is_canonical(node)) {
        out.push_back(node);
      } else {
        ++out_.stats.canonical_rejects;
      }
      node.pop_back();
    }
    if (config_.heuristic && out.size() > 1) {
      const Dfa base = universe_.dfa(node);
      std::vector<std::pair<int, std::size_t>> keyed;
      keyed.reserve(out.size());
      for (std::size_t j = 0; j < out.size(); ++j) {
        keyed.emplace_back(reducible_pair_count(base.with_symbol(universe_.at(out[j].back()))), j);
      }
      std::stable_sort(keyed.begin(), keyed.end(),
                       [](const auto& a, const auto& b) { return a.first > b.first; });
      std::vector<Node> ordered;
      ordered.reserve(out.size());
      for (const auto& [score, j] : keyed) ordered.push_back(std::move(out[j]));
      out.swap(ordered);
    }
    return out;
  }

  const SearchConfig& config_;
  const Universe& universe_;
  Partial& out_;
  int min_sync_;
  int max_alphabet_;
  Node scratch_;
};

// Progress shared between workers and the checkpoint file.
struct Progress {
  std::vector<bool> done;
  CountTable table;
  std::uint64_t above_max = 0;
  std::map<std::size_t, std::vector<Witness>> witnesses;
};

nlohmann::json config_fingerprint(const SearchConfig& c) {
  return {
      {"n", c.n},
      {"min_sync", c.resolved_min_sync()},
      {"max_sync", c.max_sync ? *c.max_sync : -1},
      {"max_alphabet", c.resolved_max_alphabet()},
      {"symmetry", c.symmetry},
      {"pruning", c.pruning},
      {"heuristic", c.heuristic},
      {"capture_witnesses", c.capture_witnesses},
      {"split_depth", c.split_depth},
      {"count_trivial_components", c.bound_options.count_trivial_components},
  };
}

std::vector<std::uint32_t> symbol_indices(const Dfa& dfa) {
  std::vector<std::uint32_t> out;
  for (const auto& t : dfa.symbols()) out.push_back(static_cast<std::uint32_t>(t.index()));
  return out;
}

void write_checkpoint(const std::string& path, const SearchConfig& config, std::size_t tasks_total,
                      const Progress& progress) {
  nlohmann::json j;
  j["format"] = "slowsync-checkpoint";
  j["version"] = kCheckpointVersion;
  j["config"] = config_fingerprint(config);
  j["tasks_total"] = tasks_total;
  std::string done;
  for (bool b : progress.done) done += b ? '1' : '0';
  j["done"] = done;
  auto cells = nlohmann::json::array();
  for (const auto& [key, count] : progress.table.cells()) cells.push_back({key.first, key.second, count});
  j["table"] = cells;
  j["above_max"] = progress.above_max;
  auto wit = nlohmann::json::array();
  for (const auto& [task, list] : progress.witnesses) {
    for (const auto& w : list) wit.push_back({{"task", task}, {"length", w.length}, {"symbols", symbol_indices(w.dfa)}});
  }
  j["witnesses"] = wit;

  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw CheckpointError("cannot write checkpoint " + tmp);
    out << j.dump() << '\n';
    if (!out) throw CheckpointError("cannot write checkpoint " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw CheckpointError("cannot move checkpoint into place: " + ec.message());
}

// Returns false when there is nothing to resume (missing or empty file).
bool read_checkpoint(const std::string& path, const SearchConfig& config, std::size_t tasks_total,
                     const Universe& universe, Progress& progress) {
  std::ifstream in(path);
  if (!in) return false;
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) return false;
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw CheckpointError("corrupt checkpoint " + path + ": " + e.what());
  }
  try {
    if (j.at("format") != "slowsync-checkpoint") throw CheckpointError("not a checkpoint file: " + path);
    if (j.at("version").get<int>() != kCheckpointVersion) {
      throw CheckpointError("checkpoint version mismatch in " + path);
    }
    if (j.at("config") != config_fingerprint(config)) {
      throw CheckpointError("checkpoint " + path + " was written for a different configuration");
    }
    if (j.at("tasks_total").get<std::size_t>() != tasks_total) {
      throw CheckpointError("checkpoint " + path + " has a different work split");
    }
    const auto done = j.at("done").get<std::string>();
    if (done.size() != tasks_total) throw CheckpointError("corrupt checkpoint " + path);
    for (std::size_t i = 0; i < tasks_total; ++i) progress.done[i] = done[i] == '1';
    for (const auto& cell : j.at("table")) {
      progress.table.add(cell.at(0).get<int>(), cell.at(1).get<int>(), cell.at(2).get<std::uint64_t>());
    }
    progress.above_max = j.at("above_max").get<std::uint64_t>();
    for (const auto& w : j.at("witnesses")) {
      Node node = w.at("symbols").get<Node>();
      for (auto idx : node) {
        if (idx >= universe.count()) throw CheckpointError("corrupt checkpoint " + path);
      }
      progress.witnesses[w.at("task").get<std::size_t>()].push_back(
          {universe.dfa(node), w.at("length").get<int>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw CheckpointError("corrupt checkpoint " + path + ": " + e.what());
  }
  return true;
}

}  // namespace

int default_min_sync(int n) {
  const int e_max = 2 * ((n + 1) / 2) - 1;
  return std::max(1, (n - 1) * (n - 1) - e_max + 1);
}

int SearchConfig::resolved_min_sync() const { return min_sync ? *min_sync : default_min_sync(n); }

int SearchConfig::resolved_max_alphabet() const {
  if (max_alphabet) return *max_alphabet;
  std::int64_t count = 1;
  for (int i = 0; i < n; ++i) count *= n;
  return static_cast<int>(count - 1);
}

SearchResult enumerate(const SearchConfig& config) {
  if (config.n < 2 || config.n > kMaxSearchStates) {
    throw InvalidInput("enumeration supports 2 <= n <= " + std::to_string(kMaxSearchStates));
  }
  if (config.resolved_min_sync() < 1) throw InvalidInput("min_sync must be >= 1");
  if (config.max_sync && *config.max_sync < config.resolved_min_sync()) {
    throw InvalidInput("max_sync below min_sync");
  }
  if (config.resolved_max_alphabet() < 1) throw InvalidInput("max_alphabet must be >= 1");
  if (config.split_depth < 1) throw InvalidInput("split_depth must be >= 1");
  if (config.threads < 1) throw InvalidInput("threads must be >= 1");

  const Universe universe(config.n);

  Partial top;
  std::vector<Node> tasks;
  {
    Explorer explorer(config, universe, top);
    Node root;
    explorer.generate(root, static_cast<std::size_t>(config.split_depth), tasks);
  }

  Progress progress;
  progress.done.assign(tasks.size(), false);
  if (!config.checkpoint_path.empty()) {
    read_checkpoint(config.checkpoint_path, config, tasks.size(), universe, progress);
  }

  std::vector<std::size_t> pending;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    if (!progress.done[i]) pending.push_back(i);
  }

  std::mutex mutex;
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  std::size_t completed_this_run = 0;
  SearchStats stats = top.stats;
  std::vector<Node> visits = std::move(top.visits);
  auto last_write = std::chrono::steady_clock::now();
  std::exception_ptr failure;

  auto worker = [&] {
    while (!stop.load()) {
      const std::size_t slot = next.fetch_add(1);
      if (slot >= pending.size()) return;
      const std::size_t id = pending[slot];
      Partial part;
      try {
        Explorer explorer(config, universe, part);
        Node node = tasks[id];
        explorer.explore(node);
      } catch (...) {
        std::lock_guard lock(mutex);
        if (!failure) failure = std::current_exception();
        stop = true;
        return;
      }
      std::lock_guard lock(mutex);
      progress.done[id] = true;
      progress.table.merge(part.table);
      progress.above_max += part.above_max;
      if (!part.witnesses.empty()) progress.witnesses[id] = std::move(part.witnesses);
      add_stats(stats, part.stats);
      for (auto& v : part.visits) visits.push_back(std::move(v));
      ++completed_this_run;
      if (config.stop_after_tasks && completed_this_run >= *config.stop_after_tasks) stop = true;
      const auto now = std::chrono::steady_clock::now();
      if (!config.checkpoint_path.empty() && now - last_write > std::chrono::seconds(1)) {
        try {
          write_checkpoint(config.checkpoint_path, config, tasks.size(), progress);
        } catch (...) {
          if (!failure) failure = std::current_exception();
          stop = true;
          return;
        }
        last_write = now;
      }
    }
  };

  if (config.threads == 1 || pending.size() <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    const auto count = std::min<std::size_t>(static_cast<std::size_t>(config.threads), pending.size());
    for (std::size_t t = 0; t < count; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  if (!config.checkpoint_path.empty()) {
    write_checkpoint(config.checkpoint_path, config, tasks.size(), progress);
  }

  SearchResult result;
  result.tasks_total = tasks.size();
  result.tasks_done = static_cast<std::size_t>(std::count(progress.done.begin(), progress.done.end(), true));
  result.complete = result.tasks_done == result.tasks_total;
  result.table = top.table;
  result.table.merge(progress.table);
  result.above_max = top.above_max + progress.above_max;
  result.witnesses = std::move(top.witnesses);
  for (auto& [id, list] : progress.witnesses) {
    for (auto& w : list) result.witnesses.push_back(std::move(w));
  }
  result.visits = std::move(visits);
  result.stats = stats;
  return result;
}

std::vector<Transformation> heuristic_order(const Dfa& dfa, std::span<const Transformation> candidates) {
  std::vector<std::pair<int, std::size_t>> keyed;
  keyed.reserve(candidates.size());
  for (std::size_t j = 0; j < candidates.size(); ++j) {
    keyed.emplace_back(reducible_pair_count(dfa.with_symbol(candidates[j])), j);
  }
  std::stable_sort(keyed.begin(), keyed.end(), [&](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return candidates[a.second] < candidates[b.second];
  });
  std::vector<Transformation> out;
  out.reserve(candidates.size());
  for (const auto& [score, j] : keyed) out.push_back(candidates[j]);
  return out;
}

}  // namespace slowsync
