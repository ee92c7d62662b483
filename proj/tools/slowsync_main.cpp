#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "slowsync/canonical.hpp"
#include "slowsync/catalog.hpp"
#include "slowsync/cerny_extension.hpp"
#include "slowsync/dfa_io.hpp"
#include "slowsync/extension_bound.hpp"
#include "slowsync/families.hpp"
#include "slowsync/powerset.hpp"
#include "slowsync/search.hpp"

namespace fs = std::filesystem;
using namespace slowsync;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitInput = 2;

// "-" reads standard input.
Dfa load_dfa(const std::string& path, bool require_basic) {
  if (path == "-") {
    std::string text{std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    return parse_dfa(text, require_basic);
  }
  return read_dfa_file(path, require_basic);
}

std::string images_1based(const Transformation& t) {
  std::string out;
  for (int q = 0; q < t.size(); ++q) {
    if (q) out += ' ';
    out += std::to_string(t(q) + 1);
  }
  return out;
}

struct AnalyzeArgs {
  std::string path = "-";
  bool count_words = false;
  bool witness = false;
  bool bound = false;
};

int run_analyze(const AnalyzeArgs& a) {
  Dfa dfa;
  try {
    dfa = load_dfa(a.path, false);
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }

  std::cout << "states " << dfa.states() << '\n';
  std::cout << "symbols " << dfa.alphabet_size() << '\n';
  std::cout << "basic " << (is_basic(dfa) ? "yes" : "no") << '\n';
  auto sync = shortest_sync(dfa);
  std::cout << "synchronizing " << (sync ? "yes" : "no") << '\n';
  if (sync) {
    std::cout << "length " << sync->length << '\n';
    if (a.witness) std::cout << "witness " << (sync->witness.empty() ? "-" : sync->witness.to_string()) << '\n';
    if (a.count_words) {
      std::cout << "count " << sync->count << '\n';
      std::cout << "sync-states " << sync->sync_states.to_string() << '\n';
    }
  }
  if (a.bound) {
    auto b = extension_bound(dfa);
    std::cout << "smallest-reachable " << b.smallest_size << '\n';
    std::cout << "distance-to-smallest " << b.distance_to_smallest << '\n';
    for (const auto& s : b.per_size) {
      std::cout << "size " << s.size << " components " << s.components << " m " << s.components_plus_diameters
                << " l " << s.longest_reduction << '\n';
    }
    std::cout << "bound " << b.total << '\n';
  }
  return sync ? kExitOk : kExitFail;
}

struct EnumerateArgs {
  int n = 3;
  std::optional<int> min_sync;
  std::optional<int> max_sync;
  std::optional<int> max_alphabet;
  std::string witnesses_dir;
  std::string checkpoint;
  int threads = 1;
  int split_depth = 2;
  bool no_symmetry = false;
  bool no_pruning = false;
  bool no_heuristic = false;
  bool stats = false;
};

void write_witnesses(const fs::path& dir, int n, const std::vector<Witness>& witnesses) {
  fs::create_directories(dir);
  std::map<int, std::vector<const Witness*>> by_length;
  for (const auto& w : witnesses) by_length[w.length].push_back(&w);
  for (const auto& [len, list] : by_length) {
    std::ofstream out(dir / ("n" + std::to_string(n) + "_sync" + std::to_string(len) + ".txt"));
    for (const auto* w : list) out << "# length " << w->length << '\n' << serialize_dfa(w->dfa) << '\n';
    if (!out) throw std::runtime_error("cannot write witnesses to " + dir.string());
  }
}

int run_enumerate(const EnumerateArgs& a) {
  SearchConfig cfg;
  cfg.n = a.n;
  cfg.min_sync = a.min_sync;
  cfg.max_sync = a.max_sync;
  cfg.max_alphabet = a.max_alphabet;
  cfg.symmetry = !a.no_symmetry;
  cfg.pruning = !a.no_pruning;
  cfg.heuristic = !a.no_heuristic;
  cfg.capture_witnesses = !a.witnesses_dir.empty();
  cfg.threads = a.threads;
  cfg.split_depth = a.split_depth;
  cfg.checkpoint_path = a.checkpoint;

  auto start = std::chrono::steady_clock::now();
  SearchResult r;
  try {
    r = enumerate(cfg);
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const CheckpointError& e) {
    std::cerr << "checkpoint error: " << e.what() << '\n';
    return kExitInput;
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  int lo = cfg.resolved_min_sync();
  int hi = a.max_sync ? *a.max_sync : std::max(lo, r.table.empty() ? lo : r.table.max_length());
  std::cout << r.table.to_csv(lo, hi);
  if (r.above_max) std::cerr << "above max-sync: " << r.above_max << '\n';

  if (cfg.capture_witnesses) write_witnesses(a.witnesses_dir, a.n, r.witnesses);
  if (a.stats) {
    std::cerr << "nodes " << r.stats.nodes << " canonical-rejects " << r.stats.canonical_rejects << " pruned-fast "
              << r.stats.pruned_fast << " pruned-bound " << r.stats.pruned_bound << " bounds "
              << r.stats.bound_computations << " seconds " << secs << '\n';
  }
  if (!r.complete) {
    std::cerr << "incomplete: " << r.tasks_done << "/" << r.tasks_total << " tasks\n";
    return kExitFail;
  }
  return kExitOk;
}

struct FamilyArgs {
  std::string name;
  int n = 0;
  std::string variant = "A";
};

int run_family(const FamilyArgs& a) {
  try {
    Dfa dfa;
    if (a.name == "cerny") {
      dfa = cerny(a.n);
    } else if (a.name == "thm3") {
      dfa = thm3_family(a.n, parse_variant(a.variant));
    } else {
      throw InvalidInput("unknown family: " + a.name);
    }
    std::cout << serialize_dfa(dfa);
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitOk;
}

struct CatalogArgs {
  bool verify = false;
  std::string name;
  std::string export_dir;
};

int run_catalog(const CatalogArgs& a) {
  if (a.verify) {
    bool ok = true;
    std::cout << "name     n k length count  expected  status\n";
    auto checks = verify_catalog();
    for (const auto& c : checks) {
      const auto& e = catalog_entry(c.name);
      char line[128];
      std::snprintf(line, sizeof line, "%-8s %d %d %6d %5llu %6d/%-4llu %s\n", c.name.c_str(), e.dfa.states(),
                    e.dfa.alphabet_size(), c.length, static_cast<unsigned long long>(c.count), e.expected_length,
                    static_cast<unsigned long long>(e.expected_count), c.passed ? "pass" : "FAIL");
      std::cout << line;
      ok = ok && c.passed;
    }
    std::cout << checks.size() << " entries, " << (ok ? "all pass" : "failures") << '\n';
    return ok ? kExitOk : kExitFail;
  }
  try {
    if (!a.name.empty()) {
      std::cout << serialize_dfa(catalog_entry(a.name).dfa);
      return kExitOk;
    }
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  if (!a.export_dir.empty()) {
    fs::create_directories(a.export_dir);
    for (const auto& e : catalog()) {
      std::ofstream out(fs::path(a.export_dir) / (e.name + ".dfa"));
      out << "# " << e.name << " length " << e.expected_length << " words " << e.expected_count << '\n'
          << serialize_dfa(e.dfa);
      if (!out) {
        std::cerr << "error: cannot write to " << a.export_dir << '\n';
        return kExitInput;
      }
    }
    return kExitOk;
  }
  for (const auto& e : catalog()) {
    std::cout << e.name << " states " << e.dfa.states() << " symbols " << e.dfa.alphabet_size() << " length "
              << e.expected_length << " words " << e.expected_count << (e.minimal ? " minimal" : "")
              << (e.maximal ? " maximal" : "") << '\n';
  }
  return kExitOk;
}

struct CnExtArgs {
  int n = 5;
  bool constructive = false;
  std::string csv;
  int threads = 1;
};

int run_cn_ext(const CnExtArgs& a) {
  ExtensionVerifyOptions opts;
  opts.constructive = a.constructive;
  opts.keep_rows = !a.csv.empty();
  opts.threads = a.threads;
  ExtensionReport r;
  try {
    r = verify_no_critical_extension(a.n, opts);
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  int critical = (a.n - 1) * (a.n - 1);
  std::cout << "n " << r.n << '\n';
  std::cout << "maps " << r.total_maps << '\n';
  std::cout << "trivial " << r.trivial_skipped << '\n';
  std::cout << "checked " << r.checked << '\n';
  std::cout << "max-length " << r.max_length_found << " (critical " << critical << ")\n";
  std::cout << "all-below " << (r.all_below ? "yes" : "no") << '\n';
  if (a.constructive) {
    std::cout << "constructive " << r.constructive_checked << " failures " << r.constructive_failures << '\n';
  }
  for (const auto& [tag, count] : r.case_counts) std::cout << "case " << case_name(tag) << ' ' << count << '\n';
  for (const auto& c : r.counterexamples) std::cout << "counterexample " << images_1based(c) << '\n';

  if (!a.csv.empty()) {
    std::ofstream out(a.csv);
    out << "c,case,bfs_length,plan_length\n";
    for (const auto& row : r.rows) {
      out << images_1based(row.c) << ',' << case_name(row.tag) << ',' << row.bfs_length << ',';
      if (row.plan_length >= 0) out << row.plan_length;
      out << '\n';
    }
    if (!out) {
      std::cerr << "error: cannot write " << a.csv << '\n';
      return kExitInput;
    }
  }
  bool ok = r.counterexamples.empty() && r.constructive_failures == 0 && (a.n < 5 || r.all_below);
  return ok ? kExitOk : kExitFail;
}

struct BoundsArgs {
  int n = 0;
  std::uint64_t k = 0;
};

int run_bounds(const BoundsArgs& a) {
  LowerBoundReport r;
  try {
    r = lower_bounds(a.n, a.k);
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  std::cout << "n " << r.n << " k " << r.k << '\n';
  if (r.corollary2) std::cout << "padding " << *r.corollary2 << '\n';
  if (r.family) std::cout << "five-symbol-family " << *r.family << '\n';
  if (r.extra_state) std::cout << "extra-state " << *r.extra_state << '\n';
  if (r.padded_family) std::cout << "padded-family " << *r.padded_family << '\n';
  if (r.best) {
    std::cout << "best " << *r.best << '\n';
  } else {
    std::cout << "best none\n";
  }
  if (r.known_exact) std::cout << "exact " << *r.known_exact << " (exhaustive search)\n";
  return kExitOk;
}

struct CanonArgs {
  std::string path = "-";
  bool automorphisms = false;
};

int run_canon(const CanonArgs& a) {
  try {
    Dfa dfa = load_dfa(a.path, false);
    std::cout << serialize_dfa(canonical_form(dfa));
    if (a.automorphisms) std::cout << "# automorphisms " << automorphism_count(dfa) << '\n';
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shortest synchronizing words, critical DFAs and slowly synchronizing DFA enumeration"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "slowsync 0.1.0");

  AnalyzeArgs analyze;
  auto* c_analyze = app.add_subcommand("analyze", "Shortest synchronizing word of a DFA file");
  c_analyze->add_option("file", analyze.path, "DFA file, - for stdin");
  c_analyze->add_flag("--count-words", analyze.count_words, "Count shortest words and list sync states");
  c_analyze->add_flag("--witness", analyze.witness, "Print the least shortest word");
  c_analyze->add_flag("--bound", analyze.bound, "Print the extension bound");

  EnumerateArgs en;
  auto* c_enum = app.add_subcommand("enumerate", "Count slowly synchronizing basic DFAs");
  c_enum->add_option("--n", en.n, "States")->required()->check(CLI::Range(2, 7));
  c_enum->add_option("--min-sync", en.min_sync, "Shortest length to record")->check(CLI::PositiveNumber);
  c_enum->add_option("--max-sync", en.max_sync, "Longest length to record")->check(CLI::PositiveNumber);
  c_enum->add_option("--max-alphabet", en.max_alphabet, "Alphabet cap")->check(CLI::PositiveNumber);
  c_enum->add_option("--witnesses", en.witnesses_dir, "Directory for recorded DFAs");
  c_enum->add_option("--checkpoint", en.checkpoint, "Checkpoint file (resumes if present)");
  c_enum->add_option("--threads", en.threads, "Worker threads")->check(CLI::Range(1, 256));
  c_enum->add_option("--split-depth", en.split_depth, "Symbols per work unit")->check(CLI::Range(1, 8));
  c_enum->add_flag("--no-symmetry", en.no_symmetry, "Count labelled DFAs");
  c_enum->add_flag("--no-pruning", en.no_pruning, "Disable subtree discards");
  c_enum->add_flag("--no-heuristic", en.no_heuristic, "Plain transformation order");
  c_enum->add_flag("--stats", en.stats, "Search statistics on stderr");

  FamilyArgs fam;
  auto* c_fam = app.add_subcommand("family", "Generate a parametric automaton");
  c_fam->add_option("--name", fam.name, "cerny or thm3")->required()->check(CLI::IsMember({"cerny", "thm3"}));
  c_fam->add_option("--n", fam.n, "States")->required();
  c_fam->add_option("--variant", fam.variant, "A, A-d, A-c, A-cd or A-bcd (thm3 only)");

  CatalogArgs cat;
  auto* c_cat = app.add_subcommand("catalog", "Named critical DFAs");
  c_cat->add_flag("--verify", cat.verify, "Recompute every entry");
  c_cat->add_option("--name", cat.name, "Print one entry");
  c_cat->add_option("--export", cat.export_dir, "Write every entry into a directory");

  CnExtArgs cn;
  auto* c_cn = app.add_subcommand("cn-ext", "Check all one-symbol extensions of the Cerny automaton");
  c_cn->add_option("--n", cn.n, "States")->required()->check(CLI::Range(2, kMaxExtensionStates));
  c_cn->add_flag("--constructive", cn.constructive, "Build and verify an explicit shorter word per map");
  c_cn->add_option("--csv", cn.csv, "Per-map CSV output file");
  c_cn->add_option("--threads", cn.threads, "Worker threads")->check(CLI::Range(1, 256));

  BoundsArgs bounds;
  auto* c_bounds = app.add_subcommand("bounds", "Lower bounds on the longest shortest synchronizing word");
  c_bounds->add_option("--n", bounds.n, "States")->required()->check(CLI::Range(2, 1000));
  c_bounds->add_option("--k", bounds.k, "Alphabet size")->required()->check(CLI::PositiveNumber);

  CanonArgs canon;
  auto* c_canon = app.add_subcommand("canon", "Canonical form under relabeling and symbol order");
  c_canon->add_option("file", canon.path, "DFA file, - for stdin");
  c_canon->add_flag("--automorphisms", canon.automorphisms, "Also count automorphisms");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (*c_analyze) return run_analyze(analyze);
    if (*c_enum) return run_enumerate(en);
    if (*c_fam) return run_family(fam);
    if (*c_cat) return run_catalog(cat);
    if (*c_cn) return run_cn_ext(cn);
    if (*c_bounds) return run_bounds(bounds);
    if (*c_canon) return run_canon(canon);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFail;
  }
  return kExitInput;
}
