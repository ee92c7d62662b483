#include "slowsync/families.hpp"

#include <array>
#include <vector>

namespace slowsync {

namespace {

__extension__ typedef unsigned __int128 Wide;

constexpr Wide kWideCap = static_cast<Wide>(1) << 100;

Wide saturating_mul(Wide a, Wide b) {
  if (a != 0 && b > kWideCap / a) return kWideCap;
  return a * b;
}

Wide wide_pow(std::uint64_t base, int exp) {
  Wide r = 1;
  for (int i = 0; i < exp; ++i) r = saturating_mul(r, base);
  return r;
}

std::vector<State> to_states(const std::vector<int>& one_based) {
  std::vector<State> out;
  for (int v : one_based) out.push_back(static_cast<State>(v - 1));
  return out;
}

}  // namespace

Dfa cerny(int n) {
  if (n < 2) throw InvalidInput("Cerny automaton needs n >= 2");
  std::vector<State> a(n), b(n);
  for (int q = 0; q < n; ++q) {
    a[q] = static_cast<State>((q + 1) % n);
    b[q] = static_cast<State>(q);
  }
  b[0] = 1;
  return Dfa(n, {Transformation(a), Transformation(b)});
}

Word cerny_word(int n) {
  if (n < 2) throw InvalidInput("Cerny automaton needs n >= 2");
  Word w;
  w.append_letter(1);
  for (int i = 0; i < n - 2; ++i) w.append_letter(0, n - 1).append_letter(1);
  return w;
}

std::string_view variant_name(FamilyVariant v) {
  switch (v) {
    case FamilyVariant::kFull: return "A";
    case FamilyVariant::kMinusD: return "A-d";
    case FamilyVariant::kMinusC: return "A-c";
    case FamilyVariant::kMinusCD: return "A-cd";
    case FamilyVariant::kMinusBCD: return "A-bcd";
  }
  return "?";
}

FamilyVariant parse_variant(std::string_view name) {
  for (auto v : {FamilyVariant::kFull, FamilyVariant::kMinusD, FamilyVariant::kMinusC,
                 FamilyVariant::kMinusCD, FamilyVariant::kMinusBCD}) {
    if (variant_name(v) == name) return v;
  }
  throw InvalidInput("unknown family variant '" + std::string(name) + "'");
}

std::string_view variant_letters(FamilyVariant v) {
  switch (v) {
    case FamilyVariant::kFull: return "abcde";
    case FamilyVariant::kMinusD: return "abce";
    case FamilyVariant::kMinusC: return "abde";
    case FamilyVariant::kMinusCD: return "abe";
    case FamilyVariant::kMinusBCD: return "ae";
  }
  return "";
}

Dfa thm3_family(int n, FamilyVariant variant) {
  if (n < kFamilyMinStates) {
    throw InvalidInput("family needs n >= " + std::to_string(kFamilyMinStates));
  }
  // Rows for states 1, 2, 3; states q >= 4 follow the shift (q+1 mod n,
  // representative n -> 1) except under b, which fixes them.
  const std::array<std::array<int, 3>, 5> head = {{
      {2, 3, 4},  // a
      {1, 3, 3},  // b
      {3, 3, 4},  // c
      {2, 4, 4},  // d
      {3, 4, 4},  // e
  }};
  std::vector<Transformation> full;
  for (int x = 0; x < 5; ++x) {
    std::vector<int> img(n);
    for (int q = 1; q <= n; ++q) {
      if (q <= 3) {
        img[q - 1] = head[x][q - 1];
      } else if (x == 1) {
        img[q - 1] = q;
      } else {
        img[q - 1] = q % n + 1;
      }
    }
    full.emplace_back(to_states(img));
  }
  std::vector<Transformation> kept;
  for (char letter : variant_letters(variant)) kept.push_back(full[letter - 'a']);
  return Dfa(n, std::move(kept));
}

int thm3_expected_length(int n, FamilyVariant variant) {
  const int base = n * n - 3 * n;
  switch (variant) {
    case FamilyVariant::kFull: return base + 2;
    case FamilyVariant::kMinusD:
    case FamilyVariant::kMinusC: return base + 3;
    case FamilyVariant::kMinusCD:
    case FamilyVariant::kMinusBCD: return base + 4;
  }
  return -1;
}

Dfa pad_construction(const Dfa& base, int n, std::uint64_t alphabet_cap) {
  const int small = base.states();
  const int m = n - small;
  if (m < 0) throw InvalidInput("padding target smaller than base");
  if (!is_basic(base)) throw InvalidInput("padding requires a basic DFA");
  const Wide completions = wide_pow(static_cast<std::uint64_t>(n), m);
  const Wide symbols = saturating_mul(static_cast<Wide>(base.alphabet_size()) + 1, completions) - 1;
  if (symbols > alphabet_cap) {
    throw InvalidInput("padded alphabet exceeds cap of " + std::to_string(alphabet_cap));
  }
  std::vector<Transformation> restricted = base.symbols();
  restricted.push_back(Transformation::identity(small));

  std::vector<Transformation> out;
  out.reserve(static_cast<std::size_t>(symbols));
  std::vector<State> img(n);
  for (const auto& t : restricted) {
    for (int q = 0; q < small; ++q) img[q] = t(q);
    for (std::uint64_t c = 0; c < static_cast<std::uint64_t>(completions); ++c) {
      std::uint64_t code = c;
      for (int q = n - 1; q >= small; --q) {
        img[q] = static_cast<State>(code % n);
        code /= n;
      }
      Transformation padded(img);
      if (!padded.is_identity()) out.push_back(padded);
    }
  }
  return Dfa(n, std::move(out));
}

std::int64_t corollary2_bound(int n, std::uint64_t k) {
  if (n < 2) throw InvalidInput("corollary bound needs n >= 2");
  const Wide upper = saturating_mul(3, wide_pow(static_cast<std::uint64_t>(n), n - 2)) - 1;
  if (k < 2 || static_cast<Wide>(k) > upper) throw InvalidInput("alphabet size out of range");
  int m = 0;
  while (saturating_mul(3, wide_pow(static_cast<std::uint64_t>(n), m)) < static_cast<Wide>(k) + 1) ++m;
  const std::int64_t side = n - m - 1;
  return side * side;
}

std::optional<int> known_max_sync_length(int n, std::uint64_t k) {
  struct Segment {
    int n;
    std::uint64_t from, to;
    int value;
  };
  static constexpr std::array<Segment, 26> kSegments = {{
      {2, 1, 3, 1},
      {3, 1, 1, 2}, {3, 2, 5, 4}, {3, 6, 9, 3}, {3, 10, 23, 2}, {3, 24, 26, 1},
      {4, 1, 1, 3}, {4, 2, 5, 9}, {4, 6, 8, 8}, {4, 9, 17, 7}, {4, 18, 41, 5},
      {5, 1, 1, 4}, {5, 2, 3, 16}, {5, 4, 6, 15}, {5, 7, 13, 14}, {5, 14, 15, 13},
      {5, 16, 23, 12}, {5, 24, 29, 11}, {5, 30, 41, 10},
      {6, 1, 1, 5}, {6, 2, 2, 25}, {6, 3, 3, 23}, {6, 4, 11, 22}, {6, 12, 15, 21},
      {6, 16, 21, 20}, {6, 22, 41, 19},
  }};
  for (const auto& s : kSegments) {
    if (s.n == n && k >= s.from && k <= s.to) return s.value;
  }
  return std::nullopt;
}

LowerBoundReport lower_bounds(int n, std::uint64_t k) {
  if (n < 2) throw InvalidInput("bounds need n >= 2");
  if (k < 1) throw InvalidInput("alphabet size must be positive");
  LowerBoundReport r;
  r.n = n;
  r.k = k;
  const std::int64_t nn = n;
  try {
    r.corollary2 = corollary2_bound(n, k);
  } catch (const InvalidInput&) {
  }
  if (n >= 3) {
    if (k == 3) r.family = nn * nn - 3 * nn + 4;
    if (k == 4) r.family = nn * nn - 3 * nn + 3;
    if (k == 5) r.family = nn * nn - 3 * nn + 2;
  }
  if (k == 3 && n >= 3) r.extra_state = (nn - 2) * (nn - 2) + 1;
  if (n >= 4 && k >= 3 * static_cast<std::uint64_t>(n) && k <= 6 * static_cast<std::uint64_t>(n) - 1) {
    r.padded_family = nn * nn - 5 * nn + 6;
  }
  r.known_exact = known_max_sync_length(n, k);
  for (const auto& v : {r.corollary2, r.family, r.extra_state, r.padded_family}) {
    if (v && (!r.best || *v > *r.best)) r.best = v;
  }
  return r;
}

}  // namespace slowsync
