#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace slowsync {

// StateSet is a 32-bit mask, but subset tables are sized 2^n and distances
// are 16-bit, so 16 states is the hard limit.
inline constexpr int kMaxStates = 16;

using State = std::uint8_t;
using Symbol = std::uint16_t;

class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// One symbol's action: entry q holds the image of state q (0-based).
class Transformation {
 public:
  Transformation() = default;
  explicit Transformation(std::span<const State> images);
  Transformation(std::initializer_list<int> images);

  static Transformation identity(int n);
  // Decodes the base-n number produced by index(); state 0 is the most
  // significant digit, so numeric order equals lexicographic order.
  static Transformation from_index(int n, std::uint64_t index);

  int size() const { return n_; }
  State operator()(int q) const { return images_[q]; }
  std::span<const State> images() const { return {images_.data(), static_cast<std::size_t>(n_)}; }

  std::uint64_t index() const;
  bool is_identity() const;
  bool is_permutation() const { return rank() == n_; }
  int rank() const;
  int deficiency() const { return n_ - rank(); }

  // x -> other(this(x))
  Transformation then(const Transformation& other) const;
  // Conjugate by a state relabeling: result(perm[q]) = perm[this(q)].
  Transformation relabeled(std::span<const State> perm) const;

  friend bool operator==(const Transformation& a, const Transformation& b) {
    return a.n_ == b.n_ && a.images_ == b.images_;
  }
  friend std::strong_ordering operator<=>(const Transformation& a, const Transformation& b) {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    return a.images_ <=> b.images_;
  }

 private:
  std::uint8_t n_ = 0;
  std::array<State, kMaxStates> images_{};
};

class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Symbol> letters) : letters_(std::move(letters)) {}

  // Letters a..z map to symbols 0..25; "[k]" spells symbol k.
  static Word parse(std::string_view text);

  const std::vector<Symbol>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Symbol operator[](std::size_t i) const { return letters_[i]; }

  void push_back(Symbol s) { letters_.push_back(s); }
  Word& append(const Word& other);
  Word& append_power(const Word& other, int times);
  Word& append_letter(Symbol s, int times = 1);

  std::string to_string() const;

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;

 private:
  std::vector<Symbol> letters_;
};

std::string symbol_name(Symbol s);

class Dfa {
 public:
  Dfa() = default;
  Dfa(int n, std::vector<Transformation> symbols);

  int states() const { return n_; }
  int alphabet_size() const { return static_cast<int>(symbols_.size()); }
  const std::vector<Transformation>& symbols() const { return symbols_; }
  const Transformation& symbol(Symbol s) const { return symbols_.at(s); }

  Dfa with_symbol(const Transformation& t) const;
  // Keeps the listed symbols in the given order.
  Dfa restricted(std::span<const Symbol> keep) const;
  // Symbols given by letter, e.g. "abd".
  Dfa restricted(std::string_view letters) const;

  friend bool operator==(const Dfa&, const Dfa&) = default;

 private:
  int n_ = 0;
  std::vector<Transformation> symbols_;
};

// State reached from q after reading w.
int apply(const Dfa& dfa, int q, const Word& w);

// No symbol is the identity and no two symbols coincide.
bool is_basic(const Dfa& dfa);

}  // namespace slowsync
