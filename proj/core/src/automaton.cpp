#include "slowsync/automaton.hpp"

#include <algorithm>
#include <bitset>
#include <charconv>

namespace slowsync {

namespace {

void check_state_count(int n) {
  if (n < 1 || n > kMaxStates) {
    throw InvalidInput("state count " + std::to_string(n) + " outside [1, " +
                       std::to_string(kMaxStates) + "]");
  }
}

}  // namespace

Transformation::Transformation(std::span<const State> images) {
  check_state_count(static_cast<int>(images.size()));
  n_ = static_cast<std::uint8_t>(images.size());
  for (std::size_t q = 0; q < images.size(); ++q) {
    if (images[q] >= n_) {
      throw InvalidInput("image " + std::to_string(images[q]) + " of state " + std::to_string(q) +
                         " out of range");
    }
    images_[q] = images[q];
  }
}

Transformation::Transformation(std::initializer_list<int> images) {
  std::vector<State> v;
  for (int x : images) {
    if (x < 0 || x >= kMaxStates) throw InvalidInput("image out of range");
    v.push_back(static_cast<State>(x));
  }
  *this = Transformation(v);
}

Transformation Transformation::identity(int n) {
  check_state_count(n);
  Transformation t;
  t.n_ = static_cast<std::uint8_t>(n);
  for (int q = 0; q < n; ++q) t.images_[q] = static_cast<State>(q);
  return t;
}

Transformation Transformation::from_index(int n, std::uint64_t index) {
  check_state_count(n);
  Transformation t;
  t.n_ = static_cast<std::uint8_t>(n);
  for (int q = n - 1; q >= 0; --q) {
    t.images_[q] = static_cast<State>(index % n);
    index /= n;
  }
  if (index != 0) throw InvalidInput("transformation index out of range");
  return t;
}

std::uint64_t Transformation::index() const {
  std::uint64_t idx = 0;
  for (int q = 0; q < n_; ++q) idx = idx * n_ + images_[q];
  return idx;
}

bool Transformation::is_identity() const {
  for (int q = 0; q < n_; ++q) {
    if (images_[q] != q) return false;
  }
  return true;
}

int Transformation::rank() const {
  std::bitset<kMaxStates> seen;
  for (int q = 0; q < n_; ++q) seen.set(images_[q]);
  return static_cast<int>(seen.count());
}

Transformation Transformation::then(const Transformation& other) const {
  if (other.n_ != n_) throw InvalidInput("composing transformations of different sizes");
  Transformation t = *this;
  for (int q = 0; q < n_; ++q) t.images_[q] = other.images_[images_[q]];
  return t;
}

Transformation Transformation::relabeled(std::span<const State> perm) const {
  Transformation t = *this;
  for (int q = 0; q < n_; ++q) t.images_[perm[q]] = perm[images_[q]];
  return t;
}

std::string symbol_name(Symbol s) {
  if (s < 26) return std::string(1, static_cast<char>('a' + s));
  return "[" + std::to_string(s) + "]";
}

Word Word::parse(std::string_view text) {
  Word w;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char ch = text[i];
    if (ch >= 'a' && ch <= 'z') {
      w.push_back(static_cast<Symbol>(ch - 'a'));
    } else if (ch == '[') {
      auto close = text.find(']', i);
      if (close == std::string_view::npos) throw InvalidInput("unterminated symbol index in word");
      unsigned value = 0;
      auto [ptr, ec] = std::from_chars(text.data() + i + 1, text.data() + close, value);
      if (ec != std::errc() || ptr != text.data() + close || value > 0xFFFF) {
        throw InvalidInput("bad symbol index in word");
      }
      w.push_back(static_cast<Symbol>(value));
      i = close;
    } else {
      throw InvalidInput(std::string("unexpected character '") + ch + "' in word");
    }
  }
  return w;
}

Word& Word::append(const Word& other) {
  letters_.insert(letters_.end(), other.letters_.begin(), other.letters_.end());
  return *this;
}

Word& Word::append_power(const Word& other, int times) {
  for (int i = 0; i < times; ++i) append(other);
  return *this;
}

Word& Word::append_letter(Symbol s, int times) {
  letters_.insert(letters_.end(), static_cast<std::size_t>(std::max(times, 0)), s);
  return *this;
}

std::string Word::to_string() const {
  std::string out;
  for (Symbol s : letters_) out += symbol_name(s);
  return out;
}

Dfa::Dfa(int n, std::vector<Transformation> symbols) : n_(n), symbols_(std::move(symbols)) {
  check_state_count(n);
  for (const auto& t : symbols_) {
    if (t.size() != n) throw InvalidInput("symbol length does not match state count");
  }
}

Dfa Dfa::with_symbol(const Transformation& t) const {
  auto syms = symbols_;
  syms.push_back(t);
  return Dfa(n_, std::move(syms));
}

Dfa Dfa::restricted(std::span<const Symbol> keep) const {
  std::vector<Transformation> syms;
  syms.reserve(keep.size());
  for (Symbol s : keep) syms.push_back(symbol(s));
  return Dfa(n_, std::move(syms));
}

Dfa Dfa::restricted(std::string_view letters) const {
  return restricted(Word::parse(letters).letters());
}

int apply(const Dfa& dfa, int q, const Word& w) {
  if (q < 0 || q >= dfa.states()) throw InvalidInput("state " + std::to_string(q) + " out of range");
  for (Symbol s : w.letters()) {
    if (s >= dfa.alphabet_size()) {
      throw InvalidInput("symbol index " + std::to_string(s) + " out of range");
    }
    q = dfa.symbols()[s](q);
  }
  return q;
}

bool is_basic(const Dfa& dfa) {
  const auto& syms = dfa.symbols();
  for (std::size_t i = 0; i < syms.size(); ++i) {
    if (syms[i].is_identity()) return false;
    for (std::size_t j = i + 1; j < syms.size(); ++j) {
      if (syms[i] == syms[j]) return false;
    }
  }
  return true;
}

}  // namespace slowsync
