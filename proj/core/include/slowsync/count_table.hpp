#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>

namespace slowsync {

// Basic DFAs counted by (alphabet size, shortest synchronizing length).
class CountTable {
 public:
  void add(int alphabet_size, int length, std::uint64_t count = 1);
  void merge(const CountTable& other);

  std::uint64_t at(int alphabet_size, int length) const;
  // Column sum over all alphabet sizes.
  std::uint64_t total(int length) const;
  std::uint64_t grand_total() const;

  bool empty() const { return cells_.empty(); }
  int max_alphabet_size() const;
  int min_length() const;
  int max_length() const;

  const std::map<std::pair<int, int>, std::uint64_t>& cells() const { return cells_; }

  // Rows are alphabet sizes 1..max, columns are lengths from max_length down
  // to min_length, then a total row.
  std::string to_csv(int min_length, int max_length) const;

  friend bool operator==(const CountTable&, const CountTable&) = default;

 private:
  std::map<std::pair<int, int>, std::uint64_t> cells_;
};

}  // namespace slowsync
