#include "slowsync/count_table.hpp"

#include <algorithm>

namespace slowsync {

void CountTable::add(int alphabet_size, int length, std::uint64_t count) {
  if (count == 0) return;
  cells_[{alphabet_size, length}] += count;
}

void CountTable::merge(const CountTable& other) {
  for (const auto& [key, count] : other.cells_) cells_[key] += count;
}

std::uint64_t CountTable::at(int alphabet_size, int length) const {
  auto it = cells_.find({alphabet_size, length});
  return it == cells_.end() ? 0 : it->second;
}

std::uint64_t CountTable::total(int length) const {
  std::uint64_t sum = 0;
  for (const auto& [key, count] : cells_) {
    if (key.second == length) sum += count;
  }
  return sum;
}

std::uint64_t CountTable::grand_total() const {
  std::uint64_t sum = 0;
  for (const auto& [key, count] : cells_) sum += count;
  return sum;
}

int CountTable::max_alphabet_size() const {
  int m = 0;
  for (const auto& [key, count] : cells_) m = std::max(m, key.first);
  return m;
}

int CountTable::min_length() const {
  int m = -1;
  for (const auto& [key, count] : cells_) m = m < 0 ? key.second : std::min(m, key.second);
  return m;
}

int CountTable::max_length() const {
  int m = -1;
  for (const auto& [key, count] : cells_) m = std::max(m, key.second);
  return m;
}

std::string CountTable::to_csv(int min_length, int max_length) const {
  std::string out = "alphabet_size";
  for (int len = max_length; len >= min_length; --len) out += ",sync_" + std::to_string(len);
  out += '\n';
  const int rows = std::max(1, max_alphabet_size());
  for (int k = 1; k <= rows; ++k) {
    out += std::to_string(k);
    for (int len = max_length; len >= min_length; --len) out += "," + std::to_string(at(k, len));
    out += '\n';
  }
  out += "total";
  for (int len = max_length; len >= min_length; --len) out += "," + std::to_string(total(len));
  out += '\n';
  return out;
}

}  // namespace slowsync
