#pragma once

// Sorted-vector set algebra on dense integer ids, plus a compressed row
// table used for every id -> id-list mapping.

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <span>
#include <vector>

namespace devint {

using IdList = std::vector<std::uint32_t>;

inline bool intersects(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
  auto i = a.begin(), j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      return true;
    }
  }
  return false;
}

inline bool is_subset(std::span<const std::uint32_t> sub, std::span<const std::uint32_t> super) {
  return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

inline IdList set_intersection(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
  IdList out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline void sort_unique(IdList& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

// Rows of ids stored back to back. Row i is values[offsets[i], offsets[i+1]).
class RowTable {
 public:
  RowTable() = default;

  // Groups (row, value) pairs into sorted, deduplicated rows.
  static RowTable from_pairs(std::size_t n_rows,
                             std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs) {
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    RowTable t;
    t.offsets_.assign(n_rows + 1, 0);
    t.values_.reserve(pairs.size());
    for (const auto& [row, value] : pairs) {
      ++t.offsets_[row + 1];
      t.values_.push_back(value);
    }
    for (std::size_t i = 0; i < n_rows; ++i) t.offsets_[i + 1] += t.offsets_[i];
    return t;
  }

  static RowTable from_rows(const std::vector<IdList>& rows) {
    RowTable t;
    t.offsets_.reserve(rows.size() + 1);
    t.offsets_.push_back(0);
    for (const auto& r : rows) {
      t.values_.insert(t.values_.end(), r.begin(), r.end());
      t.offsets_.push_back(static_cast<std::uint32_t>(t.values_.size()));
    }
    return t;
  }

  std::size_t rows() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t total() const { return values_.size(); }

  std::span<const std::uint32_t> row(std::size_t i) const {
    return {values_.data() + offsets_[i], values_.data() + offsets_[i + 1]};
  }

  bool operator==(const RowTable&) const = default;

 private:
  std::vector<std::uint32_t> offsets_;
  std::vector<std::uint32_t> values_;
};

}  // namespace devint
