#pragma once

// Inverted indices over base developers: for every activity kind, item ->
// developers who performed it and developer -> items. Tag -> items per
// platform for interest lookups.

#include <array>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "devint/activity.hpp"
#include "devint/identity.hpp"
#include "devint/ingest.hpp"
#include "devint/interests.hpp"
#include "devint/setops.hpp"

namespace devint {

class ParticipationIndex {
 public:
  ParticipationIndex() = default;

  // Activities of users outside `links` are ignored.
  static ParticipationIndex build(const Dataset& ds, const LinkResult& links,
                                  const ItemCatalog& catalog) {
    ParticipationIndex ix;
    ix.n_devs_ = links.links.size();
    std::unordered_map<std::string, DevIndex> by_a, by_b;
    by_a.reserve(ix.n_devs_);
    by_b.reserve(ix.n_devs_);
    for (DevIndex d = 0; d < ix.n_devs_; ++d) {
      by_a.emplace(links.links[d].a_user_id, d);
      by_b.emplace(links.links[d].b_user_id, d);
    }

    std::array<std::vector<std::pair<std::uint32_t, std::uint32_t>>, kNumKinds> dev_item;
    for (const auto& rec : ds.activities) {
      const auto& users = rec.platform == Platform::A ? by_a : by_b;
      auto u = users.find(rec.user_id);
      if (u == users.end()) continue;
      auto item = catalog.find(rec.platform, rec.item_id);
      if (!item) throw ValidationError("dangling reference " + rec.item_id);
      dev_item[index_of(rec.kind)].emplace_back(u->second, *item);
    }
    for (ActivityKind k : kAllKinds) {
      auto& pairs = dev_item[index_of(k)];
      std::vector<std::pair<std::uint32_t, std::uint32_t>> item_dev;
      item_dev.reserve(pairs.size());
      for (const auto& [d, i] : pairs) item_dev.emplace_back(i, d);
      ix.dev_items_[index_of(k)] = RowTable::from_pairs(ix.n_devs_, std::move(pairs));
      ix.item_devs_[index_of(k)] =
          RowTable::from_pairs(catalog.size(platform_of(k)), std::move(item_dev));
    }
    return ix;
  }

  std::size_t developer_count() const { return n_devs_; }

  std::span<const ItemIndex> items_of(DevIndex d, ActivityKind k) const {
    return dev_items_[index_of(k)].row(d);
  }

  std::span<const DevIndex> participants(ItemIndex i, ActivityKind k) const {
    return item_devs_[index_of(k)].row(i);
  }

  std::size_t item_count(ActivityKind k) const { return item_devs_[index_of(k)].rows(); }

  // Other developers sharing at least one k-item with d, ascending.
  IdList co_participants(DevIndex d, ActivityKind k) const {
    if (d >= n_devs_) throw UsageError("unknown developer index " + std::to_string(d));
    IdList out;
    for (ItemIndex i : items_of(d, k)) {
      auto devs = participants(i, k);
      out.insert(out.end(), devs.begin(), devs.end());
    }
    sort_unique(out);
    auto self = std::lower_bound(out.begin(), out.end(), d);
    if (self != out.end() && *self == d) out.erase(self);
    return out;
  }

  DeveloperInterests developer(DevIndex d, const ItemCatalog& catalog) const {
    std::array<std::span<const ItemIndex>, kNumKinds> by_kind;
    for (ActivityKind k : kAllKinds) by_kind[index_of(k)] = items_of(d, k);
    return developer_interests(catalog, d, by_kind);
  }

 private:
  std::size_t n_devs_ = 0;
  std::array<RowTable, kNumKinds> dev_items_;
  std::array<RowTable, kNumKinds> item_devs_;
};

// tag -> items whose interest set contains it, per platform.
class TagItemIndex {
 public:
  static TagItemIndex build(const ItemCatalog& catalog) {
    TagItemIndex ix;
    const std::size_t n_tags = catalog.vocabulary().size();
    for (Platform p : {Platform::A, Platform::B}) {
      std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
      for (ItemIndex i = 0; i < catalog.size(p); ++i)
        for (TagId t : catalog.interests(p, i)) pairs.emplace_back(t, i);
      ix.rows_[p == Platform::A ? 0 : 1] = RowTable::from_pairs(n_tags, std::move(pairs));
    }
    return ix;
  }

  std::span<const ItemIndex> items_with(Platform p, TagId t) const {
    return rows_[p == Platform::A ? 0 : 1].row(t);
  }

 private:
  std::array<RowTable, 2> rows_;
};

}  // namespace devint
