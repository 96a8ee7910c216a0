#pragma once

// Item and developer interest sets. I(q) is the question's normalized tags
// restricted to the vocabulary; I(r) is the set of vocabulary tags matched in
// the repository description. A developer's per-platform interests are the
// union over every item of that platform they touched.

#include <array>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "devint/activity.hpp"
#include "devint/ingest.hpp"
#include "devint/parallel.hpp"
#include "devint/setops.hpp"
#include "devint/tags.hpp"

namespace devint {

using InterestSet = std::set<std::string>;
using ItemIndex = std::uint32_t;
using DevIndex = std::uint32_t;
using TagSet = IdList;  // sorted TagIds

inline TagSet question_tag_ids(const QuestionItem& q, const TagVocabulary& vocab) {
  TagSet out;
  for (const auto& raw : q.tags)
    if (auto id = vocab.find(normalize_tag(raw))) out.push_back(*id);
  sort_unique(out);
  return out;
}

inline TagSet repo_tag_ids(const RepositoryItem& r, const TagVocabulary& vocab) {
  return vocab.match(r.description);
}

inline InterestSet to_interest_set(std::span<const TagId> ids, const TagVocabulary& vocab) {
  InterestSet out;
  for (TagId id : ids) out.insert(vocab.tag(id));
  return out;
}

inline InterestSet question_interests(const QuestionItem& q, const TagVocabulary& vocab) {
  return to_interest_set(question_tag_ids(q, vocab), vocab);
}

inline InterestSet repo_interests(const RepositoryItem& r, const TagVocabulary& vocab) {
  return to_interest_set(repo_tag_ids(r, vocab), vocab);
}

// Interned items with their interest sets. Repository and question indices
// are separate dense ranges, each in sorted id order.
class ItemCatalog {
 public:
  ItemCatalog() = default;

  static ItemCatalog build(const Dataset& ds, unsigned threads = 1) {
    ItemCatalog c;
    c.vocab_ = TagVocabulary(ds.vocabulary);
    for (Platform p : {Platform::A, Platform::B}) {
      auto& ids = c.ids_[slot(p)];
      auto& lookup = c.lookup_[slot(p)];
      if (p == Platform::A) {
        for (const auto& r : ds.repos) ids.push_back(r.repo_id);
      } else {
        for (const auto& q : ds.questions) ids.push_back(q.question_id);
      }
      std::vector<std::size_t> order(ids.size());
      for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
      std::sort(order.begin(), order.end(), [&](auto x, auto y) { return ids[x] < ids[y]; });
      std::vector<std::string> sorted_ids(ids.size());
      std::vector<IdList> rows(ids.size());
      parallel_for(order.size(), threads, [&](std::size_t b, std::size_t e, unsigned) {
        for (std::size_t i = b; i < e; ++i) {
          const std::size_t src = order[i];
          rows[i] = p == Platform::A ? repo_tag_ids(ds.repos[src], c.vocab_)
                                     : question_tag_ids(ds.questions[src], c.vocab_);
        }
      });
      for (std::size_t i = 0; i < order.size(); ++i) sorted_ids[i] = ids[order[i]];
      ids = std::move(sorted_ids);
      lookup.reserve(ids.size());
      for (ItemIndex i = 0; i < ids.size(); ++i) lookup.emplace(ids[i], i);
      c.interests_[slot(p)] = RowTable::from_rows(rows);
    }
    return c;
  }

  const TagVocabulary& vocabulary() const { return vocab_; }
  std::size_t size(Platform p) const { return ids_[slot(p)].size(); }
  const std::string& item_id(Platform p, ItemIndex i) const { return ids_[slot(p)].at(i); }

  std::optional<ItemIndex> find(Platform p, const std::string& id) const {
    const auto& m = lookup_[slot(p)];
    auto it = m.find(id);
    if (it == m.end()) return std::nullopt;
    return it->second;
  }

  std::span<const TagId> interests(Platform p, ItemIndex i) const {
    return interests_[slot(p)].row(i);
  }

  InterestSet interest_set(Platform p, ItemIndex i) const {
    return to_interest_set(interests(p, i), vocab_);
  }

 private:
  static std::size_t slot(Platform p) { return p == Platform::A ? 0 : 1; }

  TagVocabulary vocab_;
  std::array<std::vector<std::string>, 2> ids_;
  std::array<std::unordered_map<std::string, ItemIndex>, 2> lookup_;
  std::array<RowTable, 2> interests_;
};

// Per-kind item sets of one developer and the platform-level unions.
struct DeveloperInterests {
  DevIndex dev = 0;
  std::array<IdList, kNumKinds> items;  // per ActivityKind, sorted item indices
  IdList repos;                         // union of the four repository kinds
  IdList questions;                     // union of the three question kinds
  TagSet gh;                            // union of I(r) over repos
  TagSet so;                            // union of I(q) over questions

  const IdList& of(ActivityKind k) const { return items[index_of(k)]; }
};

// Union of the interest sets of `items` on platform `p`.
inline TagSet union_interests(const ItemCatalog& catalog, Platform p,
                              std::span<const ItemIndex> items) {
  TagSet out;
  for (ItemIndex i : items) {
    auto tags = catalog.interests(p, i);
    out.insert(out.end(), tags.begin(), tags.end());
  }
  sort_unique(out);
  return out;
}

inline DeveloperInterests developer_interests(
    const ItemCatalog& catalog, DevIndex dev,
    const std::array<std::span<const ItemIndex>, kNumKinds>& items_by_kind) {
  DeveloperInterests d;
  d.dev = dev;
  for (ActivityKind k : kAllKinds) {
    auto src = items_by_kind[index_of(k)];
    d.items[index_of(k)].assign(src.begin(), src.end());
    sort_unique(d.items[index_of(k)]);
    auto& dest = platform_of(k) == Platform::A ? d.repos : d.questions;
    dest.insert(dest.end(), src.begin(), src.end());
  }
  sort_unique(d.repos);
  sort_unique(d.questions);
  d.gh = union_interests(catalog, Platform::A, d.repos);
  d.so = union_interests(catalog, Platform::B, d.questions);
  return d;
}

}  // namespace devint
