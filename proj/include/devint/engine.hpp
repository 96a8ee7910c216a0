#pragma once

// Everything the scorers read, built once from a loaded Dataset and
// immutable afterwards: base-developer links, item interests and the
// participation index.

#include <string>
#include <unordered_map>

#include "devint/identity.hpp"
#include "devint/index.hpp"
#include "devint/ingest.hpp"
#include "devint/interests.hpp"

namespace devint {

class Engine {
 public:
  static Engine build(const Dataset& ds, unsigned threads = 1) {
    Engine e;
    e.links_ = link_identities(ds.users_a, ds.users_b);
    e.catalog_ = ItemCatalog::build(ds, threads);
    e.index_ = ParticipationIndex::build(ds, e.links_, e.catalog_);
    e.by_dev_id_.reserve(e.links_.links.size());
    for (DevIndex d = 0; d < e.links_.links.size(); ++d) e.by_dev_id_.emplace(e.links_.links[d].dev_id, d);
    return e;
  }

  const LinkResult& links() const { return links_; }
  const ItemCatalog& catalog() const { return catalog_; }
  const ParticipationIndex& index() const { return index_; }
  std::size_t developer_count() const { return links_.links.size(); }
  const LinkedDeveloper& developer_link(DevIndex d) const { return links_.links.at(d); }

  DevIndex dev_index(const std::string& dev_id) const {
    auto it = by_dev_id_.find(dev_id);
    if (it == by_dev_id_.end()) throw UsageError("unknown developer " + dev_id);
    return it->second;
  }

  std::optional<DevIndex> find_by_a_user(const std::string& a_user_id) const {
    for (DevIndex d = 0; d < links_.links.size(); ++d)
      if (links_.links[d].a_user_id == a_user_id) return d;
    return std::nullopt;
  }

  DeveloperInterests developer(DevIndex d) const { return index_.developer(d, catalog_); }

  IdList co_participants(const std::string& dev_id, ActivityKind k) const {
    return index_.co_participants(dev_index(dev_id), k);
  }

 private:
  LinkResult links_;
  ItemCatalog catalog_;
  ParticipationIndex index_;
  std::unordered_map<std::string, DevIndex> by_dev_id_;
};

}  // namespace devint
