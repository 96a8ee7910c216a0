#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "devint/engine.hpp"
#include "devint/error.hpp"
#include "devint/synthgen.hpp"
#include "support/test_support.hpp"

using namespace devint;

TEST_CASE("co-watchers of the co-watch fixture") {
  const Engine e = Engine::build(load_dataset(devint::testing::fixture("co_watch")));
  REQUIRE(e.developer_count() == 2);
  const DevIndex d = *e.find_by_a_user("gh-d");
  const DevIndex d2 = *e.find_by_a_user("gh-d2");
  CHECK(e.index().co_participants(d, ActivityKind::Watch) == IdList{d2});
  CHECK(e.index().co_participants(d2, ActivityKind::Watch) == IdList{d});
  CHECK(e.index().co_participants(d, ActivityKind::Fork).empty());
  CHECK(e.co_participants(e.developer_link(d).dev_id, ActivityKind::Watch) == IdList{d2});
}

TEST_CASE("unknown developers are usage errors") {
  const Engine e = Engine::build(load_dataset(devint::testing::fixture("co_watch")));
  CHECK_THROWS_AS(e.dev_index("dev99999999"), UsageError);
  CHECK_THROWS_AS(e.index().co_participants(7, ActivityKind::Watch), UsageError);
  CHECK_FALSE(e.find_by_a_user("gh-nobody"));
}

TEST_CASE("activities of unlinked users are not indexed") {
  GenSpec s = devint::testing::small_spec(2);
  s.unlinked_fraction = 0.5;
  s.ambiguous_groups = 2;
  const Dataset ds = generate(s).dataset;
  const Engine e = Engine::build(ds);
  std::size_t indexed = 0;
  for (ActivityKind k : kAllKinds)
    for (DevIndex d = 0; d < e.developer_count(); ++d) indexed += e.index().items_of(d, k).size();
  std::size_t linked = 0;
  for (const auto& rec : ds.activities) {
    const bool a = rec.platform == Platform::A;
    for (const auto& l : e.links().links)
      if ((a ? l.a_user_id : l.b_user_id) == rec.user_id) ++linked;
  }
  CHECK(indexed == linked);
  CHECK(indexed < ds.activities.size());
}

TEST_CASE("co-participation matches pairwise scan and is symmetric") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Engine e = Engine::build(generate(devint::testing::small_spec(seed, 40, 40)).dataset);
    const auto n = static_cast<DevIndex>(e.developer_count());
    for (ActivityKind k : kCoParticipationKinds) {
      std::vector<std::set<DevIndex>> co(n);
      for (DevIndex a = 0; a < n; ++a)
        for (DevIndex b = 0; b < n; ++b) {
          if (a == b) continue;
          const auto ia = e.index().items_of(a, k);
          const auto ib = e.index().items_of(b, k);
          if (intersects(ia, ib)) co[a].insert(b);
        }
      for (DevIndex a = 0; a < n; ++a) {
        const IdList got = e.index().co_participants(a, k);
        CHECK(std::set<DevIndex>(got.begin(), got.end()) == co[a]);
        for (DevIndex b : got) {
          const IdList back = e.index().co_participants(b, k);
          CHECK(std::binary_search(back.begin(), back.end(), a));
        }
      }
    }
  }
}

TEST_CASE("participant lists invert item lists") {
  const Engine e = Engine::build(generate(devint::testing::small_spec(5)).dataset);
  for (ActivityKind k : kAllKinds) {
    std::size_t forward = 0, backward = 0;
    for (DevIndex d = 0; d < e.developer_count(); ++d)
      for (ItemIndex i : e.index().items_of(d, k)) {
        ++forward;
        const auto p = e.index().participants(i, k);
        CHECK(std::binary_search(p.begin(), p.end(), d));
      }
    for (ItemIndex i = 0; i < e.index().item_count(k); ++i) backward += e.index().participants(i, k).size();
    CHECK(forward == backward);
  }
}

TEST_CASE("tag index lists every item carrying a tag") {
  const Engine e = Engine::build(generate(devint::testing::small_spec(6)).dataset);
  const TagItemIndex tix = TagItemIndex::build(e.catalog());
  for (Platform p : {Platform::A, Platform::B})
    for (TagId t = 0; t < e.catalog().vocabulary().size(); ++t)
      for (ItemIndex i = 0; i < e.catalog().size(p); ++i) {
        const auto tags = e.catalog().interests(p, i);
        const auto items = tix.items_with(p, t);
        CHECK(std::binary_search(tags.begin(), tags.end(), t) ==
              std::binary_search(items.begin(), items.end(), i));
      }
}
