#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "devint/identity.hpp"
#include "devint/md5.hpp"
#include "devint/oracle.hpp"
#include "devint/synthgen.hpp"
#include "support/test_support.hpp"

using namespace devint;

TEST_CASE("md5 reference digests") {
  CHECK(md5_hex("") == "d41d8cd98f00b204e9800998ecf8427e");
  CHECK(md5_hex("x@y.z") == "63a19cc80806754d71cb1cb8d562f6df");
  CHECK(md5_hex("The quick brown fox jumps over the lazy dog") == "9e107d9d372bb6826bd81d3542a419d6");
}

TEST_CASE("emails are trimmed and lowercased before hashing") {
  CHECK(normalize_email("  D.Developer@Example.com\t") == "d.developer@example.com");
  const auto r = link_identities({{"gh-1", " X@Y.Z "}}, {{"so-1", md5_hex("x@y.z")}});
  REQUIRE(r.links.size() == 1);
  CHECK(r.links[0] == LinkedDeveloper{"dev00000000", "gh-1", "so-1"});
}

TEST_CASE("accounts without an email or hash are never linked") {
  const auto r = link_identities({{"gh-1", ""}, {"gh-2", "   "}}, {{"so-1", ""}, {"so-2", md5_hex("")}});
  CHECK(r.links.empty());
  CHECK(r.ambiguities.empty());
}

TEST_CASE("shared hashes are reported and not linked") {
  const std::string h = md5_hex("shared@example.com");
  SECTION("two platform-A accounts") {
    const auto r = link_identities({{"gh-2", "shared@example.com"}, {"gh-1", "Shared@example.com"}}, {{"so-1", h}});
    CHECK(r.links.empty());
    REQUIRE(r.ambiguities.size() == 1);
    CHECK(r.ambiguities[0].a_user_ids == std::vector<std::string>{"gh-1", "gh-2"});
    CHECK(r.ambiguities[0].b_user_ids == std::vector<std::string>{"so-1"});
  }
  SECTION("two platform-B accounts") {
    const auto r = link_identities({{"gh-1", "shared@example.com"}}, {{"so-1", h}, {"so-2", h}});
    CHECK(r.links.empty());
    REQUIRE(r.ambiguities.size() == 1);
    CHECK(r.ambiguities[0].email_md5 == h);
  }
  SECTION("platform-A duplicates with no B account are not ambiguities") {
    const auto r = link_identities({{"gh-1", "shared@example.com"}, {"gh-2", "shared@example.com"}}, {});
    CHECK(r.ambiguities.empty());
  }
}

TEST_CASE("dev ids follow platform-A user order") {
  const auto r = link_identities({{"gh-b", "b@x"}, {"gh-a", "a@x"}, {"gh-c", "c@x"}},
                                 {{"so-1", md5_hex("c@x")}, {"so-2", md5_hex("a@x")}, {"so-3", md5_hex("b@x")}});
  REQUIRE(r.links.size() == 3);
  CHECK(r.links[0] == LinkedDeveloper{"dev00000000", "gh-a", "so-2"});
  CHECK(r.links[1] == LinkedDeveloper{"dev00000001", "gh-b", "so-3"});
  CHECK(r.links[2] == LinkedDeveloper{"dev00000002", "gh-c", "so-1"});
}

TEST_CASE("linking is one-to-one and matches an all-pairs comparison") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    GenSpec s = devint::testing::small_spec(seed, 40);
    s.ambiguous_groups = 3;
    const Dataset ds = generate(s).dataset;
    const auto r = link_identities(ds.users_a, ds.users_b);

    std::vector<std::pair<std::string, std::string>> expected;
    for (const auto& a : ds.users_a) {
      const std::string e = normalize_email(a.email);
      if (e.empty()) continue;
      std::vector<std::string> bs;
      for (const auto& b : ds.users_b)
        if (b.email_md5 == md5_hex(e)) bs.push_back(b.user_id);
      std::size_t same = 0;
      for (const auto& a2 : ds.users_a)
        if (!normalize_email(a2.email).empty() && normalize_email(a2.email) == e) ++same;
      if (bs.size() == 1 && same == 1) expected.emplace_back(a.user_id, bs[0]);
    }
    std::vector<std::pair<std::string, std::string>> got;
    for (const auto& l : r.links) got.emplace_back(l.a_user_id, l.b_user_id);
    CHECK(got == expected);
    CHECK(got.size() == s.n_developers);
    CHECK(r.ambiguities.size() == 3);

    std::vector<std::string> bs;
    for (const auto& l : r.links) bs.push_back(l.b_user_id);
    std::sort(bs.begin(), bs.end());
    CHECK(std::adjacent_find(bs.begin(), bs.end()) == bs.end());
  }
}

TEST_CASE("linking ignores input order") {
  const Dataset ds = generate(devint::testing::small_spec(4, 30)).dataset;
  const auto base = link_identities(ds.users_a, ds.users_b);
  std::mt19937_64 rng(9);
  for (int i = 0; i < 5; ++i) {
    auto a = ds.users_a;
    auto b = ds.users_b;
    std::shuffle(a.begin(), a.end(), rng);
    std::shuffle(b.begin(), b.end(), rng);
    const auto r = link_identities(a, b);
    CHECK(r.links == base.links);
    CHECK(r.ambiguities == base.ambiguities);
  }
}
