#include <catch2/catch_amalgamated.hpp>

#include "devint/engine.hpp"
#include "devint/interests.hpp"
#include "devint/oracle.hpp"
#include "devint/synthgen.hpp"
#include "support/test_support.hpp"

using namespace devint;
using Set = InterestSet;

namespace {

Set repo_set(const Engine& e, const std::string& id) {
  return e.catalog().interest_set(Platform::A, *e.catalog().find(Platform::A, id));
}
Set question_set(const Engine& e, const std::string& id) {
  return e.catalog().interest_set(Platform::B, *e.catalog().find(Platform::B, id));
}

}  // namespace

TEST_CASE("item interests of the one-developer fixture") {
  const Engine e = Engine::build(load_dataset(devint::testing::fixture("one_developer")));
  CHECK(repo_set(e, "A") == Set{"android", "java"});
  CHECK(repo_set(e, "B") == Set{"java"});
  CHECK(repo_set(e, "C") == Set{"c#"});
  CHECK(question_set(e, "D") == Set{"android"});
  CHECK(question_set(e, "E") == Set{"java"});
  CHECK(question_set(e, "F") == Set{"ios"});
}

TEST_CASE("developer interest unions of the one-developer fixture") {
  const Engine e = Engine::build(load_dataset(devint::testing::fixture("one_developer")));
  REQUIRE(e.developer_count() == 1);
  const DeveloperInterests d = e.developer(0);
  CHECK(to_interest_set(d.gh, e.catalog().vocabulary()) == Set{"android", "c#", "java"});
  CHECK(to_interest_set(d.so, e.catalog().vocabulary()) == Set{"android", "ios", "java"});
  CHECK(d.repos.size() == 3);
  CHECK(d.questions.size() == 3);
  CHECK(d.of(ActivityKind::Fork).size() == 2);
  CHECK(d.of(ActivityKind::Favorite).size() == 2);
}

TEST_CASE("question tags outside the vocabulary are dropped") {
  const TagVocabulary v(std::vector<std::string>{"java", "c#"});
  const QuestionItem q{"q", {" Java", "JAVA", "kotlin", "C#", ""}};
  CHECK(question_interests(q, v) == Set{"c#", "java"});
  CHECK(question_interests({"q", {}}, v).empty());
}

TEST_CASE("repository interests come from the description only") {
  const TagVocabulary v(std::vector<std::string>{"java", "javascript", "c#"});
  CHECK(repo_interests({"r", "JavaScript tools"}, v) == Set{"javascript"});
  CHECK(repo_interests({"r", ""}, v).empty());
  CHECK(repo_interests({"r", "C# and Java"}, v) == Set{"c#", "java"});
}

TEST_CASE("catalog interests equal the oracle's on generated data") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Dataset ds = generate(devint::testing::small_spec(seed)).dataset;
    const ItemCatalog c = ItemCatalog::build(ds, 2);
    for (const auto& r : ds.repos) {
      Set expected;
      for (const auto& t : ds.vocabulary)
        if (oracle::word_boundary_match(r.description, t)) expected.insert(t);
      CHECK(c.interest_set(Platform::A, *c.find(Platform::A, r.repo_id)) == expected);
    }
  }
}

TEST_CASE("planted tags are recovered exactly from descriptions") {
  const auto g = generate(devint::testing::small_spec(8, 20, 120));
  const ItemCatalog c = ItemCatalog::build(g.dataset);
  for (const auto& [id, tags] : g.planted_repo_tags) {
    const Set got = c.interest_set(Platform::A, *c.find(Platform::A, id));
    CHECK(got == Set(tags.begin(), tags.end()));
  }
  for (const auto& [id, tags] : g.planted_question_tags) {
    const Set got = c.interest_set(Platform::B, *c.find(Platform::B, id));
    CHECK(got == Set(tags.begin(), tags.end()));
  }
}

TEST_CASE("catalog build does not depend on thread count") {
  const Dataset ds = generate(devint::testing::small_spec(3, 20, 200)).dataset;
  const ItemCatalog one = ItemCatalog::build(ds, 1);
  const ItemCatalog four = ItemCatalog::build(ds, 4);
  for (Platform p : {Platform::A, Platform::B})
    for (ItemIndex i = 0; i < one.size(p); ++i) {
      CHECK(one.item_id(p, i) == four.item_id(p, i));
      CHECK(one.interest_set(p, i) == four.interest_set(p, i));
    }
}
