#pragma once

// Canonical line-delimited JSON input: users, items, activities and the tag
// vocabulary. Every table is held sorted by primary key so that two inputs
// differing only in line order load to equal Datasets.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "devint/activity.hpp"
#include "devint/error.hpp"
#include "devint/tags.hpp"

namespace devint {

struct PlatformAUser {
  std::string user_id;
  std::string email;
  bool operator==(const PlatformAUser&) const = default;
};

struct PlatformBUser {
  std::string user_id;
  std::string email_md5;
  bool operator==(const PlatformBUser&) const = default;
};

struct RepositoryItem {
  std::string repo_id;
  std::string description;
  bool operator==(const RepositoryItem&) const = default;
};

struct QuestionItem {
  std::string question_id;
  std::vector<std::string> tags;
  bool operator==(const QuestionItem&) const = default;
};

struct ActivityRecord {
  std::string user_id;
  Platform platform = Platform::A;
  ActivityKind kind = ActivityKind::Fork;
  std::string item_id;

  auto key() const { return std::tie(platform, user_id, kind, item_id); }
  bool operator==(const ActivityRecord& o) const { return key() == o.key(); }
  bool operator<(const ActivityRecord& o) const { return key() < o.key(); }
};

struct Dataset {
  std::vector<PlatformAUser> users_a;
  std::vector<PlatformBUser> users_b;
  std::vector<RepositoryItem> repos;
  std::vector<QuestionItem> questions;
  std::vector<ActivityRecord> activities;  // deduplicated
  std::vector<std::string> vocabulary;     // normalized, sorted, unique

  bool operator==(const Dataset&) const = default;
};

struct DatasetPaths {
  std::filesystem::path users_a;
  std::filesystem::path users_b;
  std::filesystem::path repos;
  std::filesystem::path questions;
  std::filesystem::path activities_a;
  std::filesystem::path activities_b;
  std::filesystem::path tags;

  static DatasetPaths in_directory(const std::filesystem::path& dir) {
    return {dir / "users_a.jsonl",      dir / "users_b.jsonl",      dir / "repos.jsonl",
            dir / "questions.jsonl",    dir / "activities_a.jsonl", dir / "activities_b.jsonl",
            dir / "tags.txt"};
  }
};

namespace detail {

using json = nlohmann::json;

class JsonlReader {
 public:
  explicit JsonlReader(const std::filesystem::path& path) : path_(path), in_(path) {
    if (!in_) throw ValidationError("cannot open " + path.string());
  }

  // Next non-blank line parsed as a JSON object; false at end of file.
  bool next(json& out) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      if (std::all_of(line.begin(), line.end(), is_ascii_space)) continue;
      try {
        out = json::parse(line);
      } catch (const json::parse_error&) {
        fail("malformed JSON");
      }
      if (!out.is_object()) fail("record is not a JSON object");
      return true;
    }
    return false;
  }

  std::string string_field(const json& obj, const char* name, bool required = true) const {
    auto it = obj.find(name);
    if (it == obj.end()) {
      if (required) fail(std::string("missing field \"") + name + "\"");
      return {};
    }
    if (!it->is_string()) fail(std::string("field \"") + name + "\" is not a string");
    return it->get<std::string>();
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ValidationError(path_.string() + ":" + std::to_string(line_no_) + ": " + what);
  }

  std::size_t line() const { return line_no_; }

 private:
  std::filesystem::path path_;
  std::ifstream in_;
  std::size_t line_no_ = 0;
};

inline bool is_md5_hex(std::string_view s) {
  if (s.size() != 32) return false;
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f'); });
}

template <typename T, typename KeyFn>
void sort_and_check_unique(std::vector<T>& rows, KeyFn key, const std::filesystem::path& file,
                           std::string_view what) {
  std::sort(rows.begin(), rows.end(), [&](const T& a, const T& b) { return key(a) < key(b); });
  auto dup = std::adjacent_find(rows.begin(), rows.end(),
                                [&](const T& a, const T& b) { return key(a) == key(b); });
  if (dup != rows.end())
    throw ValidationError(file.string() + ": duplicate " + std::string(what) + " " + key(*dup));
}

inline void load_activities(const std::filesystem::path& file, Platform platform,
                            const std::unordered_set<std::string>& users,
                            const std::unordered_set<std::string>& items,
                            std::vector<ActivityRecord>& out) {
  JsonlReader reader(file);
  json obj;
  while (reader.next(obj)) {
    ActivityRecord rec;
    rec.platform = platform;
    rec.user_id = reader.string_field(obj, "user_id");
    const std::string kind = reader.string_field(obj, "kind");
    rec.item_id = reader.string_field(obj, "item_id");
    reader.string_field(obj, "timestamp", /*required=*/false);  // type-checked, otherwise unused

    auto k = parse_kind(kind);
    if (!k || platform_of(*k) != platform)
      reader.fail("activity kind \"" + kind + "\" is not legal for platform " +
                  std::string(to_string(platform)));
    rec.kind = *k;
    if (!users.contains(rec.user_id))
      reader.fail("dangling reference " + rec.user_id + " (unknown user in " + kind +
                  " activity on " + rec.item_id + ")");
    if (!items.contains(rec.item_id))
      reader.fail("dangling reference " + rec.item_id + " (" + kind + " by " + rec.user_id + ")");
    out.push_back(std::move(rec));
  }
}

}  // namespace detail

// Sorts every table by key, collapses repeated activities and normalizes
// the vocabulary. Loading always yields a canonical Dataset.
inline void canonicalize(Dataset& ds) {
  auto by = [](auto member) {
    return [member](const auto& x, const auto& y) { return x.*member < y.*member; };
  };
  std::sort(ds.users_a.begin(), ds.users_a.end(), by(&PlatformAUser::user_id));
  std::sort(ds.users_b.begin(), ds.users_b.end(), by(&PlatformBUser::user_id));
  std::sort(ds.repos.begin(), ds.repos.end(), by(&RepositoryItem::repo_id));
  std::sort(ds.questions.begin(), ds.questions.end(), by(&QuestionItem::question_id));
  std::sort(ds.activities.begin(), ds.activities.end());
  ds.activities.erase(std::unique(ds.activities.begin(), ds.activities.end()), ds.activities.end());
  for (auto& t : ds.vocabulary) t = normalize_tag(t);
  std::erase_if(ds.vocabulary, [](const std::string& t) { return t.empty(); });
  std::sort(ds.vocabulary.begin(), ds.vocabulary.end());
  ds.vocabulary.erase(std::unique(ds.vocabulary.begin(), ds.vocabulary.end()), ds.vocabulary.end());
}

inline Dataset load_dataset(const DatasetPaths& paths) {
  using detail::json;
  Dataset ds;

  {
    detail::JsonlReader r(paths.users_a);
    json obj;
    while (r.next(obj)) {
      PlatformAUser u{r.string_field(obj, "user_id"), r.string_field(obj, "email", false)};
      if (u.user_id.empty()) r.fail("empty user_id");
      ds.users_a.push_back(std::move(u));
    }
    detail::sort_and_check_unique(ds.users_a, [](const auto& u) -> const std::string& { return u.user_id; },
                                  paths.users_a, "user_id");
  }
  {
    detail::JsonlReader r(paths.users_b);
    json obj;
    while (r.next(obj)) {
      PlatformBUser u{r.string_field(obj, "user_id"), r.string_field(obj, "email_md5", false)};
      if (u.user_id.empty()) r.fail("empty user_id");
      if (!u.email_md5.empty() && !detail::is_md5_hex(u.email_md5))
        r.fail("email_md5 must be empty or 32 lowercase hex characters");
      ds.users_b.push_back(std::move(u));
    }
    detail::sort_and_check_unique(ds.users_b, [](const auto& u) -> const std::string& { return u.user_id; },
                                  paths.users_b, "user_id");
  }
  {
    detail::JsonlReader r(paths.repos);
    json obj;
    while (r.next(obj)) {
      RepositoryItem it{r.string_field(obj, "repo_id"), r.string_field(obj, "description", false)};
      if (it.repo_id.empty()) r.fail("empty repo_id");
      ds.repos.push_back(std::move(it));
    }
    detail::sort_and_check_unique(ds.repos, [](const auto& x) -> const std::string& { return x.repo_id; }, paths.repos,
                                  "repo_id");
  }
  {
    detail::JsonlReader r(paths.questions);
    json obj;
    while (r.next(obj)) {
      QuestionItem q;
      q.question_id = r.string_field(obj, "question_id");
      if (q.question_id.empty()) r.fail("empty question_id");
      auto it = obj.find("tags");
      if (it != obj.end()) {
        if (!it->is_array()) r.fail("field \"tags\" is not an array");
        for (const auto& t : *it) {
          if (!t.is_string()) r.fail("field \"tags\" contains a non-string");
          q.tags.push_back(t.get<std::string>());
        }
      }
      ds.questions.push_back(std::move(q));
    }
    detail::sort_and_check_unique(ds.questions, [](const auto& x) -> const std::string& { return x.question_id; },
                                  paths.questions, "question_id");
  }
  {
    std::ifstream in(paths.tags);
    if (!in) throw ValidationError("cannot open " + paths.tags.string());
    std::string line;
    while (std::getline(in, line)) {
      std::string t = normalize_tag(line);
      if (!t.empty()) ds.vocabulary.push_back(std::move(t));
    }
    std::sort(ds.vocabulary.begin(), ds.vocabulary.end());
    ds.vocabulary.erase(std::unique(ds.vocabulary.begin(), ds.vocabulary.end()),
                        ds.vocabulary.end());
  }

  std::unordered_set<std::string> a_ids, b_ids, repo_ids, question_ids;
  for (const auto& u : ds.users_a) a_ids.insert(u.user_id);
  for (const auto& u : ds.users_b) b_ids.insert(u.user_id);
  for (const auto& r : ds.repos) repo_ids.insert(r.repo_id);
  for (const auto& q : ds.questions) question_ids.insert(q.question_id);

  detail::load_activities(paths.activities_a, Platform::A, a_ids, repo_ids, ds.activities);
  detail::load_activities(paths.activities_b, Platform::B, b_ids, question_ids, ds.activities);
  canonicalize(ds);
  return ds;
}

inline Dataset load_dataset(const std::filesystem::path& dir) {
  return load_dataset(DatasetPaths::in_directory(dir));
}

// Writes the canonical files. Timestamps are not retained by load, so
// activities are written without them.
inline void save_dataset(const Dataset& ds, const std::filesystem::path& dir) {
  using detail::json;
  std::filesystem::create_directories(dir);
  const DatasetPaths p = DatasetPaths::in_directory(dir);
  auto open = [](const std::filesystem::path& f) {
    std::ofstream out(f, std::ios::binary);
    if (!out) throw ValidationError("cannot write " + f.string());
    return out;
  };
  {
    auto out = open(p.users_a);
    for (const auto& u : ds.users_a)
      out << json{{"user_id", u.user_id}, {"email", u.email}}.dump() << '\n';
  }
  {
    auto out = open(p.users_b);
    for (const auto& u : ds.users_b)
      out << json{{"user_id", u.user_id}, {"email_md5", u.email_md5}}.dump() << '\n';
  }
  {
    auto out = open(p.repos);
    for (const auto& r : ds.repos)
      out << json{{"repo_id", r.repo_id}, {"description", r.description}}.dump() << '\n';
  }
  {
    auto out = open(p.questions);
    for (const auto& q : ds.questions)
      out << json{{"question_id", q.question_id}, {"tags", q.tags}}.dump() << '\n';
  }
  {
    auto out_a = open(p.activities_a);
    auto out_b = open(p.activities_b);
    for (const auto& a : ds.activities) {
      auto& out = a.platform == Platform::A ? out_a : out_b;
      out << json{{"user_id", a.user_id}, {"kind", std::string(to_string(a.kind))}, {"item_id", a.item_id}}.dump()
          << '\n';
    }
  }
  {
    auto out = open(p.tags);
    for (const auto& t : ds.vocabulary) out << t << '\n';
  }
}

}  // namespace devint
