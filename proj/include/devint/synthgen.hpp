#pragma once

// Synthetic two-platform datasets with planted interest overlap.
//
// The vocabulary is cut into disjoint topic pools. Every item belongs to one
// topic and always carries that topic's anchor tag plus a few more from the
// pool. Each developer draws a repository topic and a distinct question
// topic; with probability `overlap` the question topic is replaced by the
// repository topic. Without noise or empty items, a shared-topic developer
// scores exactly 1 and a split-topic developer exactly 0, so the population
// mean tracks `overlap`. The random stream consumed per developer does not
// depend on `overlap`, which makes the mean monotone in it for a fixed seed.
//
// Repository descriptions embed the planted tags between filler words that
// are not vocabulary tokens, so extraction recovers exactly the planted sets.

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "devint/activity.hpp"
#include "devint/error.hpp"
#include "devint/identity.hpp"
#include "devint/ingest.hpp"
#include "devint/md5.hpp"

namespace devint {

struct IntRange {
  std::uint32_t min = 0;
  std::uint32_t max = 0;
  bool operator==(const IntRange&) const = default;
};

struct GenSpec {
  std::uint64_t n_developers = 50;
  std::uint64_t n_repos = 200;
  std::uint64_t n_questions = 200;
  std::uint64_t vocabulary_size = 60;
  std::uint64_t n_topics = 6;
  IntRange tags_per_item{1, 3};
  std::array<IntRange, kNumKinds> activities{
      IntRange{0, 2}, IntRange{1, 4}, IntRange{0, 2}, IntRange{0, 2},
      IntRange{0, 2}, IntRange{0, 3}, IntRange{0, 2}};
  double overlap = 0.5;
  // Probability that a single activity targets an item of a random topic.
  double noise = 0.0;
  // Probability that an item carries no tags at all.
  double empty_item_fraction = 0.0;
  // Extra unlinked users per platform, as a fraction of n_developers.
  double unlinked_fraction = 0.0;
  // Groups of two platform-A users sharing one email with one B user.
  std::uint64_t ambiguous_groups = 0;
  // Probability of writing an activity twice with different timestamps.
  double duplicate_fraction = 0.0;
  // Guarantee at least one repository and one question per developer.
  bool ensure_both_platforms = true;
  std::uint64_t seed = 42;

  bool operator==(const GenSpec&) const = default;
};

inline void to_json(nlohmann::json& j, const GenSpec& s) {
  nlohmann::json acts = nlohmann::json::object();
  for (ActivityKind k : kAllKinds) {
    const IntRange& r = s.activities[index_of(k)];
    acts[std::string(to_string(k))] = {r.min, r.max};
  }
  j = nlohmann::json{{"n_developers", s.n_developers},
                     {"n_repos", s.n_repos},
                     {"n_questions", s.n_questions},
                     {"vocabulary_size", s.vocabulary_size},
                     {"n_topics", s.n_topics},
                     {"tags_per_item", {s.tags_per_item.min, s.tags_per_item.max}},
                     {"activities", acts},
                     {"overlap", s.overlap},
                     {"noise", s.noise},
                     {"empty_item_fraction", s.empty_item_fraction},
                     {"unlinked_fraction", s.unlinked_fraction},
                     {"ambiguous_groups", s.ambiguous_groups},
                     {"duplicate_fraction", s.duplicate_fraction},
                     {"ensure_both_platforms", s.ensure_both_platforms},
                     {"seed", s.seed}};
}

// Missing keys keep their defaults.
inline GenSpec gen_spec_from_json(const nlohmann::json& j) {
  GenSpec s;
  try {
    auto range = [](const nlohmann::json& v) {
      if (!v.is_array() || v.size() != 2) throw ValidationError("ranges are [min, max] arrays");
      return IntRange{v[0].get<std::uint32_t>(), v[1].get<std::uint32_t>()};
    };
    if (!j.is_object()) throw ValidationError("generator spec must be a JSON object");
    for (const auto& [key, v] : j.items()) {
      if (key == "n_developers") s.n_developers = v.get<std::uint64_t>();
      else if (key == "n_repos") s.n_repos = v.get<std::uint64_t>();
      else if (key == "n_questions") s.n_questions = v.get<std::uint64_t>();
      else if (key == "vocabulary_size") s.vocabulary_size = v.get<std::uint64_t>();
      else if (key == "n_topics") s.n_topics = v.get<std::uint64_t>();
      else if (key == "tags_per_item") s.tags_per_item = range(v);
      else if (key == "overlap") s.overlap = v.get<double>();
      else if (key == "noise") s.noise = v.get<double>();
      else if (key == "empty_item_fraction") s.empty_item_fraction = v.get<double>();
      else if (key == "unlinked_fraction") s.unlinked_fraction = v.get<double>();
      else if (key == "ambiguous_groups") s.ambiguous_groups = v.get<std::uint64_t>();
      else if (key == "duplicate_fraction") s.duplicate_fraction = v.get<double>();
      else if (key == "ensure_both_platforms") s.ensure_both_platforms = v.get<bool>();
      else if (key == "seed") s.seed = v.get<std::uint64_t>();
      else if (key == "activities") {
        if (!v.is_object()) throw ValidationError("\"activities\" must be an object");
        for (const auto& [kind, r] : v.items()) {
          auto k = parse_kind(kind);
          if (!k) throw ValidationError("unknown activity kind \"" + kind + "\"");
          s.activities[index_of(*k)] = range(r);
        }
      } else {
        throw ValidationError("unknown generator spec key \"" + key + "\"");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("generator spec: ") + e.what());
  }
  return s;
}

// The planted ground truth next to the data itself.
struct GeneratedData {
  Dataset dataset;  // canonical
  std::map<std::string, std::vector<std::string>> planted_repo_tags;      // normalized, sorted
  std::map<std::string, std::vector<std::string>> planted_question_tags;  // normalized, sorted
  std::map<std::string, bool> shared_topic;                               // by a_user_id, base devs

  struct RawActivity {
    ActivityRecord record;
    std::string timestamp;
  };
  std::vector<RawActivity> raw_activities;  // in generation order, with repeats
};

namespace detail {

// Portable draws on top of mt19937_64, whose output sequence is fixed by the
// standard (the std distributions are not).
class GenRng {
 public:
  explicit GenRng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;
    while (true) {
      const std::uint64_t x = eng_();
      if (x >= threshold) return x % n;
    }
  }
  std::uint64_t in(IntRange r) { return r.min + below(std::uint64_t{r.max} - r.min + 1); }
  double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  bool chance(double p) { return unit() < p; }

 private:
  std::mt19937_64 eng_;
};

inline std::string base26(std::uint64_t i) {
  std::string s;
  do {
    s.insert(s.begin(), static_cast<char>('a' + i % 26));
    i /= 26;
  } while (i > 0);
  return s;
}

inline std::string synthetic_tag(std::uint64_t i) {
  const std::string stem = "lang" + base26(i);
  switch (i % 5) {
    case 1: return stem + "#";
    case 2: return stem + "++";
    case 3: return stem + ".js";
    case 4: return stem + "-on-rails";
    default: return stem;
  }
}

inline constexpr std::array<const char*, 24> kFiller = {
    "a",       "simple",  "fast",     "toolkit",   "library", "for",    "with",   "and",
    "the",     "demo",    "utility",  "minimal",   "project", "server", "client", "wrapper",
    "plugin",  "sample",  "code",     "notes",     "my",      "config", "scripts", "experimental"};

inline std::string padded(const char* prefix, std::uint64_t i) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s%07llu", prefix, static_cast<unsigned long long>(i));
  return buf;
}

inline std::string capitalize(std::string s) {
  if (!s.empty() && s[0] >= 'a' && s[0] <= 'z') s[0] = static_cast<char>(s[0] - 'a' + 'A');
  return s;
}

inline std::string render_in_description(const std::string& tag, GenRng& rng) {
  std::string word = tag;
  if (tag.find('-') != std::string::npos && rng.chance(0.5)) {
    std::replace(word.begin(), word.end(), '-', ' ');
  }
  if (rng.chance(0.3)) word = capitalize(word);
  switch (rng.below(5)) {
    case 0: return "(" + word + ")";
    case 1: return word + ",";
    case 2: return word + ".";
    default: return word;
  }
}

inline std::string describe(std::vector<std::string> tags, GenRng& rng) {
  for (std::size_t i = tags.size(); i > 1; --i) std::swap(tags[i - 1], tags[rng.below(i)]);
  std::string out = capitalize(kFiller[rng.below(kFiller.size())]);
  for (const auto& t : tags) {
    out += ' ';
    out += render_in_description(t, rng);
    out += ' ';
    out += kFiller[rng.below(kFiller.size())];
  }
  return out;
}

inline void check_fraction(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0))
    throw ValidationError(std::string(name) + " must lie in [0, 1]");
}

}  // namespace detail

inline void validate(const GenSpec& s) {
  auto need = [](bool ok, const std::string& what) {
    if (!ok) throw ValidationError("infeasible generator spec: " + what);
  };
  need(s.n_developers > 0 && s.n_repos > 0 && s.n_questions > 0 && s.vocabulary_size > 0 &&
           s.n_topics > 0,
       "all counts must be positive");
  detail::check_fraction(s.overlap, "overlap");
  detail::check_fraction(s.noise, "noise");
  detail::check_fraction(s.empty_item_fraction, "empty_item_fraction");
  detail::check_fraction(s.unlinked_fraction, "unlinked_fraction");
  detail::check_fraction(s.duplicate_fraction, "duplicate_fraction");
  need(s.n_topics <= s.vocabulary_size, "more topics than vocabulary tags");
  need(s.overlap == 1.0 || s.n_topics >= 2, "split-topic developers need at least two topics");
  need(s.tags_per_item.min >= 1 && s.tags_per_item.min <= s.tags_per_item.max,
       "tags_per_item must satisfy 1 <= min <= max");
  need(s.tags_per_item.max <= s.vocabulary_size / s.n_topics,
       "more tags per item than a topic pool holds");
  need(s.n_repos >= s.n_topics && s.n_questions >= s.n_topics, "fewer items than topics");
  for (ActivityKind k : kAllKinds) {
    const IntRange& r = s.activities[index_of(k)];
    const std::uint64_t pool = (platform_of(k) == Platform::A ? s.n_repos : s.n_questions) / s.n_topics;
    need(r.min <= r.max, "activity range min > max for " + std::string(to_string(k)));
    need(r.max <= pool, "more " + std::string(to_string(k)) + " activities than items per topic");
  }
}

inline GeneratedData generate(const GenSpec& spec) {
  validate(spec);
  detail::GenRng rng(spec.seed);
  GeneratedData out;
  Dataset& ds = out.dataset;
  const std::uint64_t T = spec.n_topics;
  const std::uint64_t per_topic = spec.vocabulary_size / T;

  std::vector<std::string> vocab(spec.vocabulary_size);
  for (std::uint64_t i = 0; i < vocab.size(); ++i) vocab[i] = detail::synthetic_tag(i);
  ds.vocabulary = vocab;

  // Item j belongs to topic j % T.
  auto planted_tags = [&](std::uint64_t topic) {
    std::vector<std::string> tags;
    if (rng.chance(spec.empty_item_fraction)) return tags;
    const std::uint64_t k = rng.in(spec.tags_per_item);
    std::vector<std::uint64_t> pool;
    for (std::uint64_t t = 1; t < per_topic; ++t) pool.push_back(topic * per_topic + t);
    tags.push_back(vocab[topic * per_topic]);
    for (std::uint64_t c = 1; c < k; ++c) {
      const std::uint64_t pick = rng.below(pool.size());
      tags.push_back(vocab[pool[pick]]);
      pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
    }
    return tags;
  };
  for (std::uint64_t j = 0; j < spec.n_repos; ++j) {
    auto tags = planted_tags(j % T);
    RepositoryItem r{detail::padded("repo-", j), detail::describe(tags, rng)};
    std::sort(tags.begin(), tags.end());
    out.planted_repo_tags[r.repo_id] = tags;
    ds.repos.push_back(std::move(r));
  }
  for (std::uint64_t j = 0; j < spec.n_questions; ++j) {
    auto tags = planted_tags(j % T);
    QuestionItem q{detail::padded("question-", j), {}};
    for (const auto& t : tags) {
      switch (rng.below(3)) {
        case 0: q.tags.push_back(detail::capitalize(t)); break;
        case 1: q.tags.push_back(" " + t + " "); break;
        default: q.tags.push_back(t);
      }
    }
    std::sort(tags.begin(), tags.end());
    out.planted_question_tags[q.question_id] = tags;
    ds.questions.push_back(std::move(q));
  }

  // Users: base developers, then unlinked and ambiguous ones.
  struct Actor {
    std::string a_user;  // empty when the actor has no platform-A account
    std::string b_user;
  };
  std::vector<Actor> actors;
  for (std::uint64_t i = 0; i < spec.n_developers; ++i) {
    std::string email = "Dev." + std::to_string(i) + "@Example.org";
    if (i % 7 == 3) email = "  " + email + " ";
    Actor a{detail::padded("gh-", i), detail::padded("so-", i)};
    ds.users_a.push_back({a.a_user, email});
    ds.users_b.push_back({a.b_user, md5_hex(normalize_email(email))});
    actors.push_back(a);
  }
  const auto n_unlinked =
      static_cast<std::uint64_t>(spec.unlinked_fraction * static_cast<double>(spec.n_developers) + 0.5);
  for (std::uint64_t i = 0; i < n_unlinked; ++i) {
    const std::string a_email = i % 3 == 0 ? "" : "ghost." + std::to_string(i) + "@example.net";
    ds.users_a.push_back({detail::padded("gh-x", i), a_email});
    ds.users_b.push_back({detail::padded("so-x", i),
                          i % 4 == 0 ? "" : md5_hex("nobody." + std::to_string(i) + "@example.com")});
    actors.push_back({detail::padded("gh-x", i), ""});
    actors.push_back({"", detail::padded("so-x", i)});
  }
  for (std::uint64_t i = 0; i < spec.ambiguous_groups; ++i) {
    const std::string email = "shared." + std::to_string(i) + "@example.com";
    const std::string b = detail::padded("so-amb", i);
    ds.users_a.push_back({detail::padded("gh-amb-a", i), email});
    ds.users_a.push_back({detail::padded("gh-amb-b", i), email});
    ds.users_b.push_back({b, md5_hex(email)});
    actors.push_back({detail::padded("gh-amb-a", i), b});
    actors.push_back({detail::padded("gh-amb-b", i), ""});
  }

  auto item_in_topic = [&](std::uint64_t n_items, std::uint64_t topic) {
    const std::uint64_t count = (n_items - topic + T - 1) / T;
    return topic + T * rng.below(count);
  };
  auto timestamp = [&] {
    char buf[32];
    std::snprintf(buf, sizeof buf, "2014-%02llu-%02lluT%02llu:00:00Z",
                  static_cast<unsigned long long>(1 + rng.below(12)),
                  static_cast<unsigned long long>(1 + rng.below(28)),
                  static_cast<unsigned long long>(rng.below(24)));
    return std::string(buf);
  };

  for (std::size_t idx = 0; idx < actors.size(); ++idx) {
    const Actor& actor = actors[idx];
    const bool shared = rng.chance(spec.overlap);
    const std::uint64_t repo_topic = rng.below(T);
    std::uint64_t question_topic = T > 1 ? (repo_topic + 1 + rng.below(T - 1)) % T : repo_topic;
    if (shared) question_topic = repo_topic;
    if (idx < spec.n_developers) out.shared_topic[actor.a_user] = shared;

    std::array<std::vector<std::uint64_t>, kNumKinds> chosen;
    auto draw = [&](ActivityKind k) {
      const bool on_a = platform_of(k) == Platform::A;
      const std::uint64_t n_items = on_a ? spec.n_repos : spec.n_questions;
      auto& picks = chosen[index_of(k)];
      for (int attempt = 0; attempt < 16; ++attempt) {
        const std::uint64_t topic =
            rng.chance(spec.noise) ? rng.below(T) : (on_a ? repo_topic : question_topic);
        const std::uint64_t item = item_in_topic(n_items, topic);
        if (std::find(picks.begin(), picks.end(), item) == picks.end()) {
          picks.push_back(item);
          return;
        }
      }
    };
    for (ActivityKind k : kAllKinds) {
      const std::uint64_t n = rng.in(spec.activities[index_of(k)]);
      for (std::uint64_t c = 0; c < n; ++c) draw(k);
    }
    if (spec.ensure_both_platforms) {
      auto none = [&](std::initializer_list<ActivityKind> ks) {
        return std::all_of(ks.begin(), ks.end(), [&](ActivityKind k) { return chosen[index_of(k)].empty(); });
      };
      if (none({ActivityKind::Fork, ActivityKind::Watch, ActivityKind::Commit, ActivityKind::PullRequest}))
        draw(ActivityKind::Watch);
      if (none({ActivityKind::Ask, ActivityKind::Answer, ActivityKind::Favorite}))
        draw(ActivityKind::Answer);
    }

    for (ActivityKind k : kAllKinds) {
      const bool on_a = platform_of(k) == Platform::A;
      const std::string& user = on_a ? actor.a_user : actor.b_user;
      if (user.empty()) continue;
      for (std::uint64_t item : chosen[index_of(k)]) {
        ActivityRecord rec{user, platform_of(k), k,
                           on_a ? ds.repos[item].repo_id : ds.questions[item].question_id};
        const int copies = rng.chance(spec.duplicate_fraction) ? 2 : 1;
        for (int c = 0; c < copies; ++c) out.raw_activities.push_back({rec, timestamp()});
        ds.activities.push_back(std::move(rec));
      }
    }
  }

  canonicalize(ds);
  return out;
}

// Writes the canonical input files, including timestamps and any repeated
// activity lines.
inline void write_generated(const GeneratedData& g, const std::filesystem::path& dir) {
  Dataset without_activities = g.dataset;
  without_activities.activities.clear();
  save_dataset(without_activities, dir);
  const DatasetPaths p = DatasetPaths::in_directory(dir);
  std::ofstream out_a(p.activities_a, std::ios::binary), out_b(p.activities_b, std::ios::binary);
  if (!out_a || !out_b) throw ValidationError("cannot write activities under " + dir.string());
  for (const auto& raw : g.raw_activities) {
    const ActivityRecord& r = raw.record;
    nlohmann::json j{{"user_id", r.user_id},
                     {"kind", std::string(to_string(r.kind))},
                     {"item_id", r.item_id},
                     {"timestamp", raw.timestamp}};
    (r.platform == Platform::A ? out_a : out_b) << j.dump() << '\n';
  }
}

}  // namespace devint
