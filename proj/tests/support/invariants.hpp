#pragma once

// Property checks over one dataset, shared by the unit tests and the
// acceptance runner. Each returns human-readable violations; empty means the
// property holds.

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "devint/engine.hpp"
#include "devint/oracle_check.hpp"
#include "devint/scoring.hpp"
#include "devint/synthgen.hpp"

namespace devint::testing {

// A small generator spec with every knob drawn from `seed`.
inline GenSpec random_spec(std::uint64_t seed) {
  std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + 1);
  auto in = [&](std::uint64_t lo, std::uint64_t hi) { return lo + rng() % (hi - lo + 1); };
  auto unit = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  GenSpec s;
  s.seed = seed;
  s.n_topics = in(2, 5);
  s.n_developers = in(3, 30);
  s.n_repos = in(s.n_topics * 3, 60);
  s.n_questions = in(s.n_topics * 3, 60);
  s.vocabulary_size = in(s.n_topics * 2, 40);
  s.tags_per_item = {1, static_cast<std::uint32_t>(in(1, std::min<std::uint64_t>(3, s.vocabulary_size / s.n_topics)))};
  const std::uint64_t cap_a = std::min<std::uint64_t>(4, s.n_repos / s.n_topics);
  const std::uint64_t cap_b = std::min<std::uint64_t>(4, s.n_questions / s.n_topics);
  for (ActivityKind k : kAllKinds)
    s.activities[index_of(k)] = {0, static_cast<std::uint32_t>(in(0, platform_of(k) == Platform::A ? cap_a : cap_b))};
  s.overlap = unit();
  s.noise = unit() * 0.5;
  s.empty_item_fraction = unit() * 0.2;
  s.unlinked_fraction = unit() * 0.3;
  s.ambiguous_groups = in(0, 2);
  s.duplicate_fraction = unit() * 0.2;
  s.ensure_both_platforms = rng() % 2 == 0;
  return s;
}

inline std::string dev_label(const Engine& e, DevIndex d) {
  return e.developer_link(d).a_user_id + "/" + e.developer_link(d).b_user_id;
}

// Defined scores lie in [0, 1]; with intersection membership the cross
// score is 0 exactly when CI is empty (given a nonzero denominator).
inline std::vector<std::string> check_bounds_and_zero(const Engine& e, const std::vector<ScoreRow>& rows) {
  std::vector<std::string> out;
  for (const ScoreRow& r : rows) {
    const std::string name = all_metrics()[r.metric].name();
    if (r.value && (*r.value < 0 || *r.value > 1))
      out.push_back(dev_label(e, r.dev) + " " + name + " out of range: " + to_fraction(*r.value));
    if (all_metrics()[r.metric].family != MetricFamily::Cross) continue;
    const DeveloperInterests di = e.developer(r.dev);
    const bool ci_empty = common_interests(di).empty();
    const std::size_t denom = r.denom_r + r.denom_q;
    if (denom == 0) {
      if (r.value) out.push_back(dev_label(e, r.dev) + " cross defined with empty denominator");
      continue;
    }
    if (!r.value) {
      out.push_back(dev_label(e, r.dev) + " cross undefined with nonzero denominator");
    } else if ((*r.value == 0) != ci_empty) {
      out.push_back(dev_label(e, r.dev) + " cross is " + to_fraction(*r.value) +
                    (ci_empty ? " but CI is empty" : " but CI is nonempty"));
    }
  }
  return out;
}

// d' in Co(d) iff d in Co(d') for every co-participation kind.
inline std::vector<std::string> check_symmetry(const Engine& e) {
  std::vector<std::string> out;
  const auto n = static_cast<DevIndex>(e.developer_count());
  for (ActivityKind k : kCoParticipationKinds)
    for (DevIndex d = 0; d < n; ++d)
      for (DevIndex other : e.index().co_participants(d, k)) {
        const IdList back = e.index().co_participants(other, k);
        if (!std::binary_search(back.begin(), back.end(), d))
          out.push_back(dev_label(e, other) + " in Co(" + dev_label(e, d) + ") for " +
                        std::string(to_string(k)) + " but not conversely");
      }
  return out;
}

// Shuffles every table (and each question's tag list), scores again, and
// compares per (a_user, b_user).
inline std::vector<std::string> check_permutation(const Dataset& ds, const MetricOptions& opts,
                                                  std::uint64_t seed) {
  const Engine base = Engine::build(ds);
  const auto expected = engine_score_map(base, compute_scores(base, {}, opts));

  Dataset shuffled = ds;
  std::mt19937_64 rng(seed);
  std::shuffle(shuffled.users_a.begin(), shuffled.users_a.end(), rng);
  std::shuffle(shuffled.users_b.begin(), shuffled.users_b.end(), rng);
  std::shuffle(shuffled.repos.begin(), shuffled.repos.end(), rng);
  std::shuffle(shuffled.questions.begin(), shuffled.questions.end(), rng);
  for (auto& q : shuffled.questions) std::shuffle(q.tags.begin(), q.tags.end(), rng);
  std::shuffle(shuffled.activities.begin(), shuffled.activities.end(), rng);
  std::shuffle(shuffled.vocabulary.begin(), shuffled.vocabulary.end(), rng);
  // Repeat a few activity records; duplicates must not matter either.
  for (std::size_t i = 0; i < shuffled.activities.size(); i += 5) shuffled.activities.push_back(shuffled.activities[i]);

  const Engine other = Engine::build(shuffled, 2);
  const auto got = engine_score_map(other, compute_scores(other, {}, opts, 2));
  std::vector<std::string> out;
  for (const Mismatch& m : compare_scores(got, expected))
    out.push_back(m.developer.first + "/" + m.developer.second + " " + m.metric + ": " + m.engine +
                  " after shuffling, " + m.oracle + " before");
  return out;
}

}  // namespace devint::testing
