#pragma once

// Interest-similarity scores.
//
// Cross-platform: CI(d) = I_gh(d) ∩ I_so(d); an item of d is shared when its
// interest set meets CI(d); the score is the shared fraction of all of d's
// repositories and questions. Pair scores repeat the computation on one
// repository kind and one question kind.
//
// Co-participation for kind k: Co(d) is every other developer with a common
// k-item. For each d' in Co(d), the ratio is the fraction of d''s k-items
// whose interests meet the union of d's k-item interests; the score is the
// unweighted mean of those ratios.

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "devint/activity.hpp"
#include "devint/error.hpp"
#include "devint/index.hpp"
#include "devint/interests.hpp"
#include "devint/rational.hpp"
#include "devint/setops.hpp"

namespace devint {

// How "I(i) ∈ CI(d)" is read when deciding whether an item is shared.
enum class Membership {
  Intersection,  // I(i) ∩ CI(d) ≠ ∅
  Subset,        // ∅ ≠ I(i) ⊆ CI(d)
};

// Pair scores when exactly one of the two restricted item sets is empty.
enum class EmptySidePolicy {
  Undefined,
  Zero,  // plain ratio over the nonempty side (CI is empty, so 0)
};

struct MetricOptions {
  Membership membership = Membership::Intersection;
  EmptySidePolicy empty_side = EmptySidePolicy::Undefined;
};

struct RestrictedScore {
  TagSet ci;
  IdList shared_r;
  IdList shared_q;
  std::size_t denom_r = 0;
  std::size_t denom_q = 0;
  std::optional<Rational> score;  // nullopt when denom_r + denom_q == 0
};

struct CrossPlatformScore : RestrictedScore {
  DevIndex dev = 0;
};

struct PairScore : RestrictedScore {
  DevIndex dev = 0;
  ActivityKind gh_kind = ActivityKind::Fork;
  ActivityKind so_kind = ActivityKind::Ask;
};

struct CoParticipationScore {
  DevIndex dev = 0;
  ActivityKind kind = ActivityKind::Fork;
  std::size_t neighbor_count = 0;
  std::optional<Rational> score;  // nullopt when neighbor_count == 0
};

inline bool item_is_shared(std::span<const TagId> item_tags, std::span<const TagId> ci,
                           Membership m) {
  if (m == Membership::Subset) return !item_tags.empty() && is_subset(item_tags, ci);
  return intersects(item_tags, ci);
}

inline TagSet common_interests(const DeveloperInterests& d) { return set_intersection(d.gh, d.so); }

inline IdList shared_subset(const ItemCatalog& catalog, Platform p,
                            std::span<const ItemIndex> items, std::span<const TagId> ci,
                            Membership m) {
  IdList out;
  if (ci.empty()) return out;
  for (ItemIndex i : items)
    if (item_is_shared(catalog.interests(p, i), ci, m)) out.push_back(i);
  return out;
}

inline std::pair<IdList, IdList> shared_items(const ItemCatalog& catalog,
                                              const DeveloperInterests& d,
                                              Membership m = Membership::Intersection) {
  const TagSet ci = common_interests(d);
  return {shared_subset(catalog, Platform::A, d.repos, ci, m),
          shared_subset(catalog, Platform::B, d.questions, ci, m)};
}

// Score over an arbitrary (repositories, questions) restriction. Both item
// lists must be sorted and duplicate-free.
inline RestrictedScore score_item_sets(const ItemCatalog& catalog,
                                       std::span<const ItemIndex> repos,
                                       std::span<const ItemIndex> questions, Membership m) {
  RestrictedScore s;
  const TagSet gh = union_interests(catalog, Platform::A, repos);
  const TagSet so = union_interests(catalog, Platform::B, questions);
  s.ci = set_intersection(gh, so);
  s.shared_r = shared_subset(catalog, Platform::A, repos, s.ci, m);
  s.shared_q = shared_subset(catalog, Platform::B, questions, s.ci, m);
  s.denom_r = repos.size();
  s.denom_q = questions.size();
  const std::size_t denom = s.denom_r + s.denom_q;
  if (denom > 0) s.score = Rational(s.shared_r.size() + s.shared_q.size(), denom);
  return s;
}

inline CrossPlatformScore cross_platform_similarity(const ItemCatalog& catalog,
                                                    const DeveloperInterests& d,
                                                    const MetricOptions& opts = {}) {
  CrossPlatformScore out;
  static_cast<RestrictedScore&>(out) = score_item_sets(catalog, d.repos, d.questions, opts.membership);
  out.dev = d.dev;
  return out;
}

inline PairScore pair_similarity(const ItemCatalog& catalog, const DeveloperInterests& d,
                                 ActivityKind gh_kind, ActivityKind so_kind,
                                 const MetricOptions& opts = {}) {
  if (platform_of(gh_kind) != Platform::A || platform_of(so_kind) != Platform::B)
    throw UsageError("invalid activity pair " + std::string(to_string(gh_kind)) + ":" +
                     std::string(to_string(so_kind)));
  PairScore out;
  const IdList& repos = d.of(gh_kind);
  const IdList& questions = d.of(so_kind);
  static_cast<RestrictedScore&>(out) = score_item_sets(catalog, repos, questions, opts.membership);
  out.dev = d.dev;
  out.gh_kind = gh_kind;
  out.so_kind = so_kind;
  if (opts.empty_side == EmptySidePolicy::Undefined && (repos.empty() || questions.empty()))
    out.score.reset();
  return out;
}

// Items of `other` (kind k) whose interests meet the union of `d`'s k-item
// interests.
inline IdList shared_activity_items(const ItemCatalog& catalog, const DeveloperInterests& d,
                                    const DeveloperInterests& other, ActivityKind k) {
  const Platform p = platform_of(k);
  const TagSet pool = union_interests(catalog, p, d.of(k));
  IdList out;
  for (ItemIndex i : other.of(k))
    if (intersects(catalog.interests(p, i), pool)) out.push_back(i);
  return out;
}

// Co-participation scoring over the participation index. Holds per-thread
// scratch (epoch-stamped marks over developers, tags and items), so one
// instance must not be shared between threads.
class CoParticipationScorer {
 public:
  CoParticipationScorer(const ParticipationIndex& index, const ItemCatalog& catalog)
      : index_(index), catalog_(catalog) {
    dev_mark_.assign(index.developer_count(), 0);
    tag_mark_.assign(catalog.vocabulary().size(), 0);
    for (Platform p : {Platform::A, Platform::B}) item_mark_[slot(p)].assign(catalog.size(p), 0);
  }

  // Calls fn(neighbor, shared_count, neighbor_item_count) once per member of
  // Co^k(d), in no particular order.
  template <typename Fn>
  void for_each_neighbor(DevIndex d, ActivityKind k, Fn&& fn) {
    check(d, k);
    const Platform p = platform_of(k);
    const auto own = index_.items_of(d, k);
    if (own.empty()) return;

    const std::uint32_t epoch = next_epoch();
    neighbors_.clear();
    dev_mark_[d] = epoch;
    for (ItemIndex i : own)
      for (DevIndex other : index_.participants(i, k))
        if (dev_mark_[other] != epoch) {
          dev_mark_[other] = epoch;
          neighbors_.push_back(other);
        }
    if (neighbors_.empty()) return;

    for (ItemIndex i : own)
      for (TagId t : catalog_.interests(p, i)) tag_mark_[t] = epoch;

    // item_mark_ = 2*epoch when the item meets the pool, 2*epoch+1 when not.
    auto& item_mark = item_mark_[slot(p)];
    const std::uint64_t hit = 2 * std::uint64_t{epoch}, miss = hit + 1;
    for (DevIndex other : neighbors_) {
      const auto items = index_.items_of(other, k);
      std::size_t shared = 0;
      for (ItemIndex i : items) {
        if (item_mark[i] != hit && item_mark[i] != miss) {
          bool meets = false;
          for (TagId t : catalog_.interests(p, i))
            if (tag_mark_[t] == epoch) {
              meets = true;
              break;
            }
          item_mark[i] = meets ? hit : miss;
        }
        if (item_mark[i] == hit) ++shared;
      }
      fn(other, shared, items.size());
    }
  }

  CoParticipationScore score(DevIndex d, ActivityKind k) {
    CoParticipationScore out;
    out.dev = d;
    out.kind = k;
    // Group ratios by denominator so that exact addition happens once per
    // distinct neighbor item count.
    touched_.clear();
    for_each_neighbor(d, k, [&](DevIndex, std::size_t shared, std::size_t total) {
      if (total >= by_denominator_.size()) {
        by_denominator_.resize(total + 1, 0);
        seen_.resize(total + 1, 0);
      }
      if (!seen_[total]) {
        seen_[total] = 1;
        touched_.push_back(total);
      }
      by_denominator_[total] += shared;
      ++out.neighbor_count;
    });
    if (out.neighbor_count == 0) return out;
    std::sort(touched_.begin(), touched_.end());
    Rational sum = 0;
    for (std::size_t den : touched_) {
      if (by_denominator_[den] != 0) sum += Rational(by_denominator_[den], den);
      by_denominator_[den] = 0;
      seen_[den] = 0;
    }
    out.score = sum / out.neighbor_count;
    return out;
  }

 private:
  static std::size_t slot(Platform p) { return p == Platform::A ? 0 : 1; }

  void check(DevIndex d, ActivityKind k) const {
    if (!has_co_participation(k))
      throw UsageError("no co-participation score is defined for kind " +
                       std::string(to_string(k)));
    if (d >= index_.developer_count())
      throw UsageError("unknown developer index " + std::to_string(d));
  }

  std::uint32_t next_epoch() {
    if (++epoch_ == 0x7fffffffu) {
      std::fill(dev_mark_.begin(), dev_mark_.end(), 0);
      std::fill(tag_mark_.begin(), tag_mark_.end(), 0);
      for (auto& m : item_mark_) std::fill(m.begin(), m.end(), 0);
      epoch_ = 1;
    }
    return epoch_;
  }

  const ParticipationIndex& index_;
  const ItemCatalog& catalog_;
  std::uint32_t epoch_ = 0;
  std::vector<std::uint32_t> dev_mark_;
  std::vector<std::uint32_t> tag_mark_;
  std::array<std::vector<std::uint64_t>, 2> item_mark_;
  IdList neighbors_;
  std::vector<std::uint64_t> by_denominator_;
  std::vector<std::uint8_t> seen_;
  std::vector<std::size_t> touched_;
};

inline CoParticipationScore co_participation_similarity(const ParticipationIndex& index,
                                                        const ItemCatalog& catalog, DevIndex d,
                                                        ActivityKind k) {
  CoParticipationScorer scorer(index, catalog);
  return scorer.score(d, k);
}

}  // namespace devint
