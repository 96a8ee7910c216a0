#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

#include "devint/error.hpp"

namespace devint {

enum class Platform : std::uint8_t { A, B };

// Platform A: repository activities. Platform B: question activities.
enum class ActivityKind : std::uint8_t {
  Fork,
  Watch,
  Commit,
  PullRequest,
  Ask,
  Answer,
  Favorite,
};

inline constexpr std::size_t kNumKinds = 7;

inline constexpr std::array<ActivityKind, kNumKinds> kAllKinds = {
    ActivityKind::Fork,   ActivityKind::Watch,  ActivityKind::Commit,
    ActivityKind::PullRequest, ActivityKind::Ask, ActivityKind::Answer,
    ActivityKind::Favorite};

// Pair ordering follows the conventional Fork, Commit, Pull-Request, Watch
// listing on the repository side.
inline constexpr std::array<ActivityKind, 4> kRepoPairKinds = {
    ActivityKind::Fork, ActivityKind::Commit, ActivityKind::PullRequest,
    ActivityKind::Watch};
inline constexpr std::array<ActivityKind, 3> kQuestionPairKinds = {
    ActivityKind::Ask, ActivityKind::Answer, ActivityKind::Favorite};

// Kinds that carry a co-participation score. Ask has none.
inline constexpr std::array<ActivityKind, 6> kCoParticipationKinds = {
    ActivityKind::Fork,   ActivityKind::Watch,  ActivityKind::Commit,
    ActivityKind::PullRequest, ActivityKind::Answer, ActivityKind::Favorite};

constexpr std::size_t index_of(ActivityKind k) { return static_cast<std::size_t>(k); }

constexpr Platform platform_of(ActivityKind k) {
  return index_of(k) <= index_of(ActivityKind::PullRequest) ? Platform::A : Platform::B;
}

constexpr std::string_view to_string(ActivityKind k) {
  switch (k) {
    case ActivityKind::Fork: return "fork";
    case ActivityKind::Watch: return "watch";
    case ActivityKind::Commit: return "commit";
    case ActivityKind::PullRequest: return "pull_request";
    case ActivityKind::Ask: return "ask";
    case ActivityKind::Answer: return "answer";
    case ActivityKind::Favorite: return "favorite";
  }
  return "?";
}

constexpr std::string_view to_string(Platform p) { return p == Platform::A ? "A" : "B"; }

inline std::optional<ActivityKind> parse_kind(std::string_view s) {
  for (ActivityKind k : kAllKinds)
    if (to_string(k) == s) return k;
  return std::nullopt;
}

inline bool has_co_participation(ActivityKind k) { return k != ActivityKind::Ask; }

}  // namespace devint
