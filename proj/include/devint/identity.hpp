#pragma once

// Base-developer linking: a platform-A user and a platform-B user are the
// same developer when the MD5 of the A user's normalized email equals the
// B user's stored hash. Links are one-to-one; a hash claimed by more than
// one user on either side is dropped and reported.

#include <algorithm>
#include <cstdio>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "devint/ingest.hpp"
#include "devint/md5.hpp"
#include "devint/tags.hpp"

namespace devint {

struct LinkedDeveloper {
  std::string dev_id;
  std::string a_user_id;
  std::string b_user_id;
  bool operator==(const LinkedDeveloper&) const = default;
};

struct Ambiguity {
  std::string email_md5;
  std::vector<std::string> a_user_ids;  // sorted
  std::vector<std::string> b_user_ids;  // sorted
  bool operator==(const Ambiguity&) const = default;
};

struct LinkResult {
  std::vector<LinkedDeveloper> links;  // sorted by a_user_id; dev_id follows that order
  std::vector<Ambiguity> ambiguities;  // sorted by hash
};

// Trim surrounding whitespace, lowercase ASCII letters.
inline std::string normalize_email(std::string_view raw) { return trim_and_lower(raw); }

inline std::string make_dev_id(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "dev%08zu", index);
  return buf;
}

inline LinkResult link_identities(const std::vector<PlatformAUser>& users_a,
                                  const std::vector<PlatformBUser>& users_b) {
  struct Claims {
    std::vector<std::string> a, b;
  };
  std::map<std::string, Claims> by_hash;
  for (const auto& u : users_a) {
    std::string email = normalize_email(u.email);
    if (email.empty()) continue;
    by_hash[md5_hex(email)].a.push_back(u.user_id);
  }
  for (const auto& u : users_b) {
    if (u.email_md5.empty()) continue;
    auto it = by_hash.find(u.email_md5);
    if (it != by_hash.end()) it->second.b.push_back(u.user_id);
  }

  LinkResult result;
  for (auto& [hash, claims] : by_hash) {
    if (claims.b.empty()) continue;
    if (claims.a.size() == 1 && claims.b.size() == 1) {
      result.links.push_back({{}, claims.a.front(), claims.b.front()});
    } else {
      std::sort(claims.a.begin(), claims.a.end());
      std::sort(claims.b.begin(), claims.b.end());
      result.ambiguities.push_back({hash, std::move(claims.a), std::move(claims.b)});
    }
  }
  std::sort(result.links.begin(), result.links.end(), [](const auto& x, const auto& y) {
    return x.a_user_id < y.a_user_id;
  });
  for (std::size_t i = 0; i < result.links.size(); ++i) result.links[i].dev_id = make_dev_id(i);
  return result;
}

}  // namespace devint
