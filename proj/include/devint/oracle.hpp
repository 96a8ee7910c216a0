#pragma once

// Straight-from-definition scores for small datasets, used to check the
// indexed engine. Works on string ids and std::set throughout, finds tags in
// descriptions with one regular expression per tag, links identities by
// comparing every A user against every B user, and finds co-participants by
// scanning all developer pairs. Only the Dataset types are shared with the
// engine.

#include <algorithm>
#include <cstdio>
#include <map>
#include <optional>
#include <regex>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <openssl/evp.h>

#include "devint/error.hpp"
#include "devint/ingest.hpp"
#include "devint/rational.hpp"

namespace devint::oracle {

struct Options {
  bool subset_membership = false;  // ∅ ≠ I(i) ⊆ CI(d) instead of I(i) ∩ CI(d) ≠ ∅
  bool empty_side_zero = false;    // pair with one empty side scores 0 instead of undefined
  std::size_t max_developers = 200;
};

using DeveloperKey = std::pair<std::string, std::string>;  // (a_user_id, b_user_id)
using ScoreMap = std::map<DeveloperKey, std::map<std::string, std::optional<Rational>>>;

namespace detail {

inline std::string lowercase(std::string s) {
  for (char& c : s)
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c + ('a' - 'A'));
  return s;
}

inline std::string trimmed_lower(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\n\r\f\v");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\n\r\f\v");
  return lowercase(s.substr(b, e - b + 1));
}

inline std::string md5_of(const std::string& s) {
  unsigned char d[EVP_MAX_MD_SIZE];
  unsigned int n = 0;
  EVP_Digest(s.data(), s.size(), d, &n, EVP_md5(), nullptr);
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < n; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", d[i]);
    hex += buf;
  }
  return hex;
}

inline const std::string kSep = "[^a-z0-9#+.\\-]";

inline std::string escape_regex(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (std::string(".^$|()[]{}*+?\\/").find(c) != std::string::npos) out += '\\';
    out += c;
  }
  return out;
}

inline std::vector<std::string> split_regex(const std::string& s, const std::string& sep) {
  std::vector<std::string> out;
  const std::regex re(sep);
  for (std::sregex_token_iterator it(s.begin(), s.end(), re, -1), end; it != end; ++it)
    out.push_back(it->str());
  return out;
}

inline std::string sequence_regex(const std::vector<std::string>& parts) {
  std::string re;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) re += kSep + "+";
    re += escape_regex(parts[i]);
    if (parts[i].back() != '.') re += "\\.*";
  }
  return re;
}

}  // namespace detail

// Word-boundary pattern for a normalized tag: the tag (split on separator
// characters) or, for hyphenated tags, its '-'-separated words, each allowed
// trailing dots, delimited by start/end of text or a non-token character.
// Returns nullopt for a tag with no token characters.
inline std::optional<std::regex> tag_regex(const std::string& tag) {
  std::vector<std::string> whole;
  for (auto& p : detail::split_regex(tag, detail::kSep + "+"))
    if (!p.empty()) whole.push_back(p);
  if (whole.empty()) return std::nullopt;

  std::vector<std::string> alternatives{detail::sequence_regex(whole)};
  if (tag.find('-') != std::string::npos) {
    std::vector<std::string> words;
    bool ok = true;
    for (const auto& chunk : whole)
      for (auto& w : detail::split_regex(chunk, "-")) {
        if (w.empty()) ok = false;
        words.push_back(w);
      }
    // a trailing '-' yields no empty token from the split; catch it here
    for (const auto& chunk : whole)
      if (!chunk.empty() && (chunk.back() == '-' || chunk.front() == '-')) ok = false;
    if (ok && words.size() >= 2) alternatives.push_back(detail::sequence_regex(words));
  }
  std::string body;
  for (std::size_t i = 0; i < alternatives.size(); ++i) body += (i ? "|" : "") + alternatives[i];
  return std::regex("(^|" + detail::kSep + ")(?:" + body + ")(?=$|" + detail::kSep + ")",
                    std::regex::ECMAScript | std::regex::optimize);
}

inline bool word_boundary_match(const std::string& description, const std::string& tag) {
  const auto re = tag_regex(tag);
  return re && std::regex_search(detail::lowercase(description), *re);
}

inline ScoreMap brute_force_scores(const Dataset& ds, const Options& opts = {}) {
  using Set = std::set<std::string>;

  // Identity links.
  std::vector<DeveloperKey> devs;
  std::map<std::string, std::string> a_hash;
  for (const auto& a : ds.users_a) {
    const std::string e = detail::trimmed_lower(a.email);
    if (!e.empty()) a_hash[a.user_id] = detail::md5_of(e);
  }
  for (const auto& [a_id, h] : a_hash) {
    std::vector<std::string> bs;
    for (const auto& b : ds.users_b)
      if (!b.email_md5.empty() && b.email_md5 == h) bs.push_back(b.user_id);
    if (bs.size() != 1) continue;
    std::size_t claimants = 0;
    for (const auto& [other, h2] : a_hash)
      if (h2 == h) ++claimants;
    if (claimants == 1) devs.emplace_back(a_id, bs.front());
  }
  if (devs.size() > opts.max_developers)
    throw ValidationError("oracle limited to " + std::to_string(opts.max_developers) +
                          " developers, dataset has " + std::to_string(devs.size()));

  // Item interests.
  const Set vocab(ds.vocabulary.begin(), ds.vocabulary.end());
  std::map<std::string, Set> interest_a, interest_b;
  std::vector<std::pair<std::string, std::optional<std::regex>>> patterns;
  for (const auto& t : vocab) patterns.emplace_back(t, tag_regex(t));
  for (const auto& r : ds.repos) {
    const std::string text = detail::lowercase(r.description);
    Set& s = interest_a[r.repo_id];
    for (const auto& [t, re] : patterns)
      if (re && std::regex_search(text, *re)) s.insert(t);
  }
  for (const auto& q : ds.questions) {
    Set& s = interest_b[q.question_id];
    for (const auto& raw : q.tags) {
      const std::string t = detail::trimmed_lower(raw);
      if (vocab.count(t)) s.insert(t);
    }
  }

  // Items per developer per kind name.
  std::map<std::string, std::map<std::string, Set>> items;  // a_user -> kind -> ids
  std::map<std::string, std::string> owner_of_b;
  for (const auto& [a, b] : devs) owner_of_b[b] = a;
  for (const auto& rec : ds.activities) {
    std::string owner;
    if (rec.platform == Platform::A) {
      if (std::none_of(devs.begin(), devs.end(), [&](const auto& d) { return d.first == rec.user_id; }))
        continue;
      owner = rec.user_id;
    } else {
      auto it = owner_of_b.find(rec.user_id);
      if (it == owner_of_b.end()) continue;
      owner = it->second;
    }
    items[owner][std::string(to_string(rec.kind))].insert(rec.item_id);
  }

  auto interests_of = [&](const std::string& kind, const std::string& item) -> const Set& {
    const bool repo = kind == "fork" || kind == "watch" || kind == "commit" || kind == "pull_request";
    return repo ? interest_a.at(item) : interest_b.at(item);
  };
  auto meets = [](const Set& x, const Set& y) {
    for (const auto& t : x)
      if (y.count(t)) return true;
    return false;
  };
  auto contained = [](const Set& x, const Set& y) {
    if (x.empty()) return false;
    for (const auto& t : x)
      if (!y.count(t)) return false;
    return true;
  };

  auto restricted = [&](const std::string& owner, const std::vector<std::string>& gh_kinds,
                        const std::vector<std::string>& so_kinds) {
    Set repos, questions, gh, so;
    for (const auto& k : gh_kinds)
      for (const auto& i : items[owner][k]) repos.insert(i);
    for (const auto& k : so_kinds)
      for (const auto& i : items[owner][k]) questions.insert(i);
    for (const auto& r : repos) gh.insert(interest_a.at(r).begin(), interest_a.at(r).end());
    for (const auto& q : questions) so.insert(interest_b.at(q).begin(), interest_b.at(q).end());
    Set ci;
    for (const auto& t : gh)
      if (so.count(t)) ci.insert(t);
    std::size_t shared = 0;
    for (const auto& r : repos)
      if (opts.subset_membership ? contained(interest_a.at(r), ci) : meets(interest_a.at(r), ci)) ++shared;
    for (const auto& q : questions)
      if (opts.subset_membership ? contained(interest_b.at(q), ci) : meets(interest_b.at(q), ci)) ++shared;
    struct Out {
      std::size_t n_repos, n_questions;
      std::optional<Rational> score;
    } out{repos.size(), questions.size(), std::nullopt};
    if (repos.size() + questions.size() > 0) out.score = Rational(shared) / (repos.size() + questions.size());
    return out;
  };

  const std::vector<std::string> gh_kinds{"fork", "commit", "pull_request", "watch"};
  const std::vector<std::string> so_kinds{"ask", "answer", "favorite"};
  const std::vector<std::string> co_kinds{"fork", "watch", "commit", "pull_request", "answer", "favorite"};

  ScoreMap result;
  for (const auto& key : devs) {
    const std::string& d = key.first;
    auto& row = result[key];
    row["cross"] = restricted(d, gh_kinds, so_kinds).score;
    for (const auto& g : gh_kinds)
      for (const auto& s : so_kinds) {
        auto r = restricted(d, {g}, {s});
        if (!opts.empty_side_zero && (r.n_repos == 0 || r.n_questions == 0)) r.score.reset();
        row["pair:" + g + ":" + s] = r.score;
      }
    for (const auto& k : co_kinds) {
      const Set& mine = items[d][k];
      Set pool;
      for (const auto& i : mine) {
        const Set& tags = interests_of(k, i);
        pool.insert(tags.begin(), tags.end());
      }
      Rational sum = 0;
      std::size_t neighbors = 0;
      for (const auto& other : devs) {
        if (other.first == d) continue;
        const Set& theirs = items[other.first][k];
        if (!meets(mine, theirs)) continue;
        ++neighbors;
        std::size_t shared = 0;
        for (const auto& i : theirs)
          if (meets(interests_of(k, i), pool)) ++shared;
        sum += Rational(shared) / theirs.size();
      }
      row["co:" + k] = neighbors ? std::optional<Rational>(sum / neighbors) : std::nullopt;
    }
  }
  return result;
}

}  // namespace devint::oracle
