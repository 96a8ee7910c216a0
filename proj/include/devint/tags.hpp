#pragma once

// Tag normalization, description tokenization and vocabulary keyword
// matching.
//
// A description is lowercased (ASCII) and split on every byte outside
// [a-z0-9#+.-]. Each resulting token is compared against a tag's parts with
// trailing '.' removed, unless the part itself ends in '.'. A tag matches
// when one of its token sequences occurs contiguously in the description:
//
//   - the tag split on separator bytes ("ruby-on-rails" -> {"ruby-on-rails"})
//   - for hyphenated tags, the tag split on '-' ("ruby-on-rails" ->
//     {"ruby","on","rails"}), provided no part is empty
//
// Description tokens are never split on '-', so "objective-c" does not match
// the tag "c" and "javascript" does not match "java".

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace devint {

using TagId = std::uint32_t;

inline bool is_ascii_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

inline char ascii_lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

inline std::string trim_and_lower(std::string_view raw) {
  std::size_t b = 0, e = raw.size();
  while (b < e && is_ascii_space(raw[b])) ++b;
  while (e > b && is_ascii_space(raw[e - 1])) --e;
  std::string out(raw.substr(b, e - b));
  for (char& c : out) c = ascii_lower(c);
  return out;
}

// Lowercase and trim; interior characters are kept verbatim so "c#", "c++",
// "node.js" and "ruby-on-rails" survive.
inline std::string normalize_tag(std::string_view raw) { return trim_and_lower(raw); }

inline bool is_token_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '#' || c == '+' || c == '.' ||
         c == '-';
}

struct Token {
  std::string_view raw;       // as it appears in the lowercased text
  std::string_view stripped;  // raw without trailing '.'
};

// Tokens view into `lowered`, which must already be ASCII-lowercased.
inline std::vector<Token> tokenize_lowered(std::string_view lowered) {
  std::vector<Token> out;
  std::size_t i = 0;
  const std::size_t n = lowered.size();
  while (i < n) {
    while (i < n && !is_token_char(lowered[i])) ++i;
    std::size_t start = i;
    while (i < n && is_token_char(lowered[i])) ++i;
    if (i > start) {
      std::string_view raw = lowered.substr(start, i - start);
      std::string_view stripped = raw;
      while (!stripped.empty() && stripped.back() == '.') stripped.remove_suffix(1);
      out.push_back({raw, stripped});
    }
  }
  return out;
}

inline std::string lower_ascii(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = ascii_lower(c);
  return out;
}

namespace detail {

inline bool token_equals_part(const Token& t, std::string_view part) {
  return part.ends_with('.') ? t.raw == part : t.stripped == part;
}

inline std::vector<std::string> split_on_separators(std::string_view s) {
  std::vector<std::string> parts;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && !is_token_char(s[i])) ++i;
    std::size_t start = i;
    while (i < s.size() && is_token_char(s[i])) ++i;
    if (i > start) parts.emplace_back(s.substr(start, i - start));
  }
  return parts;
}

// Hyphen form: only when every '-'-delimited piece (after separator
// splitting) is nonempty and there are at least two pieces.
inline std::vector<std::string> hyphen_parts(std::string_view tag) {
  if (tag.find('-') == std::string_view::npos) return {};
  std::vector<std::string> out;
  for (const std::string& chunk : split_on_separators(tag)) {
    std::size_t b = 0;
    while (true) {
      std::size_t e = chunk.find('-', b);
      std::string_view piece = std::string_view(chunk).substr(b, e == std::string::npos ? std::string::npos : e - b);
      if (piece.empty()) return {};
      out.emplace_back(piece);
      if (e == std::string::npos) break;
      b = e + 1;
    }
  }
  if (out.size() < 2) return {};
  return out;
}

inline bool sequence_at(std::span<const Token> tokens, std::size_t pos,
                        const std::vector<std::string>& parts) {
  if (parts.empty() || pos + parts.size() > tokens.size()) return false;
  for (std::size_t j = 0; j < parts.size(); ++j)
    if (!token_equals_part(tokens[pos + j], parts[j])) return false;
  return true;
}

}  // namespace detail

// The token sequences a normalized tag can match. Empty when the tag has no
// token characters at all (such a tag never matches).
struct TagPattern {
  std::vector<std::string> whole;
  std::vector<std::string> hyphenated;

  static TagPattern of(std::string_view normalized_tag) {
    TagPattern p;
    p.whole = detail::split_on_separators(normalized_tag);
    p.hyphenated = detail::hyphen_parts(normalized_tag);
    return p;
  }

  bool matches_at(std::span<const Token> tokens, std::size_t pos) const {
    return detail::sequence_at(tokens, pos, whole) || detail::sequence_at(tokens, pos, hyphenated);
  }

  bool matches(std::span<const Token> tokens) const {
    for (std::size_t i = 0; i < tokens.size(); ++i)
      if (matches_at(tokens, i)) return true;
    return false;
  }
};

// True iff `tag` (already normalized) occurs in `description` as a token
// sequence.
inline bool match_tag(std::string_view description, std::string_view tag) {
  if (description.empty()) return false;
  const std::string lowered = lower_ascii(description);
  const auto tokens = tokenize_lowered(lowered);
  return TagPattern::of(tag).matches(tokens);
}

// Normalized, deduplicated, sorted tag vocabulary. Tag ids are positions in
// the sorted order. Matching a whole description costs one hash lookup per
// token instead of one scan per tag.
class TagVocabulary {
 public:
  TagVocabulary() = default;

  explicit TagVocabulary(std::span<const std::string> raw_tags) {
    for (const std::string& raw : raw_tags) {
      std::string t = normalize_tag(raw);
      if (!t.empty()) tags_.push_back(std::move(t));
    }
    std::sort(tags_.begin(), tags_.end());
    tags_.erase(std::unique(tags_.begin(), tags_.end()), tags_.end());

    ids_.reserve(tags_.size());
    patterns_.reserve(tags_.size());
    for (TagId id = 0; id < tags_.size(); ++id) {
      ids_.emplace(tags_[id], id);
      patterns_.push_back(TagPattern::of(tags_[id]));
      const TagPattern& p = patterns_.back();
      if (!p.whole.empty()) by_first_part_[p.whole.front()].push_back(id);
      if (!p.hyphenated.empty() && p.hyphenated.front() != (p.whole.empty() ? "" : p.whole.front()))
        by_first_part_[p.hyphenated.front()].push_back(id);
    }
  }

  std::size_t size() const { return tags_.size(); }
  bool empty() const { return tags_.empty(); }
  const std::vector<std::string>& tags() const { return tags_; }
  const std::string& tag(TagId id) const { return tags_.at(id); }
  const TagPattern& pattern(TagId id) const { return patterns_.at(id); }

  std::optional<TagId> find(std::string_view normalized) const {
    auto it = ids_.find(std::string(normalized));
    if (it == ids_.end()) return std::nullopt;
    return it->second;
  }

  // Sorted ids of every vocabulary tag matched in `description`.
  std::vector<TagId> match(std::string_view description) const {
    std::vector<TagId> out;
    if (description.empty() || tags_.empty()) return out;
    const std::string lowered = lower_ascii(description);
    const auto tokens = tokenize_lowered(lowered);
    std::string key;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      // A first part ending in '.' is compared against the raw token; any
      // other first part against the stripped token.
      try_candidates(tokens, i, tokens[i].stripped, out, key);
      if (tokens[i].raw != tokens[i].stripped) try_candidates(tokens, i, tokens[i].raw, out, key);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

 private:
  void try_candidates(std::span<const Token> tokens, std::size_t pos, std::string_view first,
                      std::vector<TagId>& out, std::string& key) const {
    key.assign(first);
    auto it = by_first_part_.find(key);
    if (it == by_first_part_.end()) return;
    for (TagId id : it->second)
      if (patterns_[id].matches_at(tokens, pos)) out.push_back(id);
  }

  std::vector<std::string> tags_;
  std::unordered_map<std::string, TagId> ids_;
  std::vector<TagPattern> patterns_;
  std::unordered_map<std::string, std::vector<TagId>> by_first_part_;
};

}  // namespace devint
