#pragma once

// Engine-versus-oracle comparison on exact rational values.

#include <string>
#include <vector>

#include "devint/engine.hpp"
#include "devint/oracle.hpp"
#include "devint/scoring.hpp"

namespace devint {

struct Mismatch {
  oracle::DeveloperKey developer;
  std::string metric;
  std::string engine;  // "missing", "undefined" or p/q
  std::string oracle;
};

inline oracle::ScoreMap engine_score_map(const Engine& engine, const std::vector<ScoreRow>& rows) {
  oracle::ScoreMap out;
  for (const ScoreRow& r : rows) {
    const LinkedDeveloper& l = engine.developer_link(r.dev);
    out[{l.a_user_id, l.b_user_id}][all_metrics()[r.metric].name()] = r.value;
  }
  return out;
}

inline std::vector<Mismatch> compare_scores(const oracle::ScoreMap& engine, const oracle::ScoreMap& expected) {
  auto render = [](const std::optional<Rational>& v) { return v ? to_fraction(*v) : std::string("undefined"); };
  std::vector<Mismatch> out;
  auto walk = [&](const oracle::ScoreMap& a, const oracle::ScoreMap& b, bool a_is_engine) {
    for (const auto& [dev, metrics] : a) {
      auto other = b.find(dev);
      for (const auto& [metric, value] : metrics) {
        std::optional<std::optional<Rational>> theirs;
        if (other != b.end()) {
          auto m = other->second.find(metric);
          if (m != other->second.end()) theirs = m->second;
        }
        if (!theirs) {
          out.push_back(a_is_engine ? Mismatch{dev, metric, render(value), "missing"}
                                    : Mismatch{dev, metric, "missing", render(value)});
        } else if (a_is_engine && *theirs != value) {
          out.push_back({dev, metric, render(value), render(*theirs)});
        }
      }
    }
  };
  walk(engine, expected, true);
  walk(expected, engine, false);
  return out;
}

}  // namespace devint
