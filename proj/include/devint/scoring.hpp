#pragma once

// Population-wide scoring: every selected metric for every base developer,
// and the scores.csv table.
//
//   dev_id,metric,value,shared_r,shared_q,denom_r,denom_q,neighbors,exact
//
// Rows are ordered by dev_id, then by metric in canonical order (cross, the
// twelve pairs, the six co-participation kinds). Count columns that do not
// apply to a metric are left empty. `value` is a 6-digit decimal or the
// literal "undefined"; `exact` carries the same value as a reduced fraction.

#include <array>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "devint/activity.hpp"
#include "devint/csv.hpp"
#include "devint/engine.hpp"
#include "devint/metrics.hpp"
#include "devint/parallel.hpp"
#include "devint/rational.hpp"

namespace devint {

enum class MetricFamily : std::uint8_t { Cross, Pair, Co };

struct Metric {
  MetricFamily family = MetricFamily::Cross;
  ActivityKind gh = ActivityKind::Fork;  // Pair only
  ActivityKind so = ActivityKind::Ask;   // Pair only
  ActivityKind kind = ActivityKind::Fork;  // Co only

  std::string name() const {
    switch (family) {
      case MetricFamily::Cross: return "cross";
      case MetricFamily::Pair:
        return "pair:" + std::string(to_string(gh)) + ":" + std::string(to_string(so));
      case MetricFamily::Co: return "co:" + std::string(to_string(kind));
    }
    return {};
  }
};

// cross, 12 pairs, 6 co-participation kinds.
inline const std::vector<Metric>& all_metrics() {
  static const std::vector<Metric> metrics = [] {
    std::vector<Metric> m;
    m.push_back({MetricFamily::Cross});
    for (ActivityKind gh : kRepoPairKinds)
      for (ActivityKind so : kQuestionPairKinds) m.push_back({MetricFamily::Pair, gh, so});
    for (ActivityKind k : kCoParticipationKinds) {
      Metric c;
      c.family = MetricFamily::Co;
      c.kind = k;
      m.push_back(c);
    }
    return m;
  }();
  return metrics;
}

inline std::optional<std::size_t> metric_position(std::string_view name) {
  const auto& all = all_metrics();
  for (std::size_t i = 0; i < all.size(); ++i)
    if (all[i].name() == name) return i;
  return std::nullopt;
}

struct MetricSelection {
  bool cross = true;
  bool pairs = true;
  bool co = true;

  bool includes(MetricFamily f) const {
    return f == MetricFamily::Cross ? cross : f == MetricFamily::Pair ? pairs : co;
  }
};

struct ScoreRow {
  DevIndex dev = 0;
  std::size_t metric = 0;  // position in all_metrics()
  std::optional<Rational> value;
  std::size_t shared_r = 0, shared_q = 0, denom_r = 0, denom_q = 0;  // Cross, Pair
  std::size_t neighbors = 0;                                         // Co
};

// Rows for every developer, ordered (dev, metric).
inline std::vector<ScoreRow> compute_scores(const Engine& engine, const MetricSelection& sel,
                                            const MetricOptions& opts, unsigned threads = 1) {
  std::vector<std::size_t> chosen;
  for (std::size_t m = 0; m < all_metrics().size(); ++m)
    if (sel.includes(all_metrics()[m].family)) chosen.push_back(m);

  const std::size_t n = engine.developer_count();
  std::vector<ScoreRow> rows(n * chosen.size());
  threads = std::max(1u, threads);
  std::vector<std::optional<CoParticipationScorer>> scorers(threads);

  parallel_for(n, threads, [&](std::size_t begin, std::size_t end, unsigned worker) {
    auto& scorer = scorers[worker];
    if (sel.co && !scorer) scorer.emplace(engine.index(), engine.catalog());
    for (std::size_t d = begin; d < end; ++d) {
      const DeveloperInterests di = engine.developer(static_cast<DevIndex>(d));
      for (std::size_t c = 0; c < chosen.size(); ++c) {
        const Metric& m = all_metrics()[chosen[c]];
        ScoreRow& row = rows[d * chosen.size() + c];
        row.dev = static_cast<DevIndex>(d);
        row.metric = chosen[c];
        if (m.family == MetricFamily::Co) {
          CoParticipationScore s = scorer->score(row.dev, m.kind);
          row.value = std::move(s.score);
          row.neighbors = s.neighbor_count;
          continue;
        }
        RestrictedScore s = m.family == MetricFamily::Cross
                                ? RestrictedScore(cross_platform_similarity(engine.catalog(), di, opts))
                                : RestrictedScore(pair_similarity(engine.catalog(), di, m.gh, m.so, opts));
        row.value = std::move(s.score);
        row.shared_r = s.shared_r.size();
        row.shared_q = s.shared_q.size();
        row.denom_r = s.denom_r;
        row.denom_q = s.denom_q;
      }
    }
  });
  return rows;
}

inline void write_scores_csv(std::ostream& out, const Engine& engine,
                             const std::vector<ScoreRow>& rows) {
  out << "dev_id,metric,value,shared_r,shared_q,denom_r,denom_q,neighbors,exact\n";
  for (const ScoreRow& r : rows) {
    const Metric& m = all_metrics()[r.metric];
    out << csv::escape(engine.developer_link(r.dev).dev_id) << ',' << m.name() << ',';
    out << (r.value ? to_decimal(*r.value) : std::string("undefined")) << ',';
    if (m.family == MetricFamily::Co) {
      out << ",,,," << r.neighbors;
    } else {
      out << r.shared_r << ',' << r.shared_q << ',' << r.denom_r << ',' << r.denom_q << ',';
    }
    out << ',' << (r.value ? to_fraction(*r.value) : std::string("undefined")) << '\n';
  }
}

// metric name -> per-developer values in file order.
using MetricValues = std::map<std::string, std::vector<std::optional<Rational>>>;

inline MetricValues read_scores_csv(std::istream& in, const std::string& source = "scores.csv") {
  MetricValues out;
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& what) {
    throw ValidationError(source + ":" + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1) {
      if (line.rfind("dev_id,metric,value", 0) != 0) fail("missing scores header");
      continue;
    }
    if (line.empty()) continue;
    const auto f = csv::split(line);
    if (f.size() != 9) fail("expected 9 columns");
    if (!metric_position(f[1])) fail("unknown metric \"" + f[1] + "\"");
    auto& values = out[f[1]];
    if (f[8] == "undefined") {
      values.emplace_back(std::nullopt);
    } else {
      try {
        values.emplace_back(parse_fraction(f[8]));
      } catch (const ValidationError& e) {
        fail(e.what());
      }
    }
  }
  if (line_no == 0) throw ValidationError(source + ": empty scores file");
  return out;
}

}  // namespace devint
