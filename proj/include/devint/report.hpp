#pragma once

// Population statistics over one metric's per-developer values. Undefined
// values are counted and otherwise ignored. Quartiles interpolate linearly
// between closest ranks: for sorted x[0..n-1], q(p) = x[h] + (h - floor h)
// (x[h+1] - x[h]) with h = (n - 1) p.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "devint/rational.hpp"
#include "devint/scoring.hpp"

namespace devint {

inline constexpr std::size_t kHistogramBins = 20;

struct FiveNumber {
  double min = 0, q1 = 0, median = 0, q3 = 0, max = 0;
};

struct DistributionSummary {
  std::string metric;
  std::size_t n_defined = 0;
  std::size_t n_undefined = 0;
  std::optional<double> mean;
  std::optional<double> fraction_zero;
  std::map<double, std::optional<double>> fraction_ge;
  std::array<std::size_t, kHistogramBins> histogram{};  // [k/20, (k+1)/20), last bin closed
  std::optional<FiveNumber> five_number;
};

// Type-7 quantile of an ascending, nonempty range.
inline double quantile_sorted(std::span<const double> sorted, double p) {
  const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

inline std::size_t histogram_bin(double v) {
  auto b = static_cast<long>(std::floor(v * kHistogramBins));
  b = std::clamp<long>(b, 0, kHistogramBins - 1);
  // Correct floating-point edge effects against the exact bin edges.
  if (b + 1 < static_cast<long>(kHistogramBins) && v >= static_cast<double>(b + 1) / kHistogramBins) ++b;
  if (b > 0 && v < static_cast<double>(b) / kHistogramBins) --b;
  return static_cast<std::size_t>(b);
}

inline DistributionSummary summarize(std::string metric, std::span<const std::optional<double>> values,
                                     std::span<const double> thresholds = std::array{0.5}) {
  DistributionSummary s;
  s.metric = std::move(metric);
  std::vector<double> v;
  v.reserve(values.size());
  for (const auto& x : values) {
    if (x) {
      v.push_back(*x);
    } else {
      ++s.n_undefined;
    }
  }
  s.n_defined = v.size();
  for (double t : thresholds) s.fraction_ge[t] = std::nullopt;
  if (v.empty()) return s;

  std::sort(v.begin(), v.end());
  long double sum = 0;
  std::size_t zeros = 0;
  for (double x : v) {
    sum += x;
    if (x == 0.0) ++zeros;
    ++s.histogram[histogram_bin(x)];
  }
  const auto n = static_cast<double>(v.size());
  s.mean = static_cast<double>(sum / v.size());
  s.fraction_zero = static_cast<double>(zeros) / n;
  for (double t : thresholds) {
    auto first = std::lower_bound(v.begin(), v.end(), t);
    s.fraction_ge[t] = static_cast<double>(v.end() - first) / n;
  }
  s.five_number = FiveNumber{v.front(), quantile_sorted(v, 0.25), quantile_sorted(v, 0.5),
                             quantile_sorted(v, 0.75), v.back()};
  return s;
}

inline std::vector<std::optional<double>> to_doubles(std::span<const std::optional<Rational>> values) {
  std::vector<std::optional<double>> out;
  out.reserve(values.size());
  for (const auto& r : values)
    out.push_back(r ? std::optional<double>(r->convert_to<double>()) : std::nullopt);
  return out;
}

inline nlohmann::ordered_json to_json(const DistributionSummary& s) {
  using nlohmann::ordered_json;
  auto opt = [](const std::optional<double>& x) { return x ? ordered_json(*x) : ordered_json(nullptr); };
  ordered_json j;
  j["metric"] = s.metric;
  j["n_defined"] = s.n_defined;
  j["n_undefined"] = s.n_undefined;
  j["mean"] = opt(s.mean);
  j["fraction_zero"] = opt(s.fraction_zero);
  ordered_json ge = ordered_json::object();
  for (const auto& [t, f] : s.fraction_ge) {
    char key[32];
    std::snprintf(key, sizeof key, "%g", t);
    ge[key] = opt(f);
  }
  j["fraction_ge"] = ge;
  j["histogram"] = s.histogram;
  if (s.five_number) {
    j["five_number"] = {{"min", s.five_number->min},       {"q1", s.five_number->q1},
                        {"median", s.five_number->median}, {"q3", s.five_number->q3},
                        {"max", s.five_number->max}};
  } else {
    j["five_number"] = nullptr;
  }
  return j;
}

inline std::string plot_file_stem(const std::string& metric) {
  std::string s = metric;
  std::replace(s.begin(), s.end(), ':', '_');
  return s;
}

inline std::string fixed(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

// summary.json plus plotdata/hist_<metric>.csv and plotdata/box_<metric>.csv,
// metrics in canonical order. ':' in metric names becomes '_' in file names.
inline std::vector<DistributionSummary> write_report(const MetricValues& scores,
                                                     const std::filesystem::path& out_dir) {
  std::vector<std::string> names;
  for (const auto& [name, _] : scores) names.push_back(name);
  std::sort(names.begin(), names.end(), [](const auto& a, const auto& b) {
    return metric_position(a).value_or(SIZE_MAX) < metric_position(b).value_or(SIZE_MAX);
  });

  std::vector<DistributionSummary> summaries;
  for (const auto& name : names) {
    const auto doubles = to_doubles(scores.at(name));
    summaries.push_back(summarize(name, doubles));
  }

  const auto plot_dir = out_dir / "plotdata";
  std::filesystem::create_directories(plot_dir);
  nlohmann::ordered_json doc;
  doc["metrics"] = nlohmann::ordered_json::array();
  for (const auto& s : summaries) {
    doc["metrics"].push_back(to_json(s));

    std::ofstream hist(plot_dir / ("hist_" + plot_file_stem(s.metric) + ".csv"), std::ios::binary);
    hist << "bin_low,bin_high,count\n";
    for (std::size_t b = 0; b < kHistogramBins; ++b)
      hist << fixed(static_cast<double>(b) / kHistogramBins, 2) << ','
           << fixed(static_cast<double>(b + 1) / kHistogramBins, 2) << ',' << s.histogram[b] << '\n';

    std::ofstream box(plot_dir / ("box_" + plot_file_stem(s.metric) + ".csv"), std::ios::binary);
    box << "min,q1,median,q3,max\n";
    if (s.five_number) {
      const FiveNumber& f = *s.five_number;
      box << fixed(f.min, 6) << ',' << fixed(f.q1, 6) << ',' << fixed(f.median, 6) << ','
          << fixed(f.q3, 6) << ',' << fixed(f.max, 6) << '\n';
    } else {
      box << "undefined,undefined,undefined,undefined,undefined\n";
    }
    if (!hist || !box) throw ValidationError("cannot write plot data under " + plot_dir.string());
  }
  std::ofstream summary(out_dir / "summary.json", std::ios::binary);
  if (!summary) throw ValidationError("cannot write " + (out_dir / "summary.json").string());
  summary << doc.dump(2) << '\n';
  return summaries;
}

}  // namespace devint
