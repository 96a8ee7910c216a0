// devint: link identities, extract interests, score and report.
//
// Exit codes: 0 success, 1 validation error (bad input data, oracle
// mismatches), 2 usage error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "devint/csv.hpp"
#include "devint/engine.hpp"
#include "devint/error.hpp"
#include "devint/ingest.hpp"
#include "devint/oracle.hpp"
#include "devint/oracle_check.hpp"
#include "devint/report.hpp"
#include "devint/scoring.hpp"
#include "devint/synthgen.hpp"

namespace fs = std::filesystem;
using namespace devint;

namespace {

struct RunConfig {
  fs::path input;
  fs::path output;
  std::string membership = "intersection";
  std::string empty_side = "undefined";
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  std::size_t oracle_cap = 200;

  MetricOptions metric_options() const {
    MetricOptions o;
    if (membership == "intersection") {
      o.membership = Membership::Intersection;
    } else if (membership == "subset") {
      o.membership = Membership::Subset;
    } else {
      throw UsageError("--membership must be intersection or subset");
    }
    if (empty_side == "undefined") {
      o.empty_side = EmptySidePolicy::Undefined;
    } else if (empty_side == "zero") {
      o.empty_side = EmptySidePolicy::Zero;
    } else {
      throw UsageError("--empty-side must be undefined or zero");
    }
    return o;
  }
};

void apply_config_file(const fs::path& file, RunConfig& cfg, const CLI::App& app) {
  std::ifstream in(file);
  if (!in) throw ValidationError("cannot open " + file.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(file.string() + ": " + e.what());
  }
  // Flags given on the command line win over the file.
  auto given = [&](const std::string& name) {
    for (const CLI::App* a : {&app}) {
      for (const CLI::Option* o : a->get_options())
        if (o->get_name() == name && o->count() > 0) return true;
      for (const CLI::App* sub : a->get_subcommands())
        for (const CLI::Option* o : sub->get_options())
          if (o->get_name() == name && o->count() > 0) return true;
    }
    return false;
  };
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "input") {
        if (!given("--input")) cfg.input = v.get<std::string>();
      } else if (key == "output") {
        if (!given("--out")) cfg.output = v.get<std::string>();
      } else if (key == "membership") {
        if (!given("--membership")) cfg.membership = v.get<std::string>();
      } else if (key == "empty_side") {
        if (!given("--empty-side")) cfg.empty_side = v.get<std::string>();
      } else if (key == "threads") {
        if (!given("--threads")) cfg.threads = v.get<unsigned>();
      } else if (key == "oracle_cap") {
        if (!given("--cap")) cfg.oracle_cap = v.get<std::size_t>();
      } else {
        throw UsageError(file.string() + ": unknown config key \"" + key + "\"");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(file.string() + ": " + e.what());
  }
}

std::ofstream open_out(const fs::path& p) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw ValidationError("cannot write " + p.string());
  return out;
}

void require_dirs(const RunConfig& cfg, bool input, bool output) {
  if (input && cfg.input.empty()) throw UsageError("--input is required");
  if (output && cfg.output.empty()) throw UsageError("--out is required");
  if (output) fs::create_directories(cfg.output);
}

void write_links(const Engine& engine, const fs::path& dir) {
  auto links = open_out(dir / "links.csv");
  links << "dev_id,a_user_id,b_user_id\n";
  for (const auto& l : engine.links().links)
    links << csv::escape(l.dev_id) << ',' << csv::escape(l.a_user_id) << ','
          << csv::escape(l.b_user_id) << '\n';
  auto amb = open_out(dir / "ambiguities.csv");
  amb << "email_md5,a_user_ids,b_user_ids\n";
  auto join = [](const std::vector<std::string>& ids) {
    std::string s;
    for (std::size_t i = 0; i < ids.size(); ++i) s += (i ? ";" : "") + ids[i];
    return csv::escape(s);
  };
  for (const auto& a : engine.links().ambiguities)
    amb << a.email_md5 << ',' << join(a.a_user_ids) << ',' << join(a.b_user_ids) << '\n';
}

void write_interests(const Engine& engine, const fs::path& dir) {
  auto out = open_out(dir / "interests.jsonl");
  const ItemCatalog& c = engine.catalog();
  for (Platform p : {Platform::A, Platform::B}) {
    for (ItemIndex i = 0; i < c.size(p); ++i) {
      nlohmann::ordered_json j;
      j["item_id"] = c.item_id(p, i);
      j["platform"] = std::string(to_string(p));
      auto tags = nlohmann::ordered_json::array();
      for (TagId t : c.interests(p, i)) tags.push_back(c.vocabulary().tag(t));
      j["interests"] = tags;
      out << j.dump() << '\n';
    }
  }
}

void write_scores(const Engine& engine, const RunConfig& cfg, const MetricSelection& sel) {
  const auto rows = compute_scores(engine, sel, cfg.metric_options(), cfg.threads);
  auto out = open_out(cfg.output / "scores.csv");
  write_scores_csv(out, engine, rows);
}

void run_report(const fs::path& scores_file, const fs::path& out_dir) {
  std::ifstream in(scores_file);
  if (!in) throw ValidationError("cannot open " + scores_file.string());
  const MetricValues values = read_scores_csv(in, scores_file.string());
  write_report(values, out_dir);
}

MetricSelection parse_selection(const std::string& which) {
  MetricSelection s{false, false, false};
  if (which == "cross") {
    s.cross = true;
  } else if (which == "pairs") {
    s.pairs = true;
  } else if (which == "co") {
    s.co = true;
  } else if (which == "all") {
    s = MetricSelection{};
  } else {
    throw UsageError("score expects cross, pairs, co or all");
  }
  return s;
}

int run(int argc, char** argv) {
  CLI::App app{"Cross-platform developer interest analytics"};
  app.set_version_flag("--version", std::string("devint ") + DEVINT_VERSION);
  app.require_subcommand(1);

  RunConfig cfg;
  std::string config_file, input, output, score_which, scores_path, spec_path;
  app.add_option("--config", config_file, "JSON config file (flags take precedence)");
  app.add_option("--threads", cfg.threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--membership", cfg.membership, "shared-item rule: intersection|subset")
      ->check(CLI::IsMember({"intersection", "subset"}));
  app.add_option("--empty-side", cfg.empty_side, "pair score with one empty side: undefined|zero")
      ->check(CLI::IsMember({"undefined", "zero"}));

  auto add_io = [&](CLI::App* sub, bool in, bool out) {
    if (in) sub->add_option("-i,--input", input, "input dataset directory");
    if (out) sub->add_option("-o,--out", output, "output directory");
  };
  auto* link = app.add_subcommand("link", "match identities; writes links.csv, ambiguities.csv");
  add_io(link, true, true);
  auto* extract = app.add_subcommand("extract", "item interests; writes interests.jsonl");
  add_io(extract, true, true);
  auto* score = app.add_subcommand("score", "similarity scores; writes scores.csv");
  score->add_option("metrics", score_which, "cross | pairs | co | all")
      ->required()
      ->check(CLI::IsMember({"cross", "pairs", "co", "all"}));
  add_io(score, true, true);
  auto* report = app.add_subcommand("report", "summary.json and plotdata/ from scores.csv");
  add_io(report, false, true);
  report->add_option("--scores", scores_path, "scores.csv (default: <out>/scores.csv)");
  auto* all = app.add_subcommand("all", "link, extract, score all, report");
  add_io(all, true, true);
  auto* generate = app.add_subcommand("generate", "write a synthetic dataset");
  generate->add_option("--spec", spec_path, "generator spec JSON")->required();
  add_io(generate, false, true);
  auto* check = app.add_subcommand("oracle-check", "compare engine scores with brute force");
  add_io(check, true, false);
  check->add_option("--cap", cfg.oracle_cap, "maximum developers for the brute-force oracle");
  for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (!config_file.empty()) apply_config_file(config_file, cfg, app);
  if (!input.empty()) cfg.input = input;
  if (!output.empty()) cfg.output = output;
  cfg.metric_options();  // validate enums from any source
  if (cfg.threads == 0) throw UsageError("--threads must be positive");

  if (*generate) {
    require_dirs(cfg, false, true);
    std::ifstream in(spec_path);
    if (!in) throw ValidationError("cannot open " + spec_path);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw ValidationError(spec_path + ": " + e.what());
    }
    write_generated(devint::generate(gen_spec_from_json(j)), cfg.output);
    return 0;
  }
  if (*report) {
    require_dirs(cfg, false, true);
    run_report(scores_path.empty() ? cfg.output / "scores.csv" : fs::path(scores_path), cfg.output);
    return 0;
  }

  require_dirs(cfg, true, !*check);
  const Dataset ds = load_dataset(cfg.input);
  const Engine engine = Engine::build(ds, cfg.threads);

  if (*link) {
    write_links(engine, cfg.output);
  } else if (*extract) {
    write_interests(engine, cfg.output);
  } else if (*score) {
    write_scores(engine, cfg, parse_selection(score_which));
  } else if (*all) {
    write_links(engine, cfg.output);
    write_interests(engine, cfg.output);
    write_scores(engine, cfg, MetricSelection{});
    run_report(cfg.output / "scores.csv", cfg.output);
  } else if (*check) {
    const MetricOptions mo = cfg.metric_options();
    oracle::Options oo;
    oo.subset_membership = mo.membership == Membership::Subset;
    oo.empty_side_zero = mo.empty_side == EmptySidePolicy::Zero;
    oo.max_developers = cfg.oracle_cap;
    const auto expected = oracle::brute_force_scores(ds, oo);
    const auto rows = compute_scores(engine, MetricSelection{}, mo, cfg.threads);
    const auto mismatches = compare_scores(engine_score_map(engine, rows), expected);
    std::cout << engine.developer_count() << " developers, " << rows.size() << " scores, "
              << mismatches.size() << " mismatches\n";
    for (std::size_t i = 0; i < std::min<std::size_t>(mismatches.size(), 20); ++i) {
      const Mismatch& m = mismatches[i];
      std::cerr << "mismatch " << m.developer.first << "/" << m.developer.second << " " << m.metric
                << ": engine " << m.engine << ", oracle " << m.oracle << '\n';
    }
    return mismatches.empty() ? 0 : 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const UsageError& e) {
    std::cerr << "devint: usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "devint: error: " << e.what() << '\n';
    return 1;
  }
}
