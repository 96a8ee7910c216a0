#pragma once

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include "devint/engine.hpp"
#include "devint/ingest.hpp"
#include "devint/synthgen.hpp"

namespace devint::testing {

inline std::filesystem::path fixture(const std::string& name) {
  return std::filesystem::path(DEVINT_FIXTURE_DIR) / name;
}

// Directory removed on scope exit.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("devint-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::filesystem::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary);
  out << content;
}

// Small mixed dataset for oracle comparisons: noisy topics, empty items,
// unlinked and ambiguous users, repeated activity lines.
inline GenSpec small_spec(std::uint64_t seed, std::uint64_t devs = 20, std::uint64_t items = 60) {
  GenSpec s;
  s.n_developers = devs;
  s.n_repos = items;
  s.n_questions = items;
  s.vocabulary_size = 30;
  s.n_topics = 5;
  s.tags_per_item = {1, 3};
  s.activities = {IntRange{0, 2}, IntRange{0, 4}, IntRange{0, 2}, IntRange{0, 2},
                  IntRange{0, 2}, IntRange{0, 3}, IntRange{0, 2}};
  s.overlap = 0.5;
  s.noise = 0.3;
  s.empty_item_fraction = 0.1;
  s.unlinked_fraction = 0.2;
  s.ambiguous_groups = 1;
  s.duplicate_fraction = 0.1;
  s.ensure_both_platforms = false;
  s.seed = seed;
  return s;
}

// Runs a shell command, returning (exit status, stdout).
inline std::pair<int, std::string> run_command(const std::string& cmd) {
  std::string output;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return {-1, {}};
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) output.append(buf, n);
  const int status = ::pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, output};
}

}  // namespace devint::testing
