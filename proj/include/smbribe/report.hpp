#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "smbribe/solvers.hpp"

namespace smbribe {

// Lowercase hex SHA-256.
std::string sha256_hex(const std::string &data);
std::string instance_digest(const Instance &inst);

struct RunManifest {
  std::string command;
  std::optional<std::int64_t> seed;
  std::string instance_digest;
  double seconds = 0;
};

// Canonical "result 1" document: JSON with sorted keys, two-space indentation, trailing newline.
std::string render_result(const SolveRequest &req, const ManipulationResult &res, const RunManifest &manifest);

// Blocking pairs, stability and (optionally) uniqueness of a matching among all agents present.
struct CheckReport {
  std::string text;
  bool holds = false;
};
CheckReport check_matching(const Instance &inst, const Matching &m, bool unique);

struct BenchConfig {
  Goal goal = Goal::ConstEx;
  ActionType action = ActionType::Delete;
  std::vector<int> n_list;
  int reps = 1;
  std::uint64_t seed = 0;
};

struct BenchRow {
  int n = 0;
  int rep = 0;
  std::uint64_t instance_seed = 0;
  std::optional<int> cost;  // nullopt when the manipulation is impossible
};

struct BenchSummary {
  int n = 0;
  int solved = 0;
  double mean_cost = 0;
  double median_cost = 0;
};

// Uniform random complete instances (generator seeds drawn from `seed`) with uniform random targets, each
// solved by the automatic algorithm with an unbounded budget.
std::vector<BenchRow> run_bench(const BenchConfig &config);
std::vector<BenchSummary> summarize(const std::vector<BenchRow> &rows);
std::string render_bench(const BenchConfig &config, const std::vector<BenchRow> &rows);

}  // namespace smbribe
