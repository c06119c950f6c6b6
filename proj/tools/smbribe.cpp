#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "smbribe/smbribe.h"

namespace {

constexpr int kExitFeasible = 0;
constexpr int kExitFails = 1;
constexpr int kExitUsage = 2;
constexpr int kExitWithinBudget = 3;
constexpr int kExitAlways = 4;

struct Failure {
  std::string message;
};

struct CString {
  char *p = nullptr;
  ~CString() { smb_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

struct InstanceDeleter {
  void operator()(smb_instance *p) const { smb_instance_free(p); }
};
struct MatchingDeleter {
  void operator()(smb_matching *p) const { smb_matching_free(p); }
};
struct ResultDeleter {
  void operator()(smb_result *p) const { smb_result_free(p); }
};
using InstancePtr = std::unique_ptr<smb_instance, InstanceDeleter>;
using MatchingPtr = std::unique_ptr<smb_matching, MatchingDeleter>;
using ResultPtr = std::unique_ptr<smb_result, ResultDeleter>;

void ok(smb_error e) {
  if (e != SMB_OK) throw Failure{smb_last_error()};
}

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{"cannot read '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw Failure{"cannot write '" + path + "'"};
}

InstancePtr load_instance(const std::string &path) {
  smb_instance *inst = nullptr;
  ok(smb_instance_parse(read_file(path).c_str(), &inst));
  return InstancePtr(inst);
}

MatchingPtr load_matching(const smb_instance *inst, const std::string &path) {
  smb_matching *m = nullptr;
  ok(smb_matching_parse(inst, read_file(path).c_str(), &m));
  return MatchingPtr(m);
}

std::string command_line(int argc, char **argv) {
  std::string out;
  for (int i = 1; i < argc; ++i) out += (i > 1 ? " " : "") + std::string(argv[i]);
  return out;
}

struct SolveFlags {
  std::string goal, action, instance, pair, matching, budget = "inf", algo = "auto";
};

void add_solve_flags(CLI::App *cmd, SolveFlags &f) {
  cmd->add_option("--goal", f.goal, "const-ex | dest-ex | exact-ex | exact-uni")->required();
  cmd->add_option("--action", f.action, "swap | reorder | accdel | delete | add")->required();
  cmd->add_option("--instance", f.instance, ".smi file")->required();
  auto *pair = cmd->add_option("--pair", f.pair, "target pair M,W");
  auto *matching = cmd->add_option("--matching", f.matching, "target matching (.smm file)");
  pair->excludes(matching);
  cmd->add_option("--budget", f.budget, "maximum number of actions, or inf");
  cmd->add_option("--algo", f.algo, "auto | approx2 | xp | bruteforce | fpt");
}

int run_solve(const SolveFlags &f, bool oracle, const std::string &command) {
  auto start = std::chrono::steady_clock::now();
  InstancePtr inst = load_instance(f.instance);
  MatchingPtr target;
  if (!f.matching.empty()) target = load_matching(inst.get(), f.matching);

  smb_solve_options opts{};
  opts.goal = f.goal.c_str();
  opts.action = f.action.c_str();
  opts.algo = f.algo.c_str();
  std::string man, woman;
  if (!f.pair.empty()) {
    auto comma = f.pair.find(',');
    if (comma == std::string::npos) throw Failure{"--pair expects M,W"};
    man = f.pair.substr(0, comma);
    woman = f.pair.substr(comma + 1);
    opts.pair_man = man.c_str();
    opts.pair_woman = woman.c_str();
  }
  opts.target = target.get();
  if (f.budget != "inf") {
    std::size_t used = 0;
    int budget = -1;
    try {
      budget = std::stoi(f.budget, &used);
    } catch (const std::exception &) {
    }
    if (used != f.budget.size() || budget < 0) throw Failure{"--budget expects a nonnegative integer or inf"};
    opts.has_budget = 1;
    opts.budget = budget;
  }
  opts.oracle = oracle ? 1 : 0;

  smb_result *raw = nullptr;
  ok(smb_solve(inst.get(), &opts, &raw));
  ResultPtr res(raw);
  double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  CString doc;
  ok(smb_result_render(res.get(), command.c_str(), -1, seconds, &doc.p));
  std::cout << doc.str();
  switch (smb_result_status(res.get())) {
    case SMB_FEASIBLE: return kExitFeasible;
    case SMB_INFEASIBLE_WITHIN_BUDGET: return kExitWithinBudget;
    case SMB_INFEASIBLE_ALWAYS: return kExitAlways;
  }
  return kExitWithinBudget;
}

std::vector<int> parse_int_list(const std::string &text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception &) {
      used = 0;
    }
    if (used == 0 || used != item.size() || v <= 0) throw Failure{"expected a list of positive integers"};
    out.push_back(v);
  }
  if (out.empty()) throw Failure{"expected a list of positive integers"};
  return out;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Minimum-cost bribery and control for stable marriage"};
  app.require_subcommand(1);
  const std::string command = command_line(argc, argv);

  SolveFlags solve_flags, oracle_flags;
  auto *solve = app.add_subcommand("solve", "Solve a manipulation problem");
  add_solve_flags(solve, solve_flags);
  auto *oracle = app.add_subcommand("oracle", "Solve by exhaustive search over all manipulations");
  add_solve_flags(oracle, oracle_flags);

  std::string check_instance, check_matching;
  bool check_unique = false;
  auto *check = app.add_subcommand("check", "Report blocking pairs, stability and uniqueness");
  check->add_option("--instance", check_instance)->required();
  check->add_option("--matching", check_matching)->required();
  check->add_flag("--unique", check_unique);

  int gen_n = 0;
  std::uint64_t gen_seed = 0;
  double gen_frac = 0;
  auto *gen = app.add_subcommand("gen", "Generate a uniform random complete instance");
  gen->add_option("--n", gen_n)->required()->check(CLI::PositiveNumber);
  gen->add_option("--seed", gen_seed)->required();
  gen->add_option("--addable-frac", gen_frac)->check(CLI::Range(0.0, 1.0));

  std::string gadget_name, gadget_edges, gadget_sets, gadget_out;
  int gadget_vertices = 0, gadget_universe = 0, gadget_k = 0;
  bool gadget_unique = false;
  auto *gadget = app.add_subcommand("gadget", "Build a hardness-reduction instance");
  gadget->add_option("name", gadget_name, "clique-add | clique-accdel | clique-reorder | is-delete | hs-reorder | "
                                          "hs-add | dummy-block")
      ->required();
  gadget->add_option("--vertices", gadget_vertices);
  gadget->add_option("--edges", gadget_edges, "1-2,2-3");
  gadget->add_option("--universe", gadget_universe);
  gadget->add_option("--sets", gadget_sets, "1,2,3;1,2");
  gadget->add_option("--k", gadget_k)->required();
  gadget->add_flag("--unique", gadget_unique, "is-delete: target exact-uni");
  gadget->add_option("--out", gadget_out, "write PREFIX.smi (and PREFIX.smm) instead of printing");

  std::string enum_instance;
  auto *enumerate = app.add_subcommand("enum", "List every stable matching");
  enumerate->add_option("--instance", enum_instance)->required();

  std::string bench_goal, bench_action, bench_n_list;
  int bench_reps = 1;
  std::uint64_t bench_seed = 0;
  auto *bench = app.add_subcommand("bench", "Solve random instances and summarize costs");
  bench->add_option("--goal", bench_goal)->required();
  bench->add_option("--action", bench_action)->required();
  bench->add_option("--n-list", bench_n_list)->required();
  bench->add_option("--reps", bench_reps)->check(CLI::PositiveNumber);
  bench->add_option("--seed", bench_seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (solve->parsed()) return run_solve(solve_flags, false, command);
    if (oracle->parsed()) return run_solve(oracle_flags, true, command);

    if (check->parsed()) {
      InstancePtr inst = load_instance(check_instance);
      MatchingPtr m = load_matching(inst.get(), check_matching);
      CString report;
      int holds = 0;
      ok(smb_check(inst.get(), m.get(), check_unique ? 1 : 0, &report.p, &holds));
      std::cout << report.str();
      return holds ? kExitFeasible : kExitFails;
    }

    if (gen->parsed()) {
      smb_instance *raw = nullptr;
      ok(smb_generate(gen_n, gen_seed, gen_frac, &raw));
      InstancePtr inst(raw);
      CString text;
      ok(smb_instance_serialize(inst.get(), &text.p));
      std::cout << text.str();
      return kExitFeasible;
    }

    if (gadget->parsed()) {
      smb_gadget_options opts{};
      opts.name = gadget_name.c_str();
      opts.vertices = gadget_vertices;
      opts.edges = gadget_edges.c_str();
      opts.universe = gadget_universe;
      opts.sets = gadget_sets.c_str();
      opts.k = gadget_k;
      opts.unique = gadget_unique ? 1 : 0;
      smb_instance *raw_inst = nullptr;
      smb_matching *raw_target = nullptr;
      CString info;
      ok(smb_gadget(&opts, &raw_inst, &raw_target, &info.p));
      InstancePtr inst(raw_inst);
      MatchingPtr target(raw_target);
      CString text, matching;
      ok(smb_instance_serialize(inst.get(), &text.p));
      if (target) ok(smb_matching_serialize(inst.get(), target.get(), &matching.p));
      if (gadget_out.empty()) {
        std::cout << "# " << info.str() << "\n" << text.str();
        if (target) std::cout << "# target\n" << matching.str();
      } else {
        write_file(gadget_out + ".smi", text.str());
        if (target) write_file(gadget_out + ".smm", matching.str());
        std::cout << info.str() << "\n";
      }
      return kExitFeasible;
    }

    if (enumerate->parsed()) {
      InstancePtr inst = load_instance(enum_instance);
      CString text;
      ok(smb_enumerate(inst.get(), &text.p));
      std::cout << text.str();
      return kExitFeasible;
    }

    if (bench->parsed()) {
      std::vector<int> n_list = parse_int_list(bench_n_list);
      smb_bench_options opts{};
      opts.goal = bench_goal.c_str();
      opts.action = bench_action.c_str();
      opts.n_list = n_list.data();
      opts.n_count = static_cast<int>(n_list.size());
      opts.reps = bench_reps;
      opts.seed = bench_seed;
      CString text;
      ok(smb_bench(&opts, &text.p));
      std::cout << text.str();
      return kExitFeasible;
    }
  } catch (const Failure &f) {
    std::cerr << "error: " << f.message << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
