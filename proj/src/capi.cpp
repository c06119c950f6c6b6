#include "smbribe/smbribe.h"

#include <cstdlib>
#include <cstring>
#include <sstream>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "smbribe/report.hpp"
#include "smbribe/testkit.hpp"

struct smb_instance {
  smbribe::Instance inst;
};

struct smb_matching {
  smbribe::Matching m;
};

struct smb_result {
  smbribe::SolveRequest req;
  smbribe::ManipulationResult res;
};

namespace {

using namespace smbribe;

thread_local std::string last_error;

smb_error code_of(ErrorCode c) {
  switch (c) {
    case ErrorCode::Syntax: return SMB_ERR_SYNTAX;
    case ErrorCode::UnknownName: return SMB_ERR_UNKNOWN_NAME;
    case ErrorCode::DuplicateEntry: return SMB_ERR_DUPLICATE;
    case ErrorCode::NonMutual: return SMB_ERR_NON_MUTUAL;
    case ErrorCode::UndeclaredAddable: return SMB_ERR_UNDECLARED_ADDABLE;
    case ErrorCode::InvalidAction: return SMB_ERR_INVALID_ACTION;
    case ErrorCode::InvalidArgument: return SMB_ERR_INVALID_ARGUMENT;
    case ErrorCode::NotStable: return SMB_ERR_NOT_STABLE;
    case ErrorCode::CapExceeded: return SMB_ERR_CAP_EXCEEDED;
    case ErrorCode::Unsupported: return SMB_ERR_UNSUPPORTED;
    case ErrorCode::Internal: return SMB_ERR_INTERNAL;
  }
  return SMB_ERR_INTERNAL;
}

template <class F>
smb_error guarded(F &&f) {
  last_error.clear();
  try {
    f();
    return SMB_OK;
  } catch (const Error &e) {
    last_error = e.what();
    return code_of(e.code());
  } catch (const std::logic_error &e) {
    last_error = std::string("malformed number: ") + e.what();
    return SMB_ERR_INVALID_ARGUMENT;
  } catch (const std::exception &e) {
    last_error = e.what();
    return SMB_ERR_INTERNAL;
  }
}

char *dup_string(const std::string &s) {
  char *out = static_cast<char *>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

void require(bool cond, const char *what) {
  if (!cond) throw Error(ErrorCode::InvalidArgument, what);
}

int agent_index(const Instance &inst, const char *name, Side side) {
  require(name != nullptr, "missing agent name");
  auto a = find_agent(inst, name);
  if (!a) throw Error(ErrorCode::UnknownName, std::string("unknown agent '") + name + "'");
  if (a->side != side)
    throw Error(ErrorCode::InvalidArgument, std::string("agent '") + name + "' is on the wrong side");
  return a->index;
}

std::vector<std::pair<int, int>> parse_edges(const char *text) {
  std::vector<std::pair<int, int>> edges;
  if (!text) return edges;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto dash = item.find('-');
    require(dash != std::string::npos, "edges are written as u-v");
    edges.emplace_back(std::stoi(item.substr(0, dash)) - 1, std::stoi(item.substr(dash + 1)) - 1);
  }
  return edges;
}

std::vector<std::vector<int>> parse_sets(const char *text) {
  std::vector<std::vector<int>> sets;
  require(text != nullptr, "missing sets");
  std::stringstream ss(text);
  std::string group;
  while (std::getline(ss, group, ';')) {
    std::vector<int> set;
    std::stringstream gs(group);
    std::string item;
    while (std::getline(gs, item, ','))
      if (!item.empty()) set.push_back(std::stoi(item));
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
    sets.push_back(std::move(set));
  }
  return sets;
}

}  // namespace

extern "C" {

const char *smb_last_error(void) { return last_error.c_str(); }

void smb_string_free(char *s) { std::free(s); }

smb_error smb_instance_parse(const char *text, smb_instance **out) {
  return guarded([&] {
    require(text && out, "null argument");
    *out = new smb_instance{parse_instance(text)};
  });
}

smb_error smb_instance_serialize(const smb_instance *inst, char **out) {
  return guarded([&] {
    require(inst && out, "null argument");
    *out = dup_string(serialize_instance(inst->inst));
  });
}

smb_error smb_instance_digest(const smb_instance *inst, char **out) {
  return guarded([&] {
    require(inst && out, "null argument");
    *out = dup_string(instance_digest(inst->inst));
  });
}

void smb_instance_free(smb_instance *inst) { delete inst; }

smb_error smb_matching_parse(const smb_instance *inst, const char *text, smb_matching **out) {
  return guarded([&] {
    require(inst && text && out, "null argument");
    *out = new smb_matching{parse_matching(inst->inst, text)};
  });
}

smb_error smb_matching_serialize(const smb_instance *inst, const smb_matching *m, char **out) {
  return guarded([&] {
    require(inst && m && out, "null argument");
    *out = dup_string(serialize_matching(inst->inst, m->m));
  });
}

void smb_matching_free(smb_matching *m) { delete m; }

smb_error smb_check(const smb_instance *inst, const smb_matching *m, int unique, char **report, int *holds) {
  return guarded([&] {
    require(inst && m && report && holds, "null argument");
    CheckReport r = check_matching(inst->inst, m->m, unique != 0);
    *report = dup_string(r.text);
    *holds = r.holds ? 1 : 0;
  });
}

smb_error smb_solve(const smb_instance *inst, const smb_solve_options *opts, smb_result **out) {
  return guarded([&] {
    require(inst && opts && out, "null argument");
    auto goal = parse_goal(opts->goal ? opts->goal : "");
    if (!goal) throw Error(ErrorCode::InvalidArgument, "unknown goal");
    auto action = parse_action_type(opts->action ? opts->action : "");
    if (!action) throw Error(ErrorCode::InvalidArgument, "unknown action");
    auto algo = parse_algo(opts->algo ? opts->algo : "auto");
    if (!algo) throw Error(ErrorCode::InvalidArgument, "unknown algorithm");
    std::optional<int> budget;
    if (opts->has_budget) {
      require(opts->budget >= 0, "budget must be nonnegative");
      budget = opts->budget;
    }
    const Instance &instance = inst->inst;
    SolveRequest req;
    if (*goal == Goal::ConstEx || *goal == Goal::DestEx) {
      require(opts->pair_man && opts->pair_woman, "this goal needs a target pair");
      require(!opts->target, "this goal takes a pair, not a matching");
      req = SolveRequest::for_pair(instance, *goal, *action, agent_index(instance, opts->pair_man, Side::Man),
                                   agent_index(instance, opts->pair_woman, Side::Woman), budget);
    } else {
      require(opts->target, "this goal needs a target matching");
      require(!opts->pair_man && !opts->pair_woman, "this goal takes a matching, not a pair");
      req = SolveRequest::for_matching(instance, *goal, *action, opts->target->m, budget);
    }
    auto res = std::make_unique<smb_result>();
    res->res = opts->oracle ? oracle_min_manipulation(req) : solve(req, *algo);
    res->req = std::move(req);
    *out = res.release();
  });
}

smb_status smb_result_status(const smb_result *res) {
  switch (res->res.status) {
    case Status::Feasible: return SMB_FEASIBLE;
    case Status::InfeasibleWithinBudget: return SMB_INFEASIBLE_WITHIN_BUDGET;
    case Status::InfeasibleAlways: return SMB_INFEASIBLE_ALWAYS;
  }
  return SMB_INFEASIBLE_WITHIN_BUDGET;
}

smb_error smb_result_render(const smb_result *res, const char *command, int64_t seed, double seconds, char **out) {
  return guarded([&] {
    require(res && out, "null argument");
    RunManifest manifest;
    manifest.command = command ? command : "";
    if (seed >= 0) manifest.seed = seed;
    manifest.instance_digest = instance_digest(res->req.instance);
    manifest.seconds = seconds;
    *out = dup_string(render_result(res->req, res->res, manifest));
  });
}

void smb_result_free(smb_result *res) { delete res; }

smb_error smb_generate(int n, uint64_t seed, double addable_fraction, smb_instance **out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    require(addable_fraction >= 0 && addable_fraction <= 1, "addable fraction must lie in [0, 1]");
    *out = new smb_instance{random_instance(n, seed, addable_fraction)};
  });
}

smb_error smb_gadget(const smb_gadget_options *opts, smb_instance **inst, smb_matching **target, char **info) {
  return guarded([&] {
    require(opts && opts->name && inst && target && info, "null argument");
    std::string name = opts->name;
    GadgetOutput g;
    if (name == "clique-add" || name == "clique-accdel" || name == "clique-reorder" || name == "is-delete") {
      SimpleGraph graph(opts->vertices, parse_edges(opts->edges));
      if (name == "clique-add")
        g = gadget_clique_add(graph, opts->k);
      else if (name == "clique-accdel")
        g = gadget_clique_accdel_reorder(graph, opts->k, ActionType::AccDelete);
      else if (name == "clique-reorder")
        g = gadget_clique_accdel_reorder(graph, opts->k, ActionType::Reorder);
      else
        g = gadget_is_delete(graph, opts->k, opts->unique ? Goal::ExactUni : Goal::ExactEx);
    } else if (name == "hs-reorder" || name == "hs-add") {
      SetSystem s{opts->universe, parse_sets(opts->sets)};
      g = name == "hs-reorder" ? gadget_hs_reorder(s, opts->k) : gadget_hs_add(s, opts->k);
    } else if (name == "dummy-block") {
      g = gadget_dummy_block(opts->k);
    } else {
      throw Error(ErrorCode::InvalidArgument, "unknown gadget '" + name + "'");
    }
    nlohmann::json doc;
    doc["goal"] = goal_name(g.goal);
    doc["action"] = action_type_name(g.action);
    doc["budget"] = g.budget ? nlohmann::json(*g.budget) : nlohmann::json("inf");
    if (g.pair) doc["pair"] = {g.instance.men_labels[g.pair->first], g.instance.women_labels[g.pair->second]};
    doc["note"] = g.note;
    *info = dup_string(doc.dump());
    *target = g.target ? new smb_matching{*g.target} : nullptr;
    *inst = new smb_instance{std::move(g.instance)};
  });
}

smb_error smb_enumerate(const smb_instance *inst, char **out) {
  return guarded([&] {
    require(inst && out, "null argument");
    const Instance &i = inst->inst;
    std::string text;
    for (const Matching &m : enumerate_stable(i, PresenceMask::initial(i))) {
      std::string line;
      for (auto [a, b] : m.pairs()) line += (line.empty() ? "" : " ") + i.men_labels[a] + "-" + i.women_labels[b];
      text += line + "\n";
    }
    *out = dup_string(text);
  });
}

smb_error smb_bench(const smb_bench_options *opts, char **out) {
  return guarded([&] {
    require(opts && out && opts->n_list && opts->n_count > 0, "null argument");
    BenchConfig config;
    auto goal = parse_goal(opts->goal ? opts->goal : "");
    auto action = parse_action_type(opts->action ? opts->action : "");
    if (!goal || !action) throw Error(ErrorCode::InvalidArgument, "unknown goal or action");
    require(opts->reps > 0, "reps must be positive");
    config.goal = *goal;
    config.action = *action;
    config.n_list.assign(opts->n_list, opts->n_list + opts->n_count);
    config.reps = opts->reps;
    config.seed = opts->seed;
    *out = dup_string(render_bench(config, run_bench(config)));
  });
}

}  // extern "C"
