#pragma once

#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "smbribe/solvers.hpp"

namespace smbribe::detail {

void check_request(const SolveRequest &req, Goal goal, std::initializer_list<ActionType> actions);
void require_complete(const SolveRequest &req);

// Applies `actions`, compares the cost with the budget and verifies a Feasible result.
ManipulationResult finish(const SolveRequest &req, std::vector<Action> actions, Quality quality,
                          const std::string &algorithm);
ManipulationResult infeasible(Status status, Quality quality, const std::string &algorithm,
                              std::optional<int> optimum);

// A target pair whose acceptability was deleted can no longer be part of any matching.
bool target_acceptable(const Instance &inst, const Matching &target);

// `front` first (in the given order), then the rest of `list` in its original relative order.
std::vector<int> reorder_front(const std::vector<int> &list, const std::vector<int> &front);

// Exhaustive minimum over the action space of req.action, goal checked with the engine.
ManipulationResult bruteforce(const SolveRequest &req, const SearchCaps &caps);

}  // namespace smbribe::detail
