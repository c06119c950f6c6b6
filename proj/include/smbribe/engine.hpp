#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "smbribe/core.hpp"

namespace smbribe {

using PairList = std::vector<std::pair<int, int>>;

// Blocking pairs among present agents, sorted by (man, woman).
PairList blocking_pairs(const Instance &inst, const PresenceMask &mask, const Matching &m);
bool is_stable(const Instance &inst, const PresenceMask &mask, const Matching &m);

// Proposer-optimal stable matching among present agents.
Matching gale_shapley(const Instance &inst, const PresenceMask &mask, Side proposing);

bool is_unique_stable(const Instance &inst, const PresenceMask &mask, const Matching &m);

// successor[i] for each agent i on `side`; -1 when none exists or i is unassigned.
struct SuccessorMap {
  Side side = Side::Man;
  std::vector<int> successor;
};

SuccessorMap rotation_successors(const Instance &inst, const PresenceMask &mask, const Matching &m, Side side);

// A rotation as the list of (agent, partner) pairs on `side`; nullopt if none is exposed.
using Rotation = std::vector<std::pair<int, int>>;
std::optional<Rotation> exposed_rotation(const Instance &inst, const PresenceMask &mask, const Matching &m, Side side);

// Result of pruning the instance around a target pair and matching the remainder.
struct PairCompletion {
  std::vector<AgentRef> conflicting;  // agents of U* ∪ W* left unassigned, sorted
  std::vector<AgentRef> unassigned;   // every present agent of the pruned instance left unassigned, excluding the pair
  Matching matching;                  // stable matching of the pruned instance (without the target pair)
  Instance pruned;
  PresenceMask pruned_mask;
};

// Requires both agents present and mutually acceptable.
PairCompletion complete_around_pair(const Instance &inst, const PresenceMask &mask, int m_star, int w_star);

bool stable_pair(const Instance &inst, const PresenceMask &mask, int m, int w);
bool stable_pair(const Instance &inst, int m, int w);

}  // namespace smbribe
