#include "smbribe/engine.hpp"

#include <algorithm>
#include <deque>

namespace smbribe {

PairList blocking_pairs(const Instance &inst, const PresenceMask &mask, const Matching &m) {
  RankTable ranks(inst);
  PairList out;
  for (int a = 0; a < inst.men_count; ++a) {
    if (!mask.men[a]) continue;
    int wife = m.wife[a];
    int limit = wife >= 0 && mask.women[wife] ? ranks.man(a, wife) : static_cast<int>(inst.men_prefs[a].size());
    for (int i = 0; i < limit; ++i) {
      int b = inst.men_prefs[a][i];
      if (!mask.women[b]) continue;
      int husband = m.husband[b];
      if (husband < 0 || !mask.men[husband] || ranks.woman(b, a) < ranks.woman(b, husband)) out.emplace_back(a, b);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_stable(const Instance &inst, const PresenceMask &mask, const Matching &m) {
  return blocking_pairs(inst, mask, m).empty();
}

Matching gale_shapley(const Instance &inst, const PresenceMask &mask, Side proposing) {
  Side receiving = other(proposing);
  int np = inst.count(proposing), nr = inst.count(receiving);
  RankTable ranks(inst);
  std::vector<int> engaged_to(nr, -1), partner(np, -1), next(np, 0);
  std::deque<int> free;
  for (int i = 0; i < np; ++i)
    if (mask.present(AgentRef{proposing, i})) free.push_back(i);
  while (!free.empty()) {
    int p = free.front();
    free.pop_front();
    const auto &list = inst.prefs(AgentRef{proposing, p});
    while (next[p] < static_cast<int>(list.size())) {
      int r = list[next[p]++];
      if (!mask.present(AgentRef{receiving, r})) continue;
      int cur = engaged_to[r];
      if (cur < 0) {
        engaged_to[r] = p;
        partner[p] = r;
        break;
      }
      if (ranks.of(AgentRef{receiving, r}, p) < ranks.of(AgentRef{receiving, r}, cur)) {
        engaged_to[r] = p;
        partner[p] = r;
        partner[cur] = -1;
        free.push_back(cur);
        break;
      }
    }
  }
  Matching out(inst.men_count, inst.women_count);
  for (int p = 0; p < np; ++p) {
    if (partner[p] < 0) continue;
    if (proposing == Side::Man)
      out.add(p, partner[p]);
    else
      out.add(partner[p], p);
  }
  return out;
}

bool is_unique_stable(const Instance &inst, const PresenceMask &mask, const Matching &m) {
  if (!is_stable(inst, mask, m)) return false;
  Matching present = m.restricted(mask);
  return gale_shapley(inst, mask, Side::Man) == present && gale_shapley(inst, mask, Side::Woman) == present;
}

SuccessorMap rotation_successors(const Instance &inst, const PresenceMask &mask, const Matching &m, Side side) {
  if (!is_stable(inst, mask, m)) throw Error(ErrorCode::NotStable, "rotation successors need a stable matching");
  RankTable ranks(inst);
  Side opp = other(side);
  SuccessorMap out{side, std::vector<int>(inst.count(side), -1)};
  for (int i = 0; i < inst.count(side); ++i) {
    AgentRef a{side, i};
    int p = m.partner(a);
    if (!mask.present(a) || p < 0) continue;
    const auto &list = inst.prefs(a);
    for (int k = ranks.of(a, p) + 1; k < static_cast<int>(list.size()); ++k) {
      AgentRef b{opp, list[k]};
      if (!mask.present(b)) continue;
      int q = m.partner(b);
      if (q < 0 || ranks.of(b, i) < ranks.of(b, q)) {
        out.successor[i] = list[k];
        break;
      }
    }
  }
  return out;
}

std::optional<Rotation> exposed_rotation(const Instance &inst, const PresenceMask &mask, const Matching &m, Side side) {
  SuccessorMap succ = rotation_successors(inst, mask, m, side);
  int n = inst.count(side);
  // next agent on the same side: the partner of the successor, if any.
  auto step = [&](int i) -> int {
    int s = succ.successor[i];
    if (s < 0) return -1;
    return m.partner(AgentRef{other(side), s});
  };
  std::vector<int> state(n, 0);  // 0 unvisited, 1 on current walk, 2 done
  for (int start = 0; start < n; ++start) {
    if (state[start] != 0) continue;
    std::vector<int> walk;
    int cur = start;
    while (cur >= 0 && state[cur] == 0) {
      state[cur] = 1;
      walk.push_back(cur);
      cur = step(cur);
    }
    if (cur >= 0 && state[cur] == 1) {
      auto it = std::find(walk.begin(), walk.end(), cur);
      Rotation rot;
      for (; it != walk.end(); ++it) rot.emplace_back(*it, m.partner(AgentRef{side, *it}));
      return rot;
    }
    for (int v : walk) state[v] = 2;
  }
  return std::nullopt;
}

PairCompletion complete_around_pair(const Instance &inst, const PresenceMask &mask, int m_star, int w_star) {
  RankTable ranks(inst);
  if (!mask.men[m_star] || !mask.women[w_star] || ranks.man(m_star, w_star) < 0)
    throw Error(ErrorCode::InvalidArgument, "target pair must be present and mutually acceptable");
  int rm = ranks.man(m_star, w_star), rw = ranks.woman(w_star, m_star);
  std::vector<bool> in_u(inst.men_count, false), in_w(inst.women_count, false);
  for (int i = 0; i < rw; ++i)
    if (mask.men[inst.women_prefs[w_star][i]]) in_u[inst.women_prefs[w_star][i]] = true;
  for (int i = 0; i < rm; ++i)
    if (mask.women[inst.men_prefs[m_star][i]]) in_w[inst.men_prefs[m_star][i]] = true;

  // Drop every pair that cannot coexist with {m*, w*} in a stable matching.
  PairCompletion out;
  out.pruned = inst;
  for (int a = 0; a < inst.men_count; ++a) {
    auto &list = out.pruned.men_prefs[a];
    std::erase_if(list, [&](int b) {
      return (in_u[a] && ranks.man(a, b) >= ranks.man(a, w_star)) ||
             (in_w[b] && ranks.woman(b, a) >= ranks.woman(b, m_star));
    });
  }
  for (int b = 0; b < inst.women_count; ++b) {
    auto &list = out.pruned.women_prefs[b];
    std::erase_if(list, [&](int a) {
      return (in_u[a] && ranks.man(a, b) >= ranks.man(a, w_star)) ||
             (in_w[b] && ranks.woman(b, a) >= ranks.woman(b, m_star));
    });
  }
  out.pruned_mask = mask;
  out.pruned_mask.men[m_star] = false;
  out.pruned_mask.women[w_star] = false;
  out.matching = gale_shapley(out.pruned, out.pruned_mask, Side::Man);
  for (int a = 0; a < inst.men_count; ++a)
    if (out.pruned_mask.men[a] && out.matching.wife[a] < 0) {
      out.unassigned.push_back(man(a));
      if (in_u[a]) out.conflicting.push_back(man(a));
    }
  for (int b = 0; b < inst.women_count; ++b)
    if (out.pruned_mask.women[b] && out.matching.husband[b] < 0) {
      out.unassigned.push_back(woman(b));
      if (in_w[b]) out.conflicting.push_back(woman(b));
    }
  return out;
}

bool stable_pair(const Instance &inst, const PresenceMask &mask, int m, int w) {
  if (!mask.men[m] || !mask.women[w]) return false;
  if (!rank(inst, man(m), woman(w))) return false;
  return complete_around_pair(inst, mask, m, w).conflicting.empty();
}

bool stable_pair(const Instance &inst, int m, int w) {
  return stable_pair(inst, PresenceMask::all(inst), m, w);
}

}  // namespace smbribe
