#include <algorithm>
#include <functional>

#include "smbribe/engine.hpp"
#include "smbribe/solvers.hpp"
#include "solver_util.hpp"

namespace smbribe {

using detail::check_request;
using detail::finish;
using detail::infeasible;

namespace {

void require_all_present(const SolveRequest &req) {
  if (!(req.mask == PresenceMask::all(req.instance)))
    throw Error(ErrorCode::InvalidArgument, "solver needs every agent present");
}

// Agents q after target(a) in a's list that prefer a to their own target partner, in a's order.
std::vector<int> successor_candidates(const Instance &inst, const RankTable &ranks, const Matching &target,
                                      AgentRef a) {
  std::vector<int> out;
  const auto &list = inst.prefs(a);
  int own = ranks.of(a, target.partner(a));
  for (int pos = own + 1; pos < static_cast<int>(list.size()); ++pos) {
    AgentRef q{other(a.side), list[pos]};
    int rq = ranks.of(q, a.index);
    if (rq >= 0 && rq < ranks.of(q, target.partner(q))) out.push_back(list[pos]);
  }
  return out;
}

}  // namespace

UniquenessGraph build_uniqueness_graph(const Instance &inst, const Matching &target, Side side) {
  validate(inst, target);
  if (!is_stable(inst, PresenceMask::all(inst), target))
    throw Error(ErrorCode::NotStable, "uniqueness graph needs a stable target matching");
  UniquenessGraph ug;
  ug.side = side;
  RankTable ranks(inst);
  int n = inst.count(side);
  ug.graph.vertex_count = n + 1;
  ug.graph.sink = n;
  for (int i = 0; i < n; ++i) {
    AgentRef a{side, i};
    if (target.partner(a) < 0) continue;
    // Making the k-th candidate the successor costs deleting the k candidates before it.
    std::vector<int> cands = successor_candidates(inst, ranks, target, a);
    for (std::size_t k = 0; k < cands.size(); ++k)
      ug.graph.add_arc(i, target.partner(AgentRef{other(side), cands[k]}), static_cast<std::int64_t>(k));
    ug.graph.add_arc(i, n, static_cast<std::int64_t>(cands.size()));
  }
  return ug;
}

ManipulationResult exact_uni_accdel(const SolveRequest &req) {
  check_request(req, Goal::ExactUni, {ActionType::AccDelete});
  require_all_present(req);
  const Matching &target = *req.target;
  std::vector<Action> actions;
  Instance inst = req.instance;
  for (auto [m, w] : blocking_pairs(inst, req.mask, target)) {
    actions.push_back(AccDeleteAction{m, w});
    inst = apply_action(inst, req.mask, actions.back()).inst;
  }

  RankTable ranks(inst);
  for (Side side : {Side::Man, Side::Woman}) {
    UniquenessGraph ug = build_uniqueness_graph(inst, target, side);
    auto arb = min_anti_arborescence(ug.graph);
    if (!arb) throw Error(ErrorCode::Internal, "uniqueness graph lacks an anti-arborescence");
    for (int idx : arb->arcs) {
      const Arc &arc = ug.graph.arcs[idx];
      AgentRef a{side, arc.from};
      std::vector<int> cands = successor_candidates(inst, ranks, target, a);
      for (std::int64_t k = 0; k < arc.weight.value(); ++k)
        actions.push_back(side == Side::Man ? AccDeleteAction{a.index, cands[k]} : AccDeleteAction{cands[k], a.index});
    }
  }
  return finish(req, std::move(actions), Quality::Exact, "exact_uni_accdel");
}

namespace {

constexpr int kNone = -1;

struct Guess {
  std::vector<bool> in_x_men, in_x_women;
  std::vector<int> succ_men, succ_women;  // guessed successor, kNone for the empty successor

  bool in_x(AgentRef a) const { return a.side == Side::Man ? in_x_men[a.index] : in_x_women[a.index]; }
  int succ(AgentRef a) const { return a.side == Side::Man ? succ_men[a.index] : succ_women[a.index]; }
};

// Builds the successor graph for rotations led by `side` and returns, for every guessed agent on the other
// side, the agents it must rank before its target partner; nullopt if no spanning anti-arborescence exists.
std::optional<std::vector<std::vector<int>>> first_parts(const Instance &inst, const RankTable &ranks,
                                                         const Matching &target, const Guess &g, Side side) {
  Side opp = other(side);
  int n = inst.count(side);
  CostDigraph h;
  h.vertex_count = n + 1;
  h.sink = n;
  auto vertex_of = [&](int q) { return target.partner(AgentRef{opp, q}); };
  for (int i = 0; i < n; ++i) {
    AgentRef a{side, i};
    if (g.in_x(a)) {
      h.add_arc(i, g.succ(a) == kNone ? n : vertex_of(g.succ(a)), 0);
      continue;
    }
    const auto &list = inst.prefs(a);
    int own = ranks.of(a, target.partner(a));
    bool found = false;
    for (int pos = own + 1; pos < static_cast<int>(list.size()) && !found; ++pos) {
      AgentRef q{opp, list[pos]};
      if (g.in_x(q)) {
        if (g.succ(q) != i) h.add_arc(i, vertex_of(q.index), 0);
        continue;
      }
      int rq = ranks.of(q, i);
      if (rq >= 0 && rq < ranks.of(q, target.partner(q))) {
        h.add_arc(i, vertex_of(q.index), 0);
        found = true;
      }
    }
    if (!found) h.add_arc(i, n, 0);
  }
  auto arb = min_anti_arborescence(h);
  if (!arb) return std::nullopt;
  std::vector<std::vector<int>> before(inst.count(opp));
  for (int idx : arb->arcs) {
    const Arc &arc = h.arcs[idx];
    if (arc.to == n) continue;
    int q = target.partner(AgentRef{side, arc.to});
    if (g.in_x(AgentRef{opp, q})) before[q].push_back(arc.from);
  }
  for (auto &v : before) std::sort(v.begin(), v.end());
  return before;
}

bool reject(const Instance &inst, const RankTable &ranks, const Matching &target, const PairList &bp,
            const Guess &g, const std::vector<AgentRef> &chosen) {
  for (auto [m, w] : bp)
    if (!g.in_x(man(m)) && !g.in_x(woman(w))) return true;
  for (AgentRef a : chosen) {
    int s = g.succ(a);
    if (s == kNone) {
      // No successor is only possible if no unguessed agent after a's partner prefers a.
      for (int q = 0; q < inst.count(other(a.side)); ++q) {
        AgentRef b{other(a.side), q};
        if (g.in_x(b)) continue;
        int rb = ranks.of(b, a.index);
        if (rb >= 0 && rb < ranks.of(b, target.partner(b))) return true;
      }
      continue;
    }
    AgentRef b{other(a.side), s};
    if (!g.in_x(b)) {
      int rb = ranks.of(b, a.index);
      if (rb < 0 || rb > ranks.of(b, target.partner(b))) return true;
    } else if (g.succ(b) == a.index) {
      return true;
    }
  }
  return false;
}

}  // namespace

ManipulationResult exact_uni_reorder_xp(const SolveRequest &req) {
  check_request(req, Goal::ExactUni, {ActionType::Reorder});
  require_all_present(req);
  if (!req.budget) throw Error(ErrorCode::InvalidArgument, "the XP search needs a finite budget");
  const std::string name = "exact_uni_reorder_xp";
  const Instance &inst = req.instance;
  const Matching &target = *req.target;
  RankTable ranks(inst);
  PairList bp = blocking_pairs(inst, req.mask, target);

  std::vector<AgentRef> pool;
  for (Side s : {Side::Man, Side::Woman})
    for (int i = 0; i < inst.count(s); ++i) pool.push_back({s, i});

  Guess g;
  g.in_x_men.assign(inst.men_count, false);
  g.in_x_women.assign(inst.women_count, false);
  g.succ_men.assign(inst.men_count, kNone);
  g.succ_women.assign(inst.women_count, kNone);
  std::vector<AgentRef> chosen;
  std::optional<std::vector<Action>> found;

  auto accept = [&]() -> bool {
    if (reject(inst, ranks, target, bp, g, chosen)) return false;
    auto for_women = first_parts(inst, ranks, target, g, Side::Man);
    if (!for_women) return false;
    auto for_men = first_parts(inst, ranks, target, g, Side::Woman);
    if (!for_men) return false;
    std::vector<Action> acts;
    for (AgentRef a : chosen) {
      std::vector<int> front = a.side == Side::Man ? (*for_men)[a.index] : (*for_women)[a.index];
      front.push_back(target.partner(a));
      if (g.succ(a) != kNone) front.push_back(g.succ(a));
      auto list = detail::reorder_front(inst.prefs(a), front);
      if (list != inst.prefs(a)) acts.push_back(ReorderAction{a, std::move(list)});
    }
    found = std::move(acts);
    return true;
  };

  // Successor guesses per chosen agent: acceptable agents other than the target partner, ascending, then none.
  std::function<bool(std::size_t)> guess_succ = [&](std::size_t idx) -> bool {
    if (idx == chosen.size()) return accept();
    AgentRef a = chosen[idx];
    std::vector<int> options(inst.prefs(a).begin(), inst.prefs(a).end());
    std::sort(options.begin(), options.end());
    options.erase(std::remove(options.begin(), options.end(), target.partner(a)), options.end());
    options.push_back(kNone);
    int &slot = a.side == Side::Man ? g.succ_men[a.index] : g.succ_women[a.index];
    for (int s : options) {
      slot = s;
      if (guess_succ(idx + 1)) return true;
    }
    slot = kNone;
    return false;
  };

  std::function<bool(std::size_t, int)> pick = [&](std::size_t from, int remaining) -> bool {
    if (remaining == 0) return guess_succ(0);
    for (std::size_t i = from; i + remaining <= pool.size(); ++i) {
      AgentRef a = pool[i];
      auto flag = a.side == Side::Man ? g.in_x_men.begin() : g.in_x_women.begin();
      flag[a.index] = true;
      chosen.push_back(a);
      bool ok = pick(i + 1, remaining - 1);
      chosen.pop_back();
      flag[a.index] = false;
      if (ok) return true;
    }
    return false;
  };

  int limit = std::min<int>(*req.budget, static_cast<int>(pool.size()));
  for (int k = 0; k <= limit; ++k)
    if (pick(0, k)) return finish(req, std::move(*found), Quality::Exact, name);
  return infeasible(Status::InfeasibleWithinBudget, Quality::Exact, name, std::nullopt);
}

}  // namespace smbribe
