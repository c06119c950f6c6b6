#include <algorithm>
#include <functional>
#include <map>

#include "smbribe/engine.hpp"
#include "smbribe/solvers.hpp"
#include "solver_util.hpp"

namespace smbribe {

using detail::check_request;
using detail::finish;
using detail::infeasible;

ManipulationResult exact_ex_accdel(const SolveRequest &req) {
  check_request(req, Goal::ExactEx, {ActionType::AccDelete});
  std::vector<Action> actions;
  for (auto [m, w] : blocking_pairs(req.instance, req.mask, req.target->restricted(req.mask)))
    actions.push_back(AccDeleteAction{m, w});
  return finish(req, std::move(actions), Quality::Exact, "exact_ex_accdel");
}

ManipulationResult exact_ex_reorder(const SolveRequest &req) {
  check_request(req, Goal::ExactEx, {ActionType::Reorder});
  const Instance &inst = req.instance;
  Matching target = req.target->restricted(req.mask);
  if (!detail::target_acceptable(inst, target))
    return infeasible(Status::InfeasibleWithinBudget, Quality::Exact, "exact_ex_reorder", std::nullopt);
  // An agent left unassigned by M* blocks with everyone it accepts whatever its list, so the other end of
  // such a pair has to be reordered; the remaining pairs form the cover instance.
  std::vector<bool> forced_men(inst.men_count), forced_women(inst.women_count);
  PairList rest;
  for (auto [m, w] : blocking_pairs(inst, req.mask, target)) {
    bool m_free = target.wife[m] < 0, w_free = target.husband[w] < 0;
    if (m_free && w_free)
      return infeasible(Status::InfeasibleWithinBudget, Quality::Exact, "exact_ex_reorder", std::nullopt);
    if (m_free)
      forced_women[w] = true;
    else if (w_free)
      forced_men[m] = true;
    else
      rest.emplace_back(m, w);
  }
  BipartiteGraph g{inst.men_count, inst.women_count, {}};
  for (auto [m, w] : rest)
    if (!forced_men[m] && !forced_women[w]) g.edges.emplace_back(m, w);
  VertexCover cover = bipartite_min_vertex_cover(g);
  for (int m : cover.left) forced_men[m] = true;
  for (int w : cover.right) forced_women[w] = true;
  std::vector<Action> actions;
  for (int m = 0; m < inst.men_count; ++m)
    if (forced_men[m]) actions.push_back(ReorderAction{man(m), detail::reorder_front(inst.men_prefs[m], {target.wife[m]})});
  for (int w = 0; w < inst.women_count; ++w)
    if (forced_women[w])
      actions.push_back(ReorderAction{woman(w), detail::reorder_front(inst.women_prefs[w], {target.husband[w]})});
  return finish(req, std::move(actions), Quality::Exact, "exact_ex_reorder");
}

namespace {

// Swaps needed until a ranks its target partner above b.
int resolution_cost(const RankTable &ranks, AgentRef a, int partner, int b) {
  return std::max(ranks.of(a, partner) - ranks.of(a, b), 0);
}

SwapCutNetwork build_network(const Instance &inst, const PresenceMask &mask, const Matching &target) {
  SwapCutNetwork net;
  RankTable ranks(inst);
  PairList bp = blocking_pairs(inst, mask, target.restricted(mask));
  auto add_vertex = [&](const std::string &name, AgentRef owner, int pos, int cost) {
    int v = net.graph.add_vertex();
    net.vertex_names.push_back(name);
    net.owner.push_back(owner);
    net.chain_position.push_back(pos);
    net.cost_into.push_back(cost);
    return v;
  };
  int s = add_vertex("s", man(0), 0, 0);
  int t = add_vertex("t", woman(0), 0, 0);
  net.graph.source = s;
  net.graph.sink = t;

  // Chain vertex of each (agent, blocking pair).
  std::map<std::pair<AgentRef, std::size_t>, int> vertex_of;
  for (Side side : {Side::Man, Side::Woman}) {
    for (int i = 0; i < inst.count(side); ++i) {
      AgentRef a{side, i};
      int partner = target.partner(a);
      // Without a present partner no swap resolves a's blocking pairs.
      bool stuck = partner < 0 || !mask.present(AgentRef{other(side), partner});
      std::vector<std::pair<int, std::size_t>> chain;  // (cost, blocking pair index)
      for (std::size_t k = 0; k < bp.size(); ++k) {
        int self = side == Side::Man ? bp[k].first : bp[k].second;
        int other = side == Side::Man ? bp[k].second : bp[k].first;
        if (self == i) chain.emplace_back(stuck ? -1 : resolution_cost(ranks, a, partner, other), k);
      }
      std::stable_sort(chain.begin(), chain.end(), [](auto &x, auto &y) { return x.first > y.first; });
      int prev = side == Side::Man ? s : t;
      for (std::size_t pos = 0; pos < chain.size(); ++pos) {
        auto [cost, k] = chain[pos];
        std::string name = "u" + std::to_string(pos + 1) + "^" + inst.label(a);
        int v = add_vertex(name, a, static_cast<int>(pos) + 1, cost);
        vertex_of[{a, k}] = v;
        Weight weight = cost < 0 ? Weight::infinite() : Weight(cost);
        if (side == Side::Man)
          net.graph.add_arc(prev, v, weight);
        else
          net.graph.add_arc(v, prev, weight);
        prev = v;
      }
    }
  }
  for (std::size_t k = 0; k < bp.size(); ++k)
    net.graph.add_arc(vertex_of.at({man(bp[k].first), k}), vertex_of.at({woman(bp[k].second), k}),
                      Weight::infinite());
  return net;
}

}  // namespace

SwapCutNetwork build_swap_cut_network(const Instance &inst, const Matching &target) {
  validate(inst, target);
  return build_network(inst, PresenceMask::all(inst), target);
}

ManipulationResult exact_ex_swap(const SolveRequest &req) {
  check_request(req, Goal::ExactEx, {ActionType::Swap});
  const Instance &inst = req.instance;
  const Matching &target = *req.target;
  if (!detail::target_acceptable(inst, target.restricted(req.mask)))
    return infeasible(Status::InfeasibleWithinBudget, Quality::Exact, "exact_ex_swap", std::nullopt);
  SwapCutNetwork net = build_network(inst, req.mask, target);
  MinCutResult cut = min_cut(net.graph);
  if (cut.value.is_infinite())
    return infeasible(Status::InfeasibleWithinBudget, Quality::Exact, "exact_ex_swap", std::nullopt);

  // A man's chain arc costs what its head vertex records, a woman's what its tail records; d_a is the
  // largest resolution cost among a's cut arcs.
  std::map<AgentRef, int> moves;
  for (int idx : cut.cut) {
    const Arc &arc = net.graph.arcs[idx];
    bool man_chain = net.chain_position[arc.to] > 0 && net.owner[arc.to].side == Side::Man;
    int v = man_chain ? arc.to : arc.from;
    int &d = moves[net.owner[v]];
    d = std::max(d, net.cost_into[v]);
  }
  std::vector<Action> actions;
  for (auto [a, d] : moves) {
    int r = *rank(inst, a, AgentRef{other(a.side), target.partner(a)}) - 1;
    for (int j = 1; j <= d; ++j) actions.push_back(SwapAction{a, r - j});
  }
  return finish(req, std::move(actions), Quality::Exact, "exact_ex_swap");
}

namespace {

// Algorithm adding partners of present `lead` agents first, then partners of lonely agents on the other side
// that some present lead agent prefers to its target partner. nullopt when the result is still unstable.
std::optional<std::vector<AgentRef>> add_closure(const SolveRequest &req, Side lead) {
  const Instance &inst = req.instance;
  const Matching &target = *req.target;
  PresenceMask mask = req.mask;
  RankTable ranks(inst);
  Side follow = other(lead);
  std::vector<AgentRef> added;
  bool stuck = false;
  auto add = [&](AgentRef a) {
    if (mask.present(a)) return;
    if (!inst.addable(a)) {
      stuck = true;
      return;
    }
    mask.set(a, true);
    added.push_back(a);
  };
  for (int i = 0; i < inst.count(lead); ++i)
    if (mask.present({lead, i})) add({follow, target.partner({lead, i})});

  auto partner_of = [&](AgentRef a) { return AgentRef{other(a.side), target.partner(a)}; };
  bool changed = true;
  while (changed && !stuck) {
    changed = false;
    for (int j = 0; j < inst.count(follow) && !changed; ++j) {
      AgentRef f{follow, j};
      if (!mask.present(f) || mask.present(partner_of(f))) continue;
      for (int i = 0; i < inst.count(lead); ++i) {
        AgentRef l{lead, i};
        if (!mask.present(l)) continue;
        int r = ranks.of(l, j);
        if (r >= 0 && r < ranks.of(l, target.partner(l))) {
          add(partner_of(f));
          changed = true;
          break;
        }
      }
    }
  }
  if (stuck || !is_stable(inst, mask, target.restricted(mask))) return std::nullopt;
  return added;
}

}  // namespace

ManipulationResult exact_ex_add(const SolveRequest &req) {
  check_request(req, Goal::ExactEx, {ActionType::Add});
  const std::string name = "exact_ex_add";
  auto by_women = add_closure(req, Side::Man);
  auto by_men = add_closure(req, Side::Woman);
  std::optional<std::vector<AgentRef>> best = by_women;
  if (by_men && (!best || by_men->size() < best->size())) best = by_men;
  if (!best) return infeasible(Status::InfeasibleAlways, Quality::Exact, name, std::nullopt);
  std::sort(best->begin(), best->end());
  std::vector<Action> actions;
  for (AgentRef a : *best) actions.push_back(AddAgentAction{a});
  return finish(req, std::move(actions), Quality::Exact, name);
}

ManipulationResult exact_ex_delete_fpt(const SolveRequest &req) {
  check_request(req, Goal::ExactEx, {ActionType::Delete});
  const std::string name = "exact_ex_delete_fpt";
  const Instance &inst = req.instance;
  const Matching &target = *req.target;
  int limit = req.budget.value_or(inst.men_count + inst.women_count);

  std::vector<AgentRef> deleted;
  // Branch on the endpoints of the lowest remaining blocking pair.
  std::function<bool(const PresenceMask &, int)> branch = [&](const PresenceMask &mask, int left) {
    PairList bp = blocking_pairs(inst, mask, target.restricted(mask));
    if (bp.empty()) return true;
    if (left == 0) return false;
    auto [m, w] = bp.front();
    for (AgentRef v : {man(m), woman(w)}) {
      PresenceMask next = mask;
      next.set(v, false);
      deleted.push_back(v);
      if (branch(next, left - 1)) return true;
      deleted.pop_back();
    }
    return false;
  };
  for (int k = 0; k <= limit; ++k) {
    deleted.clear();
    if (branch(req.mask, k)) {
      std::sort(deleted.begin(), deleted.end());
      std::vector<Action> actions;
      for (AgentRef a : deleted) actions.push_back(DeleteAgentAction{a});
      return finish(req, std::move(actions), Quality::Exact, name);
    }
  }
  return infeasible(Status::InfeasibleWithinBudget, Quality::Exact, name, std::nullopt);
}

ManipulationResult exact_partial(const SolveRequest &req, const Matching &partial, int max_free) {
  if (req.goal != Goal::ExactEx)
    throw Error(ErrorCode::InvalidArgument, "partial matchings apply to exact-ex requests");
  std::function<ManipulationResult(const SolveRequest &)> solver;
  switch (req.action) {
    case ActionType::Swap: solver = exact_ex_swap; break;
    case ActionType::AccDelete: solver = exact_ex_accdel; break;
    case ActionType::Reorder: solver = exact_ex_reorder; break;
    default: throw Error(ErrorCode::Unsupported, "partial matchings support swap, accdel and reorder");
  }
  const Instance &inst = req.instance;
  if (!is_complete(inst) || inst.men_count != inst.women_count)
    throw Error(ErrorCode::InvalidArgument, "partial matchings need a complete instance with equal sides");
  validate(inst, partial);

  std::vector<int> free_men, free_women;
  for (int m = 0; m < inst.men_count; ++m)
    if (partial.wife[m] < 0) free_men.push_back(m);
  for (int w = 0; w < inst.women_count; ++w)
    if (partial.husband[w] < 0) free_women.push_back(w);
  if (static_cast<int>(free_men.size()) > max_free)
    throw Error(ErrorCode::CapExceeded, "too many unmatched agents to enumerate completions");

  const std::string name = std::string("exact_partial/") + action_type_name(req.action);
  std::optional<ManipulationResult> best;
  do {
    Matching full = partial;
    for (std::size_t i = 0; i < free_men.size(); ++i) full.add(free_men[i], free_women[i]);
    SolveRequest sub = req;
    sub.target = full;
    sub.budget.reset();
    ManipulationResult res = solver(sub);
    if (!best || *res.cost < *best->cost) best = std::move(res);
  } while (std::next_permutation(free_women.begin(), free_women.end()));

  best->algorithm = name;
  if (req.budget && *best->cost > *req.budget)
    return infeasible(Status::InfeasibleWithinBudget, Quality::Exact, name, best->cost);
  return *best;
}

}  // namespace smbribe
