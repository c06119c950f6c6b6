#include <algorithm>
#include <functional>

#include "smbribe/testkit.hpp"
#include "solver_util.hpp"

namespace smbribe {

namespace {

// Position of b in a's list, -1 if absent; a plain scan so the oracle does not share the engine's tables.
int position(const Instance &inst, AgentRef a, int b) {
  const auto &list = inst.prefs(a);
  auto it = std::find(list.begin(), list.end(), b);
  return it == list.end() ? -1 : static_cast<int>(it - list.begin());
}

bool prefers(const Instance &inst, AgentRef a, int b, int current) {
  int pb = position(inst, a, b);
  if (pb < 0) return false;
  return current < 0 || pb < position(inst, a, current);
}

bool definitionally_stable(const Instance &inst, const PresenceMask &mask, const Matching &m) {
  for (int i = 0; i < inst.men_count; ++i) {
    if (!mask.men[i]) continue;
    int wife = m.wife[i];
    if (wife >= 0 && (position(inst, man(i), wife) < 0 || position(inst, woman(wife), i) < 0)) return false;
    for (int w : inst.men_prefs[i]) {
      if (!mask.women[w]) continue;
      if (prefers(inst, man(i), w, m.wife[i]) && prefers(inst, woman(w), i, m.husband[w])) return false;
    }
  }
  return true;
}

}  // namespace

std::vector<Matching> enumerate_stable(const Instance &inst, const PresenceMask &mask, int max_agents) {
  int present = 0;
  for (bool b : mask.men) present += b;
  for (bool b : mask.women) present += b;
  if (present > max_agents) throw Error(ErrorCode::CapExceeded, "too many agents to enumerate stable matchings");

  std::vector<Matching> out;
  Matching m(inst.men_count, inst.women_count);
  // Assign men in index order; prune as soon as two decided men and their wives already block.
  std::function<void(int)> rec = [&](int i) {
    if (i == inst.men_count) {
      if (definitionally_stable(inst, mask, m)) out.push_back(m);
      return;
    }
    if (!mask.men[i]) {
      rec(i + 1);
      return;
    }
    auto consistent = [&]() {
      int w = m.wife[i];
      for (int j = 0; j < i; ++j) {
        if (!mask.men[j] || m.wife[j] < 0) continue;
        if (w >= 0 && prefers(inst, man(j), w, m.wife[j]) && prefers(inst, woman(w), j, i)) return false;
        int wj = m.wife[j];
        if (prefers(inst, man(i), wj, w) && prefers(inst, woman(wj), i, j)) return false;
      }
      return true;
    };
    for (int w : inst.men_prefs[i]) {
      if (!mask.women[w] || m.husband[w] >= 0) continue;
      m.add(i, w);
      if (consistent()) rec(i + 1);
      m.remove_agent(man(i));
    }
    if (consistent()) rec(i + 1);
  };
  rec(0);
  return out;
}

namespace {

struct OracleGoal {
  const SolveRequest &req;
  int max_agents;

  // Returns a witness matching when the goal holds.
  std::optional<Matching> check(const State &s) const {
    switch (req.goal) {
      case Goal::ConstEx:
      case Goal::DestEx: {
        auto [pm, pw] = *req.pair;
        bool present = s.mask.men[pm] && s.mask.women[pw];
        if (req.goal == Goal::ConstEx && !present) return std::nullopt;
        for (const Matching &m : enumerate_stable(s.inst, s.mask, max_agents))
          if (m.contains(pm, pw) == (req.goal == Goal::ConstEx)) return m;
        return std::nullopt;
      }
      case Goal::ExactEx: {
        Matching r = req.target->restricted(s.mask);
        if (definitionally_stable(s.inst, s.mask, r)) return r;
        return std::nullopt;
      }
      case Goal::ExactUni: {
        Matching r = req.target->restricted(s.mask);
        if (!definitionally_stable(s.inst, s.mask, r)) return std::nullopt;
        auto all = enumerate_stable(s.inst, s.mask, max_agents);
        if (all.size() == 1 && all.front() == r) return r;
        return std::nullopt;
      }
    }
    return std::nullopt;
  }
};

}  // namespace

ManipulationResult oracle_min_manipulation(const SolveRequest &req, const SearchCaps &caps) {
  const std::string name = "oracle";
  if (req.goal == Goal::ConstEx || req.goal == Goal::DestEx) {
    if (!req.pair) throw Error(ErrorCode::InvalidArgument, "goal needs a target pair");
  } else if (!req.target) {
    throw Error(ErrorCode::InvalidArgument, "goal needs a target matching");
  }
  if (!req.budget && req.action == ActionType::Swap)
    throw Error(ErrorCode::InvalidArgument, "the swap oracle needs a finite budget");

  ManipulationSpace space(req, req.budget.value_or(1), caps);
  std::optional<int> universe = space.universe_size();
  int limit = req.budget ? *req.budget : *universe;
  if (universe) limit = std::min(limit, *universe);

  OracleGoal goal{req, caps.enumerate_agents};
  ManipulationResult res;
  res.algorithm = name;
  std::optional<Matching> witness;
  std::vector<Action> found;
  State found_state;
  auto visit = [&](const std::vector<Action> &acts, const State &s) {
    witness = goal.check(s);
    if (!witness) return false;
    found = acts;
    found_state = s;
    return true;
  };
  for (int k = 0; k <= limit; ++k) {
    if (!space.for_each(k, visit)) continue;
    res.status = Status::Feasible;
    res.cost = action_cost(found);
    res.optimum = res.cost;
    res.actions = found;
    res.witness_instance = found_state.inst;
    res.witness_mask = found_state.mask;
    res.witness_matching = *witness;
    return res;
  }
  res.status = Status::InfeasibleWithinBudget;
  if (req.action != ActionType::Add || !universe) return res;
  for (int k = limit + 1; k <= *universe; ++k)
    if (space.for_each(k, visit)) {
      res.optimum = k;
      return res;
    }
  res.status = Status::InfeasibleAlways;
  return res;
}

Rng::Rng(std::uint64_t seed) : engine_(seed) {}

std::uint64_t Rng::next() { return engine_(); }

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "empty range");
  // 2^64 mod n, computed without 128-bit arithmetic.
  std::uint64_t rem = (0 - n) % n;
  std::uint64_t limit = 0 - rem;  // 2^64 - rem, with 0 meaning "accept everything"
  for (;;) {
    std::uint64_t x = next();
    if (limit == 0 || x < limit) return x % n;
  }
}

double Rng::unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

void Rng::shuffle(std::vector<int> &v) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::size_t j = below(i);
    std::swap(v[i - 1], v[j]);
  }
}

Instance random_instance(int n, std::uint64_t seed, double addable_fraction) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "instance size must be positive");
  Rng rng(seed);
  Instance inst(n, n);
  for (Side s : {Side::Man, Side::Woman})
    for (int i = 0; i < n; ++i) {
      std::vector<int> list(n);
      for (int j = 0; j < n; ++j) list[j] = j;
      rng.shuffle(list);
      inst.prefs({s, i}) = std::move(list);
    }
  if (addable_fraction > 0) {
    for (int i = 0; i < n; ++i) inst.men_addable[i] = rng.unit() < addable_fraction;
    for (int i = 0; i < n; ++i) inst.women_addable[i] = rng.unit() < addable_fraction;
  }
  return inst;
}

Matching random_perfect_matching(int n, Rng &rng) {
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  rng.shuffle(perm);
  Matching m(n, n);
  for (int i = 0; i < n; ++i) m.add(i, perm[i]);
  return m;
}

}  // namespace smbribe
