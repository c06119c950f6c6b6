#include <algorithm>
#include <bit>
#include <functional>
#include <map>

#include "smbribe/engine.hpp"
#include "smbribe/testkit.hpp"

namespace smbribe {

namespace {

// Builds an instance from named agents; every list is completed with the unlisted agents in ascending index.
class Builder {
 public:
  int add(Side s, const std::string &name) {
    auto &names = s == Side::Man ? men_ : women_;
    names.push_back(name);
    return static_cast<int>(names.size()) - 1;
  }
  void prefer(AgentRef a, std::vector<int> front) { fronts_[a] = std::move(front); }
  void addable(AgentRef a) { addable_.push_back(a); }

  Instance build() const {
    Instance inst(static_cast<int>(men_.size()), static_cast<int>(women_.size()));
    inst.men_labels = men_;
    inst.women_labels = women_;
    for (Side s : {Side::Man, Side::Woman})
      for (int i = 0; i < inst.count(s); ++i) {
        AgentRef a{s, i};
        std::vector<int> list;
        std::vector<bool> used(inst.count(other(s)), false);
        auto it = fronts_.find(a);
        if (it != fronts_.end())
          for (int b : it->second)
            if (!used[b]) {
              used[b] = true;
              list.push_back(b);
            }
        for (int b = 0; b < inst.count(other(s)); ++b)
          if (!used[b]) list.push_back(b);
        inst.prefs(a) = std::move(list);
      }
    for (AgentRef a : addable_) (a.side == Side::Man ? inst.men_addable : inst.women_addable)[a.index] = true;
    validate(inst);
    return inst;
  }

 private:
  std::vector<std::string> men_, women_;
  std::map<AgentRef, std::vector<int>> fronts_;
  std::vector<AgentRef> addable_;
};

int binom2(int k) { return k * (k - 1) / 2; }

std::string edge_tag(const std::pair<int, int> &e) {
  return std::to_string(e.first + 1) + "_" + std::to_string(e.second + 1);
}

// Incident edges of every vertex, in edge order.
std::vector<std::vector<int>> incidence(const SimpleGraph &g) {
  std::vector<std::vector<int>> inc(g.vertex_count);
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    inc[g.edges[e].first].push_back(static_cast<int>(e));
    inc[g.edges[e].second].push_back(static_cast<int>(e));
  }
  return inc;
}

// Pads the smaller side with filler agents that every agent of the other side ranks last.
void balance(Builder &b, int men, int women) {
  for (int i = men; i < women; ++i) b.add(Side::Man, "mFill_" + std::to_string(i - men + 1));
  for (int i = women; i < men; ++i) b.add(Side::Woman, "wFill_" + std::to_string(i - women + 1));
}

}  // namespace

SimpleGraph::SimpleGraph(int n, std::vector<std::pair<int, int>> e) : vertex_count(n) {
  for (auto [u, v] : e) {
    if (u == v || u < 0 || v < 0 || u >= n || v >= n) throw Error(ErrorCode::InvalidArgument, "invalid edge");
    edges.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
    throw Error(ErrorCode::InvalidArgument, "duplicate edge");
}

bool SimpleGraph::adjacent(int u, int v) const {
  return std::binary_search(edges.begin(), edges.end(), std::make_pair(std::min(u, v), std::max(u, v)));
}

SolveRequest GadgetOutput::request() const {
  SolveRequest req;
  req.instance = instance;
  req.mask = PresenceMask::initial(instance);
  req.goal = goal;
  req.action = action;
  req.budget = budget;
  req.pair = pair;
  req.target = target;
  return req;
}

GadgetOutput gadget_clique_add(const SimpleGraph &g, int k) {
  if (k < 2) throw Error(ErrorCode::InvalidArgument, "clique size must be at least 2");
  const int nv = g.vertex_count, ne = static_cast<int>(g.edges.size()), q = binom2(k);
  auto inc = incidence(g);
  Builder b;
  std::vector<int> mV, mVp, mE, mEp, wV, wE, wT, wPen;
  for (int v = 0; v < nv; ++v) mV.push_back(b.add(Side::Man, "mV_" + std::to_string(v + 1)));
  for (int v = 0; v < nv; ++v) mVp.push_back(b.add(Side::Man, "mVp_" + std::to_string(v + 1)));
  for (auto &e : g.edges) mE.push_back(b.add(Side::Man, "mE_" + edge_tag(e)));
  for (auto &e : g.edges) mEp.push_back(b.add(Side::Man, "mEp_" + edge_tag(e)));
  int mStar = b.add(Side::Man, "mStar");
  for (int v = 0; v < nv; ++v) wV.push_back(b.add(Side::Woman, "wV_" + std::to_string(v + 1)));
  for (auto &e : g.edges) wE.push_back(b.add(Side::Woman, "wE_" + edge_tag(e)));
  for (int t = 0; t < k; ++t) wT.push_back(b.add(Side::Woman, "wT_" + std::to_string(t + 1)));
  for (int i = 0; i < q; ++i) wPen.push_back(b.add(Side::Woman, "wPen_" + std::to_string(i + 1)));
  int wStar = b.add(Side::Woman, "wStar");
  balance(b, 2 * nv + 2 * ne + 1, nv + ne + k + q + 1);

  for (int v = 0; v < nv; ++v) {
    std::vector<int> front{mVp[v]};
    for (int e : inc[v]) front.push_back(mE[e]);
    front.push_back(mV[v]);
    b.prefer(woman(wV[v]), front);
    b.prefer(man(mVp[v]), {wV[v]});
    front = {wV[v]};
    front.insert(front.end(), wT.begin(), wT.end());
    front.push_back(wStar);
    b.prefer(man(mV[v]), front);
    b.addable(man(mVp[v]));
  }
  for (int e = 0; e < ne; ++e) {
    auto [u, v] = g.edges[e];
    b.prefer(woman(wE[e]), {mEp[e], mE[e]});
    std::vector<int> front{wE[e], wV[u], wV[v]};
    front.insert(front.end(), wPen.begin(), wPen.end());
    b.prefer(man(mE[e]), front);
    b.prefer(man(mEp[e]), {wE[e]});
    b.addable(man(mEp[e]));
  }
  for (int t = 0; t < k; ++t) b.prefer(woman(wT[t]), mV);
  std::vector<int> pen_front = mE;
  pen_front.push_back(mStar);
  for (int i = 0; i < q; ++i) b.prefer(woman(wPen[i]), pen_front);
  std::vector<int> star_front = wPen;
  star_front.push_back(wStar);
  b.prefer(man(mStar), star_front);
  std::vector<int> wstar_front = mV;
  wstar_front.push_back(mStar);
  b.prefer(woman(wStar), wstar_front);

  GadgetOutput out;
  out.instance = b.build();
  out.goal = Goal::ConstEx;
  out.action = ActionType::Add;
  out.pair = std::make_pair(mStar, wStar);
  out.budget = k + q;
  out.note = "clique-add: |V|=" + std::to_string(nv) + " |E|=" + std::to_string(ne) + " k=" + std::to_string(k);
  return out;
}

GadgetOutput gadget_clique_accdel_reorder(const SimpleGraph &g, int k, ActionType action) {
  if (k < 2) throw Error(ErrorCode::InvalidArgument, "clique size must be at least 2");
  if (action != ActionType::AccDelete && action != ActionType::Reorder)
    throw Error(ErrorCode::InvalidArgument, "gadget supports accdel and reorder");
  const int nv = g.vertex_count, ne = static_cast<int>(g.edges.size()), q = binom2(k);
  auto inc = incidence(g);
  Builder b;
  std::vector<int> mV, mVp, mE, mEp, mEpp, mPen, wV, wVp, wE, wEp, wEpp, wPen;
  auto vname = [](const char *p, int v) { return std::string(p) + std::to_string(v + 1); };
  for (int v = 0; v < nv; ++v) mV.push_back(b.add(Side::Man, vname("mV_", v)));
  for (int v = 0; v < nv; ++v) mVp.push_back(b.add(Side::Man, vname("mVp_", v)));
  for (auto &e : g.edges) mE.push_back(b.add(Side::Man, "mE_" + edge_tag(e)));
  for (auto &e : g.edges) mEp.push_back(b.add(Side::Man, "mEp_" + edge_tag(e)));
  for (auto &e : g.edges) mEpp.push_back(b.add(Side::Man, "mEpp_" + edge_tag(e)));
  for (int i = 0; i < q; ++i) mPen.push_back(b.add(Side::Man, vname("mPen_", i)));
  int mStar = b.add(Side::Man, "mStar");
  for (int v = 0; v < nv; ++v) wV.push_back(b.add(Side::Woman, vname("wV_", v)));
  for (int v = 0; v < nv; ++v) wVp.push_back(b.add(Side::Woman, vname("wVp_", v)));
  for (auto &e : g.edges) wE.push_back(b.add(Side::Woman, "wE_" + edge_tag(e)));
  for (auto &e : g.edges) wEp.push_back(b.add(Side::Woman, "wEp_" + edge_tag(e)));
  for (auto &e : g.edges) wEpp.push_back(b.add(Side::Woman, "wEpp_" + edge_tag(e)));
  for (int i = 0; i < q; ++i) wPen.push_back(b.add(Side::Woman, vname("wPen_", i)));
  int wStar = b.add(Side::Woman, "wStar");

  for (int v = 0; v < nv; ++v) {
    std::vector<int> wf{mVp[v]}, mf{wVp[v]};
    for (int e : inc[v]) {
      wf.push_back(mE[e]);
      mf.push_back(wE[e]);
    }
    wf.push_back(mV[v]);
    mf.push_back(wV[v]);
    b.prefer(woman(wV[v]), wf);
    b.prefer(man(mV[v]), mf);
    b.prefer(woman(wVp[v]), {mVp[v], mV[v]});
    b.prefer(man(mVp[v]), {wVp[v], wV[v]});
  }
  for (int e = 0; e < ne; ++e) {
    auto [u, v] = g.edges[e];
    std::vector<int> mf{wEp[e], wV[u], wV[v]}, wf{mEp[e], mV[u], mV[v]};
    mf.insert(mf.end(), wPen.begin(), wPen.end());
    wf.insert(wf.end(), mPen.begin(), mPen.end());
    b.prefer(man(mE[e]), mf);
    b.prefer(woman(wE[e]), wf);
    b.prefer(man(mEp[e]), {wEpp[e], wE[e]});
    b.prefer(woman(wEp[e]), {mEpp[e], mE[e]});
    b.prefer(man(mEpp[e]), {wEpp[e], wEp[e]});
    b.prefer(woman(wEpp[e]), {mEpp[e], mEp[e]});
  }
  std::vector<int> wp = mE, mp = wE, ms = wPen, ws = mPen;
  wp.push_back(mStar);
  mp.push_back(wStar);
  ms.push_back(wStar);
  ws.push_back(mStar);
  for (int i = 0; i < q; ++i) {
    b.prefer(woman(wPen[i]), wp);
    b.prefer(man(mPen[i]), mp);
  }
  b.prefer(man(mStar), ms);
  b.prefer(woman(wStar), ws);

  GadgetOutput out;
  out.instance = b.build();
  out.goal = Goal::ConstEx;
  out.action = action;
  out.pair = std::make_pair(mStar, wStar);
  out.budget = q + k;
  out.note = std::string("clique-") + action_type_name(action) + ": |V|=" + std::to_string(nv) +
             " |E|=" + std::to_string(ne) + " k=" + std::to_string(k);
  return out;
}

GadgetOutput gadget_is_delete(const SimpleGraph &g, int k, Goal goal) {
  if (goal != Goal::ExactEx && goal != Goal::ExactUni)
    throw Error(ErrorCode::InvalidArgument, "gadget supports exact-ex and exact-uni");
  const int nv = g.vertex_count;
  if (k < 0 || k > nv) throw Error(ErrorCode::InvalidArgument, "independent set size out of range");
  const int dummies = 2 * nv;
  Builder b;
  std::vector<int> mV(nv), wV(nv);
  std::vector<std::vector<int>> mD(nv), wD(nv);
  for (int v = 0; v < nv; ++v) {
    mV[v] = b.add(Side::Man, "mV_" + std::to_string(v + 1));
    for (int i = 0; i < dummies; ++i)
      mD[v].push_back(b.add(Side::Man, "mD_" + std::to_string(v + 1) + "_" + std::to_string(i + 1)));
  }
  for (int v = 0; v < nv; ++v) {
    wV[v] = b.add(Side::Woman, "wV_" + std::to_string(v + 1));
    for (int i = 0; i < dummies; ++i)
      wD[v].push_back(b.add(Side::Woman, "wD_" + std::to_string(v + 1) + "_" + std::to_string(i + 1)));
  }
  std::vector<std::pair<int, int>> pairs;
  for (int v = 0; v < nv; ++v) {
    std::vector<int> mf, wf;
    for (int u = 0; u < nv; ++u)
      if (g.adjacent(u, v)) {
        mf.push_back(wV[u]);
        wf.push_back(mV[u]);
      }
    mf.push_back(wV[v]);
    wf.push_back(mV[v]);
    mf.insert(mf.end(), wD[v].begin(), wD[v].end());
    wf.insert(wf.end(), mD[v].begin(), mD[v].end());
    b.prefer(man(mV[v]), mf);
    b.prefer(woman(wV[v]), wf);
    pairs.emplace_back(mV[v], wV[v]);
    for (int i = 0; i < dummies; ++i) {
      b.prefer(man(mD[v][i]), {wV[v], wD[v][i]});
      b.prefer(woman(wD[v][i]), {mV[v], mD[v][i]});
      pairs.emplace_back(mD[v][i], wD[v][i]);
    }
  }
  GadgetOutput out;
  out.instance = b.build();
  out.goal = goal;
  out.action = ActionType::Delete;
  out.target = Matching::from_pairs(out.instance.men_count, out.instance.women_count, pairs);
  out.budget = 2 * (nv - k);
  out.note = "is-delete: |V|=" + std::to_string(nv) + " |E|=" + std::to_string(g.edges.size()) +
             " k=" + std::to_string(k);
  return out;
}

namespace {

struct HsAgents {
  Builder b;
  std::vector<int> mZ, wZ, mF1, mF2, wF1, wF2;
  std::vector<std::pair<int, int>> pairs;
};

HsAgents hs_base(const SetSystem &s) {
  for (const auto &f : s.sets) {
    if (f.empty()) throw Error(ErrorCode::InvalidArgument, "sets must be nonempty");
    for (int z : f)
      if (z < 1 || z > s.universe_size) throw Error(ErrorCode::InvalidArgument, "set element outside the universe");
  }
  HsAgents h;
  const int nz = s.universe_size, nf = static_cast<int>(s.sets.size());
  for (int z = 0; z < nz; ++z) h.mZ.push_back(h.b.add(Side::Man, "mZ_" + std::to_string(z + 1)));
  for (int j = 0; j < nf; ++j) {
    h.mF1.push_back(h.b.add(Side::Man, "mF1_" + std::to_string(j + 1)));
    h.mF2.push_back(h.b.add(Side::Man, "mF2_" + std::to_string(j + 1)));
  }
  for (int z = 0; z < nz; ++z) h.wZ.push_back(h.b.add(Side::Woman, "wZ_" + std::to_string(z + 1)));
  for (int j = 0; j < nf; ++j) {
    h.wF1.push_back(h.b.add(Side::Woman, "wF1_" + std::to_string(j + 1)));
    h.wF2.push_back(h.b.add(Side::Woman, "wF2_" + std::to_string(j + 1)));
  }
  for (int z = 0; z < nz; ++z) {
    h.b.prefer(man(h.mZ[z]), {h.wZ[z]});
    h.b.prefer(woman(h.wZ[z]), {h.mZ[z]});
    h.pairs.emplace_back(h.mZ[z], h.wZ[z]);
  }
  for (int j = 0; j < nf; ++j) {
    std::vector<int> front{h.wF1[j]};
    for (int z : s.sets[j]) front.push_back(h.wZ[z - 1]);
    front.push_back(h.wF2[j]);
    h.b.prefer(man(h.mF1[j]), front);
    h.b.prefer(man(h.mF2[j]), {h.wF2[j], h.wF1[j]});
    h.b.prefer(woman(h.wF1[j]), {h.mF2[j], h.mF1[j]});
    h.b.prefer(woman(h.wF2[j]), {h.mF1[j], h.mF2[j]});
    h.pairs.emplace_back(h.mF1[j], h.wF1[j]);
    h.pairs.emplace_back(h.mF2[j], h.wF2[j]);
  }
  return h;
}

std::string hs_note(const char *kind, const SetSystem &s, int k) {
  std::string note = std::string(kind) + ": |Z|=" + std::to_string(s.universe_size) + " F=";
  for (std::size_t j = 0; j < s.sets.size(); ++j) {
    if (j) note += ";";
    for (std::size_t i = 0; i < s.sets[j].size(); ++i) note += (i ? "," : "") + std::to_string(s.sets[j][i]);
  }
  return note + " k=" + std::to_string(k);
}

}  // namespace

GadgetOutput gadget_hs_reorder(const SetSystem &s, int k) {
  HsAgents h = hs_base(s);
  GadgetOutput out;
  out.instance = h.b.build();
  out.goal = Goal::ExactUni;
  out.action = ActionType::Reorder;
  out.target = Matching::from_pairs(out.instance.men_count, out.instance.women_count, h.pairs);
  out.budget = k;
  out.note = hs_note("hs-reorder", s, k);
  return out;
}

GadgetOutput gadget_hs_add(const SetSystem &s, int k) {
  HsAgents h = hs_base(s);
  for (std::size_t z = 0; z < h.wZ.size(); ++z) {
    std::vector<int> front = h.mF1;
    front.push_back(h.mZ[z]);
    h.b.prefer(woman(h.wZ[z]), front);
    h.b.addable(woman(h.wZ[z]));
  }
  GadgetOutput out;
  out.instance = h.b.build();
  out.goal = Goal::ExactUni;
  out.action = ActionType::Add;
  out.target = Matching::from_pairs(out.instance.men_count, out.instance.women_count, h.pairs);
  out.budget = k;
  out.note = hs_note("hs-add", s, k);
  return out;
}

GadgetOutput gadget_dummy_block(int r) {
  if (r < 1) throw Error(ErrorCode::InvalidArgument, "block size must be positive");
  Builder b;
  for (int i = 0; i < r; ++i) b.add(Side::Man, "mD_" + std::to_string(i + 1));
  for (int i = 0; i < r; ++i) b.add(Side::Woman, "wD_" + std::to_string(i + 1));
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < r; ++i) {
    std::vector<int> cyc;
    for (int j = 0; j < r; ++j) cyc.push_back((i + j) % r);
    b.prefer(man(i), cyc);
    b.prefer(woman(i), cyc);
    pairs.emplace_back(i, i);
  }
  GadgetOutput out;
  out.instance = b.build();
  out.goal = Goal::ExactUni;
  out.action = ActionType::Swap;
  out.target = Matching::from_pairs(r, r, pairs);
  out.budget = r - 1;
  out.note = "dummy-block: r=" + std::to_string(r);
  return out;
}

bool has_clique(const SimpleGraph &g, int k) {
  std::vector<int> chosen;
  std::function<bool(int)> rec = [&](int from) {
    if (static_cast<int>(chosen.size()) == k) return true;
    for (int v = from; v < g.vertex_count; ++v) {
      bool ok = std::all_of(chosen.begin(), chosen.end(), [&](int u) { return g.adjacent(u, v); });
      if (!ok) continue;
      chosen.push_back(v);
      if (rec(v + 1)) return true;
      chosen.pop_back();
    }
    return false;
  };
  return rec(0);
}

bool has_independent_set(const SimpleGraph &g, int k) {
  std::vector<int> chosen;
  std::function<bool(int)> rec = [&](int from) {
    if (static_cast<int>(chosen.size()) == k) return true;
    for (int v = from; v < g.vertex_count; ++v) {
      bool ok = std::none_of(chosen.begin(), chosen.end(), [&](int u) { return g.adjacent(u, v); });
      if (!ok) continue;
      chosen.push_back(v);
      if (rec(v + 1)) return true;
      chosen.pop_back();
    }
    return false;
  };
  return rec(0);
}

bool has_hitting_set(const SetSystem &s, int k) {
  int n = s.universe_size;
  for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
    if (std::popcount(bits) > k) continue;
    bool hits = std::all_of(s.sets.begin(), s.sets.end(), [&](const std::vector<int> &f) {
      return std::any_of(f.begin(), f.end(), [&](int z) { return (bits >> (z - 1)) & 1u; });
    });
    if (hits) return true;
  }
  return false;
}

}  // namespace smbribe
