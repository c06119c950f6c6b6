#include "smbribe/graphkit.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <queue>
#include <set>

#include "smbribe/core.hpp"

namespace smbribe {

int CostDigraph::add_arc(int from, int to, Weight w) {
  arcs.push_back({from, to, w});
  return static_cast<int>(arcs.size()) - 1;
}

void validate(const CostDigraph &g) {
  for (const auto &a : g.arcs) {
    if (a.from < 0 || a.from >= g.vertex_count || a.to < 0 || a.to >= g.vertex_count)
      throw Error(ErrorCode::InvalidArgument, "arc endpoint out of range");
    if (a.from == a.to) throw Error(ErrorCode::InvalidArgument, "self-loop in cost digraph");
    if (!a.weight.is_infinite() && a.weight.value() < 0) throw Error(ErrorCode::InvalidArgument, "negative arc weight");
  }
}

namespace {

// Dinic's algorithm over Weight capacities.
class FlowNetwork {
 public:
  struct Edge {
    int to;
    Weight residual;
  };

  explicit FlowNetwork(int n) : adj_(n) {}

  void add(int from, int to, Weight cap) {
    adj_[from].push_back(static_cast<int>(edges_.size()));
    edges_.push_back({to, cap});
    adj_[to].push_back(static_cast<int>(edges_.size()));
    edges_.push_back({from, Weight(0)});
  }

  std::int64_t max_flow(int s, int t) {
    std::int64_t total = 0;
    while (bfs(s, t)) {
      it_.assign(adj_.size(), 0);
      while (std::int64_t f = dfs(s, t, std::numeric_limits<std::int64_t>::max())) total += f;
    }
    return total;
  }

  std::vector<bool> reachable(int s) const {
    std::vector<bool> seen(adj_.size(), false);
    std::queue<int> q;
    q.push(s);
    seen[s] = true;
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int id : adj_[v]) {
        const Edge &e = edges_[id];
        if (!seen[e.to] && Weight(0) < e.residual) {
          seen[e.to] = true;
          q.push(e.to);
        }
      }
    }
    return seen;
  }

 private:
  bool bfs(int s, int t) {
    level_.assign(adj_.size(), -1);
    std::queue<int> q;
    level_[s] = 0;
    q.push(s);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int id : adj_[v]) {
        const Edge &e = edges_[id];
        if (level_[e.to] < 0 && Weight(0) < e.residual) {
          level_[e.to] = level_[v] + 1;
          q.push(e.to);
        }
      }
    }
    return level_[t] >= 0;
  }

  std::int64_t dfs(int v, int t, std::int64_t limit) {
    if (v == t) return limit;
    for (std::size_t &i = it_[v]; i < adj_[v].size(); ++i) {
      int id = adj_[v][i];
      Edge &e = edges_[id];
      if (level_[e.to] != level_[v] + 1 || !(Weight(0) < e.residual)) continue;
      std::int64_t cap = e.residual.is_infinite() ? limit : std::min(limit, e.residual.value());
      std::int64_t f = dfs(e.to, t, cap);
      if (f > 0) {
        e.residual = e.residual - Weight(f);
        edges_[id ^ 1].residual = edges_[id ^ 1].residual + Weight(f);
        return f;
      }
    }
    return 0;
  }

  std::vector<std::vector<int>> adj_;
  std::vector<Edge> edges_;
  std::vector<int> level_;
  std::vector<std::size_t> it_;
};

bool infinite_path(const CostDigraph &g, int s, int t) {
  std::vector<std::vector<int>> adj(g.vertex_count);
  for (const auto &a : g.arcs)
    if (a.weight.is_infinite()) adj[a.from].push_back(a.to);
  std::vector<bool> seen(g.vertex_count, false);
  std::vector<int> stack{s};
  seen[s] = true;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    if (v == t) return true;
    for (int u : adj[v])
      if (!seen[u]) {
        seen[u] = true;
        stack.push_back(u);
      }
  }
  return false;
}

}  // namespace

MinCutResult min_cut(const CostDigraph &g) {
  if (!g.source || !g.sink) throw Error(ErrorCode::InvalidArgument, "min_cut needs a source and a sink");
  int s = *g.source, t = *g.sink;
  if (s == t) throw Error(ErrorCode::InvalidArgument, "source equals sink");
  validate(g);
  // Paths made only of infinite arcs cannot be cut; every other augmenting path has a finite bottleneck.
  if (infinite_path(g, s, t)) return {Weight::infinite(), {}};
  FlowNetwork net(g.vertex_count);
  for (const auto &a : g.arcs) net.add(a.from, a.to, a.weight);
  MinCutResult out;
  out.value = Weight(net.max_flow(s, t));
  std::vector<bool> side = net.reachable(s);
  for (int i = 0; i < static_cast<int>(g.arcs.size()); ++i)
    if (side[g.arcs[i].from] && !side[g.arcs[i].to]) out.cut.push_back(i);
  return out;
}

std::vector<int> hopcroft_karp(const BipartiteGraph &g) {
  std::vector<std::vector<int>> adj(g.left_count);
  for (auto [l, r] : g.edges) adj[l].push_back(r);
  std::vector<int> match_l(g.left_count, -1), match_r(g.right_count, -1), dist(g.left_count);
  const int inf = std::numeric_limits<int>::max();

  auto bfs = [&]() {
    std::queue<int> q;
    bool found = false;
    for (int l = 0; l < g.left_count; ++l) {
      if (match_l[l] < 0) {
        dist[l] = 0;
        q.push(l);
      } else {
        dist[l] = inf;
      }
    }
    while (!q.empty()) {
      int l = q.front();
      q.pop();
      for (int r : adj[l]) {
        int nl = match_r[r];
        if (nl < 0) {
          found = true;
        } else if (dist[nl] == inf) {
          dist[nl] = dist[l] + 1;
          q.push(nl);
        }
      }
    }
    return found;
  };

  std::function<bool(int)> dfs = [&](int l) {
    for (int r : adj[l]) {
      int nl = match_r[r];
      if (nl < 0 || (dist[nl] == dist[l] + 1 && dfs(nl))) {
        match_l[l] = r;
        match_r[r] = l;
        return true;
      }
    }
    dist[l] = inf;
    return false;
  };

  while (bfs())
    for (int l = 0; l < g.left_count; ++l)
      if (match_l[l] < 0) dfs(l);
  return match_l;
}

VertexCover bipartite_min_vertex_cover(const BipartiteGraph &g) {
  std::vector<int> match_l = hopcroft_karp(g);
  std::vector<int> match_r(g.right_count, -1);
  for (int l = 0; l < g.left_count; ++l)
    if (match_l[l] >= 0) match_r[match_l[l]] = l;
  std::vector<std::vector<int>> adj(g.left_count);
  for (auto [l, r] : g.edges) adj[l].push_back(r);

  // König: alternating reachability from unmatched left vertices.
  std::vector<bool> seen_l(g.left_count, false), seen_r(g.right_count, false);
  std::queue<int> q;
  for (int l = 0; l < g.left_count; ++l)
    if (match_l[l] < 0) {
      seen_l[l] = true;
      q.push(l);
    }
  while (!q.empty()) {
    int l = q.front();
    q.pop();
    for (int r : adj[l]) {
      if (seen_r[r] || match_l[l] == r) continue;
      seen_r[r] = true;
      int nl = match_r[r];
      if (nl >= 0 && !seen_l[nl]) {
        seen_l[nl] = true;
        q.push(nl);
      }
    }
  }
  VertexCover cover;
  for (int l = 0; l < g.left_count; ++l)
    if (!seen_l[l]) cover.left.push_back(l);
  for (int r = 0; r < g.right_count; ++r)
    if (seen_r[r]) cover.right.push_back(r);
  return cover;
}

namespace {

struct BranchEdge {
  int src;
  int dst;
  std::int64_t w;
};

// Chu-Liu/Edmonds for a minimum arborescence (in-edges) rooted at `root`.
// Returns, per vertex, the index into `edges` of its chosen in-edge (-1 for the root), or nullopt.
std::optional<std::vector<int>> min_arborescence(int n, int root, const std::vector<BranchEdge> &edges) {
  std::vector<int> best(n, -1);
  for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
    const auto &e = edges[i];
    if (e.dst == root || e.src == e.dst) continue;
    if (best[e.dst] < 0 || e.w < edges[best[e.dst]].w) best[e.dst] = i;
  }
  for (int v = 0; v < n; ++v)
    if (v != root && best[v] < 0) return std::nullopt;

  std::vector<int> comp(n, -1), mark(n, -1);
  int comps = 0;
  for (int v = 0; v < n; ++v) {
    int x = v;
    while (x != root && mark[x] < 0 && comp[x] < 0) {
      mark[x] = v;
      x = edges[best[x]].src;
    }
    if (x != root && comp[x] < 0 && mark[x] == v) {
      for (int y = edges[best[x]].src; y != x; y = edges[best[y]].src) comp[y] = comps;
      comp[x] = comps++;
    }
  }
  if (comps == 0) return best;
  for (int v = 0; v < n; ++v)
    if (comp[v] < 0) comp[v] = comps++;

  std::vector<BranchEdge> contracted;
  std::vector<int> origin;
  for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
    const auto &e = edges[i];
    int cu = comp[e.src], cv = comp[e.dst];
    if (cu == cv || e.dst == root) continue;
    contracted.push_back({cu, cv, e.w - edges[best[e.dst]].w});
    origin.push_back(i);
  }
  auto sub = min_arborescence(comps, comp[root], contracted);
  if (!sub) return std::nullopt;
  std::vector<int> chosen(n, -1);
  for (int c = 0; c < comps; ++c) {
    if ((*sub)[c] < 0) continue;
    int i = origin[(*sub)[c]];
    chosen[edges[i].dst] = i;
  }
  for (int v = 0; v < n; ++v)
    if (v != root && chosen[v] < 0) chosen[v] = best[v];
  return chosen;
}

void check_anti_arborescence(const CostDigraph &g, const std::vector<int> &arcs) {
  int root = *g.sink;
  std::vector<int> out(g.vertex_count, -1);
  for (int id : arcs) {
    int v = g.arcs[id].from;
    if (v == root || out[v] >= 0) throw Error(ErrorCode::Internal, "anti-arborescence out-degree violated");
    out[v] = g.arcs[id].to;
  }
  for (int v = 0; v < g.vertex_count; ++v) {
    if (v == root) continue;
    if (out[v] < 0) throw Error(ErrorCode::Internal, "anti-arborescence misses a vertex");
    int x = v;
    for (int steps = 0; x != root; ++steps) {
      if (steps > g.vertex_count) throw Error(ErrorCode::Internal, "anti-arborescence contains a cycle");
      x = out[x];
    }
  }
}

}  // namespace

std::optional<AntiArborescence> min_anti_arborescence(const CostDigraph &g) {
  if (!g.sink) throw Error(ErrorCode::InvalidArgument, "anti-arborescence needs a root (sink)");
  validate(g);
  std::vector<BranchEdge> edges;
  std::vector<int> ids;
  for (int i = 0; i < static_cast<int>(g.arcs.size()); ++i) {
    const auto &a = g.arcs[i];
    if (a.weight.is_infinite()) continue;
    edges.push_back({a.to, a.from, a.weight.value()});
    ids.push_back(i);
  }
  auto chosen = min_arborescence(g.vertex_count, *g.sink, edges);
  if (!chosen) return std::nullopt;
  AntiArborescence out;
  for (int v = 0; v < g.vertex_count; ++v) {
    if ((*chosen)[v] < 0) continue;
    int id = ids[(*chosen)[v]];
    out.arcs.push_back(id);
    out.weight += g.arcs[id].weight.value();
  }
  std::sort(out.arcs.begin(), out.arcs.end());
  check_anti_arborescence(g, out.arcs);
  return out;
}

}  // namespace smbribe
