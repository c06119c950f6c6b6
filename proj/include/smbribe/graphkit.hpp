#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace smbribe {

// Nonnegative arc weight; infinity is explicit and arithmetic saturates.
class Weight {
 public:
  constexpr Weight() = default;
  constexpr Weight(std::int64_t v) : value_(v) {}
  static constexpr Weight infinite() {
    Weight w;
    w.infinite_ = true;
    return w;
  }

  constexpr bool is_infinite() const { return infinite_; }
  constexpr std::int64_t value() const { return value_; }

  friend constexpr Weight operator+(Weight a, Weight b) {
    if (a.infinite_ || b.infinite_) return infinite();
    return Weight(a.value_ + b.value_);
  }
  // Subtracting a finite amount from infinity stays infinite.
  friend constexpr Weight operator-(Weight a, Weight b) {
    if (a.infinite_) return infinite();
    return Weight(a.value_ - b.value_);
  }
  friend constexpr bool operator==(Weight a, Weight b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }
  friend constexpr bool operator<(Weight a, Weight b) {
    if (a.infinite_) return false;
    if (b.infinite_) return true;
    return a.value_ < b.value_;
  }
  friend constexpr Weight min(Weight a, Weight b) { return b < a ? b : a; }

 private:
  std::int64_t value_ = 0;
  bool infinite_ = false;
};

struct Arc {
  int from = 0;
  int to = 0;
  Weight weight;
};

struct CostDigraph {
  int vertex_count = 0;
  std::vector<Arc> arcs;
  std::optional<int> source;
  std::optional<int> sink;

  int add_vertex() { return vertex_count++; }
  int add_arc(int from, int to, Weight w);
};

void validate(const CostDigraph &g);

struct MinCutResult {
  Weight value;
  std::vector<int> cut;  // indices into CostDigraph::arcs, ascending
};

MinCutResult min_cut(const CostDigraph &g);

struct BipartiteGraph {
  int left_count = 0;
  int right_count = 0;
  std::vector<std::pair<int, int>> edges;
};

struct VertexCover {
  std::vector<int> left;
  std::vector<int> right;
  int size() const { return static_cast<int>(left.size() + right.size()); }
};

// Maximum matching as a left->right partner array (-1 when unmatched).
std::vector<int> hopcroft_karp(const BipartiteGraph &g);
VertexCover bipartite_min_vertex_cover(const BipartiteGraph &g);

struct AntiArborescence {
  std::int64_t weight = 0;
  std::vector<int> arcs;  // indices into CostDigraph::arcs, ascending
};

// Rooted at g.sink; infinite arcs are unusable. nullopt when some vertex cannot reach the root.
std::optional<AntiArborescence> min_anti_arborescence(const CostDigraph &g);

}  // namespace smbribe
