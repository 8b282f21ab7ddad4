#pragma once

// Min-cost flow by successive shortest augmenting paths with node
// potentials (Dijkstra on reduced costs). Requires non-negative arc costs,
// which every network built by the exact solver satisfies, so no
// Bellman-Ford bootstrap is needed.

#include <cassert>
#include <cstdint>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

namespace tplan {

class MinCostFlow {
 public:
  explicit MinCostFlow(int node_count)
      : adjacency_(node_count), node_count_(node_count) {}

  // Returns the edge id; flow_on(id) reads the final flow.
  int add_edge(int from, int to, std::int64_t capacity, std::int64_t cost) {
    assert(from >= 0 && from < node_count_ && to >= 0 && to < node_count_);
    assert(capacity >= 0 && cost >= 0);
    const int id = static_cast<int>(edges_.size());
    edges_.push_back(Edge{from, to, capacity, cost});
    edges_.push_back(Edge{to, from, 0, -cost});
    adjacency_[from].push_back(id);
    adjacency_[to].push_back(id + 1);
    return id;
  }

  std::int64_t flow_on(int edge_id) const {
    // Residual capacity moved to the reverse edge equals shipped flow.
    return edges_[static_cast<std::size_t>(edge_id) + 1].capacity;
  }

  struct Result {
    std::int64_t flow = 0;
    std::int64_t cost = 0;
  };

  // Pushes up to flow_limit units from source to sink; stops early when the
  // sink becomes unreachable. Flows stay integral throughout.
  Result solve(int source, int sink, std::int64_t flow_limit) {
    potential_.assign(node_count_, 0);
    Result result;
    while (result.flow < flow_limit && dijkstra(source, sink)) {
      for (int v = 0; v < node_count_; ++v) {
        if (distance_[v] < kInfinity) potential_[v] += distance_[v];
      }
      std::int64_t pushed = flow_limit - result.flow;
      for (int v = sink; v != source; v = edges_[parent_edge_[v]].from) {
        pushed = std::min(pushed, edges_[parent_edge_[v]].capacity);
      }
      for (int v = sink; v != source; v = edges_[parent_edge_[v]].from) {
        Edge& e = edges_[parent_edge_[v]];
        Edge& rev = edges_[parent_edge_[v] ^ 1];
        e.capacity -= pushed;
        rev.capacity += pushed;
        result.cost += pushed * e.cost;
      }
      result.flow += pushed;
      assert(reduced_costs_nonnegative());
    }
    return result;
  }

 private:
  struct Edge {
    int from;
    int to;
    std::int64_t capacity;  // residual
    std::int64_t cost;
  };

  static constexpr std::int64_t kInfinity =
      std::numeric_limits<std::int64_t>::max() / 4;

  bool dijkstra(int source, int sink) {
    distance_.assign(node_count_, kInfinity);
    parent_edge_.assign(node_count_, -1);
    distance_[source] = 0;
    using Item = std::pair<std::int64_t, int>;  // (distance, node)
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    heap.emplace(0, source);
    while (!heap.empty()) {
      auto [dist, v] = heap.top();
      heap.pop();
      if (dist > distance_[v]) continue;
      for (int edge_id : adjacency_[v]) {
        const Edge& e = edges_[edge_id];
        if (e.capacity <= 0) continue;
        const std::int64_t next =
            dist + e.cost + potential_[v] - potential_[e.to];
        if (next < distance_[e.to]) {
          distance_[e.to] = next;
          parent_edge_[e.to] = edge_id;
          heap.emplace(next, e.to);
        }
      }
    }
    return distance_[sink] < kInfinity;
  }

  // Nodes Dijkstra could not reach keep their potential; arcs leaving them
  // never join a shortest path again, so only arcs out of reached nodes are
  // subject to the invariant.
  bool reduced_costs_nonnegative() const {
    for (const Edge& e : edges_) {
      if (e.capacity <= 0 || distance_[e.from] >= kInfinity) continue;
      if (distance_[e.to] >= kInfinity ||
          e.cost + potential_[e.from] - potential_[e.to] < 0) {
        return false;
      }
    }
    return true;
  }

  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adjacency_;
  std::vector<std::int64_t> potential_;
  std::vector<std::int64_t> distance_;
  std::vector<int> parent_edge_;
  int node_count_;
};

}  // namespace tplan
