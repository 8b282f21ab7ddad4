#pragma once

// Exact offline optimum of the weekly assignment problem.
//
// The constraint structure (each container on exactly one vehicle, timing
// eligibility, per-schedule capacity, uncapacitated trucks) is a
// transportation problem, so an integral min-cost flow on the bipartite
// container/schedule network yields the exact integer optimum. A brute-force
// enumerator over tiny instances serves as the independent test oracle.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "tplan/domain.hpp"
#include "tplan/flow.hpp"

namespace tplan {

struct SolveResult {
  Assignment assignment;
  Money cost = 0;
};

// Network layout: source -> container (cap 1, cost 0); container -> schedule
// (cap 1, train cost) for each eligible pair; container -> sink (cap 1, truck
// cost); schedule -> sink (cap = schedule capacity, cost 0). Truck arcs make
// every instance feasible, so the flow always reaches |containers| units.
inline SolveResult solve_optimal(const WeekScenario& scenario) {
  const int n = static_cast<int>(scenario.containers.size());
  const int source = 0;
  const auto container_node = [](int i) { return 1 + i; };
  const auto schedule_node = [n](int t) { return 1 + n + t; };
  const int sink = 1 + n + kNumSchedules;

  MinCostFlow flow(sink + 1);
  std::vector<std::vector<std::pair<int, int>>> train_arcs(n);  // (edge, schedule)
  std::vector<int> truck_arcs(n, -1);

  for (int i = 0; i < n; ++i) {
    flow.add_edge(source, container_node(i), 1, 0);
    const Container& c = scenario.containers[i];
    for (int t = 0; t < kNumSchedules; ++t) {
      const TrainSchedule& sched = scenario.schedules[t];
      if (is_eligible(c, sched, sched.capacity)) {
        const int edge = flow.add_edge(container_node(i), schedule_node(t), 1,
                                       sched.cost_per_container);
        train_arcs[i].emplace_back(edge, t);
      }
    }
    truck_arcs[i] =
        flow.add_edge(container_node(i), sink, 1, scenario.cost_model.truck_cost);
  }
  for (int t = 0; t < kNumSchedules; ++t) {
    flow.add_edge(schedule_node(t), sink, scenario.schedules[t].capacity, 0);
  }

  const MinCostFlow::Result result = flow.solve(source, sink, n);
  if (result.flow != n) {
    throw std::logic_error("flow fell short of the container count");
  }

  SolveResult out;
  out.cost = result.cost;
  out.assignment.items.reserve(n);
  for (int i = 0; i < n; ++i) {
    Vehicle v = Vehicle::truck();
    for (const auto& [edge, t] : train_arcs[i]) {
      if (flow.flow_on(edge) == 1) {
        v = Vehicle::train(t);
        break;
      }
    }
    if (v.is_truck() && flow.flow_on(truck_arcs[i]) != 1) {
      throw std::logic_error("container without a unit of flow");
    }
    out.assignment.add(i, v);
  }
  return out;
}

// Independent oracle: enumerate every per-container vehicle choice subject to
// residual capacity and return the cheapest total. Exponential, hence the
// size guard.
inline Money brute_force_optimal(const WeekScenario& scenario) {
  constexpr int kMaxContainers = 8;
  const int n = static_cast<int>(scenario.containers.size());
  if (n > kMaxContainers) {
    throw std::invalid_argument("brute force is limited to " +
                                std::to_string(kMaxContainers) + " containers");
  }

  std::vector<int> residual(kNumSchedules);
  for (int t = 0; t < kNumSchedules; ++t) {
    residual[t] = scenario.schedules[t].capacity;
  }

  Money best = 0;
  for (int i = 0; i < n; ++i) best += scenario.cost_model.truck_cost;

  const auto recurse = [&](auto&& self, int i, Money cost_so_far) -> void {
    if (cost_so_far >= best) return;  // all remaining costs are positive-or-zero adds
    if (i == n) {
      best = cost_so_far;
      return;
    }
    const Container& c = scenario.containers[i];
    self(self, i + 1, cost_so_far + scenario.cost_model.truck_cost);
    for (int t = 0; t < kNumSchedules; ++t) {
      const TrainSchedule& sched = scenario.schedules[t];
      if (!is_eligible(c, sched, residual[t])) continue;
      --residual[t];
      self(self, i + 1, cost_so_far + sched.cost_per_container);
      ++residual[t];
    }
  };
  recurse(recurse, 0, 0);
  return best;
}

}  // namespace tplan
