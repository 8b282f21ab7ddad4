#pragma once

// Comparison planners: two greedy one-pass heuristics and the re-optimizing
// planner that runs the exact solver on the containers revealed so far.

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "tplan/domain.hpp"
#include "tplan/env.hpp"
#include "tplan/solver.hpp"

namespace tplan {

// Days of the week on which the re-optimizing planner runs.
struct ReplanSchedule {
  std::vector<int> days;

  static ReplanSchedule twice_weekly() { return {{1, 4}}; }
  static ReplanSchedule daily() { return {{1, 2, 3, 4, 5, 6, 7}}; }

  void validate() const {
    if (days.empty()) throw std::invalid_argument("replan days must not be empty");
    int prev = 0;
    for (int d : days) {
      if (d < 1 || d > kDaysPerWeek || d <= prev) {
        throw std::invalid_argument(
            "replan days must be strictly increasing within 1.." +
            std::to_string(kDaysPerWeek));
      }
      prev = d;
    }
  }
};

namespace detail {

template <typename PickTrain>
Assignment greedy_plan(const WeekScenario& scenario,
                       SelectionHeuristic heuristic, PickTrain pick) {
  std::vector<int> residual(kNumSchedules);
  for (int t = 0; t < kNumSchedules; ++t) residual[t] = scenario.schedules[t].capacity;

  Assignment out;
  for (int idx : decision_order(scenario, heuristic)) {
    const Container& c = scenario.containers[idx];
    int chosen = -1;
    for (int t = 0; t < kNumSchedules; ++t) {
      if (!is_eligible(c, scenario.schedules[t], residual[t])) continue;
      if (chosen < 0 || pick(scenario.schedules[t], scenario.schedules[chosen])) {
        chosen = t;
      }
    }
    if (chosen >= 0) {
      --residual[chosen];
      out.add(c.id, Vehicle::train(chosen));
    } else {
      out.add(c.id, Vehicle::truck());
    }
  }
  return out;
}

}  // namespace detail

// Earliest eligible departure; ties by earliest arrival, then lowest id.
inline Assignment first_train(const WeekScenario& scenario,
                              SelectionHeuristic heuristic) {
  return detail::greedy_plan(
      scenario, heuristic, [](const TrainSchedule& a, const TrainSchedule& b) {
        return std::tuple(a.depart_day, a.arrive_day, a.id) <
               std::tuple(b.depart_day, b.arrive_day, b.id);
      });
}

// Cheapest eligible train; ties by earliest departure, then lowest id.
inline Assignment cheapest_train(const WeekScenario& scenario,
                                 SelectionHeuristic heuristic) {
  return detail::greedy_plan(
      scenario, heuristic, [](const TrainSchedule& a, const TrainSchedule& b) {
        return std::tuple(a.cost_per_container, a.depart_day, a.id) <
               std::tuple(b.cost_per_container, b.depart_day, b.id);
      });
}

// One committed decision, for inspection in tests.
struct CommittedPlan {
  int day = 0;
  int container_id = 0;
  Vehicle vehicle;
};

// Re-optimizing planner: on each planning day it solves the offline problem
// restricted to the containers that have arrived and are still unplanned, and
// to trains that have not yet departed, then commits the result irrevocably
// (trucks included). Containers arriving after the last planning day are
// handled by an implicit final run on day 7, since every container must be
// planned within the week.
inline Assignment k_ilp(const WeekScenario& scenario,
                        const ReplanSchedule& replan,
                        std::vector<CommittedPlan>* trace = nullptr) {
  replan.validate();
  std::vector<int> days = replan.days;
  if (days.back() < kDaysPerWeek) days.push_back(kDaysPerWeek);

  std::vector<int> residual(kNumSchedules);
  for (int t = 0; t < kNumSchedules; ++t) residual[t] = scenario.schedules[t].capacity;
  std::vector<bool> planned(scenario.containers.size(), false);

  Assignment out;
  for (int day : days) {
    WeekScenario sub;
    sub.cost_model = scenario.cost_model;
    sub.seed = scenario.seed;
    sub.schedules = scenario.schedules;
    for (TrainSchedule& t : sub.schedules) {
      // A train that already left cannot be boarded, whatever its slack.
      t.capacity = t.depart_day < day ? 0 : residual[t.id];
    }
    std::vector<int> batch;  // original container ids, in id order
    for (const Container& c : scenario.containers) {
      if (!planned[c.id] && c.earliest_day <= day) batch.push_back(c.id);
    }
    if (batch.empty()) continue;
    sub.containers.reserve(batch.size());
    for (std::size_t k = 0; k < batch.size(); ++k) {
      Container c = scenario.containers[batch[k]];
      c.id = static_cast<int>(k);
      sub.containers.push_back(c);
    }

    const SolveResult solved = solve_optimal(sub);
    for (const auto& [sub_id, vehicle] : solved.assignment.items) {
      const int original = batch[sub_id];
      planned[original] = true;
      if (!vehicle.is_truck()) --residual[vehicle.schedule];
      out.add(original, vehicle);
      if (trace != nullptr) trace->push_back({day, original, vehicle});
    }
  }
  return out;
}

}  // namespace tplan
