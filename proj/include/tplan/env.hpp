#pragma once

// The per-container planning environment: one decision step per container,
// action masking over eligible vehicles, negative-cost rewards.

#include <algorithm>
#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "tplan/domain.hpp"

namespace tplan {

inline constexpr int kTruckAction = kNumSchedules;       // 28
inline constexpr int kNumActions = kNumSchedules + 1;    // 29
inline constexpr int kStateFeatures = kNumSchedules + 2; // 30

enum class SelectionHeuristic {
  kFifo,  // decide containers by ascending availability day
  kEdf,   // decide containers by ascending due day
};

inline std::string_view heuristic_name(SelectionHeuristic h) {
  return h == SelectionHeuristic::kFifo ? "fifo" : "edf";
}

inline SelectionHeuristic parse_heuristic(const std::string& text) {
  if (text == "fifo") return SelectionHeuristic::kFifo;
  if (text == "edf") return SelectionHeuristic::kEdf;
  throw std::invalid_argument("heuristic must be \"fifo\" or \"edf\", got \"" +
                              text + "\"");
}

struct PlanState {
  std::array<int, kNumSchedules> residual_caps{};
  int next_e = 0;
  int next_l = 0;
  bool terminal = false;

  friend bool operator==(const PlanState&, const PlanState&) = default;
};

// Eligible action ids in ascending order; the truck is always last. The
// schedule day pairs are static, so the mask depends on the state alone.
inline std::vector<int> mask(const PlanState& state) {
  std::vector<int> eligible;
  eligible.reserve(kNumActions);
  for (int t = 0; t < kNumSchedules; ++t) {
    if (kSchedulePairs[t].depart >= state.next_e &&
        kSchedulePairs[t].arrive <= state.next_l &&
        state.residual_caps[t] >= 1) {
      eligible.push_back(t);
    }
  }
  eligible.push_back(kTruckAction);
  return eligible;
}

// Network inputs: capacities and days rescaled to [0, 1]. Masking always uses
// the raw values, so the rescaling cannot change which actions are legal.
inline std::array<double, kStateFeatures> state_features(const PlanState& s) {
  std::array<double, kStateFeatures> f{};
  for (int t = 0; t < kNumSchedules; ++t) {
    f[t] = static_cast<double>(s.residual_caps[t]) / kMaxScheduleCapacity;
  }
  f[kNumSchedules] = static_cast<double>(s.next_e) / kDaysPerWeek;
  f[kNumSchedules + 1] = static_cast<double>(s.next_l) / kDaysPerWeek;
  return f;
}

struct Transition {
  PlanState state;
  int action = kTruckAction;
  Money reward = 0;  // negative cost of the chosen vehicle
  PlanState next_state;
};

// The order in which containers are presented: the heuristic's temporal field
// first, the other temporal field second, container id last. Computed over
// the whole weekly batch up front.
inline std::vector<int> decision_order(const WeekScenario& scenario,
                                       SelectionHeuristic heuristic) {
  std::vector<int> order(scenario.containers.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    const Container& ca = scenario.containers[a];
    const Container& cb = scenario.containers[b];
    if (heuristic == SelectionHeuristic::kFifo) {
      return std::tuple(ca.earliest_day, ca.due_day, ca.id) <
             std::tuple(cb.earliest_day, cb.due_day, cb.id);
    }
    return std::tuple(ca.due_day, ca.earliest_day, ca.id) <
           std::tuple(cb.due_day, cb.earliest_day, cb.id);
  });
  return order;
}

class PlanningEnv {
 public:
  PlanningEnv(WeekScenario scenario, SelectionHeuristic heuristic)
      : scenario_(std::move(scenario)),
        heuristic_(heuristic),
        order_(decision_order(scenario_, heuristic)) {
    reset();
  }

  void reset() {
    position_ = 0;
    decided_ = Assignment{};
    for (int t = 0; t < kNumSchedules; ++t) {
      state_.residual_caps[t] = scenario_.schedules[t].capacity;
    }
    load_next_container();
  }

  const PlanState& state() const { return state_; }
  bool done() const { return state_.terminal; }
  const WeekScenario& scenario() const { return scenario_; }
  SelectionHeuristic heuristic() const { return heuristic_; }
  std::size_t steps_taken() const { return position_; }

  // Applies one decision for the pending container. Masked actions are a
  // hard error; the environment never substitutes a legal one.
  Transition step(int action) {
    if (state_.terminal) {
      throw std::logic_error("step() on a terminal state");
    }
    Transition tr;
    tr.state = state_;
    tr.action = action;

    const Container& c = scenario_.containers[order_[position_]];
    if (action == kTruckAction) {
      tr.reward = -scenario_.cost_model.truck_cost;
      decided_.add(c.id, Vehicle::truck());
    } else {
      if (action < 0 || action >= kNumSchedules ||
          !is_eligible(c, scenario_.schedules[action],
                       state_.residual_caps[action])) {
        throw std::logic_error("masked action " + std::to_string(action) +
                               " for container " + std::to_string(c.id));
      }
      tr.reward = -scenario_.schedules[action].cost_per_container;
      --state_.residual_caps[action];
      decided_.add(c.id, Vehicle::train(action));
    }

    ++position_;
    load_next_container();
    tr.next_state = state_;
    return tr;
  }

  // The decisions made so far; a complete valid assignment once done().
  const Assignment& assignment() const { return decided_; }

 private:
  void load_next_container() {
    if (position_ >= order_.size()) {
      state_.terminal = true;
      state_.next_e = 0;
      state_.next_l = 0;
      return;
    }
    const Container& c = scenario_.containers[order_[position_]];
    state_.terminal = false;
    state_.next_e = c.earliest_day;
    state_.next_l = c.due_day;
  }

  WeekScenario scenario_;
  SelectionHeuristic heuristic_;
  std::vector<int> order_;
  std::size_t position_ = 0;
  PlanState state_;
  Assignment decided_;
};

// Total money spent over a finished episode; the negation of the summed
// rewards, and always equal to total_cost of the induced assignment.
inline Money episode_cost(const std::vector<Transition>& transitions) {
  if (transitions.empty()) return 0;
  if (!transitions.back().next_state.terminal) {
    throw std::invalid_argument("episode is incomplete");
  }
  Money total = 0;
  for (const Transition& t : transitions) total -= t.reward;
  return total;
}

}  // namespace tplan
