#pragma once

// Core domain types for weekly container-to-vehicle planning, plus the cost
// model and the assignment validator shared by every planner.

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tplan {

using Money = std::int64_t;

inline constexpr int kDaysPerWeek = 7;
// One schedule per (depart, arrive) day pair with depart <= arrive.
inline constexpr int kNumSchedules = 28;
// Largest per-schedule capacity any generator setting produces; also the
// normalization constant for state features.
inline constexpr int kMaxScheduleCapacity = 6;

struct DayPair {
  int depart = 0;
  int arrive = 0;
};

// Schedule id order: (1,1), (1,2), ..., (1,7), (2,2), ..., (7,7).
inline constexpr std::array<DayPair, kNumSchedules> kSchedulePairs = [] {
  std::array<DayPair, kNumSchedules> pairs{};
  int idx = 0;
  for (int d = 1; d <= kDaysPerWeek; ++d) {
    for (int a = d; a <= kDaysPerWeek; ++a) {
      pairs[idx++] = DayPair{d, a};
    }
  }
  return pairs;
}();

constexpr int schedule_index(int depart, int arrive) {
  int idx = 0;
  for (int d = 1; d <= kDaysPerWeek; ++d) {
    for (int a = d; a <= kDaysPerWeek; ++a) {
      if (d == depart && a == arrive) return idx;
      ++idx;
    }
  }
  return -1;
}

struct TrainSchedule {
  int id = 0;
  int depart_day = 1;
  int arrive_day = 1;
  int capacity = 0;
  Money cost_per_container = 0;
};

struct Container {
  int id = 0;
  int earliest_day = 1;
  int due_day = 1;
};

// Trucks are uncapacitated and share one flat cost; train costs live on the
// schedules themselves.
struct CostModel {
  Money truck_cost = 500;
};

struct Vehicle {
  int schedule = -1;  // schedule id, or -1 for truck

  static constexpr Vehicle truck() { return Vehicle{}; }
  static constexpr Vehicle train(int schedule_id) { return Vehicle{schedule_id}; }
  constexpr bool is_truck() const { return schedule < 0; }

  friend constexpr bool operator==(Vehicle, Vehicle) = default;
};

// Container -> vehicle decisions, in no particular order.
struct Assignment {
  std::vector<std::pair<int, Vehicle>> items;

  void add(int container_id, Vehicle v) { items.emplace_back(container_id, v); }
  std::size_t size() const { return items.size(); }
};

struct WeekScenario {
  std::vector<TrainSchedule> schedules;  // exactly kNumSchedules, in id order
  std::vector<Container> containers;
  CostModel cost_model;
  std::uint64_t seed = 0;

  int total_capacity() const {
    int total = 0;
    for (const TrainSchedule& t : schedules) total += t.capacity;
    return total;
  }
};

enum class Violation {
  kNotExactlyOnce,          // a container is unassigned, duplicated, or unknown
  kDepartsBeforeAvailable,  // train departs before the container is available
  kArrivesAfterDue,         // train arrives after the container's due day
  kCapacityExceeded,        // more containers on a schedule than it has slots
};

inline std::string_view violation_name(Violation v) {
  switch (v) {
    case Violation::kNotExactlyOnce: return "not-exactly-once";
    case Violation::kDepartsBeforeAvailable: return "departs-before-available";
    case Violation::kArrivesAfterDue: return "arrives-after-due";
    case Violation::kCapacityExceeded: return "capacity-exceeded";
  }
  return "unknown";
}

class ValidationError : public std::runtime_error {
 public:
  ValidationError(Violation v, const std::string& what, int container_id = -1,
                  int schedule_id = -1)
      : std::runtime_error(std::string(violation_name(v)) + ": " + what),
        violation_(v),
        container_id_(container_id),
        schedule_id_(schedule_id) {}

  Violation violation() const { return violation_; }
  int container_id() const { return container_id_; }
  int schedule_id() const { return schedule_id_; }

 private:
  Violation violation_;
  int container_id_;
  int schedule_id_;
};

// A train can carry a container iff it departs no earlier than the container
// becomes available, arrives no later than the due day, and has a free slot.
inline bool is_eligible(const Container& c, const TrainSchedule& t,
                        int residual_capacity) {
  return t.depart_day >= c.earliest_day && t.arrive_day <= c.due_day &&
         residual_capacity >= 1;
}

// Throws ValidationError naming the first violated constraint. Checks run in
// a fixed order (assignment completeness, per-container timing, capacity) so
// an assignment breaking a single constraint is reported as exactly that one.
inline void validate(const Assignment& a, const WeekScenario& scenario) {
  const int n = static_cast<int>(scenario.containers.size());
  std::vector<int> times_assigned(n, 0);
  for (const auto& [cid, vehicle] : a.items) {
    if (cid < 0 || cid >= n) {
      throw ValidationError(Violation::kNotExactlyOnce,
                            "unknown container id " + std::to_string(cid), cid);
    }
    ++times_assigned[cid];
  }
  for (int cid = 0; cid < n; ++cid) {
    if (times_assigned[cid] != 1) {
      throw ValidationError(
          Violation::kNotExactlyOnce,
          "container " + std::to_string(cid) + " assigned " +
              std::to_string(times_assigned[cid]) + " times",
          cid);
    }
  }

  for (const auto& [cid, vehicle] : a.items) {
    if (vehicle.is_truck()) continue;
    if (vehicle.schedule < 0 || vehicle.schedule >= kNumSchedules) {
      throw ValidationError(Violation::kNotExactlyOnce,
                            "unknown schedule id " +
                                std::to_string(vehicle.schedule),
                            cid, vehicle.schedule);
    }
    const Container& c = scenario.containers[cid];
    const TrainSchedule& t = scenario.schedules[vehicle.schedule];
    if (t.depart_day < c.earliest_day) {
      throw ValidationError(Violation::kDepartsBeforeAvailable,
                            "container " + std::to_string(cid) +
                                " available day " +
                                std::to_string(c.earliest_day) +
                                " but schedule " + std::to_string(t.id) +
                                " departs day " + std::to_string(t.depart_day),
                            cid, t.id);
    }
    if (t.arrive_day > c.due_day) {
      throw ValidationError(Violation::kArrivesAfterDue,
                            "container " + std::to_string(cid) + " due day " +
                                std::to_string(c.due_day) + " but schedule " +
                                std::to_string(t.id) + " arrives day " +
                                std::to_string(t.arrive_day),
                            cid, t.id);
    }
  }

  std::array<int, kNumSchedules> load{};
  for (const auto& [cid, vehicle] : a.items) {
    if (!vehicle.is_truck()) ++load[vehicle.schedule];
  }
  for (int t = 0; t < kNumSchedules; ++t) {
    if (load[t] > scenario.schedules[t].capacity) {
      throw ValidationError(Violation::kCapacityExceeded,
                            "schedule " + std::to_string(t) + " holds " +
                                std::to_string(load[t]) + " containers, capacity " +
                                std::to_string(scenario.schedules[t].capacity),
                            -1, t);
    }
  }
}

inline Money total_cost(const Assignment& a, const WeekScenario& scenario) {
  validate(a, scenario);
  Money total = 0;
  for (const auto& [cid, vehicle] : a.items) {
    total += vehicle.is_truck()
                 ? scenario.cost_model.truck_cost
                 : scenario.schedules[vehicle.schedule].cost_per_container;
  }
  return total;
}

struct Utilization {
  int used_slots = 0;
  double fraction = 0.0;
};

inline Utilization utilization(const Assignment& a,
                               const WeekScenario& scenario) {
  validate(a, scenario);
  Utilization u;
  for (const auto& [cid, vehicle] : a.items) {
    if (!vehicle.is_truck()) ++u.used_slots;
  }
  const int total = scenario.total_capacity();
  // A zero-capacity week with no train use counts as fully utilized.
  u.fraction = total == 0 ? 1.0
                          : static_cast<double>(u.used_slots) /
                                static_cast<double>(total);
  return u;
}

// Structural invariants of a scenario itself (as opposed to an assignment
// against it). Used when loading scenarios from JSON.
inline void validate_scenario(const WeekScenario& s) {
  if (s.schedules.size() != kNumSchedules) {
    throw std::invalid_argument("scenario must have exactly " +
                                std::to_string(kNumSchedules) + " schedules");
  }
  for (int i = 0; i < kNumSchedules; ++i) {
    const TrainSchedule& t = s.schedules[i];
    if (t.id != i) {
      throw std::invalid_argument("schedule ids must be 0.." +
                                  std::to_string(kNumSchedules - 1) +
                                  " in order");
    }
    if (t.depart_day != kSchedulePairs[i].depart ||
        t.arrive_day != kSchedulePairs[i].arrive) {
      throw std::invalid_argument(
          "schedule " + std::to_string(i) +
          " does not match the canonical (depart, arrive) enumeration");
    }
    if (t.capacity < 0) {
      throw std::invalid_argument("schedule capacity must be non-negative");
    }
    if (t.cost_per_container < 0 ||
        t.cost_per_container >= s.cost_model.truck_cost) {
      throw std::invalid_argument(
          "train cost must be non-negative and below the truck cost");
    }
  }
  for (std::size_t i = 0; i < s.containers.size(); ++i) {
    const Container& c = s.containers[i];
    if (c.id != static_cast<int>(i)) {
      throw std::invalid_argument("container ids must be 0-based and dense");
    }
    if (c.earliest_day < 1 || c.earliest_day > c.due_day ||
        c.due_day > kDaysPerWeek) {
      throw std::invalid_argument(
          "container days must satisfy 1 <= earliest <= due <= " +
          std::to_string(kDaysPerWeek));
    }
  }
}

}  // namespace tplan
