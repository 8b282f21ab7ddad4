#pragma once

// Seeded generator of weekly scenarios: the full 28-schedule pool plus a
// batch of containers with uniform availability days.
//
// Draw discipline (fixed so a seed reproduces byte-identical scenarios):
// with the random capacity setting, one capacity draw per schedule in id
// order; then per container, one earliest-day draw followed by one due-day
// draw.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "tplan/domain.hpp"
#include "tplan/rng.hpp"

namespace tplan {

struct CapacitySetting {
  int fixed = -1;  // 1..6 when fixed; -1 means uniform random over 0..6

  static CapacitySetting fixed_slots(int k) {
    if (k < 1 || k > kMaxScheduleCapacity) {
      throw std::invalid_argument("fixed capacity must be in 1.." +
                                  std::to_string(kMaxScheduleCapacity));
    }
    return CapacitySetting{k};
  }
  static CapacitySetting random_uniform() { return CapacitySetting{-1}; }

  bool is_random() const { return fixed < 0; }

  std::string name() const {
    return is_random() ? "random" : std::to_string(fixed);
  }

  static CapacitySetting parse(const std::string& text) {
    if (text == "random") return random_uniform();
    try {
      return fixed_slots(std::stoi(text));
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument("capacity must be 1.." +
                                  std::to_string(kMaxScheduleCapacity) +
                                  " or \"random\", got \"" + text + "\"");
    }
  }

  friend bool operator==(CapacitySetting, CapacitySetting) = default;
};

struct GeneratorConfig {
  CapacitySetting capacity = CapacitySetting::random_uniform();
  int containers_per_week = 100;
  Money truck_cost = 500;
  Money train_cost = 15;  // uniform per-schedule cost unless overridden below
  std::vector<Money> per_schedule_costs;  // optional, kNumSchedules entries
  // Alternative due-day reading: strictly after the availability day
  // (clamped to day 7 when the container becomes available on day 7).
  bool due_strictly_after = false;
  std::uint64_t seed = 0;
};

inline WeekScenario generate_week(const GeneratorConfig& config) {
  if (config.containers_per_week < 0) {
    throw std::invalid_argument("containers_per_week must be non-negative");
  }
  if (!config.per_schedule_costs.empty() &&
      config.per_schedule_costs.size() != kNumSchedules) {
    throw std::invalid_argument("per_schedule_costs needs exactly " +
                                std::to_string(kNumSchedules) + " entries");
  }

  Rng rng(config.seed);
  WeekScenario s;
  s.seed = config.seed;
  s.cost_model.truck_cost = config.truck_cost;

  s.schedules.reserve(kNumSchedules);
  for (int t = 0; t < kNumSchedules; ++t) {
    TrainSchedule sched;
    sched.id = t;
    sched.depart_day = kSchedulePairs[t].depart;
    sched.arrive_day = kSchedulePairs[t].arrive;
    sched.capacity = config.capacity.is_random()
                         ? static_cast<int>(rng.uniform_int(0, kMaxScheduleCapacity))
                         : config.capacity.fixed;
    sched.cost_per_container = config.per_schedule_costs.empty()
                                   ? config.train_cost
                                   : config.per_schedule_costs[t];
    s.schedules.push_back(sched);
  }

  s.containers.reserve(config.containers_per_week);
  for (int i = 0; i < config.containers_per_week; ++i) {
    Container c;
    c.id = i;
    c.earliest_day = static_cast<int>(rng.uniform_int(1, kDaysPerWeek));
    const int due_lo = config.due_strictly_after
                           ? std::min(c.earliest_day + 1, kDaysPerWeek)
                           : c.earliest_day;
    c.due_day = static_cast<int>(rng.uniform_int(due_lo, kDaysPerWeek));
    s.containers.push_back(c);
  }

  validate_scenario(s);
  return s;
}

}  // namespace tplan
