#pragma once

// JSON interchange for scenarios and assignments. The scenario document is
// the wire format among the generator, the planners and the benchmark
// harness; the schema is documented in the README.

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "tplan/domain.hpp"

namespace tplan {

inline constexpr const char* kScenarioFormat = "tplan.week_scenario.v1";
inline constexpr const char* kAssignmentFormat = "tplan.assignment.v1";

inline nlohmann::json scenario_to_json(const WeekScenario& s) {
  nlohmann::json j;
  j["format"] = kScenarioFormat;
  j["seed"] = s.seed;
  j["truck_cost"] = s.cost_model.truck_cost;
  nlohmann::json schedules = nlohmann::json::array();
  for (const TrainSchedule& t : s.schedules) {
    schedules.push_back({{"id", t.id},
                         {"depart_day", t.depart_day},
                         {"arrive_day", t.arrive_day},
                         {"capacity", t.capacity},
                         {"cost_per_container", t.cost_per_container}});
  }
  j["schedules"] = std::move(schedules);
  nlohmann::json containers = nlohmann::json::array();
  for (const Container& c : s.containers) {
    containers.push_back({{"id", c.id},
                          {"earliest_day", c.earliest_day},
                          {"due_day", c.due_day}});
  }
  j["containers"] = std::move(containers);
  return j;
}

inline WeekScenario scenario_from_json(const nlohmann::json& j) {
  if (j.value("format", "") != kScenarioFormat) {
    throw std::invalid_argument("not a " + std::string(kScenarioFormat) +
                                " document");
  }
  WeekScenario s;
  s.seed = j.at("seed").get<std::uint64_t>();
  s.cost_model.truck_cost = j.at("truck_cost").get<Money>();
  for (const auto& jt : j.at("schedules")) {
    TrainSchedule t;
    t.id = jt.at("id").get<int>();
    t.depart_day = jt.at("depart_day").get<int>();
    t.arrive_day = jt.at("arrive_day").get<int>();
    t.capacity = jt.at("capacity").get<int>();
    t.cost_per_container = jt.at("cost_per_container").get<Money>();
    s.schedules.push_back(t);
  }
  for (const auto& jc : j.at("containers")) {
    Container c;
    c.id = jc.at("id").get<int>();
    c.earliest_day = jc.at("earliest_day").get<int>();
    c.due_day = jc.at("due_day").get<int>();
    s.containers.push_back(c);
  }
  validate_scenario(s);
  return s;
}

// When `annotate` is given, the document also carries total cost and
// utilization computed against that scenario.
inline nlohmann::json assignment_to_json(const Assignment& a,
                                         const WeekScenario* annotate = nullptr) {
  nlohmann::json j;
  j["format"] = kAssignmentFormat;
  nlohmann::json items = nlohmann::json::array();
  for (const auto& [cid, vehicle] : a.items) {
    nlohmann::json item{{"container_id", cid}};
    if (vehicle.is_truck()) {
      item["vehicle"] = "truck";
    } else {
      item["vehicle"] = "train";
      item["schedule_id"] = vehicle.schedule;
    }
    items.push_back(std::move(item));
  }
  j["assignments"] = std::move(items);
  if (annotate != nullptr) {
    j["total_cost"] = total_cost(a, *annotate);
    const Utilization u = utilization(a, *annotate);
    j["used_slots"] = u.used_slots;
    j["utilization"] = u.fraction;
  }
  return j;
}

inline Assignment assignment_from_json(const nlohmann::json& j) {
  if (j.value("format", "") != kAssignmentFormat) {
    throw std::invalid_argument("not a " + std::string(kAssignmentFormat) +
                                " document");
  }
  Assignment a;
  for (const auto& item : j.at("assignments")) {
    const int cid = item.at("container_id").get<int>();
    const std::string kind = item.at("vehicle").get<std::string>();
    if (kind == "truck") {
      a.add(cid, Vehicle::truck());
    } else if (kind == "train") {
      a.add(cid, Vehicle::train(item.at("schedule_id").get<int>()));
    } else {
      throw std::invalid_argument("vehicle must be \"train\" or \"truck\"");
    }
  }
  return a;
}

inline nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  nlohmann::json j;
  in >> j;
  return j;
}

inline void save_json_file(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << '\n';
}

inline WeekScenario load_scenario(const std::string& path) {
  return scenario_from_json(load_json_file(path));
}

}  // namespace tplan
