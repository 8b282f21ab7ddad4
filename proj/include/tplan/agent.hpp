#pragma once

// Masked epsilon-greedy Q-learning over the planning environment: replay
// memory, periodic minibatch Bellman updates, and greedy rollouts for
// evaluation.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "tplan/env.hpp"
#include "tplan/json_io.hpp"
#include "tplan/net.hpp"
#include "tplan/rng.hpp"
#include "tplan/scenario.hpp"
#include "tplan/solver.hpp"

namespace tplan {

// Fixed-capacity ring buffer; once full, each insertion evicts the oldest
// transition.
class ReplayMemory {
 public:
  explicit ReplayMemory(std::size_t capacity) : capacity_(capacity) {
    if (capacity == 0) throw std::invalid_argument("replay capacity must be > 0");
    buffer_.reserve(capacity);
  }

  void push(Transition t) {
    if (buffer_.size() < capacity_) {
      buffer_.push_back(std::move(t));
    } else {
      buffer_[head_] = std::move(t);
      head_ = (head_ + 1) % capacity_;
    }
    ++insertions_;
  }

  std::size_t size() const { return buffer_.size(); }
  std::size_t capacity() const { return capacity_; }
  std::uint64_t insertions() const { return insertions_; }
  const Transition& operator[](std::size_t i) const { return buffer_[i]; }

  // `count` distinct transitions, uniform over the buffer (Floyd's
  // sampling); iteration order is the insertion order of the draw.
  std::vector<const Transition*> sample(std::size_t count, Rng& rng) const {
    if (count > buffer_.size()) {
      throw std::invalid_argument("cannot sample more transitions than stored");
    }
    std::vector<std::size_t> picked;
    picked.reserve(count);
    for (std::size_t j = buffer_.size() - count; j < buffer_.size(); ++j) {
      const std::size_t t =
          static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(j)));
      if (std::find(picked.begin(), picked.end(), t) == picked.end()) {
        picked.push_back(t);
      } else {
        picked.push_back(j);
      }
    }
    std::vector<const Transition*> out;
    out.reserve(count);
    for (std::size_t idx : picked) out.push_back(&buffer_[idx]);
    return out;
  }

 private:
  std::vector<Transition> buffer_;
  std::size_t capacity_;
  std::size_t head_ = 0;
  std::uint64_t insertions_ = 0;
};

struct EpsilonSchedule {
  double start = 0.95;
  double floor = 0.05;
  // Linear decay reaching the floor after this fraction of the episodes.
  double decay_fraction = 0.5;
  // Alternative literal schedule: subtract 0.1 after every episode.
  bool literal_steps = false;

  double at(int episode, int total_episodes) const {
    double eps;
    if (literal_steps) {
      eps = start - 0.1 * episode;
    } else {
      const double horizon =
          std::max(1.0, decay_fraction * static_cast<double>(total_episodes));
      eps = start + (floor - start) *
                        std::min(1.0, static_cast<double>(episode) / horizon);
    }
    return std::clamp(eps, floor, start);
  }
};

struct TrainingConfig {
  int episodes = 4000;
  int update_interval = 20;  // environment steps between minibatch updates
  int minibatch = 10;
  double gamma = 0.99;
  EpsilonSchedule epsilon;
  SelectionHeuristic heuristic = SelectionHeuristic::kFifo;
  GeneratorConfig generator;  // capacity setting, batch size, costs
  std::size_t replay_capacity = 10000;
  double learning_rate = 0.01;
  std::vector<int> hidden = {100, 100};
  // Q targets regress on rewards multiplied by this factor; 0 selects
  // 1 / truck_cost so targets stay O(1) regardless of the money scale.
  double reward_scale = 0.0;
  // 0 bootstraps from the live network; N > 0 bootstraps from a frozen copy
  // refreshed every N minibatch updates.
  int target_sync = 0;
  std::uint64_t seed = 1;

  double resolved_reward_scale() const {
    if (reward_scale > 0.0) return reward_scale;
    return 1.0 / static_cast<double>(generator.truck_cost);
  }

  std::vector<int> layer_sizes() const {
    std::vector<int> sizes{kStateFeatures};
    sizes.insert(sizes.end(), hidden.begin(), hidden.end());
    sizes.push_back(kNumActions);
    return sizes;
  }
};

struct EpisodeStats {
  int episode = 0;
  Money total_reward = 0;
  double mean_reward = 0.0;      // per step, money units
  double reward_variance = 0.0;  // population variance per step
  Money episode_cost = 0;
  Money optimal_cost = 0;
  Money cost_gap = 0;
  double epsilon = 0.0;
};

// Epsilon-greedy over the eligible actions only. The greedy branch ignores
// ineligible outputs entirely; ties go to the lowest action id.
inline int select_action(const QNetwork& net, const PlanState& state,
                         const std::vector<int>& eligible, double epsilon,
                         Rng& rng) {
  if (eligible.empty()) {
    throw std::invalid_argument("eligible action set must not be empty");
  }
  if (epsilon > 0.0 && rng.uniform01() < epsilon) {
    return eligible[static_cast<std::size_t>(
        rng.uniform_int(0, static_cast<std::int64_t>(eligible.size()) - 1))];
  }
  const auto features = state_features(state);
  const std::vector<double> q = net.forward(features);
  int best = eligible.front();
  for (int action : eligible) {
    if (q[action] > q[best]) best = action;
  }
  return best;
}

// y = r + gamma * max over eligible next actions, or r alone at episode end.
// The optional scale converts money rewards into the network's target units.
inline double bellman_target(const Transition& tr, const QNetwork& net,
                             double gamma, double reward_scale = 1.0) {
  const double r = static_cast<double>(tr.reward) * reward_scale;
  if (tr.next_state.terminal) return r;
  const auto features = state_features(tr.next_state);
  const std::vector<double> q = net.forward(features);
  const std::vector<int> eligible = mask(tr.next_state);
  double best = q[eligible.front()];
  for (int action : eligible) best = std::max(best, q[action]);
  return r + gamma * best;
}

struct TrainResult {
  QNetwork net;
  AdamState adam;
  std::vector<EpisodeStats> stats;
  std::uint64_t total_updates = 0;
  std::uint64_t mask_violations = 0;  // stays 0; counted for verification
  double reward_scale = 1.0;
};

// Full training loop: a fresh scenario per episode, one decision per
// container, every transition recorded, a minibatch update every
// update_interval steps once the replay holds enough samples.
inline TrainResult train(
    const TrainingConfig& config,
    const std::function<void(const EpisodeStats&)>& on_episode = {}) {
  Rng init_rng(derive_seed(config.seed, SeedStream::kWeightInit, 0));
  Rng action_rng(derive_seed(config.seed, SeedStream::kAgentActions, 0));

  TrainResult result;
  result.net = QNetwork::random_init(config.layer_sizes(), init_rng);
  result.adam = AdamState(result.net, config.learning_rate);
  result.reward_scale = config.resolved_reward_scale();
  result.stats.reserve(config.episodes);

  QNetwork target_net = result.net;
  ReplayMemory replay(config.replay_capacity);
  std::uint64_t global_steps = 0;

  std::vector<std::vector<double>> batch_inputs;
  std::vector<TargetPair> batch_targets;

  for (int episode = 0; episode < config.episodes; ++episode) {
    GeneratorConfig gen = config.generator;
    gen.seed = derive_seed(config.seed, SeedStream::kTrainScenarios,
                           static_cast<std::uint64_t>(episode));
    WeekScenario scenario = generate_week(gen);
    const double epsilon = config.epsilon.at(episode, config.episodes);

    PlanningEnv env(scenario, config.heuristic);
    std::vector<Money> rewards;
    rewards.reserve(scenario.containers.size());

    while (!env.done()) {
      const std::vector<int> eligible = mask(env.state());
      const int action =
          select_action(result.net, env.state(), eligible, epsilon, action_rng);
      if (std::find(eligible.begin(), eligible.end(), action) == eligible.end()) {
        ++result.mask_violations;
      }
      Transition tr = env.step(action);
      rewards.push_back(tr.reward);
      replay.push(std::move(tr));
      ++global_steps;

      if (global_steps % static_cast<std::uint64_t>(config.update_interval) == 0 &&
          replay.size() >= static_cast<std::size_t>(config.minibatch)) {
        const auto samples =
            replay.sample(static_cast<std::size_t>(config.minibatch), action_rng);
        batch_inputs.clear();
        batch_targets.clear();
        const QNetwork& bootstrap =
            config.target_sync > 0 ? target_net : result.net;
        for (const Transition* sample : samples) {
          const auto features = state_features(sample->state);
          batch_inputs.emplace_back(features.begin(), features.end());
          batch_targets.push_back(
              {sample->action, bellman_target(*sample, bootstrap, config.gamma,
                                              result.reward_scale)});
        }
        try {
          train_batch(result.net, result.adam, batch_inputs, batch_targets);
        } catch (const std::runtime_error& e) {
          throw std::runtime_error("episode " + std::to_string(episode) +
                                   ", step " + std::to_string(global_steps) +
                                   ": " + e.what());
        }
        ++result.total_updates;
        if (config.target_sync > 0 &&
            result.total_updates % static_cast<std::uint64_t>(config.target_sync) == 0) {
          target_net = result.net;
        }
      }
    }

    EpisodeStats stats;
    stats.episode = episode;
    stats.epsilon = epsilon;
    for (Money r : rewards) stats.total_reward += r;
    stats.episode_cost = -stats.total_reward;
    if (!rewards.empty()) {
      const double n = static_cast<double>(rewards.size());
      stats.mean_reward = static_cast<double>(stats.total_reward) / n;
      double ss = 0.0;
      for (Money r : rewards) {
        const double d = static_cast<double>(r) - stats.mean_reward;
        ss += d * d;
      }
      stats.reward_variance = ss / n;
    }
    stats.optimal_cost = solve_optimal(scenario).cost;
    stats.cost_gap = stats.episode_cost - stats.optimal_cost;
    if (on_episode) on_episode(stats);
    result.stats.push_back(stats);
  }
  return result;
}

// Deterministic greedy rollout; always yields a complete valid assignment
// because the truck keeps every mask non-empty.
inline Assignment act_greedy(const QNetwork& net, const WeekScenario& scenario,
                             SelectionHeuristic heuristic) {
  PlanningEnv env(scenario, heuristic);
  Rng unused(0);  // never consulted at epsilon 0
  while (!env.done()) {
    const std::vector<int> eligible = mask(env.state());
    env.step(select_action(net, env.state(), eligible, 0.0, unused));
  }
  return env.assignment();
}

// ---------------------------------------------------------------------------
// Checkpoints: layer spec, parameters, optimizer state and the training
// context needed to reuse the network (heuristic, reward scale).

struct Checkpoint {
  QNetwork net;
  AdamState adam;
  SelectionHeuristic heuristic = SelectionHeuristic::kFifo;
  std::string capacity = "random";
  double gamma = 0.99;
  double reward_scale = 1.0;
  std::uint64_t seed = 0;
  int episodes = 0;
};

inline constexpr const char* kCheckpointFormat = "tplan.checkpoint.v1";

namespace detail {

inline nlohmann::json layers_to_json(const std::vector<QNetwork::Layer>& layers) {
  nlohmann::json out = nlohmann::json::array();
  for (const QNetwork::Layer& l : layers) {
    out.push_back({{"in", l.in},
                   {"out", l.out},
                   {"weights", l.weights},
                   {"biases", l.biases}});
  }
  return out;
}

inline std::vector<QNetwork::Layer> layers_from_json(const nlohmann::json& j) {
  std::vector<QNetwork::Layer> layers;
  for (const auto& jl : j) {
    QNetwork::Layer l;
    l.in = jl.at("in").get<int>();
    l.out = jl.at("out").get<int>();
    l.weights = jl.at("weights").get<std::vector<double>>();
    l.biases = jl.at("biases").get<std::vector<double>>();
    if (l.weights.size() != static_cast<std::size_t>(l.in) * l.out ||
        l.biases.size() != static_cast<std::size_t>(l.out)) {
      throw std::invalid_argument("layer shape mismatch in checkpoint");
    }
    layers.push_back(std::move(l));
  }
  return layers;
}

}  // namespace detail

inline void save_checkpoint(const std::string& path, const Checkpoint& ckpt) {
  nlohmann::json j;
  j["format"] = kCheckpointFormat;
  j["sizes"] = ckpt.net.sizes;
  j["layers"] = detail::layers_to_json(ckpt.net.layers);
  j["adam"] = {{"learning_rate", ckpt.adam.learning_rate},
               {"beta1", ckpt.adam.beta1},
               {"beta2", ckpt.adam.beta2},
               {"epsilon", ckpt.adam.epsilon},
               {"step", ckpt.adam.step},
               {"m", detail::layers_to_json(ckpt.adam.m)},
               {"v", detail::layers_to_json(ckpt.adam.v)}};
  j["heuristic"] = std::string(heuristic_name(ckpt.heuristic));
  j["capacity"] = ckpt.capacity;
  j["gamma"] = ckpt.gamma;
  j["reward_scale"] = ckpt.reward_scale;
  j["seed"] = ckpt.seed;
  j["episodes"] = ckpt.episodes;
  save_json_file(path, j);
}

inline Checkpoint load_checkpoint(const std::string& path) {
  const nlohmann::json j = load_json_file(path);
  if (j.value("format", "") != kCheckpointFormat) {
    throw std::invalid_argument(path + " is not a " +
                                std::string(kCheckpointFormat) + " document");
  }
  Checkpoint ckpt;
  ckpt.net.sizes = j.at("sizes").get<std::vector<int>>();
  ckpt.net.layers = detail::layers_from_json(j.at("layers"));
  if (ckpt.net.layers.size() + 1 != ckpt.net.sizes.size()) {
    throw std::invalid_argument("checkpoint layer count mismatch");
  }
  const auto& ja = j.at("adam");
  ckpt.adam.learning_rate = ja.at("learning_rate").get<double>();
  ckpt.adam.beta1 = ja.at("beta1").get<double>();
  ckpt.adam.beta2 = ja.at("beta2").get<double>();
  ckpt.adam.epsilon = ja.at("epsilon").get<double>();
  ckpt.adam.step = ja.at("step").get<long>();
  ckpt.adam.m = detail::layers_from_json(ja.at("m"));
  ckpt.adam.v = detail::layers_from_json(ja.at("v"));
  ckpt.heuristic = parse_heuristic(j.at("heuristic").get<std::string>());
  ckpt.capacity = j.at("capacity").get<std::string>();
  ckpt.gamma = j.at("gamma").get<double>();
  ckpt.reward_scale = j.at("reward_scale").get<double>();
  ckpt.seed = j.at("seed").get<std::uint64_t>();
  ckpt.episodes = j.at("episodes").get<int>();
  return ckpt;
}

}  // namespace tplan
