#pragma once

#include <memory>

#include "mbrl/core/rng.hpp"
#include "mbrl/core/space.hpp"

namespace mbrl {

struct EnvSpec {
  Space obs_space = Space::discrete(1);
  Space action_space = Space::discrete(1);
  int max_episode_steps = 1;
};

struct StepResult {
  Vec obs;
  double reward = 0.0;
  bool done = false;
};

// Environment contract shared by all native environments. Out-of-range box
// actions are clamped; stepping a finished or never-reset episode is a
// usage error. Instances are single-owner (mutable episode state).
class Env {
 public:
  virtual ~Env() = default;

  virtual const EnvSpec& spec() const = 0;
  virtual Vec reset(RngStream& rng) = 0;
  virtual StepResult step(const Vec& action) = 0;

  // Reward as a pure function of (observation, action). Used to label
  // transitions synthesized from a learned model.
  virtual double reward_from_obs(const Vec& obs, const Vec& action) const = 0;

  // Fresh instance with the same parameters (episode state not copied).
  virtual std::unique_ptr<Env> clone() const = 0;

  int episode_steps() const { return episode_steps_; }
  long long total_steps() const { return total_steps_; }

 protected:
  void begin_episode() {
    episode_steps_ = 0;
    needs_reset_ = false;
  }
  // Call once per step after computing `done`; enforces the usage contract
  // and folds in the episode time limit.
  bool count_step(bool done, int max_episode_steps) {
    if (needs_reset_)
      throw ContractError("Env::step: episode finished or not started; call reset()");
    ++episode_steps_;
    ++total_steps_;
    const bool d = done || episode_steps_ >= max_episode_steps;
    if (d) needs_reset_ = true;
    return d;
  }
  void require_ready() const {
    if (needs_reset_)
      throw ContractError("Env::step: episode finished or not started; call reset()");
  }

 private:
  int episode_steps_ = 0;
  long long total_steps_ = 0;
  bool needs_reset_ = true;
};

}  // namespace mbrl
