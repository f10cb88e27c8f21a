#pragma once

#include "mbrl/dynamics/trainer.hpp"
#include "mbrl/expmgr/recorder.hpp"
#include "mbrl/flow/agent.hpp"

namespace mbrl {

struct StopCondition {
  enum class Kind { max_real_samples, max_cycles };
  Kind kind = Kind::max_cycles;
  long long limit = 1;

  bool satisfied(const GlobalStatus& status) const;
};

// Schedule of one training cycle: collect -> train -> periodic test.
struct TrainTestFlow {
  int samples_per_cycle = 1;
  int train_steps_per_cycle = 1;
  int test_every = 1;  // cycles
  int n_test_episodes = 1;
  StopCondition stop;

  void validate() const;
};

// TrainTestFlow plus model fitting and simulated experience: each cycle
// collects real samples, refits the dynamics model every model_fit_every
// cycles (fit-before-train), synthesizes samples_per_cycle * k_sim
// transitions branching from buffer states, and trains the policy on the
// union of real and simulated data. Testing always runs on the real
// environment. k_sim = 0 with fitting disabled degenerates to
// TrainTestFlow behavior exactly.
struct DynaFlow {
  TrainTestFlow base;
  int model_fit_every = 1;  // cycles; 0 disables fitting
  int k_sim = 4;
  int sim_rollout_len = 1;
  int sim_buffer_capacity = 100000;

  void validate() const;
};

struct CycleReport {
  long long cycle = 0;
  int samples_collected = 0;
  int train_steps = 0;
  std::vector<double> losses;  // only steps that actually trained
  std::optional<double> test_return;
  std::optional<double> model_loss;
  long long sim_generated = 0;
};

struct RunReport {
  long long cycles = 0;
  long long total_real_samples = 0;
  long long total_sim_samples = 0;
  long long total_train_steps = 0;
  long long total_test_episodes = 0;
  std::optional<double> last_test_return;
};

// One TrainTestFlow cycle; records "loss" per trained step and
// "test_return" on test cycles.
CycleReport flow_cycle(const TrainTestFlow& flow, Agent& agent, GlobalStatus& status,
                       Recorder& recorder);

// One DynaFlow cycle; additionally records "model_loss" on fit cycles.
// Simulated transitions take rewards from the environment's analytic reward
// and are never terminal. A model fit failure aborts the cycle (the
// experiment decides whether that ends the run).
CycleReport dyna_flow_cycle(const DynaFlow& flow, Agent& agent, ModelTrainer* trainer,
                            ReplayBuffer& sim_buffer, GlobalStatus& status,
                            Recorder& recorder);

RunReport flow_run(const TrainTestFlow& flow, Agent& agent, GlobalStatus& status,
                   Recorder& recorder);
RunReport flow_run(const DynaFlow& flow, Agent& agent, ModelTrainer* trainer,
                   ReplayBuffer& sim_buffer, GlobalStatus& status, Recorder& recorder);

}  // namespace mbrl
