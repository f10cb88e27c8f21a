#pragma once

#include <memory>
#include <optional>

#include "mbrl/algos/dqn.hpp"
#include "mbrl/algos/ilqr.hpp"
#include "mbrl/algos/mpc.hpp"
#include "mbrl/core/replay_buffer.hpp"
#include "mbrl/expmgr/scheduler.hpp"

namespace mbrl {

// One acting/learning surface over all three algorithm shapes: a learner
// (DQN), a per-step planner (MPC), and a per-episode planner (iLQR). The
// flow only talks to this interface.
class Policy {
 public:
  virtual ~Policy() = default;

  // Greedy/planned action for an observation; rng feeds stochastic planners.
  virtual Vec act(const Vec& obs, RngStream& rng) = 0;

  virtual bool trainable() const { return false; }
  virtual std::optional<double> train_step(const BatchSource&, const SchedulerSet&,
                                           const GlobalStatus&, RngStream&) {
    return std::nullopt;
  }

  // Called when an episode starts, before the first act().
  virtual void episode_begin(const Vec& /*obs0*/) {}

  // Policies with per-episode state (a plan in progress) override these so
  // evaluation episodes can run without corrupting the training episode.
  virtual std::shared_ptr<void> save_episode_state() const { return nullptr; }
  virtual void restore_episode_state(const std::shared_ptr<void>&) {}
};

class DqnPolicy : public Policy {
 public:
  // Train steps are skipped (no loss reported) until the source holds at
  // least learning_starts transitions.
  DqnPolicy(std::unique_ptr<DqnLearner> learner, ValueRef learning_rate,
            int learning_starts = 1);

  Vec act(const Vec& obs, RngStream&) override;
  bool trainable() const override { return true; }
  std::optional<double> train_step(const BatchSource& source, const SchedulerSet& schedulers,
                                   const GlobalStatus& status, RngStream& rng) override;

  DqnLearner& learner() { return *learner_; }
  const DqnLearner& learner() const { return *learner_; }

 private:
  std::unique_ptr<DqnLearner> learner_;
  ValueRef lr_;
  int learning_starts_;
};

class MpcPolicy : public Policy {
 public:
  explicit MpcPolicy(std::unique_ptr<MpcPlanner> planner) : planner_(std::move(planner)) {}
  Vec act(const Vec& obs, RngStream& rng) override { return planner_->plan(obs, rng); }
  MpcPlanner& planner() { return *planner_; }

 private:
  std::unique_ptr<MpcPlanner> planner_;
};

// Plans once per episode from the initial state and replays the open-loop
// controls with the time-varying feedback gains; controls are clamped to
// the action space.
class IlqrPolicy : public Policy {
 public:
  IlqrPolicy(IlqrOptions options, const DynamicsModel& model, const CostFunction& cost,
             Space action_space);

  void episode_begin(const Vec& obs0) override;
  Vec act(const Vec& obs, RngStream&) override;
  std::shared_ptr<void> save_episode_state() const override;
  void restore_episode_state(const std::shared_ptr<void>& state) override;

  const IlqrResult& last_plan() const;

 private:
  struct Plan {
    IlqrResult result;
    std::vector<Mat> gains;
    int t = 0;
  };
  IlqrOptions options_;
  const DynamicsModel& model_;
  const CostFunction& cost_;
  Space action_space_;
  std::shared_ptr<Plan> plan_;
};

}  // namespace mbrl
