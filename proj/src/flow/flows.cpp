#include "mbrl/flow/flows.hpp"

namespace mbrl {
namespace {

// Uniform sampling over the concatenation of two sources (real + simulated).
class UnionSource : public BatchSource {
 public:
  UnionSource(const BatchSource& a, const BatchSource& b) : a_(a), b_(b) {}
  int size() const override { return a_.size() + b_.size(); }
  const Transition& get(int i) const override {
    return i < a_.size() ? a_.get(i) : b_.get(i - a_.size());
  }

 private:
  const BatchSource& a_;
  const BatchSource& b_;
};

void run_train_steps(int n_steps, const BatchSource& source, Agent& agent,
                     GlobalStatus& status, Recorder& recorder, CycleReport& report) {
  for (int s = 0; s < n_steps; ++s) {
    const std::optional<double> loss = agent.policy().train_step(
        source, agent.schedulers(), status, agent.streams().buffer);
    if (loss) {
      status.add(GlobalStatus::kTotalTrainSteps, 1.0);
      recorder.append("loss", *loss, status);
      report.losses.push_back(*loss);
      ++report.train_steps;
    }
  }
}

void run_test_phase(const TrainTestFlow& flow, long long cycle, Agent& agent,
                    GlobalStatus& status, Recorder& recorder, CycleReport& report) {
  if (cycle % flow.test_every != 0) return;
  const double mean_return = agent.evaluate(flow.n_test_episodes, status);
  recorder.append("test_return", mean_return, status);
  report.test_return = mean_return;
}

}  // namespace

bool StopCondition::satisfied(const GlobalStatus& status) const {
  switch (kind) {
    case Kind::max_real_samples:
      return status.get(GlobalStatus::kTotalRealSamples) >= static_cast<double>(limit);
    case Kind::max_cycles:
      return status.get(GlobalStatus::kCycleIndex) >= static_cast<double>(limit);
  }
  return true;
}

void TrainTestFlow::validate() const {
  if (samples_per_cycle < 1) throw ConfigError("flow.samples_per_cycle", "must be >= 1");
  if (train_steps_per_cycle < 1)
    throw ConfigError("flow.train_steps_per_cycle", "must be >= 1");
  if (test_every < 1) throw ConfigError("flow.test_every", "must be >= 1");
  if (n_test_episodes < 1) throw ConfigError("flow.n_test_episodes", "must be >= 1");
  if (stop.limit < 1) throw ConfigError("flow.stop", "stop limit must be >= 1");
}

void DynaFlow::validate() const {
  base.validate();
  if (model_fit_every < 0) throw ConfigError("flow.model_fit_every", "must be >= 0");
  if (k_sim < 0) throw ConfigError("flow.k_sim", "must be >= 0");
  if (sim_rollout_len < 1) throw ConfigError("flow.sim_rollout_len", "must be >= 1");
  if (k_sim > 0 && model_fit_every < 1)
    throw ConfigError("flow.k_sim", "simulated samples need model fitting enabled");
}

CycleReport flow_cycle(const TrainTestFlow& flow, Agent& agent, GlobalStatus& status,
                       Recorder& recorder) {
  status.add(GlobalStatus::kCycleIndex, 1.0);
  const long long cycle = static_cast<long long>(status.get(GlobalStatus::kCycleIndex));
  CycleReport report;
  report.cycle = cycle;

  agent.collect(flow.samples_per_cycle, status);
  report.samples_collected = flow.samples_per_cycle;
  run_train_steps(flow.train_steps_per_cycle, agent.buffer(), agent, status, recorder,
                  report);
  run_test_phase(flow, cycle, agent, status, recorder, report);
  return report;
}

CycleReport dyna_flow_cycle(const DynaFlow& flow, Agent& agent, ModelTrainer* trainer,
                            ReplayBuffer& sim_buffer, GlobalStatus& status,
                            Recorder& recorder) {
  status.add(GlobalStatus::kCycleIndex, 1.0);
  const long long cycle = static_cast<long long>(status.get(GlobalStatus::kCycleIndex));
  CycleReport report;
  report.cycle = cycle;

  agent.collect(flow.base.samples_per_cycle, status);
  report.samples_collected = flow.base.samples_per_cycle;

  const bool fitting = trainer != nullptr && flow.model_fit_every > 0;
  if (fitting && (cycle % flow.model_fit_every == 0 || !trainer->has_fit())) {
    const double model_loss = trainer->fit(agent.buffer(), agent.streams().model);
    recorder.append("model_loss", model_loss, status);
    report.model_loss = model_loss;
  }

  if (flow.k_sim > 0) {
    if (!trainer) throw ContractError("dyna_flow_cycle: k_sim > 0 needs a model trainer");
    const DynamicsModel& model = trainer->model();
    const long long n_sim =
        static_cast<long long>(flow.base.samples_per_cycle) * flow.k_sim;
    RngStream& sim_rng = agent.streams().sim;
    Vec state;
    int chain_pos = 0;
    for (long long i = 0; i < n_sim; ++i) {
      if (chain_pos == 0)
        state = agent.buffer().get(sim_rng.uniform_int(agent.buffer().size())).state;
      const Vec greedy = agent.policy().act(state, sim_rng);
      const Vec action = agent.exploration()
                             ? agent.exploration()->apply(greedy,
                                                          agent.env().spec().action_space,
                                                          agent.schedulers(), status, sim_rng)
                             : greedy;
      const Vec next = model.predict(state, action);
      const double reward = agent.env().reward_from_obs(state, action);
      sim_buffer.push(Transition{state, action, reward, next, false});
      chain_pos = (chain_pos + 1) % flow.sim_rollout_len;
      if (chain_pos != 0) state = next;
    }
    status.add(GlobalStatus::kTotalSimSamples, static_cast<double>(n_sim));
    report.sim_generated = n_sim;

    UnionSource both(agent.buffer(), sim_buffer);
    run_train_steps(flow.base.train_steps_per_cycle, both, agent, status, recorder, report);
  } else {
    run_train_steps(flow.base.train_steps_per_cycle, agent.buffer(), agent, status,
                    recorder, report);
  }

  run_test_phase(flow.base, cycle, agent, status, recorder, report);
  return report;
}

namespace {

RunReport finish_report(const GlobalStatus& status, std::optional<double> last_test) {
  RunReport r;
  r.cycles = static_cast<long long>(status.get(GlobalStatus::kCycleIndex));
  r.total_real_samples = static_cast<long long>(status.get(GlobalStatus::kTotalRealSamples));
  r.total_sim_samples = static_cast<long long>(status.get(GlobalStatus::kTotalSimSamples));
  r.total_train_steps = static_cast<long long>(status.get(GlobalStatus::kTotalTrainSteps));
  r.total_test_episodes =
      static_cast<long long>(status.get(GlobalStatus::kTotalTestEpisodes));
  r.last_test_return = last_test;
  return r;
}

}  // namespace

RunReport flow_run(const TrainTestFlow& flow, Agent& agent, GlobalStatus& status,
                   Recorder& recorder) {
  flow.validate();
  std::optional<double> last_test;
  while (!flow.stop.satisfied(status)) {
    const CycleReport r = flow_cycle(flow, agent, status, recorder);
    if (r.test_return) last_test = r.test_return;
  }
  return finish_report(status, last_test);
}

RunReport flow_run(const DynaFlow& flow, Agent& agent, ModelTrainer* trainer,
                   ReplayBuffer& sim_buffer, GlobalStatus& status, Recorder& recorder) {
  flow.validate();
  std::optional<double> last_test;
  while (!flow.base.stop.satisfied(status)) {
    const CycleReport r =
        dyna_flow_cycle(flow, agent, trainer, sim_buffer, status, recorder);
    if (r.test_return) last_test = r.test_return;
  }
  return finish_report(status, last_test);
}

}  // namespace mbrl
