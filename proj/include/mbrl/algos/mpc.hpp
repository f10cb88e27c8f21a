#pragma once

#include <memory>
#include <vector>

#include "mbrl/algos/cost.hpp"
#include "mbrl/core/space.hpp"
#include "mbrl/dynamics/model.hpp"

namespace mbrl {

// Draws every candidate action sequence up front so scoring is free of RNG
// ordering effects (and could fan out over threads).
class CandidateSource {
 public:
  virtual ~CandidateSource() = default;
  virtual std::vector<std::vector<Vec>> generate(int n_candidates, int horizon,
                                                 RngStream& rng) const = 0;
};

// Uniform random shooting over the action space; draws are candidate-major,
// time-minor.
class UniformCandidates : public CandidateSource {
 public:
  explicit UniformCandidates(Space action_space) : space_(std::move(action_space)) {}
  std::vector<std::vector<Vec>> generate(int n_candidates, int horizon,
                                         RngStream& rng) const override;

 private:
  Space space_;
};

// Random-shooting MPC: sample N action sequences of length H, score each by
// the stage cost along a model rollout, return the first action of the
// cheapest sequence (ties by lowest candidate index).
class MpcPlanner {
 public:
  MpcPlanner(const DynamicsModel& model, const CostFunction& cost, Space action_space,
             int horizon, int n_candidates);

  // Swap the sampler (tests inject exhaustive enumerations).
  void set_candidate_source(std::shared_ptr<const CandidateSource> source);

  Vec plan(const Vec& s0, RngStream& rng) const;

  int horizon() const { return horizon_; }
  int n_candidates() const { return n_candidates_; }

 private:
  const DynamicsModel& model_;
  const CostFunction& cost_;
  Space action_space_;
  int horizon_, n_candidates_;
  std::shared_ptr<const CandidateSource> source_;
};

}  // namespace mbrl
