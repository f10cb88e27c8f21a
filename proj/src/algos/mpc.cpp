#include "mbrl/algos/mpc.hpp"

#include <cmath>
#include <limits>

#include "mbrl/core/error.hpp"

namespace mbrl {

std::vector<std::vector<Vec>> UniformCandidates::generate(int n_candidates, int horizon,
                                                          RngStream& rng) const {
  std::vector<std::vector<Vec>> out(static_cast<std::size_t>(n_candidates));
  for (auto& seq : out) {
    seq.reserve(static_cast<std::size_t>(horizon));
    for (int t = 0; t < horizon; ++t) seq.push_back(space_.sample(rng));
  }
  return out;
}

MpcPlanner::MpcPlanner(const DynamicsModel& model, const CostFunction& cost,
                       Space action_space, int horizon, int n_candidates)
    : model_(model),
      cost_(cost),
      action_space_(std::move(action_space)),
      horizon_(horizon),
      n_candidates_(n_candidates),
      source_(std::make_shared<UniformCandidates>(action_space_)) {
  if (horizon < 1) throw ConfigError("algorithm.horizon", "must be >= 1");
  if (n_candidates < 1) throw ConfigError("algorithm.n_candidates", "must be >= 1");
}

void MpcPlanner::set_candidate_source(std::shared_ptr<const CandidateSource> source) {
  if (!source) throw ContractError("MpcPlanner::set_candidate_source: null source");
  source_ = std::move(source);
}

Vec MpcPlanner::plan(const Vec& s0, RngStream& rng) const {
  const auto candidates = source_->generate(n_candidates_, horizon_, rng);
  if (candidates.empty()) throw ContractError("MpcPlanner::plan: no candidates generated");

  int best = -1;
  double best_cost = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    const auto& seq = candidates[c];
    double total = 0.0;
    Vec s = s0;
    bool ok = true;
    for (const Vec& a : seq) {
      total += cost_.stage(s, a);
      if (!std::isfinite(total)) {
        ok = false;
        break;
      }
      s = model_.predict(s, a);
    }
    if (ok && total < best_cost) {
      best_cost = total;
      best = static_cast<int>(c);
    }
  }
  if (best < 0) throw NumericError("MpcPlanner::plan: every candidate scored non-finite");
  return candidates[static_cast<std::size_t>(best)].front();
}

}  // namespace mbrl
