#include "mbrl/core/space.hpp"

#include <cmath>

namespace mbrl {

Space Space::box(Vec lower, Vec upper) {
  if (lower.size() != upper.size())
    throw ContractError("Space::box: lower/upper length mismatch");
  if (lower.size() == 0) throw ContractError("Space::box: zero-dimensional box");
  for (int i = 0; i < lower.size(); ++i) {
    if (!std::isfinite(lower[i]) || !std::isfinite(upper[i]))
      throw ContractError("Space::box: bounds must be finite");
    if (lower[i] > upper[i])
      throw ContractError("Space::box: lower > upper at dimension " + std::to_string(i));
  }
  Space s;
  s.kind_ = Kind::box;
  s.lower_ = std::move(lower);
  s.upper_ = std::move(upper);
  return s;
}

Space Space::discrete(int n) {
  if (n < 1) throw ContractError("Space::discrete: n must be >= 1");
  Space s;
  s.kind_ = Kind::discrete;
  s.n_ = n;
  return s;
}

int Space::n() const {
  if (!is_discrete()) throw ContractError("Space::n: not a discrete space");
  return n_;
}

const Vec& Space::lower() const {
  if (!is_box()) throw ContractError("Space::lower: not a box space");
  return lower_;
}

const Vec& Space::upper() const {
  if (!is_box()) throw ContractError("Space::upper: not a box space");
  return upper_;
}

bool Space::contains(const Vec& point) const {
  if (point.size() != dim())
    throw ContractError("Space::contains: point dimension mismatch");
  if (is_discrete()) {
    const double v = point[0];
    return v == std::floor(v) && v >= 0.0 && v < static_cast<double>(n_);
  }
  for (int i = 0; i < point.size(); ++i)
    if (!(point[i] >= lower_[i] && point[i] <= upper_[i])) return false;
  return true;
}

bool Space::contains(int index) const {
  if (!is_discrete()) throw ContractError("Space::contains(int): not a discrete space");
  return index >= 0 && index < n_;
}

Vec Space::sample(RngStream& rng) const {
  if (is_discrete()) {
    Vec v(1);
    v[0] = static_cast<double>(rng.uniform_int(n_));
    return v;
  }
  Vec v(lower_.size());
  for (int i = 0; i < v.size(); ++i) v[i] = rng.uniform(lower_[i], upper_[i]);
  return v;
}

Vec Space::clamp(const Vec& action) const {
  if (action.size() != dim()) throw ContractError("Space::clamp: dimension mismatch");
  if (is_discrete()) {
    if (!contains(action))
      throw ContractError("Space::clamp: invalid discrete action index");
    return action;
  }
  Vec out = action;
  for (int i = 0; i < out.size(); ++i) {
    if (out[i] < lower_[i]) out[i] = lower_[i];
    if (out[i] > upper_[i]) out[i] = upper_[i];
  }
  return out;
}

}  // namespace mbrl
