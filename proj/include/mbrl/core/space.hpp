#pragma once

#include "mbrl/core/rng.hpp"
#include "mbrl/core/types.hpp"

namespace mbrl {

// Observation/action space: either a box with inclusive per-dimension bounds
// or a finite set of discrete actions {0, ..., n-1}. Discrete points travel
// as 1-d vectors holding the index, so transitions and batches stay uniform.
class Space {
 public:
  enum class Kind { box, discrete };

  static Space box(Vec lower, Vec upper);
  static Space discrete(int n);

  Kind kind() const { return kind_; }
  bool is_box() const { return kind_ == Kind::box; }
  bool is_discrete() const { return kind_ == Kind::discrete; }

  int dim() const { return is_box() ? static_cast<int>(lower_.size()) : 1; }
  int n() const;  // discrete only

  const Vec& lower() const;
  const Vec& upper() const;

  bool contains(const Vec& point) const;
  bool contains(int index) const;  // discrete only

  // Box: uniform per dimension; discrete: uniform index as a 1-d vector.
  Vec sample(RngStream& rng) const;

  // Box: clamp elementwise into bounds. Discrete: validate (indices are
  // never rounded) and pass through.
  Vec clamp(const Vec& action) const;

 private:
  Space() = default;
  Kind kind_ = Kind::box;
  Vec lower_, upper_;
  int n_ = 0;
};

}  // namespace mbrl
