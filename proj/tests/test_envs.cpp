#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mbrl/envs/cartpole.hpp"
#include "mbrl/envs/lti.hpp"
#include "mbrl/envs/pendulum.hpp"
#include "support/random_instances.hpp"

using namespace mbrl;

namespace {
Vec v1(double a) {
  Vec v(1);
  v[0] = a;
  return v;
}
}  // namespace

TEST_CASE("pendulum equilibrium at the top is a zero-cost fixed point") {
  PendulumEnv env({}, PendulumObsMode::raw);
  env.set_state(0.0, 0.0);
  const StepResult r = env.step(v1(0.0));
  CHECK(r.obs[0] == doctest::Approx(0.0));
  CHECK(r.obs[1] == doctest::Approx(0.0));
  CHECK(r.reward == doctest::Approx(0.0));
}

TEST_CASE("pendulum one-step semi-implicit Euler from theta = pi/2") {
  PendulumEnv env({}, PendulumObsMode::raw);
  env.set_state(1.5707963267948966, 0.0);
  const StepResult r = env.step(v1(0.0));
  // theta_ddot = 15, theta_dot' = 0.75, theta' = pi/2 + 0.0375
  CHECK(r.obs[1] == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(r.obs[0] == doctest::Approx(1.6082963267948966).epsilon(1e-10));
  CHECK(r.reward == doctest::Approx(-2.4674011002723395).epsilon(1e-10));
}

TEST_CASE("pendulum speed clamp holds under any action sequence") {
  PendulumEnv env({}, PendulumObsMode::raw);
  RngStream rng(3, 1);
  env.reset(rng);
  for (int i = 0; i < 400; ++i) {
    const StepResult r = env.step(v1(rng.uniform(-10.0, 10.0)));  // over-limit torque
    CHECK(std::abs(r.obs[1]) <= 8.0 + 1e-12);
    if (r.done) env.reset(rng);
  }
}

TEST_CASE("pendulum reset ranges and fixed-length episodes") {
  PendulumEnv env({}, PendulumObsMode::raw, 50);
  RngStream rng(9, 0);
  for (int i = 0; i < 100; ++i) {
    const Vec obs = env.reset(rng);
    CHECK(std::abs(obs[0]) <= 3.14159265358979323846);
    CHECK(std::abs(obs[1]) <= 1.0);
  }
  env.reset(rng);
  int steps = 0;
  while (true) {
    ++steps;
    if (env.step(v1(0.0)).done) break;
  }
  CHECK(steps == 50);
}

TEST_CASE("pendulum trig observations and reward_from_obs agree with raw") {
  PendulumEnv trig({}, PendulumObsMode::trig);
  trig.set_state(2.0, -1.0);
  Vec obs(3);
  obs << std::cos(2.0), std::sin(2.0), -1.0;
  CHECK(trig.reward_from_obs(obs, v1(0.5)) ==
        doctest::Approx(-pendulum_stage_cost(2.0, -1.0, 0.5)).epsilon(1e-12));
}

TEST_CASE("cartpole one-step explicit Euler pushing right from rest") {
  CartPoleEnv env;
  env.set_state(Vec::Zero(4));
  const StepResult r = env.step(v1(1));
  CHECK(r.obs[0] == doctest::Approx(0.0));
  CHECK(r.obs[1] == doctest::Approx(0.19512195121951220).epsilon(1e-10));
  CHECK(r.obs[2] == doctest::Approx(0.0));
  CHECK(r.obs[3] == doctest::Approx(-0.29268292682926828).epsilon(1e-10));
  CHECK(r.reward == 1.0);
  CHECK_FALSE(r.done);
}

TEST_CASE("cartpole termination matches the threshold predicate") {
  CartPoleEnv env;
  RngStream rng(17, 0);
  env.reset(rng);
  for (int i = 0; i < 2000; ++i) {
    const StepResult r = env.step(v1(rng.uniform_int(2)));
    const bool predicate = std::abs(r.obs[0]) > env.params().x_limit ||
                           std::abs(r.obs[2]) > env.params().theta_limit ||
                           env.episode_steps() >= env.spec().max_episode_steps;
    CHECK(r.done == predicate);
    if (r.done) env.reset(rng);
  }
}

TEST_CASE("cartpole reset range") {
  CartPoleEnv env;
  RngStream rng(21, 0);
  for (int i = 0; i < 50; ++i) {
    const Vec obs = env.reset(rng);
    for (int j = 0; j < 4; ++j) CHECK(std::abs(obs[j]) <= 0.05);
  }
}

TEST_CASE("step after done or before reset is a usage error") {
  CartPoleEnv env;
  CHECK_THROWS_AS(env.step(v1(0)), ContractError);
  RngStream rng(2, 0);
  env.reset(rng);
  while (!env.step(v1(0)).done) {
  }
  CHECK_THROWS_AS(env.step(v1(0)), ContractError);
}

TEST_CASE("lti deterministic reset and arithmetic step") {
  LtiParams p;
  p.A.resize(2, 2);
  p.A << 1, 0.1, 0, 1;
  p.B.resize(2, 1);
  p.B << 0.005, 0.1;
  p.Q = Mat::Identity(2, 2);
  p.R.resize(1, 1);
  p.R << 0.1;
  p.x0.resize(2);
  p.x0 << 1, 0;
  LtiEnv env(p);
  RngStream rng(0, 0);
  const Vec obs = env.reset(rng);
  CHECK(obs[0] == 1.0);
  CHECK(obs[1] == 0.0);
  const StepResult r = env.step(v1(0.0));
  CHECK(r.obs[0] == doctest::Approx(1.0));
  CHECK(r.obs[1] == doctest::Approx(0.0));
  CHECK(r.reward == doctest::Approx(-1.0));
}

TEST_CASE("lti reward identity against independent matrix products") {
  RngStream rng(31, 2);
  LtiParams p;
  p.A = testing::random_matrix(3, 3, rng);
  p.B = testing::random_matrix(3, 2, rng);
  p.Q = testing::random_spd(3, rng);
  p.R = testing::random_spd(2, rng);
  p.x0 = testing::random_vector(3, rng);
  p.horizon = 40;
  LtiEnv env(p);
  Vec x = env.reset(rng);
  for (int t = 0; t < 40; ++t) {
    const Vec u = testing::random_vector(2, rng);
    const StepResult r = env.step(u);
    double expected = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) expected += x[i] * p.Q(i, j) * x[j];
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) expected += u[i] * p.R(i, j) * u[j];
    CHECK(r.reward == doctest::Approx(-expected).epsilon(1e-12));
    x = r.obs;
  }
}

TEST_CASE("identical seeds give bit-identical trajectories") {
  PendulumEnv a({}, PendulumObsMode::trig), b({}, PendulumObsMode::trig);
  RngStream ra(77, 1), rb(77, 1);
  Vec oa = a.reset(ra), ob = b.reset(rb);
  RngStream act_a(77, 2), act_b(77, 2);
  for (int i = 0; i < 100; ++i) {
    const double u = act_a.uniform(-2, 2);
    CHECK(act_b.uniform(-2, 2) == u);
    const StepResult sa = a.step(v1(u));
    const StepResult sb = b.step(v1(u));
    REQUIRE(sa.obs == sb.obs);
    REQUIRE(sa.reward == sb.reward);
  }
}

TEST_CASE("box actions are clamped, not rejected") {
  PendulumEnv env({}, PendulumObsMode::raw);
  env.set_state(0.5, 0.0);
  const StepResult over = env.step(v1(100.0));
  env.set_state(0.5, 0.0);
  const StepResult at_max = env.step(v1(2.0));
  CHECK(over.obs == at_max.obs);
  CHECK(over.reward == at_max.reward);
}
