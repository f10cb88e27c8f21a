#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>

#include "mbrl/dynamics/checkpoint.hpp"
#include "mbrl/dynamics/linear.hpp"
#include "mbrl/dynamics/mlp_dynamics.hpp"
#include "mbrl/dynamics/trainer.hpp"
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

Batch batch_from(std::vector<Transition> ts) { return Batch::from_transitions(ts); }

Transition make(std::initializer_list<double> s, std::initializer_list<double> a,
                std::initializer_list<double> s2) {
  Transition t;
  t.state = Vec(static_cast<Eigen::Index>(s.size()));
  int i = 0;
  for (double x : s) t.state[i++] = x;
  t.action = Vec(static_cast<Eigen::Index>(a.size()));
  i = 0;
  for (double x : a) t.action[i++] = x;
  t.next_state = Vec(static_cast<Eigen::Index>(s2.size()));
  i = 0;
  for (double x : s2) t.next_state[i++] = x;
  return t;
}

}  // namespace

TEST_CASE("fit_linear interpolates s' = 2s + a exactly") {
  const Batch b = batch_from({make({1}, {0}, {2}), make({0}, {1}, {1}), make({1}, {1}, {3})});
  const LinearDynamics m = fit_linear(b);
  CHECK(m.A()(0, 0) == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(m.B()(0, 0) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(std::abs(m.c()[0]) < 1e-8);
}

TEST_CASE("fit_linear recovers random generating systems from noiseless data") {
  RngStream rng(55, 0);
  for (int round = 0; round < 10; ++round) {
    const int n = 1 + rng.uniform_int(4);
    const int m = 1 + rng.uniform_int(4);
    const Mat A = testing::random_matrix(n, n, rng, 0.8);
    const Mat B = testing::random_matrix(n, m, rng, 0.8);
    const Vec c = testing::random_vector(n, rng, 0.5);
    std::vector<Transition> ts;
    for (int i = 0; i < 200; ++i) {
      Transition t;
      t.state = testing::random_vector(n, rng);
      t.action = testing::random_vector(m, rng);
      t.next_state = A * t.state + B * t.action + c;
      ts.push_back(std::move(t));
    }
    const LinearDynamics fit = fit_linear(batch_from(ts));
    CHECK((fit.A() - A).cwiseAbs().maxCoeff() < 1e-8);
    CHECK((fit.B() - B).cwiseAbs().maxCoeff() < 1e-8);
    CHECK((fit.c() - c).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("fit_linear names the deficient dimension on degenerate data") {
  std::vector<Transition> ts;
  for (int i = 0; i < 10; ++i) ts.push_back(make({1, 2}, {3}, {1, 2}));
  try {
    fit_linear(batch_from(ts));
    FAIL("expected a rank deficiency error");
  } catch (const NumericError& e) {
    CHECK(std::string(e.what()).find("rank-deficient") != std::string::npos);
  }
  // too few rows
  CHECK_THROWS_AS(fit_linear(batch_from({make({1}, {0}, {2})})), NumericError);
}

TEST_CASE("linear predict arithmetic") {
  Mat A(1, 1), B(1, 1);
  A << 2;
  B << 1;
  const LinearDynamics m(A, B, Vec::Zero(1));
  CHECK(m.predict(v1(3), v1(0.5))[0] == doctest::Approx(6.5));
  CHECK_THROWS_AS(m.predict(Vec::Zero(2), v1(0)), ContractError);
}

TEST_CASE("fit on lti rollouts reproduces the environment step") {
  RngStream rng(66, 1);
  LtiParams p;
  p.A = testing::random_matrix(2, 2, rng, 0.6);
  p.B = testing::random_matrix(2, 1, rng);
  p.Q = Mat::Identity(2, 2);
  p.R = Mat::Identity(1, 1);
  p.x0 = Vec::Ones(2);
  p.horizon = 30;
  LtiEnv env(p);
  std::vector<Transition> ts;
  Vec obs = env.reset(rng);
  for (int i = 0; i < 120; ++i) {
    const Vec u = testing::random_vector(1, rng, 2.0);
    const StepResult r = env.step(u);
    ts.push_back(Transition{obs, u, r.reward, r.obs, r.done});
    obs = r.done ? env.reset(rng) : r.obs;
  }
  const LinearDynamics fit = fit_linear(batch_from(ts));
  for (int i = 0; i < 20; ++i) {
    const Vec s = testing::random_vector(2, rng);
    const Vec u = testing::random_vector(1, rng);
    env.set_state(s);
    const Vec env_next = env.step(u).obs;
    CHECK((fit.predict(s, u) - env_next).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("mlp dynamics with zero weights is the identity") {
  RngStream rng(1, 1);
  MlpDynamics m(3, 1, {8}, Activation::tanh, rng);
  std::fill(m.net().params().begin(), m.net().params().end(), 0.0);
  const Vec s = testing::random_vector(3, rng);
  CHECK((m.predict(s, v1(0.3)) - s).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("normalization round-trips and floors tiny stds") {
  RngStream rng(2, 2);
  MlpDynamics m(2, 1, {4}, Activation::tanh, rng);
  std::vector<Transition> ts;
  for (int i = 0; i < 50; ++i) {
    Transition t;
    t.state = testing::random_vector(2, rng);
    t.action = v1(5.0);  // constant action column -> zero variance
    t.next_state = t.state + testing::random_vector(2, rng, 0.1);
    ts.push_back(std::move(t));
  }
  m.fit_normalization(batch_from(ts));
  CHECK(m.input_normalizer().std[2] == Normalizer::kStdFloor);
  const Vec x = testing::random_vector(3, rng);
  const Vec round = m.input_normalizer().denormalize(m.input_normalizer().normalize(x));
  CHECK((round - x).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("zero-delta data drives the epoch loss to zero") {
  RngStream init_rng(3, 3), data_rng(5, 5);
  MlpDynamics m(2, 1, {8}, Activation::tanh, init_rng);
  std::vector<Transition> ts;
  for (int i = 0; i < 64; ++i) {
    Transition t;
    t.state = testing::random_vector(2, data_rng);
    t.action = v1(data_rng.uniform(-1, 1));
    t.next_state = t.state;
    ts.push_back(std::move(t));
  }
  const Batch b = batch_from(ts);
  m.fit_normalization(b);
  AdamState opt(m.net().param_count());
  RngStream fit_rng(4, 4);
  double loss = 1.0;
  // decaying rate polishes the zero-target fit past Adam's dither floor
  for (int e = 0; e < 50; ++e)
    loss = m.fit_epoch(b, 1, fit_rng, opt, 0.2 * std::pow(0.86, e));
  CHECK(loss < 1e-6);
}

TEST_CASE("epoch losses trend down on pendulum data and are seed-deterministic") {
  PendulumEnv env({}, PendulumObsMode::trig);
  RngStream env_rng(10, 1), act_rng(10, 2);
  std::vector<Transition> ts;
  Vec obs = env.reset(env_rng);
  for (int i = 0; i < 5000; ++i) {
    const Vec u = v1(act_rng.uniform(-2, 2));
    const StepResult r = env.step(u);
    ts.push_back(Transition{obs, u, r.reward, r.obs, r.done});
    obs = r.done ? env.reset(env_rng) : r.obs;
  }
  const Batch b = batch_from(ts);

  auto run = [&](std::uint64_t seed) {
    RngStream init(seed, 4);
    MlpDynamics m(3, 1, {32, 32}, Activation::tanh, init);
    m.fit_normalization(b);
    AdamState opt(m.net().param_count());
    RngStream fit_rng(seed, 5);
    std::vector<double> losses;
    for (int e = 0; e < 20; ++e) losses.push_back(m.fit_epoch(b, 128, fit_rng, opt, 1e-3));
    return losses;
  };
  const auto l1 = run(77);
  const auto l2 = run(77);
  CHECK(l1 == l2);  // bit-identical loss sequences
  CHECK(l1.back() < l1.front());
}

TEST_CASE("model_rollout composes predict") {
  Mat A(1, 1), B(1, 1);
  A << 2;
  B << 0;
  const LinearDynamics m(A, B, Vec::Zero(1));
  const auto states = model_rollout(m, v1(1), {v1(0), v1(0)});
  REQUIRE(states.size() == 3);
  CHECK(states[0][0] == 1.0);
  CHECK(states[1][0] == 2.0);
  CHECK(states[2][0] == 4.0);

  CHECK(model_rollout(m, v1(5), {}).size() == 1);

  RngStream rng(8, 8);
  for (int round = 0; round < 5; ++round) {
    const int n = 1 + rng.uniform_int(3);
    const int steps = rng.uniform_int(6);
    const LinearDynamics rand_m(testing::random_matrix(n, n, rng),
                                testing::random_matrix(n, 1, rng),
                                testing::random_vector(n, rng));
    std::vector<Vec> actions;
    for (int t = 0; t < steps; ++t) actions.push_back(testing::random_vector(1, rng));
    const auto rolled = model_rollout(rand_m, testing::random_vector(n, rng), actions);
    Vec s = rolled[0];
    for (int t = 0; t < steps; ++t) {
      s = rand_m.predict(s, actions[static_cast<std::size_t>(t)]);
      CHECK((rolled[static_cast<std::size_t>(t) + 1] - s).cwiseAbs().maxCoeff() == 0.0);
    }
  }
}

TEST_CASE("checkpoints round-trip exactly for both model kinds") {
  RngStream rng(12, 0);
  const auto dir = std::filesystem::temp_directory_path();

  const LinearDynamics lin(testing::random_matrix(2, 2, rng),
                           testing::random_matrix(2, 1, rng),
                           testing::random_vector(2, rng));
  const auto lin_path = dir / "mbrl_lin_ckpt.txt";
  save_model(lin, lin_path);
  const auto lin_loaded = load_model(lin_path);
  const Vec s = testing::random_vector(2, rng);
  CHECK(lin_loaded->predict(s, v1(0.7)) == lin.predict(s, v1(0.7)));

  MlpDynamics mlp(2, 1, {8, 8}, Activation::relu, rng);
  std::vector<Transition> ts;
  for (int i = 0; i < 30; ++i) {
    Transition t;
    t.state = testing::random_vector(2, rng);
    t.action = v1(rng.uniform(-1, 1));
    t.next_state = t.state + testing::random_vector(2, rng, 0.1);
    ts.push_back(std::move(t));
  }
  mlp.fit_normalization(batch_from(ts));
  const auto mlp_path = dir / "mbrl_mlp_ckpt.txt";
  save_model(mlp, mlp_path);
  const auto mlp_loaded = load_model(mlp_path);
  CHECK(mlp_loaded->predict(s, v1(0.7)) == mlp.predict(s, v1(0.7)));

  std::filesystem::remove(lin_path);
  std::filesystem::remove(mlp_path);
}

TEST_CASE("trainers fit from a replay buffer") {
  RngStream rng(14, 0);
  const Mat A = testing::random_matrix(2, 2, rng, 0.5);
  const Mat B = testing::random_matrix(2, 1, rng);
  ReplayBuffer buf(500);
  for (int i = 0; i < 200; ++i) {
    Transition t;
    t.state = testing::random_vector(2, rng);
    t.action = testing::random_vector(1, rng);
    t.next_state = A * t.state + B * t.action;
    buf.push(std::move(t));
  }
  LinearModelTrainer lt(2, 1);
  CHECK_FALSE(lt.has_fit());
  RngStream fit_rng(14, 1);
  const double resid = lt.fit(buf, fit_rng);
  CHECK(lt.has_fit());
  CHECK(resid < 1e-12);

  RngStream init(14, 2);
  MlpModelTrainer mt(2, 1, {16}, Activation::tanh, 5, 32, 1e-3, init);
  const double l1 = mt.fit(buf, fit_rng);
  const double l2 = mt.fit(buf, fit_rng);
  CHECK(l2 < l1);
}
