#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <deque>

#include "mbrl/core/replay_buffer.hpp"
#include "mbrl/core/space.hpp"

using namespace mbrl;

namespace {

Vec v1(double a) {
  Vec v(1);
  v[0] = a;
  return v;
}

Transition make_t(double tag) {
  Transition t;
  t.state = v1(tag);
  t.action = v1(0.0);
  t.reward = tag;
  t.next_state = v1(tag + 1);
  t.done = false;
  return t;
}

}  // namespace

TEST_CASE("rng streams are deterministic and separated") {
  RngStream a = RngStream::fork(42, 0);
  RngStream b = RngStream::fork(42, 0);
  bool all_equal = true;
  for (int i = 0; i < 10; ++i) all_equal &= a.next_u64() == b.next_u64();
  CHECK(all_equal);

  RngStream c = RngStream::fork(42, 0);
  RngStream d = RngStream::fork(42, 1);
  bool any_diff = false;
  for (int i = 0; i < 10; ++i) any_diff |= c.next_u64() != d.next_u64();
  CHECK(any_diff);

  RngStream e = RngStream::fork(42, 0);
  RngStream f = RngStream::fork(43, 0);
  any_diff = false;
  for (int i = 0; i < 10; ++i) any_diff |= e.next_u64() != f.next_u64();
  CHECK(any_diff);
}

TEST_CASE("rng uniform and uniform_int ranges") {
  RngStream rng(7, 3);
  for (int i = 0; i < 1000; ++i) {
    const double u = rng.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    const int d = rng.uniform_int(5);
    CHECK(d >= 0);
    CHECK(d < 5);
  }
  CHECK_THROWS_AS(rng.uniform_int(0), ContractError);
}

TEST_CASE("box containment and boundaries") {
  const Space box = Space::box(v1(-1), v1(1));
  CHECK(box.contains(v1(0.0)));
  CHECK(box.contains(v1(1.0)));   // inclusive boundary
  CHECK(box.contains(v1(-1.0)));
  CHECK_FALSE(box.contains(v1(1.0000001)));
  Vec wrong(2);
  wrong << 0, 0;
  CHECK_THROWS_AS(box.contains(wrong), ContractError);
}

TEST_CASE("discrete containment off-by-one") {
  const Space d = Space::discrete(3);
  CHECK(d.contains(0));
  CHECK(d.contains(2));
  CHECK_FALSE(d.contains(3));
  CHECK_FALSE(d.contains(-1));
  CHECK(d.contains(v1(2.0)));
  CHECK_FALSE(d.contains(v1(2.5)));  // not an index
}

TEST_CASE("space_sample always lands inside the space") {
  RngStream rng(11, 0);
  Vec lo(3), hi(3);
  lo << -2, 0, 5;
  hi << -1, 0, 9;  // includes a degenerate dimension
  const Space box = Space::box(lo, hi);
  for (int i = 0; i < 10000; ++i) CHECK(box.contains(box.sample(rng)));
  const Space disc = Space::discrete(4);
  for (int i = 0; i < 10000; ++i) CHECK(disc.contains(disc.sample(rng)));
}

TEST_CASE("degenerate spaces sample their only point") {
  RngStream rng(1, 1);
  const Space single = Space::discrete(1);
  for (int i = 0; i < 20; ++i) CHECK(single.sample(rng)[0] == 0.0);
  const Space point = Space::box(v1(2), v1(2));
  for (int i = 0; i < 20; ++i) CHECK(point.sample(rng)[0] == 2.0);
}

TEST_CASE("discrete sampling is uniform") {
  RngStream rng(123, 5);
  const Space d = Space::discrete(4);
  int counts[4] = {0, 0, 0, 0};
  const int n = 100000;
  for (int i = 0; i < n; ++i) counts[static_cast<int>(d.sample(rng)[0])]++;
  for (int c : counts) {
    const double f = static_cast<double>(c) / n;
    CHECK(f > 0.24);
    CHECK(f < 0.26);
  }
}

TEST_CASE("replay buffer FIFO eviction") {
  ReplayBuffer buf(2);
  buf.push(make_t(1));
  buf.push(make_t(2));
  buf.push(make_t(3));
  CHECK(buf.size() == 2);
  CHECK(buf.get(0).reward == 2.0);
  CHECK(buf.get(1).reward == 3.0);
}

TEST_CASE("replay buffer basics") {
  ReplayBuffer buf(5);
  buf.push(make_t(1));
  CHECK(buf.size() == 1);
  CHECK_THROWS_AS(ReplayBuffer(0), ConfigError);

  ReplayBuffer three(3);
  three.push(make_t(1));
  three.push(make_t(2));
  three.push(make_t(3));
  const Batch all = three.all();
  CHECK(all.size() == 3);
  CHECK(all.rewards[0] == 1.0);
  CHECK(all.rewards[2] == 3.0);
}

TEST_CASE("buffer matches a list model over random operation sequences") {
  RngStream rng(404, 0);
  for (int round = 0; round < 5; ++round) {
    const int capacity = 1 + rng.uniform_int(16);
    ReplayBuffer buf(capacity);
    std::deque<double> model;
    for (int op = 0; op < 1200; ++op) {
      const double tag = rng.uniform();
      buf.push(make_t(tag));
      model.push_back(tag);
      if (static_cast<int>(model.size()) > capacity) model.pop_front();
      REQUIRE(buf.size() == static_cast<int>(model.size()));
      if (op % 37 == 0)
        for (std::size_t i = 0; i < model.size(); ++i)
          REQUIRE(buf.get(static_cast<int>(i)).reward == model[i]);
    }
    for (std::size_t i = 0; i < model.size(); ++i)
      REQUIRE(buf.get(static_cast<int>(i)).reward == model[i]);
  }
}

TEST_CASE("buffer sampling: single element, determinism, uniformity") {
  ReplayBuffer buf(4);
  buf.push(make_t(7));
  RngStream rng(5, 0);
  const Batch b = buf.sample(3, rng);
  CHECK(b.size() == 3);
  for (int i = 0; i < 3; ++i) CHECK(b.rewards[i] == 7.0);

  buf.push(make_t(9));
  RngStream r1(6, 2), r2(6, 2);
  const Batch b1 = buf.sample(10, r1);
  const Batch b2 = buf.sample(10, r2);
  for (int i = 0; i < 10; ++i) CHECK(b1.rewards[i] == b2.rewards[i]);

  RngStream r3(8, 0);
  int c7 = 0;
  const int n = 10000;
  const Batch big = buf.sample(n, r3);
  for (int i = 0; i < n; ++i)
    if (big.rewards[i] == 7.0) ++c7;
  const double f = static_cast<double>(c7) / n;
  CHECK(f > 0.48);
  CHECK(f < 0.52);

  ReplayBuffer empty(3);
  RngStream r4(0, 0);
  CHECK_THROWS_AS(empty.sample(1, r4), ContractError);
}
