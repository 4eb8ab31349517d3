#include <catch2/catch_amalgamated.hpp>

#include <atomic>
#include <chrono>
#include <random>
#include <set>
#include <thread>

#include "mqap/error.hpp"
#include "mqap/island.hpp"
#include "mqap/ranking.hpp"
#include "oracles.hpp"

using namespace mqap;

namespace {

Instance small_instance(std::uint64_t seed = 1, std::size_t n = 8, std::size_t m = 2) {
  std::mt19937_64 rng(seed);
  return oracle::random_instance(n, m, rng);
}

IslandConfig quick_config(std::size_t generations, std::uint64_t seed = 7) {
  IslandConfig c;
  c.population_size = 10;
  c.max_generations = generations;
  c.seed = seed;
  c.local_search.time_budget = std::chrono::milliseconds(50);
  return c;
}

ClockFactory logical() {
  return [] { return std::make_unique<LogicalClock>(std::chrono::microseconds(1)); };
}

void check_archive(const Archive& archive, const Instance& inst) {
  REQUIRE(archive.invariants_hold());
  for (const auto& s : archive.members()) {
    REQUIRE(is_permutation_of_range(s.perm));
    REQUIRE(s.objectives == oracle::naive_costs(inst, s.perm));
  }
}

}  // namespace

TEST_CASE("complete topology") {
  const auto five = build_topology(TopologyKind::Complete, 5);
  CHECK(five.edge_count() == 20);
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(five.edges[i].size() == 4);
    CHECK(std::find(five.edges[i].begin(), five.edges[i].end(), i) == five.edges[i].end());
  }
  CHECK(build_topology(TopologyKind::Complete, 1).edge_count() == 0);
  const auto eleven = build_topology(TopologyKind::Complete, 11);
  for (const auto& out : eleven.edges) CHECK(out.size() == 10);
  CHECK_THROWS_AS(build_topology(TopologyKind::Complete, 0), Error);
}

TEST_CASE("population sizing") {
  CHECK(default_population_size(1) == 100);
  CHECK(default_population_size(3) == 34);
  CHECK(default_population_size(11) == 10);
  CHECK(default_population_size(15) == 7);
  CHECK(default_population_size(16) == 13);
  CHECK(default_population_size(32) == 13);
}

TEST_CASE("config validation") {
  auto c = quick_config(1);
  c.population_size = 1;
  CHECK_THROWS_AS(c.validate(), Error);
  c = quick_config(1);
  c.epoch = 0;
  CHECK_THROWS_AS(c.validate(), Error);
  c = quick_config(1);
  c.migrants = 0;
  CHECK_THROWS_AS(c.validate(), Error);
  c = quick_config(1);
  c.archive_capacity = 1;
  c.migrants = 2;
  CHECK_THROWS_AS(c.validate(), Error);
}

TEST_CASE("check_migrants") {
  Channel ch;
  std::size_t batches = 99;
  CHECK(check_migrants(ch, &batches).empty());
  CHECK(batches == 0);

  Solution s;
  s.perm = {0, 1};
  s.objectives = {3, 4};
  ch.send({0, 5, {s}});
  ch.send({1, 5, {s, s}});
  CHECK(check_migrants(ch, &batches).size() == 3);
  CHECK(batches == 2);
  CHECK(check_migrants(ch).empty());
  CHECK(ch.batches_delivered() == 2);

  ch.close();
  CHECK_FALSE(ch.send({0, 6, {s}}));
  CHECK(ch.pending() == 0);
}

TEST_CASE("channel under concurrent producers") {
  Channel ch;
  constexpr int producers = 8;
  constexpr int per_producer = 500;
  std::atomic<std::size_t> received{0};
  std::atomic<bool> done{false};
  std::thread consumer([&] {
    while (!done.load()) received += check_migrants(ch).size();
  });
  {
    std::vector<std::jthread> threads;
    for (int p = 0; p < producers; ++p) {
      threads.emplace_back([&, p] {
        Solution s;
        s.perm = {p};
        for (int k = 0; k < per_producer; ++k) ch.send({static_cast<std::size_t>(p), 0, {s}});
      });
    }
  }
  done = true;
  consumer.join();
  received += check_migrants(ch).size();
  CHECK(received == producers * per_producer);
}

TEST_CASE("zero generations returns the initial archive") {
  const auto inst = small_instance();
  const auto cfg = quick_config(0);
  LogicalClock clock;
  const auto r = run_island(cfg, inst, {std::make_shared<Channel>(), {}}, clock);
  CHECK(r.stats.generations == 0);
  CHECK(r.stats.send_events == 0);
  CHECK_FALSE(r.archive.empty());
  check_archive(r.archive, inst);
}

TEST_CASE("send events and migrant copies") {
  const auto inst = small_instance(2);
  for (std::size_t g : {1u, 4u, 5u, 12u, 20u}) {
    auto cfg = quick_config(g);
    auto outbox = std::make_shared<Channel>();
    LogicalClock clock;
    const auto r = run_island(cfg, inst, {std::make_shared<Channel>(), {outbox}}, clock);
    CHECK(r.stats.generations == g);
    CHECK(r.stats.send_events == g / cfg.epoch);
    std::size_t batches = 0;
    auto migrants = check_migrants(*outbox, &batches);
    CHECK(batches == g / cfg.epoch);
    CHECK(migrants.size() == cfg.migrants * (g / cfg.epoch));
    CHECK(r.stats.migrants_sent == migrants.size());
    for (auto& s : migrants) {
      REQUIRE(s.objectives == oracle::naive_costs(inst, s.perm));
      s.perm.assign(s.perm.size(), 0);  // mutating the copy leaves the sender alone
    }
    check_archive(r.archive, inst);
  }
}

TEST_CASE("two islands exchange batches") {
  const auto inst = small_instance(3);
  std::vector<IslandConfig> cfgs;
  for (std::size_t i = 0; i < 2; ++i) {
    auto c = quick_config(30, 100 + i);
    c.island_id = i;
    c.epoch = 1;
    c.migrants = 1;
    c.on_generation = [](std::size_t) { std::this_thread::sleep_for(std::chrono::microseconds(200)); };
    cfgs.push_back(c);
  }
  const auto results = run_island_model(inst, cfgs, build_topology(TopologyKind::Complete, 2));
  REQUIRE(results.size() == 2);
  std::size_t received = 0;
  for (const auto& r : results) {
    CHECK(r.stats.send_events == 30);
    CHECK(r.stats.migrants_sent == 30);
    received += r.stats.batches_received;
    check_archive(r.archive, inst);
  }
  CHECK(received > 0);
}

TEST_CASE("population and archive bounds") {
  const auto inst = small_instance(4, 10, 3);
  auto cfg = quick_config(15);
  cfg.archive_capacity = 5;
  cfg.migrants = 2;
  LogicalClock clock;
  const auto r = run_island(cfg, inst, {std::make_shared<Channel>(), {}}, clock);
  CHECK(r.archive.size() <= 5);
  check_archive(r.archive, inst);
}

TEST_CASE("single island runs are reproducible") {
  const auto inst = small_instance(5);
  for (auto algorithm : {Algorithm::Memetic, Algorithm::Nsga2Baseline}) {
    auto cfg = quick_config(25, 99);
    cfg.algorithm = algorithm;
    const std::vector<IslandConfig> cfgs{cfg};
    const auto a = run_island_model(inst, cfgs, build_topology(TopologyKind::Complete, 1), logical());
    const auto b = run_island_model(inst, cfgs, build_topology(TopologyKind::Complete, 1), logical());
    REQUIRE(a[0].archive.size() == b[0].archive.size());
    for (std::size_t k = 0; k < a[0].archive.size(); ++k) {
      CHECK(a[0].archive.members()[k].perm == b[0].archive.members()[k].perm);
    }
    check_archive(a[0].archive, inst);
  }
}

TEST_CASE("NSGA-II baseline keeps a valid archive") {
  const auto inst = small_instance(6, 12, 2);
  auto cfg = quick_config(40);
  cfg.algorithm = Algorithm::Nsga2Baseline;
  LogicalClock clock;
  const auto r = run_island(cfg, inst, {std::make_shared<Channel>(), {}}, clock);
  CHECK(r.stats.generations == 40);
  check_archive(r.archive, inst);
}

TEST_CASE("concurrency cap does not deadlock") {
  const auto inst = small_instance(7);
  std::vector<IslandConfig> cfgs;
  for (std::size_t i = 0; i < 4; ++i) {
    auto c = quick_config(10, i + 1);
    c.island_id = i;
    cfgs.push_back(c);
  }
  for (std::size_t cap : {1u, 2u}) {
    const auto results = run_island_model(inst, cfgs, build_topology(TopologyKind::Complete, 4), {}, cap);
    REQUIRE(results.size() == 4);
    for (const auto& r : results) CHECK(r.stats.generations == 10);
  }
}

TEST_CASE("time budget stops an island") {
  const auto inst = small_instance(8);
  auto cfg = quick_config(1000000);
  cfg.time_budget = std::chrono::milliseconds(30);
  LogicalClock clock(std::chrono::milliseconds(1));
  const auto r = run_island(cfg, inst, {std::make_shared<Channel>(), {}}, clock);
  CHECK(r.stats.generations < 1000000);
  check_archive(r.archive, inst);
}
