#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <limits>
#include <random>
#include <set>

#include "mqap/archive.hpp"
#include "mqap/error.hpp"
#include "mqap/ranking.hpp"
#include "oracles.hpp"

using namespace mqap;

namespace {

Solution point(int label, ObjectiveVector obj) {
  Solution s;
  s.perm = {label};
  s.objectives = std::move(obj);
  return s;
}

std::set<int> labels(const std::vector<Solution>& sols) {
  std::set<int> out;
  for (const auto& s : sols) out.insert(s.perm[0]);
  return out;
}

}  // namespace

TEST_CASE("dominated candidates are rejected") {
  Archive a(10);
  a.insert(point(0, {1, 1}));
  const auto st = a.insert(point(1, {2, 2}));
  CHECK(st.rejected == 1);
  CHECK(a.size() == 1);
}

TEST_CASE("dominating candidate removes its victims") {
  Archive a(10);
  a.insert(std::vector<Solution>{point(0, {2, 5}), point(1, {5, 2}), point(2, {3, 3})});
  CHECK(a.size() == 3);
  const auto st = a.insert(point(3, {1, 1}));
  CHECK(st.removed_dominated == 3);
  CHECK(labels(a.members()) == std::set<int>{3});
}

TEST_CASE("duplicate permutations are rejected") {
  Archive a(10);
  a.insert(point(0, {1, 5}));
  CHECK(a.insert(point(0, {1, 5})).rejected == 1);
  CHECK(a.size() == 1);
  // equal objectives but a different permutation are kept
  CHECK(a.insert(point(1, {1, 5})).inserted == 1);
  CHECK(a.size() == 2);
}

TEST_CASE("capacity must be positive") {
  CHECK_THROWS_AS(Archive(0), Error);
}

TEST_CASE("streaming insertion respects the invariants") {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 20; ++t) {
    std::vector<Solution> stream;
    std::vector<ObjectiveVector> pts;
    std::uniform_int_distribution<int> v(0, 1000);
    for (int k = 0; k < 200; ++k) {
      // anti-correlated points keep many of them mutually non-dominated
      const int x = v(rng);
      ObjectiveVector obj{x, 1000 - x + v(rng) / 10};
      pts.push_back(obj);
      stream.push_back(point(k, obj));
    }

    Archive bounded(50);
    std::vector<Solution> evicted;
    for (const auto& s : stream) {
      bounded.insert(s, &evicted);
      REQUIRE(bounded.invariants_hold());
    }
    REQUIRE(bounded.size() <= 50);
    for (const auto& e : evicted) REQUIRE(e.diversity < std::numeric_limits<double>::infinity());

    Archive unbounded(std::numeric_limits<std::size_t>::max());
    unbounded.insert(stream);
    std::set<int> expected;
    for (auto k : oracle::non_dominated_indices(pts)) expected.insert(static_cast<int>(k));
    REQUIRE(labels(unbounded.members()) == expected);
  }
}

TEST_CASE("eviction removes the most crowded member") {
  Archive a(3);
  a.insert(std::vector<Solution>{point(0, {0, 10}), point(1, {5, 5}), point(2, {10, 0})});
  std::vector<Solution> evicted;
  a.insert(point(3, {4, 6}), &evicted);
  REQUIRE(evicted.size() == 1);
  // (4,6) and (5,5) are neighbours; whichever has the smaller crowding distance goes
  const int victim = evicted.front().perm[0];
  CHECK((victim == 1 || victim == 3));
  CHECK(labels(a.members()).count(0) == 1);
  CHECK(labels(a.members()).count(2) == 1);
}

TEST_CASE("re-inserting members is idempotent") {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> v(0, 100);
  Archive a(30);
  for (int k = 0; k < 100; ++k) a.insert(point(k, {v(rng), v(rng)}));
  const auto before = labels(a.members());
  const auto copy = a.members();
  const auto st = a.insert(copy);
  CHECK(st.inserted == 0);
  CHECK(labels(a.members()) == before);
}

TEST_CASE("merging archives") {
  Archive a(10), b(10);
  a.insert(std::vector<Solution>{point(0, {1, 4}), point(1, {3, 3})});
  b.insert(std::vector<Solution>{point(2, {2, 2}), point(0, {1, 4})});
  const std::vector<Archive> both{a, b};
  const auto merged = archive_merge(both);
  CHECK(labels(merged) == std::set<int>{0, 2});

  const std::vector<Archive> one{a};
  CHECK(labels(archive_merge(one)) == labels(a.members()));
}
