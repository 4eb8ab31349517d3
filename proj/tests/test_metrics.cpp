#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <random>

#include "mqap/error.hpp"
#include "mqap/metrics.hpp"
#include "oracles.hpp"

using namespace mqap;
using Catch::Approx;

namespace {

Front random_front(std::mt19937_64& rng, std::size_t count, std::size_t d) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Front f(count, Point(d));
  for (auto& p : f) {
    for (auto& v : p) v = u(rng);
  }
  return f;
}

// Area dominated in two dimensions by sorting and sweeping.
double sweep_2d(Front f, const Point& ref) {
  std::erase_if(f, [&](const Point& p) { return p[0] >= ref[0] || p[1] >= ref[1]; });
  std::sort(f.begin(), f.end());
  double area = 0, best_y = ref[1];
  for (const auto& p : f) {
    if (p[1] < best_y) {
      area += (ref[0] - p[0]) * (best_y - p[1]);
      best_y = p[1];
    }
  }
  return area;
}

}  // namespace

TEST_CASE("normalisation over union bounds") {
  const std::vector<Front> fronts{{{0, 10}, {5, 0}}, {{10, 5}}};
  const auto norm = normalize_fronts(fronts);
  CHECK(norm.bounds.lower == Point{0, 0});
  CHECK(norm.bounds.upper == Point{10, 10});
  CHECK(norm.fronts[0] == Front{{0.0, 1.0}, {0.5, 0.0}});
  CHECK(norm.fronts[1] == Front{{1.0, 0.5}});

  const std::vector<Front> flat{{{3, 1}, {3, 2}}};
  CHECK(normalize_fronts(flat).fronts[0] == Front{{0.0, 0.0}, {0.0, 1.0}});

  const std::vector<Front> empty{{}, {}};
  try {
    (void)normalize_fronts(empty);
    FAIL("expected EmptyUnion");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptyUnion);
  }
}

TEST_CASE("reference point") {
  const auto ref = reference_point(Front{{0.0, 1.0}, {0.5, 0.2}});
  CHECK(ref[0] == Approx(0.51));
  CHECK(ref[1] == Approx(1.01));
}

TEST_CASE("hypervolume hand cases") {
  CHECK(hypervolume({{0.5, 0.5}}, {1, 1}) == Approx(0.25));
  CHECK(hypervolume({{0.25, 0.75}, {0.75, 0.25}}, {1, 1}) == Approx(0.3125));
  CHECK(hypervolume({{0.5, 0.5, 0.5}}, {1, 1, 1}) == Approx(0.125));
  CHECK(hypervolume({}, {1, 1}) == 0.0);
  CHECK(hypervolume({{1.0, 0.2}}, {1, 1}) == 0.0);
  // dominated and duplicate points add nothing
  CHECK(hypervolume({{0.5, 0.5}, {0.6, 0.6}, {0.5, 0.5}}, {1, 1}) == Approx(0.25));
}

TEST_CASE("hypervolume agrees with a 2-D sweep") {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 200; ++t) {
    const auto f = random_front(rng, 1 + rng() % 30, 2);
    CHECK(hypervolume(f, {1, 1}) == Approx(sweep_2d(f, {1, 1})).epsilon(1e-12));
  }
}

TEST_CASE("hypervolume agrees with Monte Carlo in 3 and 4 dimensions") {
  std::mt19937_64 rng(2);
  constexpr std::size_t samples = 200000;
  for (int t = 0; t < 50; ++t) {
    const std::size_t d = 3 + t % 2;
    const auto f = random_front(rng, 2 + rng() % 15, d);
    const Point ref(d, 1.01);
    const double exact = hypervolume(f, ref);
    const double estimate = oracle::monte_carlo_hypervolume(f, ref, samples, 100 + t);
    // the estimate's standard error is bounded by half the box volume over sqrt(samples)
    const double box = std::pow(1.01, static_cast<double>(d));
    CHECK(std::abs(exact - estimate) <= 4 * 0.5 * box / std::sqrt(static_cast<double>(samples)));
  }
}

TEST_CASE("hypervolume invariances") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 100; ++t) {
    const std::size_t d = 2 + t % 3;
    auto f = random_front(rng, 10, d);
    const Point ref(d, 1.01);
    const double base = hypervolume(f, ref);
    auto shuffled = f;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    CHECK(hypervolume(shuffled, ref) == Approx(base).epsilon(1e-12));
    auto more = f;
    more.push_back(random_front(rng, 1, d)[0]);
    CHECK(hypervolume(more, ref) >= base - 1e-12);
    CHECK(hypervolume(f, Point(d, 1.5)) >= base);
  }
}

TEST_CASE("rank-sum exact cases") {
  const std::vector<double> low{1, 2, 3}, high{10, 11, 12};
  const auto r = wilcoxon_rank_sum(low, high);
  CHECK(r.exact);
  CHECK(r.rank_sum == 6.0);
  CHECK(r.p_value == Approx(0.1));
  CHECK(wilcoxon_rank_sum(low, high, Alternative::Less).p_value == Approx(0.05));
  CHECK(wilcoxon_rank_sum(low, high, Alternative::Greater).p_value == Approx(1.0));

  const std::vector<double> a{1, 2, 3, 4}, b{1, 2, 3, 4};
  CHECK(wilcoxon_rank_sum(a, b).p_value == Approx(1.0));
}

TEST_CASE("rank-sum errors") {
  const std::vector<double> two{1, 2}, three{1, 2, 3}, same{5, 5, 5};
  CHECK_THROWS_AS(wilcoxon_rank_sum(two, three), Error);
  try {
    (void)wilcoxon_rank_sum(same, same);
    FAIL("expected DegenerateSample");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateSample);
  }
}

TEST_CASE("rank-sum exact p-values match full enumeration") {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> v(0, 6);  // small range forces ties
  for (int t = 0; t < 200; ++t) {
    std::vector<double> a(3 + rng() % 5), b(3 + rng() % 5);
    for (auto& x : a) x = v(rng);
    for (auto& x : b) x = v(rng);
    if (std::all_of(a.begin(), a.end(), [&](double x) { return x == a[0]; }) &&
        std::all_of(b.begin(), b.end(), [&](double x) { return x == a[0]; })) {
      continue;
    }
    const auto r = wilcoxon_rank_sum(a, b);
    REQUIRE(r.exact);
    REQUIRE(r.p_value == Approx(oracle::enumerate_rank_sum_p(a, b)).margin(1e-9));
    // swapping the samples leaves the two-sided p-value unchanged
    REQUIRE(wilcoxon_rank_sum(b, a).p_value == Approx(r.p_value).margin(1e-9));
  }
}

TEST_CASE("rank-sum normal approximation") {
  std::vector<double> a, b;
  for (int k = 1; k <= 15; ++k) a.push_back(k);
  for (int k = 16; k <= 30; ++k) b.push_back(k);
  const auto r = wilcoxon_rank_sum(a, b);
  CHECK_FALSE(r.exact);
  CHECK(r.rank_sum == 120.0);
  // (120 - 232.5 + 0.5) / sqrt(15 * 15 * 31 / 12)
  CHECK(r.z == Approx(-4.64546).epsilon(1e-4));
  CHECK(r.p_value < 1e-5);
  CHECK(wilcoxon_rank_sum(b, a).p_value == Approx(r.p_value));
  CHECK(wilcoxon_rank_sum(b, a).z == Approx(-r.z));
  CHECK(wilcoxon_rank_sum(a, b, Alternative::Less).p_value < r.p_value);

  std::mt19937_64 rng(5);
  std::normal_distribution<double> noise;
  for (int t = 0; t < 50; ++t) {
    std::vector<double> x(30), y(30);
    for (auto& v : x) v = noise(rng);
    for (auto& v : y) v = noise(rng);
    const auto two = wilcoxon_rank_sum(x, y).p_value;
    const auto less = wilcoxon_rank_sum(x, y, Alternative::Less).p_value;
    const auto greater = wilcoxon_rank_sum(x, y, Alternative::Greater).p_value;
    REQUIRE(two >= 0.0);
    REQUIRE(two <= 1.0);
    REQUIRE(two == Approx(std::min(1.0, 2 * std::min(less, greater))).margin(1e-9));
  }
}
