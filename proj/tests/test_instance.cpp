#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "mqap/error.hpp"
#include "mqap/instance.hpp"
#include "oracles.hpp"

using namespace mqap;

namespace {

ErrorCode parse_error(std::string_view text) {
  try {
    (void)parse_instance(text);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected a parse error");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("parse minimal instance") {
  const auto inst = parse_instance("2\n0 1\n1 0\n0 3\n2 0");
  REQUIRE(inst.n() == 2);
  REQUIRE(inst.m() == 1);
  CHECK(inst.distances() == Matrix(2, {0, 1, 1, 0}));
  CHECK(inst.flow(0) == Matrix(2, {0, 3, 2, 0}));
}

TEST_CASE("comment lines are skipped and m is inferred") {
  const auto inst = parse_instance("! comment\n2\n0 1\n1 0\n0 3\n2 0\n0 5\n4 0");
  CHECK(inst.n() == 2);
  CHECK(inst.m() == 2);
  CHECK(inst.flow(1) == Matrix(2, {0, 5, 4, 0}));

  const auto noisy = parse_instance("Gar-like header\n   # another\n\n2\n0 1 1 0\n0 3 2 0\n");
  CHECK(noisy.m() == 1);
}

TEST_CASE("parse errors") {
  CHECK(parse_error("2\n0 1\n1 0\n0 3 2") == ErrorCode::TokenCountMismatch);
  CHECK(parse_error("2\n0 1\n1 0\n") == ErrorCode::TokenCountMismatch);
  CHECK(parse_error("") == ErrorCode::EmptyInput);
  CHECK(parse_error("! only a comment\n") == ErrorCode::EmptyInput);
  CHECK(parse_error("2\n0 -1\n1 0\n0 3\n2 0") == ErrorCode::NegativeEntry);
  CHECK(parse_error("2\n0 x\n1 0\n0 3\n2 0") == ErrorCode::InvalidToken);
}

TEST_CASE("overflow guard at construction") {
  const std::int64_t huge = std::int64_t{1} << 40;
  CHECK_THROWS_AS(Instance(Matrix(2, {0, huge, huge, 0}), {Matrix(2, {0, huge, huge, 0})}), Error);
  CHECK_NOTHROW(Instance(Matrix(100, 10000), {Matrix(100, 10000)}));
}

TEST_CASE("metadata is emitted as leading comment lines") {
  Instance inst(Matrix(2, {0, 1, 1, 0}), {Matrix(2, {0, 3, 2, 0})}, "", {{"type", "uniform"}});
  const auto text = write_instance(inst);
  CHECK(text.rfind("! type=uniform\n", 0) == 0);
  const auto back = parse_instance(text);
  CHECK(back.metadata().at("type") == "uniform");
}

TEST_CASE("write/parse round trip over random generator specs") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 25; ++trial) {
    InstanceSpec spec;
    spec.n = 5 + rng() % 12;
    spec.m = 1 + rng() % 4;
    spec.correlation = std::uniform_real_distribution<double>(-1, 1)(rng);
    spec.seed = rng();
    const auto inst = generate_uniform(spec);
    const auto back = parse_instance(write_instance(inst));
    REQUIRE(back.same_problem(inst));
    CHECK(back.name() == inst.name());
    CHECK(back.metadata() == inst.metadata());
  }
  const auto fixed = generate_uniform({10, 3, 0.0, 1, 100});
  CHECK(parse_instance(write_instance(fixed)).same_problem(fixed));
}

TEST_CASE("generator is deterministic and has zero diagonals") {
  const InstanceSpec spec{12, 3, 0.4, 99, 100};
  const auto a = generate_uniform(spec);
  const auto b = generate_uniform(spec);
  CHECK(a.same_problem(b));
  auto other = spec;
  other.seed = 100;
  CHECK_FALSE(generate_uniform(other).same_problem(a));
  for (std::size_t i = 0; i < a.n(); ++i) {
    CHECK(a.distances()(i, i) == 0);
    for (const auto& f : a.flows()) CHECK(f(i, i) == 0);
  }
}

TEST_CASE("generator correlation examples") {
  const auto zero = generate_uniform({10, 2, 0.0, 7, 100});
  const auto rho = off_diagonal_correlation(zero.flow(0), zero.flow(1));
  CHECK(rho >= -0.15);
  CHECK(rho <= 0.15);

  const auto one = generate_uniform({10, 2, 1.0, 7, 100});
  CHECK(one.flow(0) == one.flow(1));

  try {
    (void)generate_uniform({2, 2, 0.5, 1, 100});
    FAIL("expected InfeasibleCorrelation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InfeasibleCorrelation);
  }
}

TEST_CASE("generator correlation calibration, n >= 20, 20 seeds") {
  for (double target : {-0.8, -0.5, -0.3, 0.0, 0.3, 0.5, 0.8}) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const auto inst = generate_uniform({20, 2, target, seed, 100});
      const auto rho = off_diagonal_correlation(inst.flow(0), inst.flow(1));
      INFO("target " << target << " seed " << seed << " rho " << rho);
      CHECK(std::abs(rho - target) <= 0.15);
    }
  }
}
