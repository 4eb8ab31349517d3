#ifndef MQAP_GENETICS_HPP
#define MQAP_GENETICS_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <utility>

#include "mqap/evaluation.hpp"

namespace mqap {

using Rng = std::mt19937_64;

struct VariationParams {
  double crossover_probability = 0.9;
  double mutation_probability = 0.01;
};

/// Cycle crossover. Cycles are discovered from the lowest unassigned
/// position upwards; the first cycle is copied p1 -> child1, p2 -> child2 and
/// the source alternates for every following cycle.
std::pair<Permutation, Permutation> cycle_crossover(std::span<const int> p1, std::span<const int> p2);

/// With probability `probability`, exchanges two distinct uniformly chosen
/// positions. Otherwise the input is returned unchanged.
Permutation swap_mutation(Permutation perm, double probability, Rng& rng);

/// Returns true when `a` should be preferred over `b`.
using BetterThan = std::function<bool(const Solution& a, const Solution& b)>;

inline constexpr std::size_t kDefaultTournamentSize = 2;

/// Deterministic tournament: k entrants drawn uniformly with replacement, the
/// best under `better` wins (earliest drawn on ties).
const Solution& tournament_select(std::span<const Solution> pool, std::size_t k, const BetterThan& better, Rng& rng);

}  // namespace mqap

#endif  // MQAP_GENETICS_HPP
