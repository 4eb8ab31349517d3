#ifndef MQAP_RANKING_HPP
#define MQAP_RANKING_HPP

#include <compare>
#include <cstddef>
#include <span>
#include <vector>

#include "mqap/evaluation.hpp"

namespace mqap {

enum class Dominance { Dominates, DominatedBy, Incomparable, Equal };

/// Pareto relation of a to b under minimisation.
Dominance compare_dominance(std::span<const std::int64_t> a, std::span<const std::int64_t> b);

/// a <= b componentwise and a != b.
bool dominates(std::span<const std::int64_t> a, std::span<const std::int64_t> b);

struct RankedPopulation {
  std::vector<Solution> members;
  /// fronts[k] holds indices into members with rank k.
  std::vector<std::vector<std::size_t>> fronts;
};

/// Dominance-depth ranking via domination counts: every member gets the
/// index of the non-dominated front it belongs to.
RankedPopulation dominance_depth_assign(std::vector<Solution> population);

/// Front-by-front crowding: per front and objective, boundary members get
/// +inf and interior members add (next - prev) / (max - min). A front whose
/// objective range is zero contributes 0 for that objective.
void crowding_assign(RankedPopulation& ranked);

/// Convenience: ranking followed by crowding.
RankedPopulation rank_and_crowd(std::vector<Solution> population);

/// less: a is better (lower rank, or equal rank and larger diversity).
/// Throws MissingRank if either side has not been ranked.
std::weak_ordering compare_fitness_then_diversity(const Solution& a, const Solution& b);

bool fitness_then_diversity_better(const Solution& a, const Solution& b);

/// Union of current and immigrants, re-ranked and crowded, stably sorted by
/// FitnessThenDiversity and truncated to capacity. Current members precede
/// immigrants on exact ties.
std::vector<Solution> elitist_integration(std::vector<Solution> current, std::span<const Solution> immigrants,
                                          std::size_t capacity);

}  // namespace mqap

#endif  // MQAP_RANKING_HPP
