#include "mqap/ranking.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "mqap/error.hpp"

namespace mqap {

Dominance compare_dominance(std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
  if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "objective vectors differ in length");
  bool a_better = false;
  bool b_better = false;
  for (std::size_t r = 0; r < a.size(); ++r) {
    if (a[r] < b[r]) a_better = true;
    else if (b[r] < a[r]) b_better = true;
  }
  if (a_better && !b_better) return Dominance::Dominates;
  if (b_better && !a_better) return Dominance::DominatedBy;
  if (a_better) return Dominance::Incomparable;
  return Dominance::Equal;
}

bool dominates(std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
  return compare_dominance(a, b) == Dominance::Dominates;
}

RankedPopulation dominance_depth_assign(std::vector<Solution> population) {
  RankedPopulation ranked;
  ranked.members = std::move(population);
  auto& pop = ranked.members;
  const auto size = pop.size();
  if (size == 0) return ranked;

  // dominated_by_count[p] = C_p, dominated_set[p] = S_p
  std::vector<std::size_t> dominated_by_count(size, 0);
  std::vector<std::vector<std::size_t>> dominated_set(size);
  for (std::size_t p = 0; p < size; ++p) {
    for (std::size_t q = p + 1; q < size; ++q) {
      switch (compare_dominance(pop[p].objectives, pop[q].objectives)) {
        case Dominance::Dominates:
          dominated_set[p].push_back(q);
          ++dominated_by_count[q];
          break;
        case Dominance::DominatedBy:
          dominated_set[q].push_back(p);
          ++dominated_by_count[p];
          break;
        default:
          break;
      }
    }
  }

  std::vector<std::size_t> current;
  for (std::size_t p = 0; p < size; ++p) {
    if (dominated_by_count[p] == 0) current.push_back(p);
  }
  int rank = 0;
  while (!current.empty()) {
    std::vector<std::size_t> next;
    for (auto p : current) {
      pop[p].rank = rank;
      for (auto q : dominated_set[p]) {
        if (--dominated_by_count[q] == 0) next.push_back(q);
      }
    }
    std::sort(next.begin(), next.end());
    ranked.fronts.push_back(std::move(current));
    current = std::move(next);
    ++rank;
  }
  return ranked;
}

void crowding_assign(RankedPopulation& ranked) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  auto& pop = ranked.members;
  for (const auto& front : ranked.fronts) {
    for (auto idx : front) pop[idx].diversity = 0.0;
    if (front.empty()) continue;
    if (front.size() <= 2) {
      for (auto idx : front) pop[idx].diversity = inf;
      continue;
    }
    const auto m = pop[front.front()].objectives.size();
    std::vector<std::size_t> order(front);
    for (std::size_t r = 0; r < m; ++r) {
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) { return pop[a].objectives[r] < pop[b].objectives[r]; });
      const auto lo = static_cast<double>(pop[order.front()].objectives[r]);
      const auto hi = static_cast<double>(pop[order.back()].objectives[r]);
      pop[order.front()].diversity = inf;
      pop[order.back()].diversity = inf;
      const double range = hi - lo;
      if (range <= 0.0) continue;
      for (std::size_t k = 1; k + 1 < order.size(); ++k) {
        auto& member = pop[order[k]];
        if (member.diversity == inf) continue;
        const auto gap = static_cast<double>(pop[order[k + 1]].objectives[r] - pop[order[k - 1]].objectives[r]);
        member.diversity += gap / range;
      }
    }
  }
}

RankedPopulation rank_and_crowd(std::vector<Solution> population) {
  auto ranked = dominance_depth_assign(std::move(population));
  crowding_assign(ranked);
  return ranked;
}

std::weak_ordering compare_fitness_then_diversity(const Solution& a, const Solution& b) {
  if (a.rank == kNoRank || b.rank == kNoRank) {
    throw Error(ErrorCode::MissingRank, "FitnessThenDiversity needs ranked solutions");
  }
  if (a.rank != b.rank) return a.rank < b.rank ? std::weak_ordering::less : std::weak_ordering::greater;
  if (a.diversity > b.diversity) return std::weak_ordering::less;
  if (a.diversity < b.diversity) return std::weak_ordering::greater;
  return std::weak_ordering::equivalent;
}

bool fitness_then_diversity_better(const Solution& a, const Solution& b) {
  return compare_fitness_then_diversity(a, b) == std::weak_ordering::less;
}

std::vector<Solution> elitist_integration(std::vector<Solution> current, std::span<const Solution> immigrants,
                                          std::size_t capacity) {
  if (capacity == 0) throw Error(ErrorCode::InvalidArgument, "integration capacity must be >= 1");
  current.insert(current.end(), immigrants.begin(), immigrants.end());
  auto ranked = rank_and_crowd(std::move(current));
  auto& members = ranked.members;
  std::stable_sort(members.begin(), members.end(), fitness_then_diversity_better);
  if (members.size() > capacity) members.resize(capacity);
  return std::move(members);
}

}  // namespace mqap
