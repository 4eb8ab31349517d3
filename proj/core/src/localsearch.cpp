#include "mqap/localsearch.hpp"

#include <set>

#include "mqap/error.hpp"

namespace mqap {

OrderedSwapNeighborhood ordered_swap_neighborhood(const Solution& sol) {
  return OrderedSwapNeighborhood(sol.perm.size());
}

namespace {

// The neighbour dominates the current solution iff every delta is <= 0 and
// at least one is < 0.
bool improves_all(const ObjectiveVector& delta) {
  bool strict = false;
  for (auto d : delta) {
    if (d > 0) return false;
    if (d < 0) strict = true;
  }
  return strict;
}

}  // namespace

std::optional<Solution> first_dominating_neighbor(const Instance& instance, const Solution& sol) {
  for (const auto [i, j] : ordered_swap_neighborhood(sol)) {
    auto delta = evaluate_delta(instance, sol, i, j);
    if (improves_all(delta)) return apply_swap(sol, i, j, delta);
  }
  return std::nullopt;
}

std::vector<Solution> dominance_based_local_search(std::span<const Solution> archive, const LocalSearchParams& params,
                                                   const Instance& instance, Rng& rng, Clock& clock,
                                                   LocalSearchStats* stats) {
  std::vector<Solution> result(archive.begin(), archive.end());
  std::set<Permutation> known;
  std::vector<std::size_t> unvisited;
  unvisited.reserve(result.size());
  for (std::size_t k = 0; k < result.size(); ++k) {
    result[k].visited = false;
    known.insert(result[k].perm);
    unvisited.push_back(k);
  }

  LocalSearchStats local;
  const auto start = clock.now();
  Duration elapsed{0};
  while (elapsed < params.time_budget && !unvisited.empty()) {
    std::uniform_int_distribution<std::size_t> pick(0, unvisited.size() - 1);
    const auto slot = pick(rng);
    const auto current = unvisited[slot];
    unvisited[slot] = unvisited.back();
    unvisited.pop_back();

    ++local.explored;
    if (auto neighbor = first_dominating_neighbor(instance, result[current])) {
      ++local.accepted;
      if (known.insert(neighbor->perm).second) {
        neighbor->visited = false;
        result.push_back(std::move(*neighbor));
        unvisited.push_back(result.size() - 1);
      }
    }
    result[current].visited = true;
    elapsed = clock.now() - start;
  }
  local.budget_exhausted = !unvisited.empty();
  if (stats) *stats = local;
  return result;
}

}  // namespace mqap
