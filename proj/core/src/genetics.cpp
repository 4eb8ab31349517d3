#include "mqap/genetics.hpp"

#include <utility>

#include "mqap/error.hpp"

namespace mqap {

std::pair<Permutation, Permutation> cycle_crossover(std::span<const int> p1, std::span<const int> p2) {
  if (p1.size() != p2.size()) throw Error(ErrorCode::LengthMismatch, "parents differ in length");
  if (!is_permutation_of_range(p1) || !is_permutation_of_range(p2)) {
    throw Error(ErrorCode::InvalidArgument, "parents must be permutations of 0..n-1");
  }
  const auto n = p1.size();
  std::vector<std::size_t> where_in_p1(n);
  for (std::size_t pos = 0; pos < n; ++pos) where_in_p1[static_cast<std::size_t>(p1[pos])] = pos;

  Permutation child1(n), child2(n);
  std::vector<bool> assigned(n, false);
  bool from_first = true;
  for (std::size_t start = 0; start < n; ++start) {
    if (assigned[start]) continue;
    std::size_t pos = start;
    do {
      assigned[pos] = true;
      child1[pos] = from_first ? p1[pos] : p2[pos];
      child2[pos] = from_first ? p2[pos] : p1[pos];
      pos = where_in_p1[static_cast<std::size_t>(p2[pos])];
    } while (pos != start);
    from_first = !from_first;
  }
  return {std::move(child1), std::move(child2)};
}

Permutation swap_mutation(Permutation perm, double probability, Rng& rng) {
  if (perm.size() < 2) return perm;
  std::bernoulli_distribution fire(probability);
  if (!fire(rng)) return perm;
  std::uniform_int_distribution<std::size_t> first(0, perm.size() - 1);
  std::uniform_int_distribution<std::size_t> second(0, perm.size() - 2);
  const auto i = first(rng);
  auto j = second(rng);
  if (j >= i) ++j;
  std::swap(perm[i], perm[j]);
  return perm;
}

const Solution& tournament_select(std::span<const Solution> pool, std::size_t k, const BetterThan& better, Rng& rng) {
  if (pool.empty()) throw Error(ErrorCode::EmptyPool, "tournament over an empty pool");
  if (k == 0) throw Error(ErrorCode::InvalidArgument, "tournament size must be >= 1");
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  const Solution* winner = &pool[pick(rng)];
  for (std::size_t round = 1; round < k; ++round) {
    const Solution& challenger = pool[pick(rng)];
    if (better(challenger, *winner)) winner = &challenger;
  }
  return *winner;
}

}  // namespace mqap
