#include "mqap/evaluation.hpp"

#include <numeric>
#include <utility>

#include "mqap/error.hpp"

namespace mqap {

bool is_permutation_of_range(std::span<const int> perm) noexcept {
  std::vector<bool> seen(perm.size(), false);
  for (int v : perm) {
    if (v < 0 || static_cast<std::size_t>(v) >= perm.size() || seen[static_cast<std::size_t>(v)]) return false;
    seen[static_cast<std::size_t>(v)] = true;
  }
  return true;
}

Permutation identity_permutation(std::size_t n) {
  Permutation perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  return perm;
}

ObjectiveVector evaluate_full(const Instance& instance, std::span<const int> perm) {
  const auto n = instance.n();
  if (perm.size() != n) throw Error(ErrorCode::DimensionMismatch, "permutation length differs from n");
  const auto& d = instance.distances();
  ObjectiveVector costs(instance.m(), 0);
  for (std::size_t r = 0; r < instance.m(); ++r) {
    const auto& f = instance.flow(r);
    std::int64_t total = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto* drow = d.row(i);
      const auto* frow = f.row(static_cast<std::size_t>(perm[i]));
      for (std::size_t j = 0; j < n; ++j) total += drow[j] * frow[perm[j]];
    }
    costs[r] = total;
  }
  return costs;
}

Solution make_solution(const Instance& instance, Permutation perm) {
  auto objectives = evaluate_full(instance, perm);
  return Solution{std::move(perm), std::move(objectives)};
}

ObjectiveVector evaluate_delta(const Instance& instance, const Solution& sol, std::size_t i, std::size_t j) {
  const auto n = instance.n();
  if (sol.perm.size() != n || i >= n || j >= n) {
    throw Error(ErrorCode::DimensionMismatch, "swap positions or permutation do not match the instance");
  }
  ObjectiveVector delta(instance.m(), 0);
  if (i == j) return delta;

  const auto& d = instance.distances();
  const auto pi = static_cast<std::size_t>(sol.perm[i]);
  const auto pj = static_cast<std::size_t>(sol.perm[j]);
  for (std::size_t r = 0; r < instance.m(); ++r) {
    const auto& f = instance.flow(r);
    std::int64_t acc = (d(i, i) - d(j, j)) * (f(pj, pj) - f(pi, pi)) + (d(i, j) - d(j, i)) * (f(pj, pi) - f(pi, pj));
    for (std::size_t k = 0; k < n; ++k) {
      if (k == i || k == j) continue;
      const auto pk = static_cast<std::size_t>(sol.perm[k]);
      acc += (d(k, i) - d(k, j)) * (f(pk, pj) - f(pk, pi)) + (d(i, k) - d(j, k)) * (f(pj, pk) - f(pi, pk));
    }
    delta[r] = acc;
  }
  return delta;
}

Solution apply_swap(Solution sol, std::size_t i, std::size_t j, const ObjectiveVector& delta) {
  if (delta.size() != sol.objectives.size()) {
    throw Error(ErrorCode::DimensionMismatch, "delta and objectives differ in length");
  }
  std::swap(sol.perm[i], sol.perm[j]);
  for (std::size_t r = 0; r < delta.size(); ++r) sol.objectives[r] += delta[r];
  sol.visited = false;
  return sol;
}

}  // namespace mqap
