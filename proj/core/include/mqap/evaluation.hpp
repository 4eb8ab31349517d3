#ifndef MQAP_EVALUATION_HPP
#define MQAP_EVALUATION_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mqap/instance.hpp"

namespace mqap {

/// perm[i] is the facility placed at location i.
using Permutation = std::vector<int>;

/// One cost per flow matrix; exact integer arithmetic.
using ObjectiveVector = std::vector<std::int64_t>;

inline constexpr int kNoRank = -1;

struct Solution {
  Permutation perm;
  ObjectiveVector objectives;
  bool visited = false;
  int rank = kNoRank;
  double diversity = 0.0;
};

[[nodiscard]] bool is_permutation_of_range(std::span<const int> perm) noexcept;
[[nodiscard]] Permutation identity_permutation(std::size_t n);

/// C^r(perm) = sum_i sum_j d(i,j) * f^r(perm[i], perm[j]) for every flow r.
ObjectiveVector evaluate_full(const Instance& instance, std::span<const int> perm);

Solution make_solution(const Instance& instance, Permutation perm);

/// Change in every objective when the facilities at locations i and j are
/// exchanged. O(m * n); keeps the diagonal and cross terms so it is exact
/// for asymmetric matrices and non-zero diagonals.
ObjectiveVector evaluate_delta(const Instance& instance, const Solution& sol, std::size_t i, std::size_t j);

/// Swaps locations i and j and adds delta to the cached objectives.
Solution apply_swap(Solution sol, std::size_t i, std::size_t j, const ObjectiveVector& delta);

}  // namespace mqap

#endif  // MQAP_EVALUATION_HPP
