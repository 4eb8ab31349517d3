#ifndef MQAP_LOCALSEARCH_HPP
#define MQAP_LOCALSEARCH_HPP

#include <chrono>
#include <cstddef>
#include <span>
#include <optional>
#include <utility>
#include <vector>

#include "mqap/clock.hpp"
#include "mqap/evaluation.hpp"
#include "mqap/genetics.hpp"

namespace mqap {

struct LocalSearchParams {
  Duration time_budget = std::chrono::seconds(5);
};

/// Swap moves (0,1), (0,2), ..., (0,n-1), (1,2), ..., (n-2,n-1).
class OrderedSwapNeighborhood {
 public:
  explicit OrderedSwapNeighborhood(std::size_t n) : n_(n) {}

  class iterator {
   public:
    using value_type = std::pair<std::size_t, std::size_t>;
    using difference_type = std::ptrdiff_t;

    iterator() = default;
    iterator(std::size_t n, std::size_t i, std::size_t j) : n_(n), i_(i), j_(j) {}

    value_type operator*() const { return {i_, j_}; }
    iterator& operator++() {
      if (++j_ == n_) {
        ++i_;
        j_ = i_ + 1;
      }
      return *this;
    }
    iterator operator++(int) {
      auto copy = *this;
      ++*this;
      return copy;
    }
    friend bool operator==(const iterator& a, const iterator& b) { return a.i_ == b.i_ && a.j_ == b.j_; }

   private:
    std::size_t n_ = 0;
    std::size_t i_ = 0;
    std::size_t j_ = 0;
  };

  [[nodiscard]] iterator begin() const { return n_ < 2 ? end() : iterator(n_, 0, 1); }
  [[nodiscard]] iterator end() const { return n_ < 2 ? iterator(n_, 0, 0) : iterator(n_, n_ - 1, n_); }
  [[nodiscard]] std::size_t size() const noexcept { return n_ < 2 ? 0 : n_ * (n_ - 1) / 2; }

 private:
  std::size_t n_;
};

OrderedSwapNeighborhood ordered_swap_neighborhood(const Solution& sol);

/// First dominating neighbour of `sol` in scan order, if any. Objectives of
/// the neighbour come from evaluate_delta.
std::optional<Solution> first_dominating_neighbor(const Instance& instance, const Solution& sol);

struct LocalSearchStats {
  std::size_t explored = 0;
  std::size_t accepted = 0;
  bool budget_exhausted = false;
};

/// Dominance-based local search seeded by the archive contents. Unvisited
/// solutions are drawn at random without replacement; each is replaced in
/// the candidate pool by its first dominating swap neighbour (if any) until
/// the pool is empty or the time budget is spent. Returns the visited set
/// plus every accepted neighbour.
std::vector<Solution> dominance_based_local_search(std::span<const Solution> archive, const LocalSearchParams& params,
                                                   const Instance& instance, Rng& rng, Clock& clock,
                                                   LocalSearchStats* stats = nullptr);

}  // namespace mqap

#endif  // MQAP_LOCALSEARCH_HPP
