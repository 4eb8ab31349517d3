#ifndef MQAP_ARCHIVE_HPP
#define MQAP_ARCHIVE_HPP

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "mqap/evaluation.hpp"

namespace mqap {

inline constexpr std::size_t kDefaultArchiveCapacity = 100;

/// Bounded set of mutually non-dominated solutions with distinct
/// permutations. Overflow evicts the most crowded member, one at a time.
class Archive {
 public:
  explicit Archive(std::size_t capacity = kDefaultArchiveCapacity);

  struct InsertStats {
    std::size_t inserted = 0;
    std::size_t rejected = 0;
    std::size_t removed_dominated = 0;
    std::size_t evicted = 0;
  };

  /// Evicted members are appended to `evicted_log` when it is non-null.
  InsertStats insert(std::span<const Solution> candidates, std::vector<Solution>* evicted_log = nullptr);
  InsertStats insert(const Solution& candidate, std::vector<Solution>* evicted_log = nullptr);

  [[nodiscard]] const std::vector<Solution>& members() const noexcept { return members_; }
  [[nodiscard]] std::size_t size() const noexcept { return members_.size(); }
  [[nodiscard]] bool empty() const noexcept { return members_.empty(); }
  [[nodiscard]] std::size_t capacity() const noexcept { return capacity_; }

  /// O(k^2) check of the non-dominance, uniqueness and capacity invariants.
  [[nodiscard]] bool invariants_hold() const;

 private:
  bool insert_one(const Solution& candidate, InsertStats& stats);
  void truncate(InsertStats& stats, std::vector<Solution>* evicted_log);

  std::size_t capacity_;
  std::vector<Solution> members_;
};

/// Global non-dominated, de-duplicated union of several archives.
std::vector<Solution> archive_merge(std::span<const Archive> archives);

/// Non-dominated, de-duplicated subset of an arbitrary set of solutions.
std::vector<Solution> non_dominated_filter(std::span<const Solution> solutions);

}  // namespace mqap

#endif  // MQAP_ARCHIVE_HPP
