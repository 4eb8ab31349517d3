#include "mqap/archive.hpp"

#include <algorithm>
#include <numeric>

#include "mqap/error.hpp"
#include "mqap/ranking.hpp"

namespace mqap {

Archive::Archive(std::size_t capacity) : capacity_(capacity) {
  if (capacity_ == 0) throw Error(ErrorCode::InvalidArgument, "archive capacity must be >= 1");
}

bool Archive::insert_one(const Solution& candidate, InsertStats& stats) {
  for (const auto& member : members_) {
    if (member.perm == candidate.perm) {
      ++stats.rejected;
      return false;
    }
    const auto rel = compare_dominance(member.objectives, candidate.objectives);
    if (rel == Dominance::Dominates) {
      ++stats.rejected;
      return false;
    }
  }
  const auto before = members_.size();
  std::erase_if(members_, [&](const Solution& member) { return dominates(candidate.objectives, member.objectives); });
  stats.removed_dominated += before - members_.size();
  members_.push_back(candidate);
  ++stats.inserted;
  return true;
}

void Archive::truncate(InsertStats& stats, std::vector<Solution>* evicted_log) {
  while (members_.size() > capacity_) {
    RankedPopulation single_front;
    single_front.members = std::move(members_);
    single_front.fronts.emplace_back(single_front.members.size());
    std::iota(single_front.fronts.front().begin(), single_front.fronts.front().end(), std::size_t{0});
    crowding_assign(single_front);
    members_ = std::move(single_front.members);

    const auto victim = std::min_element(members_.begin(), members_.end(), [](const Solution& a, const Solution& b) {
      return a.diversity < b.diversity;
    });
    if (evicted_log) evicted_log->push_back(*victim);
    members_.erase(victim);
    ++stats.evicted;
  }
}

Archive::InsertStats Archive::insert(std::span<const Solution> candidates, std::vector<Solution>* evicted_log) {
  InsertStats stats;
  for (const auto& candidate : candidates) {
    if (insert_one(candidate, stats)) truncate(stats, evicted_log);
  }
  return stats;
}

Archive::InsertStats Archive::insert(const Solution& candidate, std::vector<Solution>* evicted_log) {
  return insert(std::span<const Solution>(&candidate, 1), evicted_log);
}

bool Archive::invariants_hold() const {
  if (members_.size() > capacity_) return false;
  for (std::size_t a = 0; a < members_.size(); ++a) {
    for (std::size_t b = a + 1; b < members_.size(); ++b) {
      if (members_[a].perm == members_[b].perm) return false;
      const auto rel = compare_dominance(members_[a].objectives, members_[b].objectives);
      if (rel == Dominance::Dominates || rel == Dominance::DominatedBy) return false;
    }
  }
  return true;
}

std::vector<Solution> non_dominated_filter(std::span<const Solution> solutions) {
  Archive unbounded(std::numeric_limits<std::size_t>::max());
  unbounded.insert(solutions);
  return unbounded.members();
}

std::vector<Solution> archive_merge(std::span<const Archive> archives) {
  Archive unbounded(std::numeric_limits<std::size_t>::max());
  for (const auto& archive : archives) unbounded.insert(archive.members());
  return unbounded.members();
}

}  // namespace mqap
