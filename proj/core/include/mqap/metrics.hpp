#ifndef MQAP_METRICS_HPP
#define MQAP_METRICS_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "mqap/evaluation.hpp"

namespace mqap {

using Point = std::vector<double>;
using Front = std::vector<Point>;

Front to_front(std::span<const Solution> solutions);

struct Bounds {
  Point lower;
  Point upper;
};

struct NormalizedFronts {
  std::vector<Front> fronts;
  Bounds bounds;
};

/// Shared per-objective min/max over the union of all fronts.
Bounds front_bounds(std::span<const Front> fronts);

/// Maps each coordinate to (v - min) / (max - min) using the union bounds;
/// a degenerate objective maps to 0. Throws EmptyUnion.
NormalizedFronts normalize_fronts(std::span<const Front> fronts);

Front normalize_front(const Front& front, const Bounds& bounds);

inline constexpr double kDefaultReferenceOffset = 0.01;

/// Componentwise maximum of the front plus `offset`.
Point reference_point(const Front& front, double offset = kDefaultReferenceOffset);

/// Exact hypervolume (minimisation) dominated by `front` and bounded by
/// `reference`, by recursive slicing over the last objective. Points not
/// strictly better than the reference in every objective are ignored.
double hypervolume(const Front& front, const Point& reference);

enum class Alternative { TwoSided, Less, Greater };

struct RankSumResult {
  double rank_sum = 0.0;  ///< sum of ranks of sample a
  double z = 0.0;         ///< standardised statistic with continuity correction
  double p_value = 1.0;
  bool exact = false;
};

inline constexpr std::size_t kExactRankSumThreshold = 10;

/// Wilcoxon rank-sum (Mann-Whitney) test with mid-ranks for ties. Exact
/// permutation distribution when either sample has fewer than 10 values,
/// otherwise a tie-corrected normal approximation. Less means a tends to be
/// smaller than b.
RankSumResult wilcoxon_rank_sum(std::span<const double> a, std::span<const double> b,
                                Alternative alternative = Alternative::TwoSided);

}  // namespace mqap

#endif  // MQAP_METRICS_HPP
