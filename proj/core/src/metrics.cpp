#include "mqap/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "mqap/error.hpp"

namespace mqap {

Front to_front(std::span<const Solution> solutions) {
  Front front;
  front.reserve(solutions.size());
  for (const auto& sol : solutions) front.emplace_back(sol.objectives.begin(), sol.objectives.end());
  return front;
}

Bounds front_bounds(std::span<const Front> fronts) {
  Bounds bounds;
  bool any = false;
  for (const auto& front : fronts) {
    for (const auto& p : front) {
      if (!any) {
        bounds.lower = p;
        bounds.upper = p;
        any = true;
        continue;
      }
      if (p.size() != bounds.lower.size()) throw Error(ErrorCode::DimensionMismatch, "points differ in dimension");
      for (std::size_t r = 0; r < p.size(); ++r) {
        bounds.lower[r] = std::min(bounds.lower[r], p[r]);
        bounds.upper[r] = std::max(bounds.upper[r], p[r]);
      }
    }
  }
  if (!any) throw Error(ErrorCode::EmptyUnion, "no points to normalise");
  return bounds;
}

Front normalize_front(const Front& front, const Bounds& bounds) {
  Front out;
  out.reserve(front.size());
  for (const auto& p : front) {
    if (p.size() != bounds.lower.size()) throw Error(ErrorCode::DimensionMismatch, "point and bounds differ in dimension");
    Point q(p.size());
    for (std::size_t r = 0; r < p.size(); ++r) {
      const double range = bounds.upper[r] - bounds.lower[r];
      q[r] = range > 0 ? (p[r] - bounds.lower[r]) / range : 0.0;
    }
    out.push_back(std::move(q));
  }
  return out;
}

NormalizedFronts normalize_fronts(std::span<const Front> fronts) {
  NormalizedFronts out;
  out.bounds = front_bounds(fronts);
  for (const auto& front : fronts) out.fronts.push_back(normalize_front(front, out.bounds));
  return out;
}

Point reference_point(const Front& front, double offset) {
  if (front.empty()) throw Error(ErrorCode::EmptyUnion, "reference point of an empty front");
  Point ref = front.front();
  for (const auto& p : front) {
    if (p.size() != ref.size()) throw Error(ErrorCode::DimensionMismatch, "points differ in dimension");
    for (std::size_t r = 0; r < p.size(); ++r) ref[r] = std::max(ref[r], p[r]);
  }
  for (auto& c : ref) c += offset;
  return ref;
}

namespace {

// Points are pointers into the caller's storage; only the first `dims`
// coordinates are considered.
double hv_recursive(std::vector<const Point*>& points, const Point& ref, std::size_t dims) {
  if (points.empty()) return 0.0;
  if (dims == 1) {
    double best = ref[0];
    for (const auto* p : points) best = std::min(best, (*p)[0]);
    return ref[0] - best;
  }
  if (dims == 2) {
    std::sort(points.begin(), points.end(), [](const Point* a, const Point* b) {
      return (*a)[0] < (*b)[0] || ((*a)[0] == (*b)[0] && (*a)[1] < (*b)[1]);
    });
    double area = 0.0;
    double ceiling = ref[1];
    for (const auto* p : points) {
      if ((*p)[1] < ceiling) {
        area += (ref[0] - (*p)[0]) * (ceiling - (*p)[1]);
        ceiling = (*p)[1];
      }
    }
    return area;
  }

  const auto last = dims - 1;
  std::sort(points.begin(), points.end(), [last](const Point* a, const Point* b) { return (*a)[last] < (*b)[last]; });
  double volume = 0.0;
  std::vector<const Point*> active;
  active.reserve(points.size());
  for (std::size_t k = 0; k < points.size(); ++k) {
    active.push_back(points[k]);
    const double upper = k + 1 < points.size() ? (*points[k + 1])[last] : ref[last];
    const double height = upper - (*points[k])[last];
    if (height <= 0.0) continue;
    auto slice = active;
    volume += hv_recursive(slice, ref, last) * height;
  }
  return volume;
}

}  // namespace

double hypervolume(const Front& front, const Point& reference) {
  const auto dims = reference.size();
  if (dims == 0) throw Error(ErrorCode::DimensionMismatch, "reference point has no coordinates");
  std::vector<const Point*> inside;
  for (const auto& p : front) {
    if (p.size() != dims) throw Error(ErrorCode::DimensionMismatch, "point and reference differ in dimension");
    bool strictly_inside = true;
    for (std::size_t r = 0; r < dims; ++r) strictly_inside = strictly_inside && p[r] < reference[r];
    if (strictly_inside) inside.push_back(&p);
  }
  return hv_recursive(inside, reference, dims);
}

namespace {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

// Number of ways to choose `size` of the doubled ranks with each doubled sum.
std::vector<double> subset_sum_counts(const std::vector<long long>& doubled_ranks, std::size_t size) {
  const auto total = static_cast<std::size_t>(std::accumulate(doubled_ranks.begin(), doubled_ranks.end(), 0LL));
  std::vector<std::vector<double>> ways(size + 1, std::vector<double>(total + 1, 0.0));
  ways[0][0] = 1.0;
  for (auto rank : doubled_ranks) {
    const auto r = static_cast<std::size_t>(rank);
    for (std::size_t k = size; k >= 1; --k) {
      for (std::size_t s = total; s >= r; --s) ways[k][s] += ways[k - 1][s - r];
    }
  }
  return std::move(ways[size]);
}

}  // namespace

RankSumResult wilcoxon_rank_sum(std::span<const double> a, std::span<const double> b, Alternative alternative) {
  if (a.size() < 3 || b.size() < 3) throw Error(ErrorCode::InvalidArgument, "rank-sum test needs >= 3 values per sample");
  const auto na = a.size();
  const auto nb = b.size();
  const auto total = na + nb;

  std::vector<std::pair<double, std::size_t>> pooled;
  pooled.reserve(total);
  for (std::size_t k = 0; k < na; ++k) pooled.emplace_back(a[k], k);
  for (std::size_t k = 0; k < nb; ++k) pooled.emplace_back(b[k], na + k);
  std::sort(pooled.begin(), pooled.end());
  if (pooled.front().first == pooled.back().first) {
    throw Error(ErrorCode::DegenerateSample, "all observations are identical");
  }

  std::vector<double> ranks(total);
  double tie_term = 0.0;
  for (std::size_t lo = 0; lo < total;) {
    std::size_t hi = lo;
    while (hi + 1 < total && pooled[hi + 1].first == pooled[lo].first) ++hi;
    const double mid = (static_cast<double>(lo) + static_cast<double>(hi)) / 2.0 + 1.0;
    for (std::size_t k = lo; k <= hi; ++k) ranks[pooled[k].second] = mid;
    const auto t = static_cast<double>(hi - lo + 1);
    tie_term += t * t * t - t;
    lo = hi + 1;
  }

  RankSumResult result;
  for (std::size_t k = 0; k < na; ++k) result.rank_sum += ranks[k];
  const double n = static_cast<double>(total);
  const double mean = static_cast<double>(na) * (n + 1.0) / 2.0;
  const double variance =
      static_cast<double>(na) * static_cast<double>(nb) / 12.0 * ((n + 1.0) - tie_term / (n * (n - 1.0)));
  const double sigma = std::sqrt(variance);
  const double diff = result.rank_sum - mean;
  const double corrected = std::abs(diff) < 0.5 ? 0.0 : diff - std::copysign(0.5, diff);
  result.z = corrected / sigma;

  result.exact = std::min(na, nb) < kExactRankSumThreshold && total <= 200;
  if (result.exact) {
    std::vector<long long> doubled(total);
    for (std::size_t k = 0; k < total; ++k) doubled[k] = std::llround(2.0 * ranks[k]);
    const auto counts = subset_sum_counts(doubled, na);
    const auto observed = static_cast<std::size_t>(std::llround(2.0 * result.rank_sum));
    const double all = std::accumulate(counts.begin(), counts.end(), 0.0);
    const double lower = std::accumulate(counts.begin(), counts.begin() + static_cast<std::ptrdiff_t>(observed) + 1, 0.0) / all;
    const double upper = std::accumulate(counts.begin() + static_cast<std::ptrdiff_t>(observed), counts.end(), 0.0) / all;
    switch (alternative) {
      case Alternative::TwoSided: result.p_value = std::min(1.0, 2.0 * std::min(lower, upper)); break;
      case Alternative::Less: result.p_value = lower; break;
      case Alternative::Greater: result.p_value = upper; break;
    }
    return result;
  }

  switch (alternative) {
    case Alternative::TwoSided:
      result.p_value = std::min(1.0, 2.0 * (1.0 - normal_cdf(std::abs(result.z))));
      break;
    case Alternative::Less:
      result.p_value = normal_cdf((diff + 0.5) / sigma);
      break;
    case Alternative::Greater:
      result.p_value = 1.0 - normal_cdf((diff - 0.5) / sigma);
      break;
  }
  return result;
}

}  // namespace mqap
