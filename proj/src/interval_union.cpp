// SPDX-License-Identifier: Apache-2.0
#include "lipderiv/interval_union.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lipderiv/error.hpp"

namespace lipderiv {

IntervalUnion::IntervalUnion(std::vector<Interval> intervals) {
  for (const auto& iv : intervals) {
    if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi)) throw InputError("non-finite interval end");
    if (iv.lo > iv.hi) throw InputError("interval with lo > hi");
  }
  std::sort(intervals.begin(), intervals.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  for (const auto& iv : intervals) {
    if (!intervals_.empty() && iv.lo <= intervals_.back().hi)
      intervals_.back().hi = std::max(intervals_.back().hi, iv.hi);
    else
      intervals_.push_back(iv);
  }
}

bool IntervalUnion::contains(double x) const {
  return std::any_of(intervals_.begin(), intervals_.end(),
                     [x](const Interval& iv) { return iv.lo <= x && x <= iv.hi; });
}

double IntervalUnion::distance_to(double x) const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& iv : intervals_) {
    if (x < iv.lo)
      best = std::min(best, iv.lo - x);
    else if (x > iv.hi)
      best = std::min(best, x - iv.hi);
    else
      return 0.0;
  }
  return best;
}

double IntervalUnion::measure_within(double a, double b) const {
  if (a > b) std::swap(a, b);
  double total = 0.0;
  for (const auto& iv : intervals_) {
    double lo = std::max(a, iv.lo), hi = std::min(b, iv.hi);
    if (hi > lo) total += hi - lo;
  }
  return total;
}

double measure(const IntervalUnion& e) {
  double total = 0.0;
  for (const auto& iv : e.intervals()) total += iv.hi - iv.lo;
  return total;
}

}  // namespace lipderiv
