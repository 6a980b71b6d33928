// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <utility>
#include <vector>

namespace lipderiv {

struct Interval {
  double lo;
  double hi;
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Finite union of closed real intervals, normalized on construction:
/// sorted, with overlapping or touching intervals merged.
class IntervalUnion {
 public:
  IntervalUnion() = default;
  /// Throws InputError on an interval with lo > hi or non-finite ends.
  explicit IntervalUnion(std::vector<Interval> intervals);

  const std::vector<Interval>& intervals() const { return intervals_; }
  bool empty() const { return intervals_.empty(); }
  bool contains(double x) const;
  /// Distance from x to the union (0 inside, +inf for the empty union).
  double distance_to(double x) const;
  /// Lebesgue measure of [a, b] intersected with the union.
  double measure_within(double a, double b) const;

  friend bool operator==(const IntervalUnion&, const IntervalUnion&) = default;

 private:
  std::vector<Interval> intervals_;
};

double measure(const IntervalUnion& e);

}  // namespace lipderiv
