// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <vector>

#include "lipderiv/sampled_map.hpp"
#include "lipderiv/scales.hpp"

namespace lipderiv::detail {

// Neighbours of one centre x within a closed cap radius, sorted by distance,
// with the prefix reductions that make every scale functional an O(log n)
// lookup for any r <= cap.
class PointScan {
 public:
  PointScan(const SampledMap& f, std::size_t x, double cap, bool want_loc);

  ScaleRow evaluate(double r) const;
  /// Number of neighbours u with d(u,x) < r.
  std::size_t count_open(double r) const;
  std::size_t neighbours() const { return dist_.size(); }
  double distance(std::size_t k) const { return dist_[k]; }
  std::size_t point(std::size_t k) const { return idx_[k]; }
  /// max |f(u)-f(x)| over the first k+1 neighbours.
  double prefix_delta(std::size_t k) const { return prefix_delta_[k]; }

 private:
  bool want_loc_;
  std::vector<double> dist_;
  std::vector<std::size_t> idx_;
  std::vector<double> prefix_delta_;
  std::vector<double> prefix_ratio_;
  std::vector<double> prefix_pair_;
  // One entry per distinct distance.
  std::vector<double> group_dist_;
  std::vector<std::size_t> group_end_;
  std::vector<double> little_prefix_;   // min_{h<=g} M_h / D_{h+1}
  std::vector<double> closed_prefix_;   // min_{h<=g} M_h / D_h
};

}  // namespace lipderiv::detail
