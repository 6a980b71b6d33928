// SPDX-License-Identifier: Apache-2.0
#include "point_scan.hpp"

#include <algorithm>
#include <numeric>

namespace lipderiv::detail {

PointScan::PointScan(const SampledMap& f, std::size_t x, double cap, bool want_loc)
    : want_loc_(want_loc) {
  const auto& space = f.domain();
  std::vector<std::pair<double, std::size_t>> nb;
  for_each_in_punctured_ball(space, x, cap, true,
                             [&](std::size_t u, double d) { nb.emplace_back(d, u); });
  std::sort(nb.begin(), nb.end());

  const std::size_t k = nb.size();
  dist_.resize(k);
  idx_.resize(k);
  prefix_delta_.resize(k);
  prefix_ratio_.resize(k);
  double m = 0.0, ratio = 0.0;
  for (std::size_t j = 0; j < k; ++j) {
    dist_[j] = nb[j].first;
    idx_[j] = nb[j].second;
    m = std::max(m, f.image_distance(idx_[j], x));
    ratio = std::max(ratio, f.quotient(idx_[j], x));
    prefix_delta_[j] = m;
    prefix_ratio_[j] = ratio;
  }

  if (want_loc_) {
    prefix_pair_.resize(k);
    double best = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      best = std::max(best, f.quotient(idx_[j], x));
      for (std::size_t i = 0; i < j; ++i) best = std::max(best, f.quotient(idx_[i], idx_[j]));
      prefix_pair_[j] = best;
    }
  }

  for (std::size_t j = 0; j < k; ++j) {
    if (group_dist_.empty() || dist_[j] != group_dist_.back()) {
      group_dist_.push_back(dist_[j]);
      group_end_.push_back(j + 1);
    } else {
      group_end_.back() = j + 1;
    }
  }
  const std::size_t g = group_dist_.size();
  little_prefix_.resize(g);
  closed_prefix_.resize(g);
  for (std::size_t h = 0; h < g; ++h) {
    double mh = prefix_delta_[group_end_[h] - 1];
    double closed = mh / group_dist_[h];
    closed_prefix_[h] = h == 0 ? closed : std::min(closed_prefix_[h - 1], closed);
    if (h + 1 < g) {
      double term = mh / group_dist_[h + 1];
      little_prefix_[h] = h == 0 ? term : std::min(little_prefix_[h - 1], term);
    }
  }
}

std::size_t PointScan::count_open(double r) const {
  return static_cast<std::size_t>(std::lower_bound(dist_.begin(), dist_.end(), r) - dist_.begin());
}

ScaleRow PointScan::evaluate(double r) const {
  ScaleRow row;
  const std::size_t n_open = count_open(r);
  const std::size_t n_closed =
      static_cast<std::size_t>(std::upper_bound(dist_.begin(), dist_.end(), r) - dist_.begin());
  if (n_open > 0) {
    row.lip_upper = prefix_delta_[n_open - 1] / r;
    row.big_below = prefix_ratio_[n_open - 1];
    if (want_loc_) row.loc = prefix_pair_[n_open - 1];
  }
  if (n_closed > 0) row.lip_upper_closed = prefix_delta_[n_closed - 1] / r;

  const std::size_t groups = static_cast<std::size_t>(
      std::lower_bound(group_dist_.begin(), group_dist_.end(), r) - group_dist_.begin());
  if (groups > 0) {
    double last = prefix_delta_[group_end_[groups - 1] - 1] / r;
    row.little_below = groups >= 2 ? std::min(little_prefix_[groups - 2], last) : last;
    row.little_closed_below = closed_prefix_[groups - 1];
  }
  return row;
}

}  // namespace lipderiv::detail
