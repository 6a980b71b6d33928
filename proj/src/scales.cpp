// SPDX-License-Identifier: Apache-2.0
#include "lipderiv/scales.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lipderiv/error.hpp"
#include "parallel.hpp"
#include "point_scan.hpp"

namespace lipderiv {

void RadiusGrid::validate() const {
  if (!(r_max > 0.0) || !std::isfinite(r_max)) throw InputError("radius grid: r_max must be positive");
  if (!(q > 0.0 && q < 1.0)) throw InputError("radius grid: q must lie in (0,1)");
  if (steps < 1) throw InputError("radius grid: steps must be at least 1");
  if (tail_window < 1 || tail_window > steps)
    throw InputError("radius grid: tail window must lie in [1, steps]");
}

double RadiusGrid::radius(int k) const { return r_max * std::pow(q, k); }

std::vector<double> RadiusGrid::radii() const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(steps));
  for (int k = 0; k < steps; ++k) out.push_back(radius(k));
  return out;
}

namespace {

void check_args(const SampledMap& f, std::size_t x, double r) {
  if (x >= f.size()) throw InputError("point index out of range");
  if (!(r > 0.0)) throw InputError("radius must be positive");
}

ScaleRow row_at(const SampledMap& f, std::size_t x, double r, bool loc) {
  check_args(f, x, r);
  return detail::PointScan(f, x, r, loc).evaluate(r);
}

double nearest_distance(const FiniteMetricSpace& space, std::size_t x) {
  double best = std::numeric_limits<double>::infinity();
  if (space.is_line()) {
    const auto& order = space.line_order();
    std::size_t k = space.line_rank()[x];
    if (k > 0) best = std::min(best, space.distance(order[k - 1], x));
    if (k + 1 < order.size()) best = std::min(best, space.distance(order[k + 1], x));
    return best;
  }
  for (std::size_t u = 0; u < space.size(); ++u)
    if (u != x) best = std::min(best, space.distance(u, x));
  return best;
}

void fill_point(const SampledMap& f, const RadiusGrid& grid, const ScaleOptions& opt,
                std::size_t x, ScaleRow* rows, PointSummary& s) {
  const auto radii = grid.radii();
  detail::PointScan scan(f, x, grid.r_max, opt.compute_loc);
  for (std::size_t k = 0; k < radii.size(); ++k) rows[k] = scan.evaluate(radii[k]);

  const std::size_t last = radii.size() - 1;
  s.nearest = scan.neighbours() > 0 ? scan.distance(0) : nearest_distance(f.domain(), x);
  s.unresolved = !(s.nearest < radii[last]);
  s.lip_hat = rows[last].little_closed_below;
  s.big_hat = rows[last].big_below;
  s.loc_hat = 0.0;
  for (std::size_t k = radii.size(); k-- > 0;) {
    if (scan.count_open(radii[k]) > 0) {
      s.loc_hat = rows[k].loc;
      break;
    }
  }

  const std::size_t tail = static_cast<std::size_t>(grid.tail_window);
  const std::size_t first = radii.size() - tail;
  bool growing = tail >= 2 && rows[first].lip_upper > 0.0;
  for (std::size_t k = first + 1; growing && k <= last; ++k)
    growing = rows[k].lip_upper > rows[k - 1].lip_upper;
  s.divergent = growing && rows[last].lip_upper >= opt.divergence_factor * rows[first].lip_upper;

  if (opt.report_liminf_surrogate) {
    double m = rows[first].lip_upper;
    for (std::size_t k = first; k <= last; ++k) m = std::min(m, rows[k].lip_upper);
    s.liminf_surrogate = m;
  }
}

}  // namespace

double lip_upper_r(const SampledMap& f, std::size_t x, double r) {
  return row_at(f, x, r, false).lip_upper;
}

double lip_upper_r_closed(const SampledMap& f, std::size_t x, double r) {
  return row_at(f, x, r, false).lip_upper_closed;
}

double big_lip_below_r(const SampledMap& f, std::size_t x, double r) {
  return row_at(f, x, r, false).big_below;
}

double little_lip_below_r(const SampledMap& f, std::size_t x, double r) {
  return row_at(f, x, r, false).little_below;
}

double little_lip_closed_below_r(const SampledMap& f, std::size_t x, double r) {
  return row_at(f, x, r, false).little_closed_below;
}

double loc_lip_r(const SampledMap& f, std::size_t x, double r) {
  return row_at(f, x, r, true).loc;
}

double lip_norm(const SampledMap& f) {
  const std::size_t n = f.size();
  std::vector<double> best(n, 0.0);
  detail::parallel_for(n, [&](std::size_t u) {
    double m = 0.0;
    for (std::size_t v = u + 1; v < n; ++v) m = std::max(m, f.quotient(u, v));
    best[u] = m;
  });
  return n == 0 ? 0.0 : *std::max_element(best.begin(), best.end());
}

ScaleProfile scale_profile_at(const SampledMap& f, const RadiusGrid& grid,
                              const std::vector<std::size_t>& points, const ScaleOptions& options) {
  grid.validate();
  for (std::size_t x : points)
    if (x >= f.size()) throw InputError("point index out of range");
  ScaleProfile p;
  p.radii = grid.radii();
  p.points = points.size();
  p.rows.resize(points.size() * p.radii.size());
  p.summary.resize(points.size());
  p.rmax_exceeds_diameter = grid.r_max > f.domain().diameter();
  detail::parallel_for(points.size(), [&](std::size_t i) {
    fill_point(f, grid, options, points[i], &p.rows[i * p.radii.size()], p.summary[i]);
  });
  return p;
}

ScaleProfile scale_profile(const SampledMap& f, const RadiusGrid& grid,
                           const ScaleOptions& options) {
  std::vector<std::size_t> all(f.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return scale_profile_at(f, grid, all, options);
}

}  // namespace lipderiv
