// SPDX-License-Identifier: Apache-2.0
// Brute-force oracles and generators used only by the tests. They enumerate
// balls directly from the distance function and never call the scan code.
#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "lipderiv/metric_space.hpp"
#include "lipderiv/sampled_map.hpp"

namespace oracle {

using lipderiv::FiniteMetricSpace;
using lipderiv::SampledMap;

inline double dist(const SampledMap& f, std::size_t u, std::size_t v) { return f.domain().distance(u, v); }

/// Lip^rho at x with the ball open or closed.
inline double lip_upper(const SampledMap& f, std::size_t x, double rho, bool closed) {
  double m = 0.0;
  for (std::size_t u = 0; u < f.size(); ++u) {
    double d = dist(f, u, x);
    if (u != x && (closed ? d <= rho : d < rho)) m = std::max(m, f.image_distance(u, x));
  }
  return m / rho;
}

/// Sorted distinct neighbour distances below r.
inline std::vector<double> neighbour_distances(const SampledMap& f, std::size_t x, double r) {
  std::vector<double> ds;
  for (std::size_t u = 0; u < f.size(); ++u)
    if (u != x && dist(f, u, x) < r) ds.push_back(dist(f, u, x));
  std::sort(ds.begin(), ds.end());
  ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
  return ds;
}

/// Lip_r: sup of Lip^rho over rho < r, taken over a dense rho grid plus each
/// neighbour distance approached from above.
inline double big_below(const SampledMap& f, std::size_t x, double r, int dense = 2000) {
  double best = 0.0;
  for (double d : neighbour_distances(f, x, r)) best = std::max(best, lip_upper(f, x, d, true));
  for (int i = 1; i < dense; ++i) best = std::max(best, lip_upper(f, x, r * i / dense, false));
  return best;
}

/// lip_r: inf of Lip^rho over d_1 < rho < r; the infimum over each constant
/// stretch is reached at its right end, so test those ends plus a dense grid.
inline double little_below(const SampledMap& f, std::size_t x, double r, int dense = 2000) {
  auto ds = neighbour_distances(f, x, r);
  if (ds.empty()) return 0.0;
  double best = lip_upper(f, x, r, false);
  for (std::size_t k = 1; k < ds.size(); ++k) best = std::min(best, lip_upper(f, x, ds[k], false));
  for (int i = 1; i < dense; ++i) {
    double rho = ds[0] + (r - ds[0]) * i / dense;
    if (rho > ds[0] && rho < r) best = std::min(best, lip_upper(f, x, rho, false));
  }
  return best;
}

/// min over neighbour distances d < r of Lip^d_+.
inline double little_closed_below(const SampledMap& f, std::size_t x, double r) {
  auto ds = neighbour_distances(f, x, r);
  if (ds.empty()) return 0.0;
  double best = INFINITY;
  for (double d : ds) best = std::min(best, lip_upper(f, x, d, true));
  return best;
}

/// Lipschitz constant of f on the open ball B(x,r), all pairs.
inline double loc(const SampledMap& f, std::size_t x, double r) {
  std::vector<std::size_t> in;
  for (std::size_t u = 0; u < f.size(); ++u)
    if (dist(f, u, x) < r) in.push_back(u);
  double best = 0.0;
  for (std::size_t a = 0; a < in.size(); ++a)
    for (std::size_t b = a + 1; b < in.size(); ++b)
      best = std::max(best, f.image_distance(in[a], in[b]) / dist(f, in[a], in[b]));
  return best;
}

inline double lip_norm(const SampledMap& f) { return loc(f, 0, INFINITY); }

/// Random real-valued map on a small space: points on a line, in the plane
/// under a random p-norm, or a shortest-path metric on a random weighted graph.
inline SampledMap random_map(std::mt19937_64& rng, std::size_t max_points) {
  std::uniform_int_distribution<std::size_t> count(2, max_points);
  std::uniform_int_distribution<int> kind(0, 2);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const std::size_t n = count(rng);
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back("p" + std::to_string(i));
  std::shared_ptr<const FiniteMetricSpace> space;
  switch (kind(rng)) {
    case 0: {
      std::vector<double> xs;
      for (std::size_t i = 0; i < n; ++i) xs.push_back(unit(rng));
      space = std::make_shared<const FiniteMetricSpace>(
          FiniteMetricSpace::from_embedding(ids, xs, 1, lipderiv::PNorm::L2));
      break;
    }
    case 1: {
      std::vector<double> xs;
      for (std::size_t i = 0; i < 2 * n; ++i) xs.push_back(unit(rng));
      const lipderiv::PNorm ps[] = {lipderiv::PNorm::L1, lipderiv::PNorm::L2, lipderiv::PNorm::Linf};
      space = std::make_shared<const FiniteMetricSpace>(
          FiniteMetricSpace::from_embedding(ids, xs, 2, ps[rng() % 3]));
      break;
    }
    default: {
      std::uniform_real_distribution<double> weight(0.1, 2.0);
      std::vector<double> t(n * n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) t[i * n + j] = t[j * n + i] = weight(rng);
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) t[i * n + j] = std::min(t[i * n + j], t[i * n + k] + t[k * n + j]);
      for (std::size_t i = 0; i < n; ++i) t[i * n + i] = 0.0;
      space = std::make_shared<const FiniteMetricSpace>(FiniteMetricSpace::from_table(ids, t));
    }
  }
  std::vector<double> vals;
  for (std::size_t i = 0; i < n; ++i) vals.push_back(2.0 * unit(rng));
  return SampledMap::real(space, vals);
}

inline SampledMap line_map(std::vector<double> xs, std::vector<double> vals) {
  auto space = std::make_shared<const FiniteMetricSpace>(FiniteMetricSpace::on_line(xs));
  return SampledMap::real(space, std::move(vals));
}

}  // namespace oracle
