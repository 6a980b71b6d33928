// SPDX-License-Identifier: Apache-2.0
#include "lipderiv/reference.hpp"

#include <algorithm>
#include <span>
#include <string>
#include <vector>

namespace lipderiv {
namespace reference {

namespace {

double max_delta(const SampledMap& f, std::size_t x, double r, bool closed) {
  double m = 0.0;
  const auto& s = f.domain();
  for (std::size_t u = 0; u < s.size(); ++u) {
    if (u == x) continue;
    double d = s.distance(u, x);
    if (closed ? d <= r : d < r) m = std::max(m, f.image_distance(u, x));
  }
  return m;
}

std::vector<double> distances_below(const SampledMap& f, std::size_t x, double r) {
  std::vector<double> ds;
  const auto& s = f.domain();
  for (std::size_t u = 0; u < s.size(); ++u)
    if (u != x && s.distance(u, x) < r) ds.push_back(s.distance(u, x));
  std::sort(ds.begin(), ds.end());
  ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
  return ds;
}

}  // namespace

double lip_upper(const SampledMap& f, std::size_t x, double r) {
  return max_delta(f, x, r, false) / r;
}

double lip_upper_closed(const SampledMap& f, std::size_t x, double r) {
  return max_delta(f, x, r, true) / r;
}

double big_below(const SampledMap& f, std::size_t x, double r) {
  double m = 0.0;
  const auto& s = f.domain();
  for (std::size_t u = 0; u < s.size(); ++u)
    if (u != x && s.distance(u, x) < r) m = std::max(m, f.quotient(u, x));
  return m;
}

double little_below(const SampledMap& f, std::size_t x, double r, int dense_samples) {
  auto ds = distances_below(f, x, r);
  if (ds.empty()) return 0.0;
  double best = lip_upper(f, x, r);
  for (std::size_t k = 1; k < ds.size(); ++k) best = std::min(best, lip_upper(f, x, ds[k]));
  for (int i = 1; i < dense_samples; ++i) {
    double rho = ds[0] + (r - ds[0]) * i / dense_samples;
    if (rho > ds[0] && rho < r) best = std::min(best, lip_upper(f, x, rho));
  }
  return best;
}

double little_closed_below(const SampledMap& f, std::size_t x, double r) {
  auto ds = distances_below(f, x, r);
  if (ds.empty()) return 0.0;
  double best = lip_upper_closed(f, x, ds[0]);
  for (double d : ds) best = std::min(best, lip_upper_closed(f, x, d));
  return best;
}

double loc(const SampledMap& f, std::size_t x, double r) {
  const auto& s = f.domain();
  std::vector<std::size_t> pts;
  for (std::size_t u = 0; u < s.size(); ++u)
    if (s.distance(u, x) < r) pts.push_back(u);
  double m = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) m = std::max(m, f.quotient(pts[i], pts[j]));
  return m;
}

double lip_norm(const SampledMap& f) {
  double m = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = i + 1; j < f.size(); ++j) m = std::max(m, f.quotient(i, j));
  return m;
}

ScaleRow row(const SampledMap& f, std::size_t x, double r) {
  return ScaleRow{lip_upper(f, x, r),   lip_upper_closed(f, x, r),    big_below(f, x, r),
                  little_below(f, x, r), little_closed_below(f, x, r), loc(f, x, r)};
}

}  // namespace reference

SampledMap random_sampled_map(std::size_t max_points, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> count(2, std::max<std::size_t>(2, max_points));
  const std::size_t n = count(rng);
  std::uniform_int_distribution<int> mode_pick(0, 3);
  const int mode = mode_pick(rng);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_int_distribution<int> small(-3, 3);

  std::vector<std::string> ids(n);
  for (std::size_t i = 0; i < n; ++i) ids[i] = std::to_string(i);

  SpacePtr space;
  if (mode <= 1) {
    std::uniform_int_distribution<std::size_t> dim_pick(1, 3);
    std::uniform_int_distribution<int> norm_pick(0, 2);
    const std::size_t dim = dim_pick(rng);
    const PNorm p = static_cast<PNorm>(norm_pick(rng));
    std::uniform_int_distribution<int> lattice(-6, 6);
    std::vector<double> coords(n * dim);
    for (std::size_t i = 0; i < n; ++i) {
      std::span<double> pt(coords.data() + i * dim, dim);
      bool fresh = false;
      while (!fresh) {
        for (double& c : pt) c = mode == 0 ? unit(rng) : lattice(rng);
        fresh = true;
        for (std::size_t j = 0; j < i && fresh; ++j)
          fresh = !std::equal(pt.begin(), pt.end(), coords.begin() + j * dim);
      }
    }
    space = std::make_shared<const FiniteMetricSpace>(
        FiniteMetricSpace::from_embedding(ids, std::move(coords), dim, p));
  } else {
    std::uniform_int_distribution<int> weight(1, 4);
    std::vector<double> t(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        t[i * n + j] = t[j * n + i] = mode == 2 ? weight(rng) : 0.1 + (unit(rng) + 1.0);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          t[i * n + j] = std::min(t[i * n + j], t[i * n + k] + t[k * n + j]);
    space = std::make_shared<const FiniteMetricSpace>(
        FiniteMetricSpace::from_table(ids, std::move(t)));
  }

  std::uniform_int_distribution<int> codomain_pick(0, 4);
  if (codomain_pick(rng) == 0) {
    std::vector<double> v(2 * n);
    for (double& y : v) y = unit(rng);
    return SampledMap::normed(space, std::move(v), 2, PNorm::L2);
  }
  const bool integer_values = mode == 1 || mode == 2;
  std::vector<double> v(n);
  for (double& y : v) y = integer_values ? small(rng) : 2.0 * unit(rng);
  return SampledMap::real(space, std::move(v));
}

}  // namespace lipderiv
