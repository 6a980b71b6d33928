// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lipderiv/sampled_map.hpp"

namespace lipderiv {

/// Geometric radius grid r_k = r_max * q^k, k = 0..steps-1 (strictly decreasing).
/// The last `tail_window` radii feed the limit estimates' divergence test.
struct RadiusGrid {
  double r_max = 0.5;
  double q = 0.5;
  int steps = 8;
  int tail_window = 4;

  /// Throws InputError unless r_max > 0, q in (0,1), steps >= 1, 1 <= tail_window <= steps.
  void validate() const;
  double radius(int k) const;
  std::vector<double> radii() const;
  double smallest() const { return radius(steps - 1); }
};

// Pointwise scale functionals on a sampled map. All use the sup(empty) = 0
// convention and are exact on the sample. Throw InputError for r <= 0 or an
// out-of-range point.

/// sup over the open ball B(x,r) of |f(u)-f(x)| / r.
double lip_upper_r(const SampledMap& f, std::size_t x, double r);
/// Same over the closed ball B[x,r].
double lip_upper_r_closed(const SampledMap& f, std::size_t x, double r);
/// sup_{0<rho<r} Lip^rho f(x), evaluated as max of |f(u)-f(x)|/d(u,x) over 0 < d(u,x) < r.
double big_lip_below_r(const SampledMap& f, std::size_t x, double r);
/// inf of Lip^rho f(x) over rho in (d_1, r), by a breakpoint scan over the
/// distinct neighbour distances d_1 < d_2 < ... Returns 0 when no neighbour is
/// closer than r (the profile flags this as unresolved).
double little_lip_below_r(const SampledMap& f, std::size_t x, double r);
/// min over neighbour distances 0 < d_k < r of Lip^{d_k}_+ f(x): the little
/// derivative restricted to radii the sample actually resolves.
double little_lip_closed_below_r(const SampledMap& f, std::size_t x, double r);
/// Lipschitz constant of f restricted to the open ball B(x,r).
double loc_lip_r(const SampledMap& f, std::size_t x, double r);
/// Lipschitz constant of f over all pairs (0 for a single point).
double lip_norm(const SampledMap& f);

/// All functionals at one point and one radius.
struct ScaleRow {
  double lip_upper = 0.0;          // Lip^r
  double lip_upper_closed = 0.0;   // Lip^r_+
  double big_below = 0.0;          // Lip_r
  double little_below = 0.0;       // lip_r
  double little_closed_below = 0.0;
  double loc = 0.0;                // LLip^r
};

struct PointSummary {
  double lip_hat = 0.0;
  double big_hat = 0.0;
  double loc_hat = 0.0;
  /// Distance to the nearest other sample point (+inf for a singleton space).
  double nearest = 0.0;
  /// Nearest neighbour is not closer than the smallest grid radius.
  bool unresolved = false;
  /// Lip^r grows strictly over the tail window, by at least the divergence factor overall.
  bool divergent = false;
  /// min of Lip^r over the tail window (only when requested).
  std::optional<double> liminf_surrogate;
};

struct ScaleOptions {
  double divergence_factor = 2.0;
  bool report_liminf_surrogate = false;
  bool compute_loc = true;
};

/// Scale functionals at every grid radius for every point, plus limit estimates:
/// Lip-hat = Lip_r at the smallest radius (upper bound on the sample),
/// lip-hat = resolved little derivative at the smallest radius,
/// LLip-hat = LLip^r at the smallest radius whose ball holds a neighbour.
struct ScaleProfile {
  std::vector<double> radii;
  std::size_t points = 0;
  std::vector<ScaleRow> rows;  // rows[point * radii.size() + k]
  std::vector<PointSummary> summary;
  /// r_max exceeds the domain diameter.
  bool rmax_exceeds_diameter = false;

  const ScaleRow& at(std::size_t point, std::size_t k) const { return rows[point * radii.size() + k]; }
  ScaleRow& at(std::size_t point, std::size_t k) { return rows[point * radii.size() + k]; }
};

ScaleProfile scale_profile(const SampledMap& f, const RadiusGrid& grid,
                           const ScaleOptions& options = {});

/// Profile restricted to the listed points (rows/summary indexed in list order).
ScaleProfile scale_profile_at(const SampledMap& f, const RadiusGrid& grid,
                              const std::vector<std::size_t>& points,
                              const ScaleOptions& options = {});

}  // namespace lipderiv
