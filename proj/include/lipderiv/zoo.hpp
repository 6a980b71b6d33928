// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lipderiv/envelopes.hpp"
#include "lipderiv/interval_union.hpp"
#include "lipderiv/linear_map.hpp"
#include "lipderiv/sampled_map.hpp"

namespace lipderiv {

/// Analytic values of the three Lipschitz derivatives at a domain point.
using PointOracle = std::function<double(std::span<const double>)>;

struct ZooOracle {
  PointOracle lip, big, loc;
  double lip_norm = 0.0;
  /// Semicontinuity-defect bound omega(h) = slope * h, when one is known.
  std::optional<double> omega_slope;
};

/// A test function with known derivatives, sampled at a given resolution.
struct ZooEntry {
  std::string name;
  char tag = '?';  // family letter (a)..(i)
  double resolution = 0.0;
  SampledMap map;
  ZooOracle oracle;
  bool convex_domain = false;
  bool continuous = false;
  /// Domain bounds for one-dimensional entries (lo == hi otherwise).
  double lo = 0.0, hi = 0.0;
  /// Real-valued analytic function (scalar entries on R or R^n).
  std::function<double(std::span<const double>)> fn;
  /// Present for the linear-map entries.
  std::optional<LinearMapSpec> linear;
  /// Present for the interval-measure entry.
  std::optional<IntervalUnion> measure_set;
};

std::vector<std::string> zoo_names();
/// Throws InputError for an unknown name or a non-positive resolution.
ZooEntry make_entry(const std::string& name, double resolution);
std::vector<ZooEntry> make_zoo(double resolution);

enum class Derivative { Little, Big, Local };
ScalarField oracle_field(const ZooEntry& entry, Derivative which);

/// n+1 evenly spaced points from lo to hi (n = round((hi-lo)/step)); endpoints exact.
std::vector<double> uniform_grid(double lo, double hi, double step);
/// Real-valued sampled map of `fn` on a uniform grid of [lo, hi].
SampledMap sample_on_line(const std::function<double(double)>& fn, double lo, double hi, double step);
/// Square lattice of spacing `step` on [lo, hi]^2 around (cx, cy) under the Euclidean norm.
SpacePtr square_lattice(double cx, double cy, double half_width, double step);

/// f_E(u) = measure of [span_lo, u] intersected with E.
double interval_measure_map(const IntervalUnion& e, double span_lo, double u);

}  // namespace lipderiv
