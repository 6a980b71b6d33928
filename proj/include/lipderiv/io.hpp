// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "lipderiv/envelopes.hpp"
#include "lipderiv/harness.hpp"
#include "lipderiv/metric_space.hpp"
#include "lipderiv/sampled_map.hpp"
#include "lipderiv/scales.hpp"
#include "lipderiv/setclass.hpp"

namespace lipderiv::io {

// Text formats. Blank lines and lines starting with '#' are ignored by every
// parser. Parse errors are InputError naming the source and line number.

/// Header `id,<coords...>[,<values...>]`: columns whose name starts with 'x'
/// are coordinates (possibly none), the remaining columns after them are values.
struct PointCloud {
  std::vector<std::string> ids;
  std::size_t dim = 0;
  std::vector<double> coords;  // ids.size() * dim
  std::size_t value_dim = 0;
  std::vector<double> values;  // ids.size() * value_dim
};

std::string read_file(const std::string& path);
/// Writes through a temporary file in the same directory, then renames it into place.
void write_file_atomic(const std::string& path, std::string_view content);

/// Accepts decimal numbers and inf, +inf, -inf (also "infinity"); rejects NaN.
double parse_number(std::string_view token);
/// 17 significant digits, "inf" / "-inf" for infinities.
std::string format_number(double v);

PointCloud parse_point_cloud(std::string_view text, const std::string& source);
/// First row: empty corner cell then ids; each further row: id then distances.
FiniteMetricSpace parse_distance_matrix(std::string_view text, const std::string& source);
/// `id,value` rows; ids are looked up in `space`, every point must appear once.
ScalarField parse_scalar_field(std::string_view text, const std::string& source, SpacePtr space);
/// `ground: a,b,c` header, then one member per line as comma-separated ids; `{}` is the empty set.
SetFamily parse_set_family(std::string_view text, const std::string& source);

/// Values of the cloud as a map; one value column gives a real map, more give R^m under `p`.
SampledMap map_from_cloud(const PointCloud& cloud, SpacePtr domain, PNorm p);

std::string format_point_cloud(const SampledMap& f);
std::string format_scalar_field(const ScalarField& g);
std::string format_set_family(const SetFamily& fam);
/// One row per (point, radius) with every scale functional.
std::string format_profile(const SampledMap& f, const ScaleProfile& p);
/// One row per point with the limit estimates and flags.
std::string format_profile_summary(const SampledMap& f, const ScaleProfile& p);

/// Machine-readable report: one record per check plus totals. Infinities are the strings "inf"/"-inf".
std::string report_json(const SuiteReport& report);
/// Fixed-width table for terminals.
std::string report_table(const SuiteReport& report);

}  // namespace lipderiv::io
