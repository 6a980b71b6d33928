// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <random>

#include "lipderiv/sampled_map.hpp"
#include "lipderiv/scales.hpp"

namespace lipderiv {

// Naive reference evaluation of the scale functionals straight from their
// definitions: ball enumeration for the suprema and a dense radius sweep
// (every neighbour distance plus evenly spaced radii) for the infima.
// Quadratic or worse; meant for small spaces and cross-checking.
namespace reference {

double lip_upper(const SampledMap& f, std::size_t x, double r);
double lip_upper_closed(const SampledMap& f, std::size_t x, double r);
double big_below(const SampledMap& f, std::size_t x, double r);
double little_below(const SampledMap& f, std::size_t x, double r, int dense_samples = 64);
double little_closed_below(const SampledMap& f, std::size_t x, double r);
double loc(const SampledMap& f, std::size_t x, double r);
double lip_norm(const SampledMap& f);
ScaleRow row(const SampledMap& f, std::size_t x, double r);

}  // namespace reference

/// Random finite metric space with 2..max_points points and random real
/// values. Alternates between p-norm embeddings (continuous or integer
/// coordinates, so distance ties occur) and shortest-path metrics of random
/// weighted graphs.
SampledMap random_sampled_map(std::size_t max_points, std::mt19937_64& rng);

}  // namespace lipderiv
