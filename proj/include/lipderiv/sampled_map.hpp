// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "lipderiv/metric_space.hpp"

namespace lipderiv {

/// A map f: X -> Y sampled on a finite metric space X. The codomain is the
/// real line, R^m under a p-norm, or an abstract finite metric space given by
/// a distance table (values are then point indices into that space).
class SampledMap {
 public:
  enum class Codomain { Real, Normed, Table };

  static SampledMap real(SpacePtr domain, std::vector<double> values);
  static SampledMap normed(SpacePtr domain, std::vector<double> flat_values, std::size_t dim,
                           PNorm p);
  /// Validates the codomain table as a metric on ingestion.
  static SampledMap into_space(SpacePtr domain, FiniteMetricSpace codomain,
                               std::vector<std::size_t> image);

  const FiniteMetricSpace& domain() const { return *domain_; }
  const SpacePtr& domain_ptr() const { return domain_; }
  std::size_t size() const { return domain_->size(); }
  Codomain codomain() const { return kind_; }
  std::size_t codomain_dim() const { return dim_; }

  /// |f(u) - f(v)|_Y.
  double image_distance(std::size_t u, std::size_t v) const;
  /// |f(u) - f(v)|_Y / |u - v|_X for u != v, evaluated in a canonical argument
  /// order so every caller sees the same rounded value for a given pair.
  double quotient(std::size_t u, std::size_t v) const;

  /// Real values (only for the Real codomain).
  std::span<const double> real_values() const;
  std::span<const double> value(std::size_t i) const;

 private:
  SampledMap() = default;

  SpacePtr domain_;
  Codomain kind_ = Codomain::Real;
  std::vector<double> values_;
  std::size_t dim_ = 1;
  PNorm pnorm_ = PNorm::L2;
  std::shared_ptr<const FiniteMetricSpace> codomain_space_;
  std::vector<std::size_t> image_;
};

}  // namespace lipderiv
