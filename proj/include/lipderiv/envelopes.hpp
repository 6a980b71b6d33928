// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <vector>

#include "lipderiv/metric_space.hpp"

namespace lipderiv {

/// Extended-real value per point of a sampled space. +inf and -inf are allowed, NaN is not.
class ScalarField {
 public:
  ScalarField(SpacePtr space, std::vector<double> values);

  const FiniteMetricSpace& space() const { return *space_; }
  const SpacePtr& space_ptr() const { return space_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  const std::vector<double>& values() const { return values_; }

  ScalarField negated() const;

 private:
  SpacePtr space_;
  std::vector<double> values_;
};

// Envelopes at an explicit scale h: the neighbourhood of x is the open ball B(x,h).

/// max of g over B(x,h), x included.
ScalarField baire_upper(const ScalarField& g, double h);
/// min of g over B(x,h), x included.
ScalarField baire_lower(const ScalarField& g, double h);
/// max(0, max of g over B(x,h)\{x} - g(x)); 0 where the punctured ball is empty.
ScalarField usc_defect(const ScalarField& g, double h);
/// usc_defect of -g.
ScalarField lsc_defect(const ScalarField& g, double h);

double sup_value(const ScalarField& g);

}  // namespace lipderiv
