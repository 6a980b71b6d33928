// SPDX-License-Identifier: Apache-2.0
#include "lipderiv/sampled_map.hpp"

#include <cmath>
#include <utility>

#include "lipderiv/error.hpp"

namespace lipderiv {

namespace {

void check_finite(std::span<const double> v) {
  for (double c : v)
    if (!std::isfinite(c)) throw InputError("non-finite sampled value");
}

}  // namespace

SampledMap SampledMap::real(SpacePtr domain, std::vector<double> values) {
  if (!domain) throw InputError("null domain");
  if (values.size() != domain->size()) throw InputError("one value per domain point required");
  check_finite(values);
  SampledMap f;
  f.domain_ = std::move(domain);
  f.values_ = std::move(values);
  return f;
}

SampledMap SampledMap::normed(SpacePtr domain, std::vector<double> flat_values, std::size_t dim,
                              PNorm p) {
  if (!domain) throw InputError("null domain");
  if (dim == 0 || flat_values.size() != domain->size() * dim)
    throw InputError("one codomain vector per domain point required");
  check_finite(flat_values);
  SampledMap f;
  f.domain_ = std::move(domain);
  f.kind_ = dim == 1 ? Codomain::Real : Codomain::Normed;
  f.values_ = std::move(flat_values);
  f.dim_ = dim;
  f.pnorm_ = p;
  return f;
}

SampledMap SampledMap::into_space(SpacePtr domain, FiniteMetricSpace codomain,
                                  std::vector<std::size_t> image) {
  if (!domain) throw InputError("null domain");
  if (image.size() != domain->size()) throw InputError("one image point per domain point required");
  for (std::size_t y : image)
    if (y >= codomain.size()) throw InputError("image index outside codomain");
  if (!validate_metric(codomain).empty()) throw InputError("codomain distances are not a metric");
  SampledMap f;
  f.domain_ = std::move(domain);
  f.kind_ = Codomain::Table;
  f.codomain_space_ = std::make_shared<const FiniteMetricSpace>(std::move(codomain));
  f.image_ = std::move(image);
  return f;
}

double SampledMap::image_distance(std::size_t u, std::size_t v) const {
  switch (kind_) {
    case Codomain::Real: return std::abs(values_[u] - values_[v]);
    case Codomain::Normed: return norm_distance(value(u), value(v), pnorm_);
    case Codomain::Table: return codomain_space_->distance(image_[u], image_[v]);
  }
  return 0.0;
}

double SampledMap::quotient(std::size_t u, std::size_t v) const {
  if (u > v) std::swap(u, v);
  return image_distance(u, v) / domain_->distance(u, v);
}

std::span<const double> SampledMap::real_values() const {
  if (kind_ != Codomain::Real) throw InputError("map is not real-valued");
  return values_;
}

std::span<const double> SampledMap::value(std::size_t i) const {
  if (kind_ == Codomain::Table) throw InputError("table-valued map has no coordinates");
  return std::span<const double>(values_).subspan(i * dim_, dim_);
}

}  // namespace lipderiv
