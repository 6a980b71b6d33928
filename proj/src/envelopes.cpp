// SPDX-License-Identifier: Apache-2.0
#include "lipderiv/envelopes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lipderiv/error.hpp"
#include "parallel.hpp"

namespace lipderiv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_scale(double h) {
  if (!(h > 0.0)) throw InputError("envelope scale must be positive");
}

ScalarField ball_max(const ScalarField& g, double h) {
  check_scale(h);
  std::vector<double> out(g.size());
  detail::parallel_for(g.size(), [&](std::size_t x) {
    double m = g[x];
    for_each_in_punctured_ball(g.space(), x, h, false,
                               [&](std::size_t u, double) { m = std::max(m, g[u]); });
    out[x] = m;
  });
  return ScalarField(g.space_ptr(), std::move(out));
}

}  // namespace

ScalarField::ScalarField(SpacePtr space, std::vector<double> values)
    : space_(std::move(space)), values_(std::move(values)) {
  if (!space_) throw InputError("scalar field without a space");
  if (values_.size() != space_->size()) throw InputError("one field value per point required");
  for (double v : values_)
    if (std::isnan(v)) throw InputError("NaN in scalar field");
}

ScalarField ScalarField::negated() const {
  std::vector<double> v(values_);
  for (auto& c : v) c = -c;
  return ScalarField(space_, std::move(v));
}

ScalarField baire_upper(const ScalarField& g, double h) { return ball_max(g, h); }

ScalarField baire_lower(const ScalarField& g, double h) {
  return ball_max(g.negated(), h).negated();
}

ScalarField usc_defect(const ScalarField& g, double h) {
  check_scale(h);
  std::vector<double> out(g.size(), 0.0);
  detail::parallel_for(g.size(), [&](std::size_t x) {
    bool any = false;
    double m = -kInf;
    for_each_in_punctured_ball(g.space(), x, h, false, [&](std::size_t u, double) {
      any = true;
      m = std::max(m, g[u]);
    });
    if (!any || g[x] == kInf || m == -kInf) return;
    out[x] = std::max(0.0, m - g[x]);  // m = +inf or g[x] = -inf gives +inf
  });
  return ScalarField(g.space_ptr(), std::move(out));
}

ScalarField lsc_defect(const ScalarField& g, double h) { return usc_defect(g.negated(), h); }

double sup_value(const ScalarField& g) {
  double m = -kInf;
  for (double v : g.values()) m = std::max(m, v);
  return m;
}

}  // namespace lipderiv
