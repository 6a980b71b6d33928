// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>
#include <limits>

#include "format.hpp"
#include "lipderiv/envelopes.hpp"
#include "lipderiv/error.hpp"
#include "lipderiv/harness.hpp"
#include "parallel.hpp"

namespace lipderiv {

using detail::num;

namespace {

std::size_t find_sample(const FiniteMetricSpace& s, std::span<const double> p, double scale) {
  const double eps = 1e-9 * std::max(1.0, scale);
  for (std::size_t i = 0; i < s.size(); ++i) {
    auto c = s.coords(i);
    bool same = true;
    for (std::size_t k = 0; k < p.size() && same; ++k) same = std::abs(c[k] - p[k]) <= eps;
    if (same) return i;
  }
  throw InputError("segment point is not a sample point of the domain");
}

/// Largest |g(x) - g(y)| over nearest-neighbour pairs.
double neighbour_oscillation(const ScalarField& g) {
  const auto& s = g.space();
  double osc = 0.0;
  auto offer = [&](std::size_t x, std::size_t u) {
    if (std::isfinite(g[u]) && std::isfinite(g[x])) osc = std::max(osc, std::abs(g[u] - g[x]));
  };
  if (s.is_line()) {
    const auto& order = s.line_order();
    for (std::size_t k = 1; k < order.size(); ++k) offer(order[k - 1], order[k]);
    return osc;
  }
  for (std::size_t x = 0; x < s.size(); ++x) {
    double nearest = std::numeric_limits<double>::infinity();
    for (std::size_t u = 0; u < s.size(); ++u)
      if (u != x) nearest = std::min(nearest, s.distance(u, x));
    for (std::size_t u = 0; u < s.size(); ++u)
      if (u != x && s.distance(u, x) == nearest) offer(x, u);
  }
  return osc;
}

}  // namespace

CheckResult check_segment_chain_rule(const SampledMap& f, std::span<const double> a,
                                     std::span<const double> b, std::size_t steps, double rho_max) {
  const auto& dom = f.domain();
  if (f.codomain() != SampledMap::Codomain::Real) throw InputError("segment check needs a real-valued map");
  if (!dom.has_embedding()) throw InputError("segment check needs a normed domain");
  if (a.size() != dom.dim() || b.size() != dom.dim())
    throw InputError("segment endpoints do not match the domain dimension");
  if (steps < 1) throw InputError("segment needs at least one step");
  if (!(rho_max > 0.0)) throw InputError("rho_max must be positive");
  const double len = norm_distance(a, b, dom.pnorm());
  if (!(len > 0.0)) throw InputError("segment endpoints coincide");

  double scale = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) scale = std::max({scale, std::abs(a[k]), std::abs(b[k])});
  std::vector<double> s(steps + 1);
  std::vector<std::size_t> image(steps + 1);
  std::vector<double> gv(steps + 1), pt(a.size());
  for (std::size_t i = 0; i <= steps; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(steps);
    for (std::size_t k = 0; k < a.size(); ++k) pt[k] = a[k] * (1.0 - t) + b[k] * t;
    s[i] = t;
    image[i] = find_sample(dom, pt, scale);
  }
  for (std::size_t i = 0; i <= steps; ++i) gv[i] = f.real_values()[image[i]];
  const SampledMap g = SampledMap::real(
      std::make_shared<const FiniteMetricSpace>(FiniteMetricSpace::on_line(s)), gv);

  CheckResult out{.name = "segment_chain_rule"};
  double bound_scale = 1.0;
  for (std::size_t i = 0; i <= steps; ++i) {
    std::vector<double> rhos;
    for_each_in_punctured_ball(g.domain(), i, rho_max, false,
                               [&](std::size_t, double d) { rhos.push_back(d); });
    std::sort(rhos.begin(), rhos.end());
    rhos.erase(std::unique(rhos.begin(), rhos.end()), rhos.end());
    if (rhos.empty()) continue;
    double lhs = std::numeric_limits<double>::infinity(), rhs = lhs;
    for (double rho : rhos) {
      lhs = std::min(lhs, lip_upper_r_closed(g, i, rho));
      rhs = std::min(rhs, len * lip_upper_r_closed(f, image[i], rho * len * (1.0 + 1e-12)));
    }
    bound_scale = std::max(bound_scale, rhs);
    if (lhs - rhs > out.discrepancy || out.witness.empty()) {
      out.discrepancy = std::max(out.discrepancy, lhs - rhs);
      out.witness = "s=" + num(s[i]) + " lip g=" + num(lhs) + " bound=" + num(rhs);
    }
  }
  out.tolerance = 1e-9 * bound_scale;
  out.note = "closed-ball little derivative of f o T vs |b-a| times that of f, matched radii";
  return finish(out);
}

CheckResult check_measure_bound(const IntervalUnion& e, double lo, double hi, double resolution) {
  if (!(hi > lo)) throw InputError("span must be a nonempty interval");
  SampledMap f = sample_on_line([&](double u) { return interval_measure_map(e, lo, u); }, lo, hi,
                                resolution);
  const auto xs = uniform_grid(lo, hi, resolution);
  const std::size_t n = f.size();

  std::vector<std::pair<double, std::size_t>> worst(n, {0.0, 0});
  detail::parallel_for(n, [&](std::size_t u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      const double a = std::min(xs[u], xs[v]), b = std::max(xs[u], xs[v]);
      const double gap = std::abs(f.image_distance(u, v) - e.measure_within(a, b));
      if (gap > worst[u].first) worst[u] = {gap, v};
    }
  });

  CheckResult out{.name = "measure_bound", .tolerance = 1e-12};
  std::string where;
  for (std::size_t u = 0; u < n; ++u)
    if (worst[u].first > out.discrepancy) {
      out.discrepancy = worst[u].first;
      where = "pair=" + num(xs[u]) + "," + num(xs[worst[u].second]) + " (measure identity)";
    }

  RadiusGrid grid{.r_max = 4.0 * resolution, .q = 0.5, .steps = 2, .tail_window = 1};
  const ScaleProfile p = scale_profile(f, grid, ScaleOptions{.compute_loc = false});
  for (std::size_t i = 0; i < n; ++i) {
    const double lip = p.summary[i].lip_hat;
    double excess = 0.0;
    if (e.contains(xs[i]))
      excess = lip - 1.0;
    else if (e.distance_to(xs[i]) > 1.5 * resolution)
      excess = lip;
    if (excess > out.discrepancy) {
      out.discrepancy = excess;
      where = "point=" + num(xs[i]) + " lip-hat=" + num(lip);
    }
  }
  out.witness = where;
  out.note = "|f(a)-f(b)| = |[a,b] & E| for all pairs; lip-hat <= 1 on E, 0 off E";
  return finish(out);
}

CheckResult check_envelope_identity(const SampledMap& f, double h, const EnvelopeOptions& opt) {
  if (f.codomain() != SampledMap::Codomain::Real)
    return skipped("envelope_identity", "only real-valued maps are covered");
  if (!(opt.resolution > 0.0)) throw InputError("envelope check needs the sample resolution");
  if (!(h >= 4.0 * opt.resolution)) throw InputError("envelope scale h is below the sample resolution");

  // Five radii from h/2 down to 1.5 * resolution, so the limit estimates see
  // only nearest neighbours at the last radius.
  const double top = h / 2.0, bottom = 1.5 * opt.resolution;
  const int steps = 5;
  RadiusGrid fine{.r_max = top, .q = std::pow(bottom / top, 1.0 / (steps - 1)), .steps = steps, .tail_window = 1};
  const ScaleProfile p = scale_profile(f, fine, ScaleOptions{.compute_loc = false});
  std::vector<double> little(f.size()), big(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    little[i] = p.summary[i].lip_hat;
    big[i] = p.summary[i].big_hat;
  }
  RadiusGrid at_h{.r_max = h, .q = 0.5, .steps = 1, .tail_window = 1};
  const ScaleProfile ph = scale_profile(f, at_h);
  std::vector<double> loc(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) loc[i] = ph.at(i, 0).loc;

  const auto& space = f.domain_ptr();
  const ScalarField loc_field(space, loc);
  const ScalarField up_little = baire_upper(ScalarField(space, little), h);
  const ScalarField up_big = baire_upper(ScalarField(space, big), h);

  CheckResult out{.name = "envelope_identity"};
  out.tolerance = neighbour_oscillation(loc_field) + opt.rel_tol * sup_value(loc_field);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double gap = std::max({std::abs(up_little[i] - loc[i]), std::abs(up_big[i] - loc[i]),
                                 std::abs(up_little[i] - up_big[i])});
    if (gap > out.discrepancy || out.witness.empty()) {
      out.discrepancy = std::max(out.discrepancy, gap);
      out.witness = "point=" + f.domain().id(i) + " lip^=" + num(up_little[i]) +
                    " Lip^=" + num(up_big[i]) + " LLip^h=" + num(loc[i]);
    }
  }
  out.note = "tol = neighbour oscillation of LLip^h + " + num(opt.rel_tol) + " * sup LLip^h";
  return finish(out);
}

OpennessData openness_data(const SampledMap& f, std::size_t x0, double r, double gamma) {
  if (x0 >= f.size()) throw InputError("point index out of range");
  if (!(r > 0.0)) throw InputError("radius must be positive");
  OpennessData d{.x0 = x0, .r = r, .gamma = gamma};
  d.center = loc_lip_r(f, x0, r);
  for (std::size_t x : ball(f.domain(), x0, r / 2.0, false))
    d.half.emplace_back(x, loc_lip_r(f, x, r / 2.0));
  return d;
}

CheckResult check_openness_surrogate(const OpennessData& d) {
  const std::string name = "openness_surrogate";
  if (!(d.center < d.gamma)) return skipped(name, "LLip^r(x0) is not below gamma");
  CheckResult out{.name = name, .tolerance = 0.0};
  for (const auto& [x, v] : d.half) {
    const double excess = v - d.center;
    if (excess > out.discrepancy) {
      out.discrepancy = excess;
      out.witness = "point=" + std::to_string(x) + " LLip^{r/2}=" + num(v) + " LLip^r(x0)=" + num(d.center);
    }
  }
  out.note = "LLip^{r/2}(x) <= LLip^r(x0) < gamma on B(x0, r/2), exact";
  return finish(out);
}

CheckResult check_openness_surrogate(const SampledMap& f, std::size_t x0, double r, double gamma) {
  return check_openness_surrogate(openness_data(f, x0, r, gamma));
}

CheckResult check_semicontinuity_fields(const SampledMap& f, double r, double h,
                                        std::optional<double> omega_slope, bool continuous,
                                        double margin) {
  const std::string name = "semicontinuity_fields";
  if (!continuous) return skipped(name, "entry is not continuous");
  if (!omega_slope) return skipped(name, "no modulus-of-continuity bound for this entry");
  if (!(r > 0.0) || !(h > 0.0)) throw InputError("radius and scale must be positive");

  const ScaleProfile p = scale_profile(f, RadiusGrid{.r_max = r, .q = 0.5, .steps = 1, .tail_window = 1});
  const std::size_t n = f.size();
  std::vector<double> little(n), big(n), loc(n);
  for (std::size_t i = 0; i < n; ++i) {
    little[i] = p.at(i, 0).little_below;
    big[i] = p.at(i, 0).big_below;
    loc[i] = p.at(i, 0).loc;
  }
  const auto& space = f.domain_ptr();
  struct Field {
    const char* label;
    ScalarField defect;
  };
  const Field fields[] = {{"usc defect of lip_r", usc_defect(ScalarField(space, little), h)},
                          {"lsc defect of Lip_r", lsc_defect(ScalarField(space, big), h)},
                          {"usc defect of LLip^r", usc_defect(ScalarField(space, loc), h)}};

  std::vector<bool> scored(n, true);
  if (margin > 0.0) {
    const auto& dom = f.domain();
    if (!dom.has_embedding()) throw InputError("an interior margin needs a normed domain");
    std::vector<double> lo(dom.dim(), std::numeric_limits<double>::infinity()), hi(dom.dim(), -lo[0]);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t c = 0; c < dom.dim(); ++c) {
        lo[c] = std::min(lo[c], dom.coords(i)[c]);
        hi[c] = std::max(hi[c], dom.coords(i)[c]);
      }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t c = 0; c < dom.dim(); ++c)
        if (dom.coords(i)[c] < lo[c] + margin || dom.coords(i)[c] > hi[c] - margin) scored[i] = false;
  }

  CheckResult out{.name = name, .tolerance = *omega_slope * h + 1e-9};
  for (const auto& fld : fields)
    for (std::size_t i = 0; i < n; ++i)
      if (scored[i] && (fld.defect[i] > out.discrepancy || out.witness.empty())) {
        out.discrepancy = std::max(out.discrepancy, fld.defect[i]);
        out.witness = std::string(fld.label) + " at point=" + f.domain().id(i);
      }
  out.note = "omega(h) = " + num(*omega_slope) + " * h, plus 1e-9 rounding allowance";
  if (margin > 0.0) out.note += "; points within " + num(margin) + " of the boundary not scored";
  return finish(out);
}

}  // namespace lipderiv
