// SPDX-License-Identifier: Apache-2.0
#include "lipderiv/zoo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "lipderiv/error.hpp"

namespace lipderiv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kDyadicLevels = 20;

PointOracle constant_oracle(double v) {
  return [v](std::span<const double>) { return v; };
}

PointOracle same(std::function<double(double)> g) {
  return [g = std::move(g)](std::span<const double> p) { return g(p[0]); };
}

std::function<double(std::span<const double>)> lift(std::function<double(double)> g) {
  return [g = std::move(g)](std::span<const double> p) { return g(p[0]); };
}

ZooEntry line_entry(std::string name, char tag, double res, std::function<double(double)> fn,
                    double lo, double hi, ZooOracle oracle, bool continuous) {
  ZooEntry e{.name = std::move(name),
             .tag = tag,
             .resolution = res,
             .map = sample_on_line(fn, lo, hi, res),
             .oracle = std::move(oracle),
             .convex_domain = true,
             .continuous = continuous,
             .lo = lo,
             .hi = hi,
             .fn = lift(fn),
             .linear = std::nullopt,
             .measure_set = std::nullopt};
  return e;
}

ZooEntry smooth_entry(std::string name, double res, std::function<double(double)> fn,
                      std::function<double(double)> deriv, double lo, double hi, double max_second,
                      double lip_norm) {
  auto d = same([deriv](double u) { return std::abs(deriv(u)); });
  return line_entry(std::move(name), 'b', res, std::move(fn), lo, hi,
                    ZooOracle{d, d, d, lip_norm, max_second}, true);
}

double dyadic(double u) {
  double a = std::abs(u);
  if (a >= 1.0) return 1.0;
  for (int n = 1; n <= kDyadicLevels; ++n) {
    double lower = std::ldexp(1.0, -n);
    if (a >= lower) return lower;
  }
  return 0.0;
}

bool dyadic_breakpoint(double u) {
  double a = std::abs(u);
  for (int n = 0; n <= kDyadicLevels; ++n)
    if (a == std::ldexp(1.0, -n)) return true;
  return false;
}

double oscillator(double u) { return u == 0.0 ? 0.0 : u * u * std::sin(1.0 / u); }
double oscillator_slope(double u) {
  return u == 0.0 ? 0.0 : std::abs(2.0 * u * std::sin(1.0 / u) - std::cos(1.0 / u));
}

double oscillator_lip_norm() {
  // sup |f'| on [-1,1]; |f'| is even, so scanning (0,1] suffices.
  static const double value = [] {
    double m = 0.0;
    const int n = 2'000'000;
    for (int i = 1; i <= n; ++i) m = std::max(m, oscillator_slope(static_cast<double>(i) / n));
    return m;
  }();
  return value;
}

ZooEntry linear_entry(std::string name, double res, LinearMapSpec a, double op_norm) {
  const double step = std::max(res, 0.02);
  SpacePtr dom = square_lattice(0.0, 0.0, 1.0, step);
  std::vector<double> values;
  values.reserve(dom->size() * a.rows());
  for (std::size_t i = 0; i < dom->size(); ++i) {
    auto y = a.apply(dom->coords(i));
    values.insert(values.end(), y.begin(), y.end());
  }
  auto o = constant_oracle(op_norm);
  ZooEntry e{.name = std::move(name),
             .tag = 'g',
             .resolution = step,
             .map = SampledMap::normed(dom, std::move(values), a.rows(), PNorm::L2),
             .oracle = ZooOracle{o, o, o, op_norm, 0.0},
             .convex_domain = true,
             .continuous = true,
             .lo = 0.0,
             .hi = 0.0,
             .fn = nullptr,
             .linear = a,
             .measure_set = std::nullopt};
  return e;
}

}  // namespace

std::vector<double> uniform_grid(double lo, double hi, double step) {
  if (!(step > 0.0)) throw InputError("resolution must be positive");
  if (!(hi > lo)) throw InputError("empty interval");
  const auto n = static_cast<std::size_t>(std::llround((hi - lo) / step));
  std::vector<double> xs(n + 1);
  const double dn = static_cast<double>(n);
  for (std::size_t i = 0; i <= n; ++i) {
    const double t = static_cast<double>(i);
    xs[i] = (lo * (dn - t) + hi * t) / dn;
  }
  return xs;
}

SampledMap sample_on_line(const std::function<double(double)>& fn, double lo, double hi,
                          double step) {
  auto xs = uniform_grid(lo, hi, step);
  std::vector<double> vals(xs.size());
  std::transform(xs.begin(), xs.end(), vals.begin(), fn);
  auto dom = std::make_shared<const FiniteMetricSpace>(FiniteMetricSpace::on_line(xs));
  return SampledMap::real(std::move(dom), std::move(vals));
}

SpacePtr square_lattice(double cx, double cy, double half_width, double step) {
  auto xs = uniform_grid(cx - half_width, cx + half_width, step);
  auto ys = uniform_grid(cy - half_width, cy + half_width, step);
  std::vector<std::string> ids;
  std::vector<double> coords;
  ids.reserve(xs.size() * ys.size());
  coords.reserve(2 * xs.size() * ys.size());
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = 0; j < ys.size(); ++j) {
      ids.push_back(std::to_string(ids.size()));
      coords.push_back(xs[i]);
      coords.push_back(ys[j]);
    }
  return std::make_shared<const FiniteMetricSpace>(
      FiniteMetricSpace::from_embedding(std::move(ids), std::move(coords), 2, PNorm::L2));
}

double interval_measure_map(const IntervalUnion& e, double span_lo, double u) {
  return e.measure_within(span_lo, u);
}

std::vector<std::string> zoo_names() {
  return {"constant", "affine",          "sin",          "square",       "cube",
          "abs",      "sqrt_abs",        "dyadic",       "oscillator",   "linear_diag",
          "linear_rotation", "linear_shear", "discrete_pair", "measure_map"};
}

ZooEntry make_entry(const std::string& name, double res) {
  if (!(res > 0.0)) throw InputError("resolution must be positive");
  using std::numbers::pi;

  if (name == "constant") {
    auto z = constant_oracle(0.0);
    return line_entry(name, 'a', res, [](double) { return 1.5; }, -1.0, 1.0,
                      ZooOracle{z, z, z, 0.0, 0.0}, true);
  }
  if (name == "affine") {
    auto s = constant_oracle(3.0);
    return line_entry(name, 'a', res, [](double u) { return 3.0 * u - 0.5; }, -1.0, 1.0,
                      ZooOracle{s, s, s, 3.0, 0.0}, true);
  }
  if (name == "sin")
    return smooth_entry(name, res, [](double u) { return std::sin(u); },
                        [](double u) { return std::cos(u); }, 0.0, pi, 1.0, 1.0);
  if (name == "square")
    return smooth_entry(name, res, [](double u) { return u * u; },
                        [](double u) { return 2.0 * u; }, 0.0, 2.0, 2.0, 4.0);
  if (name == "cube")
    return smooth_entry(name, res, [](double u) { return u * u * u; },
                        [](double u) { return 3.0 * u * u; }, -1.0, 1.0, 6.0, 3.0);
  if (name == "abs") {
    auto one = constant_oracle(1.0);
    return line_entry(name, 'c', res, [](double u) { return std::abs(u); }, -1.0, 1.0,
                      ZooOracle{one, one, one, 1.0, 0.0}, true);
  }
  if (name == "sqrt_abs") {
    auto d = same([](double u) { return u == 0.0 ? kInf : 0.5 / std::sqrt(std::abs(u)); });
    return line_entry(name, 'd', res, [](double u) { return std::sqrt(std::abs(u)); }, -1.0, 1.0,
                      ZooOracle{d, d, d, kInf, std::nullopt}, true);
  }
  if (name == "dyadic") {
    auto make = [](double at_zero) {
      return same([at_zero](double u) {
        if (u == 0.0) return at_zero;
        return dyadic_breakpoint(u) ? kInf : 0.0;
      });
    };
    return line_entry(name, 'e', res, dyadic, -1.0, 1.0,
                      ZooOracle{make(0.5), make(1.0), make(kInf), kInf, std::nullopt}, false);
  }
  if (name == "oscillator") {
    auto pointwise = same(oscillator_slope);
    auto local = same([](double u) { return u == 0.0 ? 1.0 : oscillator_slope(u); });
    return line_entry(name, 'f', res, oscillator, -1.0, 1.0,
                      ZooOracle{pointwise, pointwise, local, oscillator_lip_norm(), std::nullopt},
                      true);
  }
  if (name == "linear_diag")
    return linear_entry(name, res, LinearMapSpec(2, 2, {2.0, 0.0, 0.0, 1.0}), 2.0);
  if (name == "linear_rotation") {
    const double c = std::cos(0.7), s = std::sin(0.7);
    return linear_entry(name, res, LinearMapSpec(2, 2, {c, -s, s, c}), 1.0);
  }
  if (name == "linear_shear")
    return linear_entry(name, res, LinearMapSpec(2, 2, {1.0, 1.0, 0.0, 1.0}),
                        (1.0 + std::sqrt(5.0)) / 2.0);
  if (name == "discrete_pair") {
    auto dom = std::make_shared<const FiniteMetricSpace>(FiniteMetricSpace::discrete({"a", "b"}));
    auto z = constant_oracle(0.0);
    ZooEntry e{.name = name,
               .tag = 'h',
               .resolution = 1.0,
               .map = SampledMap::real(dom, {0.0, 1.0}),
               .oracle = ZooOracle{z, z, z, 1.0, std::nullopt},
               .convex_domain = false,
               .continuous = true,
               .lo = 0.0,
               .hi = 0.0,
               .fn = nullptr,
               .linear = std::nullopt,
               .measure_set = std::nullopt};
    return e;
  }
  if (name == "measure_map") {
    IntervalUnion set({{0.2, 0.4}, {0.6, 0.9}});
    auto ind = same([set](double u) { return set.contains(u) ? 1.0 : 0.0; });
    auto e = line_entry(name, 'i', res, [set](double u) { return interval_measure_map(set, 0.0, u); },
                        0.0, 1.0, ZooOracle{ind, ind, ind, 1.0, std::nullopt}, true);
    e.measure_set = set;
    return e;
  }
  throw InputError("unknown zoo entry '" + name + "'");
}

std::vector<ZooEntry> make_zoo(double resolution) {
  std::vector<ZooEntry> out;
  for (const auto& n : zoo_names()) out.push_back(make_entry(n, resolution));
  return out;
}

ScalarField oracle_field(const ZooEntry& entry, Derivative which) {
  const auto& space = entry.map.domain();
  const PointOracle& o = which == Derivative::Little ? entry.oracle.lip
                         : which == Derivative::Big  ? entry.oracle.big
                                                     : entry.oracle.loc;
  std::vector<double> v(space.size());
  for (std::size_t i = 0; i < space.size(); ++i) {
    if (space.has_embedding())
      v[i] = o(space.coords(i));
    else
      v[i] = o(std::span<const double>{});
  }
  return ScalarField(entry.map.domain_ptr(), std::move(v));
}

}  // namespace lipderiv
