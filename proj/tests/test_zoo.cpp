// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "lipderiv/error.hpp"
#include "lipderiv/zoo.hpp"

using namespace lipderiv;

namespace {

double at_point(const ZooEntry& e, Derivative which, double u) {
  const PointOracle& o = which == Derivative::Little ? e.oracle.lip
                         : which == Derivative::Big  ? e.oracle.big
                                                     : e.oracle.loc;
  double p[1] = {u};
  return o(p);
}

/// Lip^r f(0) for a function with f(0) = 0, scanning u = k * 2^-22.
double lip_upper_at_zero(const std::function<double(std::span<const double>)>& fn, double r) {
  const double step = std::ldexp(1.0, -22);
  double m = 0.0;
  for (double u = step; u < r; u += step)
    for (double s : {u, -u}) {
      double p[1] = {s};
      m = std::max(m, std::abs(fn(p)));
    }
  return m / r;
}

}  // namespace

TEST_CASE("every named entry builds and unknown names raise") {
  for (const auto& name : zoo_names()) {
    ZooEntry e = make_entry(name, 0.01);
    CHECK(e.name == name);
    CHECK(e.map.size() >= 2);
  }
  CHECK(make_zoo(0.05).size() == zoo_names().size());
  CHECK_THROWS_AS(make_entry("nope", 0.01), InputError);
  CHECK_THROWS_AS(make_entry("sin", 0.0), InputError);
}

TEST_CASE("uniform grid hits both ends exactly") {
  auto xs = uniform_grid(-1.0, 1.0, 1e-3);
  CHECK(xs.size() == 2001);
  CHECK(xs.front() == -1.0);
  CHECK(xs.back() == 1.0);
  CHECK(xs[1000] == 0.0);
  CHECK_THROWS_AS(uniform_grid(1.0, 1.0, 0.1), InputError);
}

TEST_CASE("oracles at the origin") {
  auto abs = make_entry("abs", 1e-3);
  CHECK(at_point(abs, Derivative::Little, 0.0) == 1.0);
  CHECK(at_point(abs, Derivative::Big, 0.0) == 1.0);
  CHECK(at_point(abs, Derivative::Local, 0.0) == 1.0);

  auto dy = make_entry("dyadic", 1e-3);
  CHECK(at_point(dy, Derivative::Little, 0.0) == 0.5);
  CHECK(at_point(dy, Derivative::Big, 0.0) == 1.0);

  auto osc = make_entry("oscillator", 1e-3);
  CHECK(at_point(osc, Derivative::Little, 0.0) == 0.0);
  CHECK(at_point(osc, Derivative::Big, 0.0) == 0.0);
  CHECK(at_point(osc, Derivative::Local, 0.0) == 1.0);

  auto sq = make_entry("sqrt_abs", 1e-3);
  CHECK(std::isinf(at_point(sq, Derivative::Big, 0.0)));
}

TEST_CASE("oracle fields") {
  auto affine = make_entry("affine", 0.1);
  auto big = oracle_field(affine, Derivative::Big);
  for (double v : big.values()) CHECK(v == 3.0);

  auto square = make_entry("square", 1e-3);
  auto loc = oracle_field(square, Derivative::Local);
  for (std::size_t i = 0; i < loc.size(); ++i)
    if (loc.space().coords(i)[0] == 1.0) CHECK(loc[i] == 2.0);

  auto sq = make_entry("sqrt_abs", 1e-3);
  auto sbig = oracle_field(sq, Derivative::Big);
  for (std::size_t i = 0; i < sbig.size(); ++i)
    if (sbig.space().coords(i)[0] == 0.0) CHECK(std::isinf(sbig[i]));
}

TEST_CASE("dyadic staircase: radius scan gives liminf 1/2 and limsup 1 at 0") {
  // Frozen values the zoo oracle must reproduce.
  constexpr double kLittle = 0.5, kBig = 1.0;
  auto e = make_entry("dyadic", 1e-3);
  double lo = INFINITY, hi = 0.0;
  for (int n = 4; n <= 14; ++n)
    for (double scale : {1.0 - 1e-9, 1.0, 1.0 + 1e-9}) {
      double v = lip_upper_at_zero(e.fn, std::ldexp(scale, -n));
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  CHECK(lo == doctest::Approx(kLittle).epsilon(1e-6));
  CHECK(hi == doctest::Approx(kBig).epsilon(1e-6));
  CHECK(at_point(e, Derivative::Little, 0.0) == kLittle);
  CHECK(at_point(e, Derivative::Big, 0.0) == kBig);
}

TEST_CASE("oscillator: Lip^r(0) <= r and the slope reaches 1 near 0") {
  auto e = make_entry("oscillator", 1e-3);
  for (double r : {0.1, 0.01, 0.001}) CHECK(lip_upper_at_zero(e.fn, r) <= r);
  // |f'| = |2u sin(1/u) - cos(1/u)| is 1 - O(u) at u = 1/(k pi).
  double best = 0.0;
  for (int k = 100; k < 200; ++k) {
    double u = 1.0 / (k * std::numbers::pi), h = u * 1e-7;
    double p1[1] = {u + h}, p0[1] = {u - h};
    best = std::max(best, std::abs(e.fn(p1) - e.fn(p0)) / (2 * h));
  }
  CHECK(best == doctest::Approx(1.0).epsilon(1e-2));
  CHECK(e.oracle.lip_norm >= 1.0);
}

TEST_CASE("linear entries carry their operator norms") {
  CHECK(make_entry("linear_diag", 0.01).oracle.lip_norm == 2.0);
  CHECK(make_entry("linear_rotation", 0.01).oracle.lip_norm == 1.0);
  auto shear = make_entry("linear_shear", 0.01);
  CHECK(shear.oracle.lip_norm == doctest::Approx((1 + std::sqrt(5.0)) / 2));
  CHECK(shear.linear.has_value());
}

TEST_CASE("interval measure map") {
  IntervalUnion e({{0, 1}, {2, 3}});
  CHECK(interval_measure_map(e, 0.0, 3.0) == 2.0);
  CHECK(interval_measure_map(e, 0.0, 1.5) == 1.0);
  CHECK(interval_measure_map(IntervalUnion(), 0.0, 3.0) == 0.0);
  CHECK(interval_measure_map(IntervalUnion({{0, 3}}), 0.0, 2.25) == 2.25);
}
