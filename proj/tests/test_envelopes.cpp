// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "lipderiv/envelopes.hpp"
#include "lipderiv/error.hpp"
#include "lipderiv/scales.hpp"
#include "oracles.hpp"

using namespace lipderiv;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

SpacePtr grid_space(int half, double step) {
  std::vector<double> xs;
  for (int i = -half; i <= half; ++i) xs.push_back(i * step);
  return std::make_shared<const FiniteMetricSpace>(FiniteMetricSpace::on_line(xs));
}

ScalarField indicator_at_zero(const SpacePtr& s) {
  std::vector<double> v(s->size(), 0.0);
  for (std::size_t i = 0; i < s->size(); ++i)
    if (s->coords(i)[0] == 0.0) v[i] = 1.0;
  return ScalarField(s, v);
}

/// Max of g over the open ball, by enumeration.
double ball_max(const ScalarField& g, std::size_t x, double h) {
  double m = -kInf;
  for (std::size_t u = 0; u < g.size(); ++u)
    if (g.space().distance(u, x) < h) m = std::max(m, g[u]);
  return m;
}

ScalarField random_field(const SpacePtr& s, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2, 2);
  std::vector<double> v;
  for (std::size_t i = 0; i < s->size(); ++i) {
    double r = u(rng);
    v.push_back(r > 1.9 ? kInf : r < -1.9 ? -kInf : r);
  }
  return ScalarField(s, v);
}

}  // namespace

TEST_CASE("upper envelope widens an indicator by one cell") {
  auto s = grid_space(10, 0.1);
  auto up = baire_upper(indicator_at_zero(s), 0.15);
  for (std::size_t i = 0; i < s->size(); ++i) {
    const double x = s->coords(i)[0];
    CHECK(up[i] == (std::abs(x) < 0.15 ? 1.0 : 0.0));
  }
}

TEST_CASE("lower envelope of an indicator vanishes when the ball has other points") {
  auto s = grid_space(10, 0.1);
  auto lo = baire_lower(indicator_at_zero(s), 0.15);
  for (std::size_t i = 0; i < s->size(); ++i) CHECK(lo[i] == 0.0);
  auto alone = baire_lower(indicator_at_zero(s), 0.05);
  CHECK(alone.values() == indicator_at_zero(s).values());
}

TEST_CASE("constant fields and tiny scales are fixed points") {
  auto s = grid_space(5, 0.2);
  ScalarField c(s, std::vector<double>(s->size(), 3.5));
  CHECK(baire_upper(c, 0.5).values() == c.values());
  CHECK(baire_lower(c, 0.5).values() == c.values());
  const auto ud = usc_defect(c, 0.5), ld = lsc_defect(c, 0.5);
  for (double v : ud.values()) CHECK(v == 0.0);
  for (double v : ld.values()) CHECK(v == 0.0);

  std::mt19937_64 rng(1);
  auto g = random_field(s, rng);
  CHECK(baire_upper(g, 0.1).values() == g.values());
}

TEST_CASE("usc defect of an open indicator at its boundary") {
  auto s = grid_space(10, 0.1);
  std::vector<double> v;
  for (std::size_t i = 0; i < s->size(); ++i) {
    const double x = s->coords(i)[0];
    v.push_back(x > 0.0 && x < 1.0 ? 1.0 : 0.0);
  }
  ScalarField g(s, v);
  auto d = usc_defect(g, 0.15);
  for (std::size_t i = 0; i < s->size(); ++i)
    if (s->coords(i)[0] == 0.0) CHECK(d[i] == 1.0);
}

TEST_CASE("defect of derivative fields of |u|") {
  std::vector<double> xs, ys;
  for (int i = -100; i <= 100; ++i) {
    xs.push_back(i / 100.0);
    ys.push_back(std::abs(xs.back()));
  }
  auto f = oracle::line_map(xs, ys);
  std::vector<double> loc, big;
  for (std::size_t i = 0; i < f.size(); ++i) {
    loc.push_back(loc_lip_r(f, i, 0.1));
    big.push_back(big_lip_below_r(f, i, 0.1));
  }
  const auto loc_defect = usc_defect(ScalarField(f.domain_ptr(), loc), 0.1);
  for (double v : loc_defect.values()) CHECK(v == doctest::Approx(0.0));
  const auto big_defect = lsc_defect(ScalarField(f.domain_ptr(), big), 0.1);
  double worst = 0.0;
  for (double v : big_defect.values()) worst = std::max(worst, v);
  CHECK(worst <= 0.2);
}

TEST_CASE("envelope identities on random fields") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> uh(0.05, 0.6);
  for (int t = 0; t < 100; ++t) {
    auto s = grid_space(8, 0.1);
    auto g = random_field(s, rng);
    const double h = uh(rng), h2 = h + uh(rng);
    auto up = baire_upper(g, h), up2 = baire_upper(g, h2), lo = baire_lower(g, h);
    auto dual = baire_upper(g.negated(), h).negated();
    auto twice = baire_upper(up, h), wide = baire_upper(g, 2 * h);
    auto ld = lsc_defect(g, h), ud = usc_defect(g.negated(), h);
    for (std::size_t i = 0; i < g.size(); ++i) {
      CHECK(up[i] == ball_max(g, i, h));
      CHECK(lo[i] <= g[i]);
      CHECK(g[i] <= up[i]);
      CHECK(up[i] <= up2[i]);
      CHECK(lo[i] == dual[i]);
      CHECK(twice[i] <= wide[i]);
      CHECK(ld[i] == ud[i]);
    }
  }
}

TEST_CASE("infinities follow extended-real max and min") {
  auto s = grid_space(1, 1.0);
  ScalarField g(s, {kInf, 0.0, -kInf});
  auto up = baire_upper(g, 1.5), lo = baire_lower(g, 1.5);
  CHECK(up[1] == kInf);
  CHECK(lo[1] == -kInf);
  ScalarField all(s, {kInf, kInf, kInf});
  CHECK(baire_lower(all, 5)[0] == kInf);
  CHECK(sup_value(g) == kInf);
  CHECK_THROWS_AS(ScalarField(s, {0.0, NAN, 1.0}), InputError);
}
