// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "lipderiv/error.hpp"
#include "lipderiv/harness.hpp"
#include "lipderiv/zoo.hpp"
#include "oracles.hpp"

using namespace lipderiv;

namespace {

const RadiusGrid kGrid{.r_max = 0.064, .q = 0.5, .steps = 5, .tail_window = 3};

SampledMap on_box(double (*fn)(double, double)) {
  SpacePtr s = square_lattice(0.0, 0.0, 1.0, 0.05);
  std::vector<double> v;
  for (std::size_t i = 0; i < s->size(); ++i) v.push_back(fn(s->coords(i)[0], s->coords(i)[1]));
  return SampledMap::real(s, v);
}

std::size_t index_at(const SampledMap& f, double x) {
  for (std::size_t i = 0; i < f.size(); ++i)
    if (std::abs(f.domain().coords(i)[0] - x) < 1e-12) return i;
  return 0;
}

}  // namespace

TEST_CASE("check_chain is exact on zoo entries and random spaces") {
  for (const auto& e : make_zoo(0.01)) {
    auto r = check_chain(e.map, kGrid);
    CHECK_MESSAGE(r.status == CheckStatus::Pass, e.name);
    CHECK(r.discrepancy == 0.0);
  }
  std::mt19937_64 rng(100);
  for (int t = 0; t < 100; ++t) {
    auto f = oracle::random_map(rng, 10);
    CHECK(check_chain(f, RadiusGrid{.r_max = 2.0, .q = 0.6, .steps = 6, .tail_window = 2}).discrepancy == 0.0);
  }
}

TEST_CASE("check_chain fails on a perturbed profile with a witness") {
  auto e = make_entry("sin", 0.01);
  auto p = scale_profile(e.map, kGrid);
  p.at(3, 1).little_below = p.at(3, 1).big_below + 0.5;
  auto r = check_chain(p);
  CHECK(r.status == CheckStatus::Fail);
  CHECK(r.discrepancy >= 0.5);
  CHECK(r.witness.find("point=3") != std::string::npos);
}

TEST_CASE("check_plus_variant") {
  auto id = sample_on_line([](double u) { return u; }, -1.0, 1.0, 0.01);
  auto r = check_plus_variant(id, index_at(id, 0.2), 0.3);
  CHECK(r.status == CheckStatus::Pass);
  auto v = plus_variant_values(id, index_at(id, 0.2), 0.3);
  CHECK(v.alpha == doctest::Approx(1.0));

  std::mt19937_64 rng(8);
  for (int t = 0; t < 100; ++t) {
    auto f = oracle::random_map(rng, 8);
    auto res = check_plus_variant(f, 0, 1.5);
    CHECK(res.status != CheckStatus::Fail);
    CHECK(res.discrepancy <= 1e-12);
  }

  auto pair = make_entry("discrete_pair", 1.0).map;
  CHECK(lip_upper_r(pair, 0, 1.0) != lip_upper_r_closed(pair, 0, 1.0));
  CHECK(check_plus_variant(pair, 0, 1.5).status == CheckStatus::Pass);
  CHECK(check_plus_variant(pair, 0, 1.0).status == CheckStatus::Skipped);
}

TEST_CASE("check_frechet on diagonal, zero and rotation maps") {
  const double x0[] = {0.3, -0.7};
  auto diag = check_frechet(LinearMapSpec(2, 2, {2, 0, 0, 1}), x0, 1e-2);
  CHECK(diag.status == CheckStatus::Pass);
  CHECK(diag.discrepancy <= 0.02);
  auto zero = check_frechet(LinearMapSpec(2, 2, {0, 0, 0, 0}), x0, 1e-2);
  CHECK(zero.status == CheckStatus::Pass);
  CHECK(zero.discrepancy == 0.0);
  const double c = std::cos(0.4), s = std::sin(0.4);
  CHECK(check_frechet(LinearMapSpec(2, 2, {c, -s, s, c}), x0, 1e-2).status == CheckStatus::Pass);
  const double bad[] = {0.3};
  CHECK_THROWS_AS(check_frechet(LinearMapSpec(2, 2, {1, 0, 0, 1}), bad, 1e-2), InputError);
}

TEST_CASE("check_gamma_lipschitz") {
  auto sin = make_entry("sin", 1e-3);
  CHECK(check_gamma_lipschitz(sin.map, 1.0, kGrid).status == CheckStatus::Pass);
  auto c = make_entry("constant", 1e-2);
  CHECK(check_gamma_lipschitz(c.map, 0.0, kGrid).status == CheckStatus::Pass);
  auto sq = make_entry("sqrt_abs", 1e-3);
  auto r = check_gamma_lipschitz(sq.map, 1.0, kGrid);
  CHECK(r.status == CheckStatus::Skipped);
  CHECK(r.note.find("hypothesis-not-met") != std::string::npos);
  CHECK_THROWS_AS(check_gamma_lipschitz(sin.map, -1.0, kGrid), InputError);
}

TEST_CASE("check_lipnorm_identity") {
  auto sin = make_entry("sin", 1e-3);
  CHECK(check_lipnorm_identity(sin.map, kGrid).status == CheckStatus::Pass);
  auto c = make_entry("constant", 1e-2);
  CHECK(check_lipnorm_identity(c.map, kGrid).discrepancy == 0.0);
  auto lin = sample_on_line([](double u) { return 3.0 * u; }, -1.0, 1.0, 1e-2);
  auto coarse = RadiusGrid{.r_max = 0.64, .q = 0.5, .steps = 5, .tail_window = 3};
  CHECK(check_lipnorm_identity(lin, coarse).discrepancy <= 1e-9);
}

TEST_CASE("check_segment_chain_rule") {
  const double a[] = {0.0, 0.0}, b[] = {1.0, 0.0};
  auto coord = on_box([](double, double y) { return y; });
  auto r = check_segment_chain_rule(coord, a, b, 20, 0.25);
  CHECK(r.status == CheckStatus::Pass);

  auto affine = on_box([](double x, double y) { return 2.0 * x - y; });
  const double a2[] = {-0.5, -0.5}, b2[] = {0.5, 0.5};
  CHECK(check_segment_chain_rule(affine, a2, b2, 20, 0.25).status == CheckStatus::Pass);

  auto constant = on_box([](double, double) { return 4.0; });
  auto rc = check_segment_chain_rule(constant, a, b, 20, 0.25);
  CHECK(rc.status == CheckStatus::Pass);
  CHECK(rc.discrepancy == 0.0);

  const double outside[] = {3.0, 0.0};
  CHECK_THROWS_AS(check_segment_chain_rule(coord, a, outside, 20, 0.25), InputError);
}

TEST_CASE("check_measure_bound") {
  auto two = check_measure_bound(IntervalUnion({{0, 1}, {2, 3}}), 0.0, 3.0, 0.01);
  CHECK(two.status == CheckStatus::Pass);
  CHECK(interval_measure_map(IntervalUnion({{0, 1}, {2, 3}}), 0.0, 3.0) == 2.0);
  CHECK(check_measure_bound(IntervalUnion(), 0.0, 3.0, 0.01).status == CheckStatus::Pass);
  CHECK(check_measure_bound(IntervalUnion({{0, 3}}), 0.0, 3.0, 0.01).status == CheckStatus::Pass);
  CHECK_THROWS_AS(check_measure_bound(IntervalUnion(), 1.0, 1.0, 0.01), InputError);
}

TEST_CASE("check_envelope_identity") {
  auto abs = make_entry("abs", 1e-3);
  CHECK(check_envelope_identity(abs.map, 0.05, EnvelopeOptions{.resolution = 1e-3}).status == CheckStatus::Pass);
  auto c = make_entry("constant", 1e-3);
  auto rc = check_envelope_identity(c.map, 0.05, EnvelopeOptions{.resolution = 1e-3});
  CHECK(rc.status == CheckStatus::Pass);
  CHECK(rc.discrepancy == 0.0);
  CHECK_THROWS_AS(check_envelope_identity(abs.map, 1e-3, EnvelopeOptions{.resolution = 1e-3}), InputError);
}

TEST_CASE("check_openness_surrogate on random spaces and with a fault") {
  std::mt19937_64 rng(12);
  int ran = 0;
  for (int t = 0; t < 200; ++t) {
    auto f = oracle::random_map(rng, 12);
    const double r = 1.0, gamma = lip_norm(f) + 1.0;
    auto res = check_openness_surrogate(f, 0, r, gamma);
    CHECK(res.status != CheckStatus::Fail);
    ran += res.status == CheckStatus::Pass;
  }
  CHECK(ran > 100);

  auto e = make_entry("sin", 0.01);
  auto d = openness_data(e.map, index_at(e.map, 1.0), 0.2, 2.0);
  REQUIRE(!d.half.empty());
  d.half.front().second = d.center + 0.25;
  auto bad = check_openness_surrogate(d);
  CHECK(bad.status == CheckStatus::Fail);
  CHECK(!bad.witness.empty());
}

TEST_CASE("check_semicontinuity_fields") {
  auto sin = make_entry("sin", 1e-3);
  auto rs = check_semicontinuity_fields(sin.map, 0.1 * (1 + 1e-6), 0.01, 1.0, true);
  CHECK(rs.status == CheckStatus::Pass);
  CHECK(rs.discrepancy <= 0.01 + 1e-9);
  auto sq = make_entry("square", 1e-3);
  auto rq = check_semicontinuity_fields(sq.map, 0.1 * (1 + 1e-6), 0.01, 2.0, true);
  CHECK(rq.status == CheckStatus::Pass);
  CHECK(rq.discrepancy <= 0.02 + 1e-9);
  auto c = make_entry("constant", 1e-3);
  CHECK(check_semicontinuity_fields(c.map, 0.1, 0.01, 0.0, true).discrepancy == 0.0);
  auto dy = make_entry("dyadic", 1e-3);
  CHECK(check_semicontinuity_fields(dy.map, 0.1, 0.01, std::nullopt, false).status == CheckStatus::Skipped);
}

TEST_CASE("check_level_sets") {
  auto sq = make_entry("sqrt_abs", 1e-4);
  auto r = check_level_sets(sq, 50.0, RadiusGrid{.r_max = 4e-3, .q = 0.5, .steps = 4, .tail_window = 2});
  CHECK(r.status == CheckStatus::Pass);
  CHECK(r.discrepancy == 0.0);
  auto affine = make_entry("affine", 1e-2);
  CHECK(check_level_sets(affine, 10.0, kGrid).status == CheckStatus::Pass);
}

TEST_CASE("check_derivative_oracle and check_in_range") {
  auto sin = make_entry("sin", 1e-3);
  auto p = scale_profile(sin.map, kGrid);
  for (auto d : {Derivative::Little, Derivative::Big, Derivative::Local})
    CHECK(check_derivative_oracle(sin, p, d, 0.1).status == CheckStatus::Pass);
  CHECK(check_in_range("x", 0.5, 0.45, 0.55).status == CheckStatus::Pass);
  auto out = check_in_range("x", 0.6, 0.45, 0.55);
  CHECK(out.status == CheckStatus::Fail);
  CHECK(out.discrepancy == doctest::Approx(0.05));
}

TEST_CASE("run_suite basics") {
  SuiteConfig empty;
  auto rep = run_suite(empty);
  CHECK(rep.results.empty());
  CHECK(rep.passed());

  SuiteConfig chain{.suites = {"chain"}, .faults = {"chain"}};
  auto bad = run_suite(chain);
  CHECK(!bad.passed());
  CHECK(bad.count(CheckStatus::Fail) >= 1);
  CHECK(std::is_sorted(bad.results.begin(), bad.results.end(),
                       [](const auto& a, const auto& b) { return a.name < b.name; }));

  CHECK_THROWS_AS(run_suite(SuiteConfig{.suites = {"nope"}}), InputError);
  CHECK_THROWS_AS(run_suite(SuiteConfig{.suites = {"chain"}, .faults = {"nope"}}), InputError);

  SuiteConfig tight{.suites = {"lipnorm"}, .tolerances = {{"lipnorm_identity/cube", 0.0}}};
  auto t = run_suite(tight);
  CHECK(!t.passed());
}

TEST_CASE("run_suite report is identical across runs") {
  SuiteConfig cfg{.suites = {"plus", "openness", "reference"}, .random_spaces = 30};
  auto a = run_suite(cfg), b = run_suite(cfg);
  REQUIRE(a.results.size() == b.results.size());
  for (std::size_t i = 0; i < a.results.size(); ++i) {
    CHECK(a.results[i].name == b.results[i].name);
    CHECK(a.results[i].discrepancy == b.results[i].discrepancy);
    CHECK(a.results[i].witness == b.results[i].witness);
  }
}
