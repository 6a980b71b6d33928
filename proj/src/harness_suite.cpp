// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "format.hpp"
#include "lipderiv/error.hpp"
#include "lipderiv/harness.hpp"
#include "lipderiv/reference.hpp"
#include "parallel.hpp"

namespace lipderiv {

using detail::num;

namespace {

using Task = std::function<std::vector<CheckResult>()>;

CheckResult renamed(CheckResult r, const std::string& name) {
  r.name = name;
  return r;
}

/// Folds per-case results into one: worst non-skipped case wins.
CheckResult aggregate(const std::string& name, const std::vector<CheckResult>& cases) {
  CheckResult out{.name = name};
  std::size_t run = 0, skip = 0;
  const CheckResult* worst = nullptr;
  for (const auto& c : cases) {
    if (c.status == CheckStatus::Skipped) {
      ++skip;
      continue;
    }
    ++run;
    const bool worse = !worst || (c.status == CheckStatus::Fail && worst->status == CheckStatus::Pass) ||
                       (c.status == worst->status && c.discrepancy - c.tolerance > worst->discrepancy - worst->tolerance);
    if (worse) worst = &c;
  }
  if (!worst) return skipped(name, "every case skipped");
  out.status = worst->status;
  out.discrepancy = worst->discrepancy;
  out.tolerance = worst->tolerance;
  out.witness = worst->witness;
  out.note = worst->note + " [" + std::to_string(run) + " cases, " + std::to_string(skip) + " skipped]";
  return out;
}

struct Context {
  const SuiteConfig& cfg;
  std::vector<SampledMap> random_maps;  // shared property-sweep spaces
};

RadiusGrid zoo_grid() { return RadiusGrid{.r_max = 0.064, .q = 0.5, .steps = 5, .tail_window = 3}; }

constexpr double kZooResolution = 1e-3;
// Dyadic lattice spacing: coordinates and squared distances are exact, so
// equal lattice distances compare equal.
constexpr double kLatticeResolution = 0.0625;

double resolution_for(const std::string& name) {
  return name.rfind("linear", 0) == 0 ? kLatticeResolution : kZooResolution;
}

std::size_t nearest_index(const SampledMap& f, double x) {
  const auto& d = f.domain();
  std::size_t best = 0;
  for (std::size_t i = 1; i < d.size(); ++i)
    if (std::abs(d.coords(i)[0] - x) < std::abs(d.coords(best)[0] - x)) best = i;
  return best;
}

void add_chain(const Context& ctx, std::vector<Task>& tasks) {
  const bool fault = ctx.cfg.faults.count("chain") > 0;
  for (const auto& name : zoo_names())
    tasks.push_back([name, fault] {
      const ZooEntry e = make_entry(name, resolution_for(name));
      ScaleProfile p = scale_profile(e.map, zoo_grid());
      if (fault && name == "sin") {
        ScaleRow& row = p.at(p.points / 2, 0);
        row.big_below = row.loc + 1.0;
      }
      return std::vector{renamed(check_chain(p), "chain/" + name)};
    });
  tasks.push_back([&ctx] {
    std::vector<CheckResult> cases;
    for (const auto& f : ctx.random_maps) {
      const double diam = f.domain().diameter();
      cases.push_back(check_chain(f, RadiusGrid{.r_max = diam, .q = 0.5, .steps = 6, .tail_window = 2}));
    }
    return std::vector{aggregate("chain/random", cases)};
  });
}

void add_openness(const Context& ctx, std::vector<Task>& tasks) {
  const bool fault = ctx.cfg.faults.count("openness") > 0;
  for (const auto& name : zoo_names())
    tasks.push_back([name, fault] {
      const ZooEntry e = make_entry(name, resolution_for(name));
      std::vector<CheckResult> cases;
      for (std::size_t x0 : {std::size_t{0}, e.map.size() / 3, e.map.size() / 2}) {
        const double r = name == "discrete_pair" ? 2.0 : 0.1;
        OpennessData d = openness_data(e.map, x0, r, 0.0);
        d.gamma = d.center + 1.0;
        if (fault && name == "sin" && !d.half.empty()) d.half.back().second = d.center + 0.5;
        cases.push_back(check_openness_surrogate(d));
      }
      return std::vector{aggregate("openness/" + name, cases)};
    });
  tasks.push_back([&ctx] {
    std::vector<CheckResult> cases;
    for (const auto& f : ctx.random_maps)
      for (std::size_t x0 = 0; x0 < f.size(); ++x0) {
        OpennessData d = openness_data(f, x0, f.domain().diameter() * 0.75, 0.0);
        d.gamma = d.center + 1.0;
        cases.push_back(check_openness_surrogate(d));
      }
    return std::vector{aggregate("openness/random", cases)};
  });
}

void add_gamma(const Context& ctx, std::vector<Task>& tasks) {
  // Entries with a known gamma: both directions must apply.
  const std::pair<const char*, double> known[] = {{"sin", 1.0}, {"affine", 3.0}, {"measure_map", 1.0},
                                                  {"constant", 0.0}, {"sqrt_abs", 1.0}};
  for (const auto& [name, gamma] : known)
    tasks.push_back([name = std::string(name), gamma = gamma] {
      const ZooEntry e = make_entry(name, kZooResolution);
      return std::vector{renamed(check_gamma_lipschitz(e.map, gamma, zoo_grid(),
                                                       GammaLipschitzOptions{.convex_domain = e.convex_domain}),
                                 "gamma_lipschitz/" + name)};
    });
  // Forward direction at gamma = pair Lipschitz constant, on every entry.
  for (const auto& name : zoo_names())
    tasks.push_back([name] {
      const ZooEntry e = make_entry(name, resolution_for(name));
      if (e.map.codomain() != SampledMap::Codomain::Real && e.map.size() > 4000)
        return std::vector{skipped("gamma_forward/" + name, "pair scan too large for the lattice entry")};
      return std::vector{renamed(check_gamma_lipschitz(e.map, lip_norm(e.map), zoo_grid(),
                                                       GammaLipschitzOptions{.convex_domain = e.convex_domain}),
                                 "gamma_forward/" + name)};
    });
  tasks.push_back([&ctx] {
    std::vector<CheckResult> cases;
    for (const auto& f : ctx.random_maps) {
      const double diam = f.domain().diameter();
      cases.push_back(check_gamma_lipschitz(f, lip_norm(f),
                                            RadiusGrid{.r_max = diam, .q = 0.5, .steps = 6, .tail_window = 2},
                                            GammaLipschitzOptions{.convex_domain = false}));
    }
    return std::vector{aggregate("gamma_forward/random", cases)};
  });
}

void add_plus(const Context& ctx, std::vector<Task>& tasks) {
  tasks.push_back([&ctx] {
    std::vector<CheckResult> cases;
    const std::size_t count = std::min<std::size_t>(100, ctx.random_maps.size());
    for (std::size_t s = 0; s < count; ++s) {
      const auto& f = ctx.random_maps[s];
      const double diam = f.domain().diameter();
      for (std::size_t x = 0; x < f.size(); ++x) {
        cases.push_back(check_plus_variant(f, x, diam * 0.75));
        for (std::size_t u = 0; u < f.size(); ++u)
          if (u != x) cases.push_back(check_plus_variant(f, x, f.domain().distance(u, x)));
      }
    }
    return std::vector{aggregate("plus_variant/random", cases)};
  });
  tasks.push_back([] {
    auto f = sample_on_line([](double u) { return u; }, -1.0, 1.0, kZooResolution);
    return std::vector{renamed(check_plus_variant(f, nearest_index(f, 0.25), 0.3), "plus_variant/identity")};
  });
  tasks.push_back([] {
    auto dom = std::make_shared<const FiniteMetricSpace>(FiniteMetricSpace::discrete({"a", "b"}));
    auto f = SampledMap::real(dom, {0.0, 1.0});
    return std::vector{renamed(check_plus_variant(f, 0, 1.5), "plus_variant/discrete_pair")};
  });
}

void add_frechet(const Context& ctx, std::vector<Task>& tasks) {
  std::vector<std::pair<std::string, LinearMapSpec>> maps;
  if (ctx.cfg.matrices.empty()) {
    const double c = std::cos(0.7), s = std::sin(0.7);
    maps = {{"diag", LinearMapSpec(2, 2, {2.0, 0.0, 0.0, 1.0})},
            {"rotation", LinearMapSpec(2, 2, {c, -s, s, c})},
            {"shear", LinearMapSpec(2, 2, {1.0, 1.0, 0.0, 1.0})},
            {"zero", LinearMapSpec(2, 2, {0.0, 0.0, 0.0, 0.0})}};
  } else {
    for (std::size_t i = 0; i < ctx.cfg.matrices.size(); ++i)
      maps.emplace_back("matrix" + std::to_string(i), ctx.cfg.matrices[i]);
  }
  for (const auto& [label, a] : maps)
    tasks.push_back([label = label, a = a] {
      std::vector<double> x0(a.cols(), 0.0);
      if (a.cols() == 2) x0 = {0.3, -0.7};
      return std::vector{renamed(check_frechet(a, x0, 1e-2), "frechet/" + label)};
    });
}

void add_c1(std::vector<Task>& tasks) {
  for (const char* name : {"sin", "square"})
    tasks.push_back([name = std::string(name)] {
      const ZooEntry e = make_entry(name, kZooResolution);
      const ScaleProfile p = scale_profile(e.map, zoo_grid());
      std::vector<CheckResult> out;
      for (auto [which, label] : {std::pair{Derivative::Little, "lip"}, std::pair{Derivative::Big, "Lip"},
                                  std::pair{Derivative::Local, "LLip"}})
        out.push_back(renamed(check_derivative_oracle(e, p, which, 0.1), "c1/" + name + "." + label));
      return out;
    });
}

void add_separation(std::vector<Task>& tasks) {
  tasks.push_back([] {
    const ZooEntry e = make_entry("dyadic", std::ldexp(1.0, -14));
    const std::size_t zero = e.map.size() / 2;
    const ScaleProfile p = scale_profile_at(e.map, RadiusGrid{.r_max = 0.5, .q = 0.5, .steps = 5, .tail_window = 3},
                                            {zero}, ScaleOptions{.compute_loc = false});
    return std::vector{check_in_range("separation/dyadic.lip", p.summary[0].lip_hat, 0.45, 0.55, "point=0"),
                       check_in_range("separation/dyadic.Lip", p.summary[0].big_hat, 0.95, 1.05, "point=0")};
  });
  tasks.push_back([] {
    const ZooEntry e = make_entry("oscillator", 1e-4);
    const std::size_t zero = e.map.size() / 2;
    const ScaleProfile p =
        scale_profile_at(e.map, RadiusGrid{.r_max = 0.5, .q = 0.5, .steps = 6, .tail_window = 3}, {zero});
    return std::vector{check_in_range("separation/oscillator.lip", p.summary[0].lip_hat, 0.0, 0.05, "point=0"),
                       check_in_range("separation/oscillator.LLip", p.summary[0].loc_hat, 0.9, 1.05, "point=0")};
  });
}

void add_lipnorm(std::vector<Task>& tasks) {
  for (const char* name : {"sin", "constant", "affine", "square", "cube", "abs"})
    tasks.push_back([name = std::string(name)] {
      const ZooEntry e = make_entry(name, kZooResolution);
      return std::vector{renamed(check_lipnorm_identity(e.map, zoo_grid()), "lipnorm_identity/" + name)};
    });
}

void add_segment(std::vector<Task>& tasks) {
  struct Case {
    const char* label;
    std::function<double(double, double)> fn;
    std::vector<double> a, b;
  };
  const Case cases[] = {{"coordinate", [](double, double y) { return y; }, {0.0, 0.0}, {1.0, 0.0}},
                        {"affine", [](double x, double y) { return 2.0 * x - y + 0.5; }, {-0.5, -0.5}, {0.5, 0.5}},
                        {"constant", [](double, double) { return 4.0; }, {-1.0, 0.0}, {1.0, 1.0}},
                        {"quadratic", [](double x, double y) { return x * x + x * y; }, {-1.0, -1.0}, {1.0, 0.0}}};
  for (const auto& c : cases)
    tasks.push_back([c] {
      SpacePtr dom = square_lattice(0.0, 0.0, 1.0, 0.05);
      std::vector<double> v(dom->size());
      for (std::size_t i = 0; i < v.size(); ++i) v[i] = c.fn(dom->coords(i)[0], dom->coords(i)[1]);
      const SampledMap f = SampledMap::real(dom, std::move(v));
      return std::vector{renamed(check_segment_chain_rule(f, c.a, c.b, 20, 0.25),
                                 std::string("segment_chain_rule/") + c.label)};
    });
}

void add_measure(std::vector<Task>& tasks) {
  struct Case {
    const char* label;
    std::vector<Interval> e;
    double lo, hi;
  };
  const Case cases[] = {{"zoo", {{0.2, 0.4}, {0.6, 0.9}}, 0.0, 1.0},
                        {"two_blocks", {{0.0, 1.0}, {2.0, 3.0}}, 0.0, 3.0},
                        {"empty", {}, 0.0, 1.0},
                        {"full", {{0.0, 3.0}}, 0.0, 3.0}};
  for (const auto& c : cases)
    tasks.push_back([c] {
      return std::vector{renamed(check_measure_bound(IntervalUnion(c.e), c.lo, c.hi, kZooResolution),
                                 std::string("measure_bound/") + c.label)};
    });
}

void add_envelope(std::vector<Task>& tasks) {
  for (const char* name : {"constant", "affine", "sin", "square", "cube", "abs", "oscillator"})
    tasks.push_back([name = std::string(name)] {
      const ZooEntry e = make_entry(name, kZooResolution);
      return std::vector{renamed(check_envelope_identity(e.map, 0.05, EnvelopeOptions{.resolution = e.resolution}),
                                 "envelope_identity/" + name)};
    });
}

void add_semicontinuity(std::vector<Task>& tasks) {
  for (const auto& name : zoo_names())
    tasks.push_back([name] {
      const bool lattice = name.rfind("linear", 0) == 0;
      const ZooEntry e = make_entry(name, resolution_for(name));
      const double h = std::max(0.01, 2.0 * e.resolution);
      // Radius nudged off the lattice so ball membership does not hinge on rounding.
      const double r = (lattice ? 0.25 : 0.1) * (1.0 + 1e-6);
      return std::vector{renamed(check_semicontinuity_fields(e.map, r, h, e.oracle.omega_slope, e.continuous,
                                                             lattice ? r + h : 0.0),
                                 "semicontinuity_fields/" + name)};
    });
}

void add_level_sets(std::vector<Task>& tasks) {
  for (const auto& name : zoo_names())
    tasks.push_back([name] {
      const ZooEntry e = make_entry(name, resolution_for(name));
      return std::vector{renamed(check_level_sets(e, 10.0, zoo_grid()), "level_sets/" + name)};
    });
  tasks.push_back([] {
    const ZooEntry e = make_entry("sqrt_abs", 1e-4);
    return std::vector{renamed(check_level_sets(e, 50.0, RadiusGrid{.r_max = 4e-3, .q = 0.5, .steps = 4, .tail_window = 2}),
                               "level_sets/sqrt_abs.fine")};
  });
}

void add_reference(const Context& ctx, std::vector<Task>& tasks) {
  tasks.push_back([&ctx] {
    std::vector<CheckResult> cases;
    for (const auto& f : ctx.random_maps) {
      const double diam = f.domain().diameter();
      cases.push_back(check_reference_agreement(f, RadiusGrid{.r_max = diam, .q = 0.5, .steps = 6, .tail_window = 2}));
    }
    return std::vector{aggregate("reference_agreement/random", cases)};
  });
}

void add_setclass(const Context& ctx, std::vector<Task>& tasks) {
  tasks.push_back([] { return std::vector{check_setclass_exhaustive(4)}; });
  tasks.push_back([&ctx] { return std::vector{check_setclass_random(5, 500, ctx.cfg.seed)}; });
}

const std::vector<std::string>& known_suites() {
  static const std::vector<std::string> names = {
      "c1",      "chain",     "envelope", "frechet", "gamma",          "levelsets",  "lipnorm", "measure",
      "openness", "plus",     "reference", "segment", "semicontinuity", "separation", "setclass"};
  return names;
}

}  // namespace

std::vector<std::string> suite_names() { return known_suites(); }

bool SuiteReport::passed() const {
  return std::none_of(results.begin(), results.end(),
                      [](const CheckResult& r) { return r.status == CheckStatus::Fail; });
}

std::size_t SuiteReport::count(CheckStatus s) const {
  return static_cast<std::size_t>(
      std::count_if(results.begin(), results.end(), [s](const CheckResult& r) { return r.status == s; }));
}

SuiteReport run_suite(const SuiteConfig& config) {
  std::set<std::string> wanted;
  for (const auto& s : config.suites) {
    if (s == "all") {
      wanted.insert(known_suites().begin(), known_suites().end());
    } else if (std::find(known_suites().begin(), known_suites().end(), s) != known_suites().end()) {
      wanted.insert(s);
    } else {
      throw InputError("unknown suite '" + s + "'");
    }
  }
  for (const auto& f : config.faults)
    if (f != "chain" && f != "openness") throw InputError("unknown fault target '" + f + "'");

  Context ctx{config, {}};
  if (wanted.count("chain") || wanted.count("openness") || wanted.count("gamma") || wanted.count("plus") ||
      wanted.count("reference")) {
    std::mt19937_64 rng(config.seed);
    for (std::size_t i = 0; i < config.random_spaces; ++i)
      ctx.random_maps.push_back(random_sampled_map(config.random_points, rng));
  }

  std::vector<Task> tasks;
  std::vector<std::string> task_suite;
  auto add = [&](const char* suite, const auto& adder) {
    if (!wanted.count(suite)) return;
    adder();
    task_suite.resize(tasks.size(), suite);
  };
  add("chain", [&] { add_chain(ctx, tasks); });
  add("openness", [&] { add_openness(ctx, tasks); });
  add("gamma", [&] { add_gamma(ctx, tasks); });
  add("plus", [&] { add_plus(ctx, tasks); });
  add("frechet", [&] { add_frechet(ctx, tasks); });
  add("c1", [&] { add_c1(tasks); });
  add("separation", [&] { add_separation(tasks); });
  add("lipnorm", [&] { add_lipnorm(tasks); });
  add("segment", [&] { add_segment(tasks); });
  add("measure", [&] { add_measure(tasks); });
  add("envelope", [&] { add_envelope(tasks); });
  add("semicontinuity", [&] { add_semicontinuity(tasks); });
  add("levelsets", [&] { add_level_sets(tasks); });
  add("reference", [&] { add_reference(ctx, tasks); });
  add("setclass", [&] { add_setclass(ctx, tasks); });

  std::vector<std::vector<CheckResult>> per_task(tasks.size());
  detail::parallel_for_each(tasks.size(), [&](std::size_t i) {
    try {
      per_task[i] = tasks[i]();
    } catch (const std::exception& e) {
      CheckResult r{.name = "error/" + task_suite[i] + "." + std::to_string(i), .status = CheckStatus::Fail,
                    .witness = "input error", .discrepancy = 1.0, .tolerance = 0.0,
                    .note = e.what()};
      per_task[i] = {r};
    }
  });

  SuiteReport report;
  for (auto& v : per_task)
    for (auto& r : v) {
      for (const auto& [prefix, tol] : config.tolerances)
        if (r.status != CheckStatus::Skipped && r.name.rfind(prefix, 0) == 0) {
          r.tolerance = tol;
          r = finish(r);
        }
      report.results.push_back(std::move(r));
    }
  std::stable_sort(report.results.begin(), report.results.end(),
                   [](const CheckResult& a, const CheckResult& b) { return a.name < b.name; });
  return report;
}

}  // namespace lipderiv
