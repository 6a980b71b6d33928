// SPDX-License-Identifier: Apache-2.0
// Acceptance runner: one PASS/FAIL line per criterion, each with its time budget.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "lipderiv/harness.hpp"
#include "lipderiv/scales.hpp"
#include "oracles.hpp"

using namespace lipderiv;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

bool starts_with(const std::string& s, const std::string& prefix) { return s.rfind(prefix, 0) == 0; }

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

SuiteReport run(std::vector<std::string> suites, std::size_t random_spaces = 200) {
  return run_suite(SuiteConfig{.suites = std::move(suites), .seed = 7, .random_spaces = random_spaces});
}

/// Every matching result passes; `exact` also demands discrepancy 0. Skips are listed.
Outcome judge(const SuiteReport& rep, const std::vector<std::string>& prefixes, bool exact,
              std::size_t min_checked = 1) {
  Outcome o;
  std::size_t checked = 0;
  double worst = 0.0;
  std::vector<std::string> skipped, failed;
  for (const auto& r : rep.results) {
    bool match = false;
    for (const auto& p : prefixes) match = match || starts_with(r.name, p);
    if (!match) continue;
    if (r.status == CheckStatus::Skipped) {
      skipped.push_back(r.name);
      continue;
    }
    ++checked;
    worst = std::max(worst, r.discrepancy);
    if (r.status == CheckStatus::Fail || (exact && r.discrepancy != 0.0))
      failed.push_back(r.name + " (" + fmt(r.discrepancy) + " > " + fmt(r.tolerance) + ", " + r.witness + ")");
  }
  o.ok = failed.empty() && checked >= min_checked;
  o.detail = std::to_string(checked) + " checks, max discrepancy " + fmt(worst);
  if (!skipped.empty()) o.detail += ", " + std::to_string(skipped.size()) + " skipped";
  for (const auto& f : failed) o.detail += "\n      failed: " + f;
  if (checked < min_checked) o.detail += "\n      expected at least " + std::to_string(min_checked) + " checks";
  return o;
}

Outcome both(Outcome a, const Outcome& b) {
  a.ok = a.ok && b.ok;
  a.detail += "; " + b.detail;
  return a;
}

Outcome ac1() {
  auto rep = run({"chain", "openness", "gamma", "levelsets"});
  return judge(rep, {"chain/", "openness/", "gamma_forward/", "level_sets/"}, true, 40);
}

/// Library functionals against the test-side brute-force enumeration, on 200 random spaces.
Outcome oracle_sweep() {
  std::mt19937_64 rng(7);
  double worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    SampledMap f = oracle::random_map(rng, 12);
    double diam = 0.0;
    for (std::size_t u = 0; u < f.size(); ++u)
      for (std::size_t v = 0; v < f.size(); ++v) diam = std::max(diam, f.domain().distance(u, v));
    const RadiusGrid grid{.r_max = diam, .q = 0.5, .steps = 6, .tail_window = 2};
    for (std::size_t x = 0; x < f.size(); ++x)
      for (double r : grid.radii()) {
        worst = std::max(worst, std::abs(lip_upper_r(f, x, r) - oracle::lip_upper(f, x, r, false)));
        worst = std::max(worst, std::abs(lip_upper_r_closed(f, x, r) - oracle::lip_upper(f, x, r, true)));
        worst = std::max(worst, std::abs(big_lip_below_r(f, x, r) - oracle::big_below(f, x, r, 400)));
        worst = std::max(worst, std::abs(little_lip_below_r(f, x, r) - oracle::little_below(f, x, r, 400)));
        worst = std::max(worst, std::abs(little_lip_closed_below_r(f, x, r) - oracle::little_closed_below(f, x, r)));
        worst = std::max(worst, std::abs(loc_lip_r(f, x, r) - oracle::loc(f, x, r)));
      }
    worst = std::max(worst, std::abs(lip_norm(f) - oracle::lip_norm(f)));
  }
  return {worst <= 1e-9, "test-side enumeration max gap " + fmt(worst)};
}

Outcome ac2() { return both(judge(run({"reference"}), {"reference_agreement/"}, false), oracle_sweep()); }

Outcome ac3() { return judge(run({"plus"}, 100), {"plus_variant/"}, false, 3); }

Outcome ac4() { return judge(run({"frechet"}), {"frechet/diag", "frechet/rotation", "frechet/shear"}, false, 3); }

Outcome ac5() { return judge(run({"c1"}), {"c1/"}, false, 6); }

Outcome ac6() { return judge(run({"separation"}), {"separation/"}, false, 4); }

Outcome ac7() {
  auto rep = run({"gamma", "measure"});
  Outcome o = judge(rep, {"gamma_lipschitz/sin", "gamma_lipschitz/affine", "gamma_lipschitz/measure_map", "measure_bound/"},
                    false, 7);
  // Both directions must have run on the three named entries.
  for (const auto& r : rep.results)
    if ((r.name == "gamma_lipschitz/sin" || r.name == "gamma_lipschitz/affine" || r.name == "gamma_lipschitz/measure_map") &&
        r.note.find("not-met") != std::string::npos) {
      o.ok = false;
      o.detail += "\n      one direction did not run: " + r.name + " (" + r.note + ")";
    }
  return o;
}

Outcome ac8() {
  return judge(run({"envelope"}),
               {"envelope_identity/constant", "envelope_identity/affine", "envelope_identity/sin",
                "envelope_identity/square", "envelope_identity/cube", "envelope_identity/abs",
                "envelope_identity/oscillator"},
               false, 7);
}

Outcome ac9() { return judge(run({"setclass"}), {"setclass_"}, true, 2); }

Outcome ac10() { return judge(run({"semicontinuity"}), {"semicontinuity_fields/"}, false, 8); }

struct Criterion {
  const char* id;
  const char* label;
  double budget_s;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {"AC1", "finite-data identities are exact", 30, ac1},
      {"AC2", "scale functionals match brute-force enumeration", 60, ac2},
      {"AC3", "plus-variant sweep equals the ratio formula", 30, ac3},
      {"AC4", "Frechet identity for linear maps", 10, ac4},
      {"AC5", "C1 identity for sin and u^2", 20, ac5},
      {"AC6", "separation oracles for dyadic and oscillator", 30, ac6},
      {"AC7", "gamma-Lipschitz characterization and measure bound", 20, ac7},
      {"AC8", "envelope identity", 30, ac8},
      {"AC9", "set-class propositions, exhaustive and random", 120, ac9},
      {"AC10", "semicontinuity defects within the modulus schedule", 30, ac10},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < c.budget_s;
    const bool pass = o.ok && in_time;
    failures += !pass;
    std::printf("%-4s %s  %s: %s (%.2f s, budget %.0f s%s)\n", c.id, pass ? "PASS" : "FAIL", c.label,
                o.detail.c_str(), secs, c.budget_s, in_time ? "" : ", over budget");
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
