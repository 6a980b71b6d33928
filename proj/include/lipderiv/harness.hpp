// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lipderiv/interval_union.hpp"
#include "lipderiv/linear_map.hpp"
#include "lipderiv/sampled_map.hpp"
#include "lipderiv/scales.hpp"
#include "lipderiv/zoo.hpp"

namespace lipderiv {

enum class CheckStatus { Pass, Fail, Skipped };
std::string to_string(CheckStatus s);

/// Outcome of one executable check. For non-skipped results
/// status == Pass exactly when discrepancy <= tolerance, and a failing result
/// always names a witness.
struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::Pass;
  /// Where the bound is tightest (pass) or violated (fail), e.g. "point=3 radius=0.25".
  std::string witness;
  double discrepancy = 0.0;
  double tolerance = 0.0;
  /// Tolerance formula, skip reason, or other context.
  std::string note;
};

/// Sets status from discrepancy vs tolerance.
CheckResult finish(CheckResult r);
CheckResult skipped(std::string name, std::string reason);

/// little <= big <= loc at every point and radius of the profile, exactly.
/// "little" is checked for both little variants.
CheckResult check_chain(const ScaleProfile& profile);
CheckResult check_chain(const SampledMap& f, const RadiusGrid& grid);

/// Sup over sampled radii below r of Lip^rho (alpha) and of Lip^rho_+ (beta)
/// against the ratio formula sup |f(u)-f(x)|/d(u,x) over 0 < d < r (gamma).
/// The sweep visits every neighbour distance d_k and d_k(1+1e-9); on
/// (d_k, d_{k+1}) the open-ball quotient has supremum M_k / d_k.
struct PlusVariantValues {
  double alpha = 0.0, beta = 0.0, gamma = 0.0;
};
PlusVariantValues plus_variant_values(const SampledMap& f, std::size_t x, double r);
CheckResult check_plus_variant(const SampledMap& f, std::size_t x, double r, double tol = 1e-12);

/// Lip-hat of u -> Au at x0 on a lattice of the given resolution (half-width
/// `cells` lattice steps, in the domain norm of A) against the operator norm.
CheckResult check_frechet(const LinearMapSpec& a, std::span<const double> x0, double resolution,
                          double rel_tol = 0.02, int cells = 10);

struct GammaLipschitzOptions {
  bool convex_domain = true;
  /// Relative slack for the (<=) direction; < 0 selects 2 * resolution / diameter.
  double tol = -1.0;
};
/// (<=) if lip-hat <= gamma everywhere, every sampled pair is gamma-Lipschitz up
/// to tol; (=>) if every pair is gamma-Lipschitz, both little functionals stay
/// <= gamma at every scale, exactly. (<=) only runs on convex domains. Skipped
/// (hypothesis-not-met) when neither direction applies. Hypotheses allow a relative
/// 1e-12 for rounding in the quotients.
CheckResult check_gamma_lipschitz(const SampledMap& f, double gamma, const RadiusGrid& grid,
                                  const GammaLipschitzOptions& opt = {});

/// |lip_norm - max lip-hat| / lip_norm <= rel_tol (both zero in the constant case).
CheckResult check_lipnorm_identity(const SampledMap& f, const RadiusGrid& grid,
                                   double rel_tol = 0.05);

/// g = f o T on T(s) = a + s(b-a), s = i/steps, where every T(s) must be a
/// sample point of f. At every s, min over g's neighbour distances rho < rho_max
/// of Lip^rho_+ g(s) is compared against |b-a| times the min over the same rho
/// of Lip^{rho|b-a|}_+ f(T(s)). Throws InputError if T(s) misses the sample.
CheckResult check_segment_chain_rule(const SampledMap& f, std::span<const double> a,
                                     std::span<const double> b, std::size_t steps,
                                     double rho_max = 0.1);

/// f_E(u) = |[lo,u] intersected with E| on a uniform grid: every pair has
/// |f(a)-f(b)| = |[a,b] intersected with E| (to 1e-12); lip-hat <= 1 on E and
/// = 0 more than 1.5 grid steps away from E.
CheckResult check_measure_bound(const IntervalUnion& e, double lo, double hi, double resolution);

struct EnvelopeOptions {
  /// Finest resolution of the sample; the limit estimates stop at 1.5 * resolution.
  double resolution = 0.0;
  double rel_tol = 0.05;
};
/// Upper envelopes at scale h of the lip-hat and Lip-hat fields (radii from h/2
/// down to 1.5 * resolution) against the LLip^h field. Tolerance: largest jump of
/// the LLip^h field between nearest neighbours plus rel_tol * sup |LLip^h|.
CheckResult check_envelope_identity(const SampledMap& f, double h, const EnvelopeOptions& opt);

/// Loc values feeding the openness check; exposed for fault injection.
struct OpennessData {
  std::size_t x0 = 0;
  double r = 0.0, gamma = 0.0;
  double center = 0.0;  // LLip^r at x0
  std::vector<std::pair<std::size_t, double>> half;  // (x, LLip^{r/2} at x) for x in B(x0, r/2)
};
OpennessData openness_data(const SampledMap& f, std::size_t x0, double r, double gamma);
CheckResult check_openness_surrogate(const OpennessData& d);
CheckResult check_openness_surrogate(const SampledMap& f, std::size_t x0, double r, double gamma);

/// usc defect of the lip_r and LLip^r fields and lsc defect of the Lip_r field
/// at envelope scale h, each <= omega_slope * h + 1e-9. With margin > 0 only
/// points at least that far inside the sample's bounding box are scored.
CheckResult check_semicontinuity_fields(const SampledMap& f, double r, double h,
                                        std::optional<double> omega_slope, bool continuous,
                                        double margin = 0.0);

/// Thresholded sets {LLip <= gamma} within {Lip <= gamma} within {lip <= gamma}
/// at every radius and for the limit estimates; for continuous entries whose
/// oracle has infinite points, {Lip-hat > gamma} must contain them and stay
/// within `reach` of them; otherwise no estimate may be infinite.
CheckResult check_level_sets(const ZooEntry& entry, double gamma, const RadiusGrid& grid,
                             double reach = 1e-2);

/// Limit estimate (lip-hat, Lip-hat or LLip-hat) against the entry's oracle at
/// every point at least `margin` inside [lo, hi]: passes when
/// |estimate - oracle| <= rel * max(|oracle|, 1) + 2 * resolution everywhere.
/// Reported discrepancy is the largest error beyond the relative allowance.
CheckResult check_derivative_oracle(const ZooEntry& entry, const ScaleProfile& profile,
                                    Derivative which, double margin, double rel = 0.02);

/// value in [lo, hi]; discrepancy is the distance to the interval.
CheckResult check_in_range(std::string name, double value, double lo, double hi,
                           std::string witness = {});

/// Every scale functional equals its naive reference at every point and grid radius.
CheckResult check_reference_agreement(const SampledMap& f, const RadiusGrid& grid,
                                      double tol = 1e-9);

/// Family identities and the duality / envelope propositions on every topology
/// over grounds of size 1..max_ground (and the identities on every family for
/// grounds up to 3), with all fields valued in {-inf, 0, 1, +inf}.
CheckResult check_setclass_exhaustive(std::size_t max_ground = 4);
/// Same conclusions on seeded random topologies and fields over a ground of size n.
CheckResult check_setclass_random(std::size_t n, std::size_t cases, std::uint64_t seed);

struct SuiteConfig {
  /// Suites to run; "all" expands to every suite. Empty runs nothing.
  std::vector<std::string> suites;
  std::uint64_t seed = 7;
  /// Random spaces per property sweep.
  std::size_t random_spaces = 200;
  std::size_t random_points = 12;
  /// Fault injection targets ("chain", "openness").
  std::set<std::string> faults;
  /// Matrices for the frechet suite (default: diag, rotation, shear).
  std::vector<LinearMapSpec> matrices;
  /// Per-check tolerance overrides, keyed by check-name prefix.
  std::map<std::string, double> tolerances;
};

std::vector<std::string> suite_names();

struct SuiteReport {
  std::vector<CheckResult> results;  // sorted by name
  bool passed() const;
  std::size_t count(CheckStatus s) const;
};

/// Runs the configured suites in parallel; input errors fail only the affected check.
SuiteReport run_suite(const SuiteConfig& config);

}  // namespace lipderiv
