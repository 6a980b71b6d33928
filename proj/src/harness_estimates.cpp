// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>

#include "format.hpp"
#include "lipderiv/error.hpp"
#include "lipderiv/harness.hpp"
#include "lipderiv/reference.hpp"
#include "lipderiv/setclass.hpp"

namespace lipderiv {

using detail::num;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double gap(double a, double b) { return a == b ? 0.0 : std::abs(a - b); }

/// Counts violations and remembers the first one.
struct Tally {
  std::size_t count = 0;
  std::string first;
  void fail(const auto& describe) {
    if (count++ == 0) first = describe();
  }
  CheckResult result(std::string name, std::string note) const {
    CheckResult r{.name = std::move(name), .witness = first,
                  .discrepancy = static_cast<double>(count), .note = std::move(note)};
    return finish(r);
  }
};

}  // namespace

CheckResult check_level_sets(const ZooEntry& entry, double gamma, const RadiusGrid& grid,
                             double reach) {
  if (!(gamma > 0.0)) throw InputError("gamma must be positive");
  const SampledMap& f = entry.map;
  const ScaleProfile p = scale_profile(f, grid);
  const auto& dom = f.domain();
  Tally t;
  auto chain = [&](double little, double little_closed, double big, double loc, const auto& where) {
    // {loc <= g} within {big <= g} within {little_closed <= g} within {little <= g}
    if ((loc <= gamma && !(big <= gamma)) || (big <= gamma && !(little_closed <= gamma)) ||
        (little_closed <= gamma && !(little <= gamma)))
      t.fail(where);
  };
  for (std::size_t i = 0; i < p.points; ++i) {
    for (std::size_t k = 0; k < p.radii.size(); ++k) {
      const ScaleRow& r = p.at(i, k);
      chain(r.little_below, r.little_closed_below, r.big_below, r.loc,
            [&] { return "inclusion at point=" + dom.id(i) + " radius=" + num(p.radii[k]); });
    }
    const PointSummary& s = p.summary[i];
    chain(s.lip_hat, s.lip_hat, s.big_hat, s.loc_hat,
          [&] { return "inclusion of limit estimates at point=" + dom.id(i); });
  }

  const ScalarField oracle = oracle_field(entry, Derivative::Big);
  std::vector<std::size_t> infinite;
  for (std::size_t i = 0; i < oracle.size(); ++i)
    if (oracle[i] == kInf) infinite.push_back(i);

  std::string note = "inclusion chain exact at every radius";
  if (entry.continuous && !infinite.empty()) {
    note += "; {Lip-hat > gamma} contains the oracle's infinite points and stays within " + num(reach);
    for (std::size_t i : infinite)
      if (!(p.summary[i].big_hat > gamma))
        t.fail([&] { return "infinite point " + dom.id(i) + " has Lip-hat " + num(p.summary[i].big_hat); });
    for (std::size_t i = 0; i < p.points; ++i) {
      if (!(p.summary[i].big_hat > gamma)) continue;
      const bool near = std::any_of(infinite.begin(), infinite.end(),
                                    [&](std::size_t z) { return dom.distance(i, z) <= reach; });
      if (!near) t.fail([&] { return "point " + dom.id(i) + " above gamma far from the infinite set"; });
    }
  } else if (infinite.empty()) {
    note += "; no infinite estimates";
    for (std::size_t i = 0; i < p.points; ++i) {
      const auto& s = p.summary[i];
      if (std::isinf(s.lip_hat) || std::isinf(s.big_hat) || std::isinf(s.loc_hat))
        t.fail([&] { return "infinite estimate at point=" + dom.id(i); });
    }
  }
  return t.result("level_sets", note);
}

CheckResult check_derivative_oracle(const ZooEntry& entry, const ScaleProfile& profile,
                                    Derivative which, double margin, double rel) {
  const SampledMap& f = entry.map;
  if (profile.points != f.size()) throw InputError("profile does not cover every sample point");
  if (!f.domain().is_line()) throw InputError("derivative oracle check needs a one-dimensional entry");
  const PointOracle& oracle = which == Derivative::Little ? entry.oracle.lip
                              : which == Derivative::Big  ? entry.oracle.big
                                                          : entry.oracle.loc;
  const char* label = which == Derivative::Little ? "lip" : which == Derivative::Big ? "Lip" : "LLip";

  CheckResult out{.name = std::string("derivative_oracle.") + label, .tolerance = 2.0 * entry.resolution};
  for (std::size_t i = 0; i < f.size(); ++i) {
    auto x = f.domain().coords(i);
    if (x[0] < entry.lo + margin || x[0] > entry.hi - margin) continue;
    const double want = oracle(x);
    if (!std::isfinite(want)) continue;
    const PointSummary& s = profile.summary[i];
    const double got = which == Derivative::Little ? s.lip_hat
                       : which == Derivative::Big  ? s.big_hat
                                                   : s.loc_hat;
    const double excess = std::max(0.0, std::abs(got - want) - rel * std::max(std::abs(want), 1.0));
    if (excess > out.discrepancy || out.witness.empty()) {
      out.discrepancy = std::max(out.discrepancy, excess);
      out.witness = "x=" + num(x[0]) + " estimate=" + num(got) + " oracle=" + num(want);
    }
  }
  out.note = "error beyond " + num(rel) + " * max(|oracle|,1); tolerance 2 * resolution";
  return finish(out);
}

CheckResult check_in_range(std::string name, double value, double lo, double hi, std::string witness) {
  CheckResult out{.name = std::move(name), .witness = std::move(witness)};
  out.discrepancy = value < lo ? lo - value : value > hi ? value - hi : 0.0;
  if (std::isnan(value)) out.discrepancy = kInf;
  out.note = "value " + num(value) + " expected in [" + num(lo) + ", " + num(hi) + "]";
  if (out.witness.empty()) out.witness = "value=" + num(value);
  return finish(out);
}

CheckResult check_reference_agreement(const SampledMap& f, const RadiusGrid& grid, double tol) {
  const ScaleProfile p = scale_profile(f, grid);
  CheckResult out{.name = "reference_agreement", .tolerance = tol};
  auto offer = [&](double d, const auto& where) {
    if (d > out.discrepancy) {
      out.discrepancy = d;
      out.witness = where();
    }
  };
  for (std::size_t i = 0; i < p.points; ++i)
    for (std::size_t k = 0; k < p.radii.size(); ++k) {
      const ScaleRow a = p.at(i, k);
      const ScaleRow b = reference::row(f, i, p.radii[k]);
      auto where = [&] { return "point=" + f.domain().id(i) + " radius=" + num(p.radii[k]); };
      offer(gap(a.lip_upper, b.lip_upper), where);
      offer(gap(a.lip_upper_closed, b.lip_upper_closed), where);
      offer(gap(a.big_below, b.big_below), where);
      offer(gap(a.little_below, b.little_below), where);
      offer(gap(a.little_closed_below, b.little_closed_below), where);
      offer(gap(a.loc, b.loc), where);
    }
  offer(gap(lip_norm(f), reference::lip_norm(f)), [] { return std::string("lip_norm"); });
  out.note = "max |fast - reference| over all functionals, points and radii";
  return finish(out);
}

namespace {

const double kFieldValues[] = {-kInf, 0.0, 1.0, kInf};

std::string field_text(const FiniteField& f) {
  std::string s = "(";
  for (std::size_t i = 0; i < f.values.size(); ++i) s += (i ? "," : "") + num(f.values[i]);
  return s + ")";
}

std::string family_text(const SetFamily& fam) {
  std::string s = "{";
  for (std::size_t i = 0; i < fam.members().size(); ++i) s += (i ? "," : "") + std::to_string(fam.members()[i]);
  return s + "}";
}

void check_identities(const SetFamily& fam, Tally& t) {
  for (auto id : {FamilyIdentity::CDeltaC_Sigma, FamilyIdentity::SigmaC_CDelta, FamilyIdentity::DeltaC_CSigma})
    if (!verify_family_identity(fam, id).holds)
      t.fail([&] { return "identity " + to_string(id) + " fails on family " + family_text(fam); });
}

/// Duality conclusions for each field, and sup/inf conclusions for each listed pair.
void check_fields(const FamilyAlgebra& alg, const std::vector<FiniteField>& fields, Tally& t,
                  std::mt19937_64* pair_rng, std::size_t random_pairs) {
  std::vector<const FiniteField*> upper, lower;
  for (const auto& f : fields) {
    if (is_A_upper_sc(f, alg.base)) {
      upper.push_back(&f);
      if (!check_duality_props(f, alg, Semicontinuity::Upper).all())
        t.fail([&] { return "upper duality fails for field " + field_text(f) + " on " + family_text(alg.base); });
    }
    if (is_A_lower_sc(f, alg.base)) {
      lower.push_back(&f);
      if (!check_duality_props(f, alg, Semicontinuity::Lower).all())
        t.fail([&] { return "lower duality fails for field " + field_text(f) + " on " + family_text(alg.base); });
    }
  }
  auto pairs = [&](const std::vector<const FiniteField*>& fs, Envelope mode) {
    auto one = [&](std::size_t a, std::size_t b) {
      if (!check_sup_inf_props({*fs[a], *fs[b]}, alg, mode))
        t.fail([&] {
          return std::string(mode == Envelope::Sup ? "sup" : "inf") + " fails for " + field_text(*fs[a]) +
                 " and " + field_text(*fs[b]) + " on " + family_text(alg.base);
        });
    };
    if (fs.empty()) return;
    if (!pair_rng) {
      for (std::size_t a = 0; a < fs.size(); ++a)
        for (std::size_t b = a; b < fs.size(); ++b) one(a, b);
      return;
    }
    std::uniform_int_distribution<std::size_t> pick(0, fs.size() - 1);
    for (std::size_t k = 0; k < random_pairs; ++k) one(pick(*pair_rng), pick(*pair_rng));
  };
  pairs(upper, Envelope::Sup);
  pairs(lower, Envelope::Inf);
}

std::vector<FiniteField> all_fields(std::size_t n) {
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= 4;
  std::vector<FiniteField> out(total, FiniteField{std::vector<double>(n)});
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t c = code;
    for (std::size_t i = 0; i < n; ++i, c /= 4) out[code].values[i] = kFieldValues[c % 4];
  }
  return out;
}

}  // namespace

CheckResult check_setclass_exhaustive(std::size_t max_ground) {
  if (max_ground > 4) throw CapacityError("exhaustive topology enumeration supports grounds up to 4");
  Tally t;
  for (std::size_t n = 1; n <= max_ground; ++n) {
    const auto fields = all_fields(n);
    for (const SetFamily& top : all_topologies(n)) {
      check_identities(top, t);
      check_fields(FamilyAlgebra(top), fields, t, nullptr, 0);
    }
  }
  for (std::size_t n = 1; n <= std::min<std::size_t>(max_ground, 3); ++n) {
    const std::size_t sets = std::size_t{1} << n;
    for (std::size_t code = 0; code < (std::size_t{1} << sets); ++code) {
      std::vector<Mask> members;
      for (std::size_t m = 0; m < sets; ++m)
        if (code >> m & 1) members.push_back(static_cast<Mask>(m));
      check_identities(SetFamily::numbered(n, std::move(members)), t);
    }
  }
  return t.result("setclass_exhaustive",
                  "count of failing cases; all topologies up to " + std::to_string(max_ground) +
                      " points, fields in {-inf,0,1,inf}");
}

CheckResult check_setclass_random(std::size_t n, std::size_t cases, std::uint64_t seed) {
  if (n > 6) throw CapacityError("random set-class cases support grounds up to 6");
  std::mt19937_64 rng(seed);
  const auto fields = all_fields(n);
  Tally t;
  for (std::size_t c = 0; c < cases; ++c) {
    const SetFamily top = random_topology(n, rng);
    check_identities(top, t);
    check_identities(random_family(n, rng), t);
    check_fields(FamilyAlgebra(top), fields, t, &rng, 32);
  }
  return t.result("setclass_random", "count of failing cases over " + std::to_string(cases) +
                                         " seeded topologies on " + std::to_string(n) + " points");
}

}  // namespace lipderiv
