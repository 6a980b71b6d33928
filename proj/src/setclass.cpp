// SPDX-License-Identifier: Apache-2.0
#include "lipderiv/setclass.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <set>

#include "lipderiv/error.hpp"

namespace lipderiv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class Op>
SetFamily closure(const SetFamily& f, Op op) {
  std::vector<Mask> list = f.members();
  std::vector<bool> present(std::size_t{1} << f.ground_size(), false);
  for (Mask m : list) present[m] = true;
  for (std::size_t i = 0; i < list.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      Mask m = op(list[i], list[j]);
      if (!present[m]) {
        present[m] = true;
        list.push_back(m);
      }
    }
  }
  return SetFamily(f.ground(), std::move(list));
}

template <class Pred>
Mask preimage(const FiniteField& f, Pred pred) {
  Mask m = 0;
  for (std::size_t i = 0; i < f.values.size(); ++i)
    if (pred(f.values[i])) m |= Mask{1} << i;
  return m;
}

void check_field(const FiniteField& f, const SetFamily& fam) {
  if (f.values.size() != fam.ground_size())
    throw InputError("field size does not match the ground set");
  for (double v : f.values)
    if (std::isnan(v)) throw InputError("NaN in finite field");
}

}  // namespace

SetFamily::SetFamily(std::vector<std::string> ground, std::vector<Mask> members)
    : ground_(std::move(ground)), members_(std::move(members)) {
  if (ground_.size() > kMaxGround)
    throw CapacityError("ground set of " + std::to_string(ground_.size()) + " elements exceeds " +
                        std::to_string(kMaxGround));
  std::set<std::string> seen(ground_.begin(), ground_.end());
  if (seen.size() != ground_.size()) throw InputError("duplicate ground element");
  const Mask full = full_mask(ground_.size());
  for (Mask m : members_)
    if ((m & ~full) != 0) throw InputError("family member outside the ground set");
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  present_.assign(std::size_t{1} << ground_.size(), false);
  for (Mask m : members_) present_[m] = true;
}

SetFamily SetFamily::numbered(std::size_t n, std::vector<Mask> members) {
  std::vector<std::string> ground;
  for (std::size_t i = 1; i <= n; ++i) ground.push_back(std::to_string(i));
  return SetFamily(std::move(ground), std::move(members));
}

SetFamily SetFamily::from_sets(std::vector<std::string> ground,
                               const std::vector<std::vector<std::string>>& sets) {
  std::vector<Mask> members;
  for (const auto& s : sets) {
    Mask m = 0;
    for (const auto& e : s) {
      auto it = std::find(ground.begin(), ground.end(), e);
      if (it == ground.end()) throw InputError("element '" + e + "' not in the ground set");
      m |= Mask{1} << (it - ground.begin());
    }
    members.push_back(m);
  }
  return SetFamily(std::move(ground), std::move(members));
}

SetFamily SetFamily::power_set(std::vector<std::string> ground) {
  if (ground.size() > kMaxGround) throw CapacityError("ground set too large for a power set");
  std::vector<Mask> all(std::size_t{1} << ground.size());
  for (std::size_t m = 0; m < all.size(); ++m) all[m] = static_cast<Mask>(m);
  return SetFamily(std::move(ground), std::move(all));
}

SetFamily complements(const SetFamily& f) {
  std::vector<Mask> out;
  out.reserve(f.size());
  for (Mask m : f.members()) out.push_back(f.full() & ~m);
  return SetFamily(f.ground(), std::move(out));
}

SetFamily sigma_closure(const SetFamily& f) {
  return closure(f, [](Mask a, Mask b) { return a | b; });
}

SetFamily delta_closure(const SetFamily& f) {
  return closure(f, [](Mask a, Mask b) { return a & b; });
}

std::string to_string(FamilyIdentity id) {
  switch (id) {
    case FamilyIdentity::CDeltaC_Sigma: return "cdc=s";
    case FamilyIdentity::SigmaC_CDelta: return "sc=cd";
    case FamilyIdentity::DeltaC_CSigma: return "dc=cs";
  }
  return "?";
}

IdentityResult verify_family_identity(const SetFamily& f, FamilyIdentity id) {
  if (f.ground_size() > kMaxExhaustiveGround)
    throw CapacityError("exhaustive identity check limited to " +
                        std::to_string(kMaxExhaustiveGround) + " ground elements");
  SetFamily lhs = f, rhs = f;
  switch (id) {
    case FamilyIdentity::CDeltaC_Sigma:
      lhs = complements(delta_closure(complements(f)));
      rhs = sigma_closure(f);
      break;
    case FamilyIdentity::SigmaC_CDelta:
      lhs = complements(sigma_closure(f));
      rhs = delta_closure(complements(f));
      break;
    case FamilyIdentity::DeltaC_CSigma:
      lhs = complements(delta_closure(f));
      rhs = sigma_closure(complements(f));
      break;
  }
  IdentityResult r;
  if (lhs == rhs) return r;
  r.holds = false;
  for (Mask m : lhs.members())
    if (!rhs.contains(m)) {
      r.counterexample = m;
      return r;
    }
  for (Mask m : rhs.members())
    if (!lhs.contains(m)) {
      r.counterexample = m;
      return r;
    }
  return r;
}

Mask preimage_below(const FiniteField& f, double g) {
  return preimage(f, [g](double v) { return v < g; });
}
Mask preimage_above(const FiniteField& f, double g) {
  return preimage(f, [g](double v) { return v > g; });
}
Mask preimage_at_least(const FiniteField& f, double g) {
  return preimage(f, [g](double v) { return v >= g; });
}
Mask preimage_at_most(const FiniteField& f, double g) {
  return preimage(f, [g](double v) { return v <= g; });
}
Mask preimage_equal(const FiniteField& f, double value) {
  return preimage(f, [value](double v) { return v == value; });
}

std::vector<double> semicontinuity_thresholds(const FiniteField& f) {
  std::vector<double> vals;
  for (double v : f.values)
    if (std::isfinite(v)) vals.push_back(v);
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  if (vals.empty()) return {0.0};
  std::vector<double> out;
  out.push_back(vals.front() - 1.0);
  for (std::size_t i = 0; i < vals.size(); ++i) {
    out.push_back(vals[i]);
    if (i + 1 < vals.size()) out.push_back(vals[i] + (vals[i + 1] - vals[i]) / 2);
  }
  out.push_back(vals.back() + 1.0);
  return out;
}

bool is_A_upper_sc(const FiniteField& f, const SetFamily& fam) {
  check_field(f, fam);
  for (double g : semicontinuity_thresholds(f))
    if (!fam.contains(preimage_below(f, g))) return false;
  return true;
}

bool is_A_lower_sc(const FiniteField& f, const SetFamily& fam) {
  check_field(f, fam);
  for (double g : semicontinuity_thresholds(f))
    if (!fam.contains(preimage_above(f, g))) return false;
  return true;
}

FamilyAlgebra::FamilyAlgebra(SetFamily a)
    : base(std::move(a)),
      c(complements(base)),
      sigma(sigma_closure(base)),
      delta(delta_closure(base)),
      sigma_c(complements(sigma)),
      delta_c(complements(delta)),
      c_sigma(sigma_closure(c)),
      c_delta(delta_closure(c)) {}

DualityReport check_duality_props(const FiniteField& f, const FamilyAlgebra& alg,
                                  Semicontinuity mode) {
  const bool upper = mode == Semicontinuity::Upper;
  if (upper ? !is_A_upper_sc(f, alg.base) : !is_A_lower_sc(f, alg.base))
    throw InputError(upper ? "hypothesis failed: field is not A-upper semicontinuous"
                           : "hypothesis failed: field is not A-lower semicontinuous");
  const auto thresholds = semicontinuity_thresholds(f);
  // The lower case is the upper case applied to -f, written out directly.
  const double top = upper ? kInf : -kInf;
  DualityReport r;
  r.i = std::all_of(thresholds.begin(), thresholds.end(), [&](double g) {
    return alg.c.contains(upper ? preimage_at_least(f, g) : preimage_at_most(f, g));
  });
  const Mask finite_side = alg.base.full() & ~preimage_equal(f, top);
  r.ii = alg.sigma.contains(finite_side) && alg.sigma_c.contains(preimage_equal(f, top));
  const Mask bottom = preimage_equal(f, -top);
  r.iii = alg.delta.contains(bottom) && alg.delta_c.contains(alg.base.full() & ~bottom);
  r.iv = upper ? is_A_lower_sc(f, alg.c_sigma) : is_A_upper_sc(f, alg.c_sigma);
  return r;
}

DualityReport check_duality_props(const FiniteField& f, const SetFamily& fam, Semicontinuity mode) {
  return check_duality_props(f, FamilyAlgebra(fam), mode);
}

bool check_sup_inf_props(const std::vector<FiniteField>& fs, const FamilyAlgebra& alg,
                         Envelope mode) {
  if (fs.empty()) throw InputError("sup/inf of an empty list of fields");
  const bool sup = mode == Envelope::Sup;
  FiniteField env{std::vector<double>(alg.base.ground_size(), sup ? -kInf : kInf)};
  for (const auto& f : fs) {
    if (sup ? !is_A_upper_sc(f, alg.base) : !is_A_lower_sc(f, alg.base))
      throw InputError(sup ? "hypothesis failed: a field is not A-upper semicontinuous"
                           : "hypothesis failed: a field is not A-lower semicontinuous");
    for (std::size_t i = 0; i < env.values.size(); ++i)
      env.values[i] = sup ? std::max(env.values[i], f.values[i]) : std::min(env.values[i], f.values[i]);
  }
  return sup ? is_A_lower_sc(env, alg.c_sigma) : is_A_upper_sc(env, alg.c_sigma);
}

bool check_sup_inf_props(const std::vector<FiniteField>& fs, const SetFamily& fam, Envelope mode) {
  return check_sup_inf_props(fs, FamilyAlgebra(fam), mode);
}

std::vector<SetFamily> all_topologies(std::size_t n) {
  if (n > 4) throw CapacityError("topology enumeration limited to 4 points");
  const std::size_t subsets = std::size_t{1} << n;
  const Mask full = full_mask(n);
  std::vector<SetFamily> out;
  const std::uint64_t families = std::uint64_t{1} << subsets;
  for (std::uint64_t code = 0; code < families; ++code) {
    if (!(code & 1) || !((code >> full) & 1)) continue;  // must hold the empty set and X
    bool ok = true;
    for (std::size_t a = 0; a < subsets && ok; ++a) {
      if (!((code >> a) & 1)) continue;
      for (std::size_t b = 0; b < a && ok; ++b) {
        if (!((code >> b) & 1)) continue;
        ok = ((code >> (a | b)) & 1) && ((code >> (a & b)) & 1);
      }
    }
    if (!ok) continue;
    std::vector<Mask> members;
    for (std::size_t a = 0; a < subsets; ++a)
      if ((code >> a) & 1) members.push_back(static_cast<Mask>(a));
    out.push_back(SetFamily::numbered(n, std::move(members)));
  }
  return out;
}

SetFamily random_family(std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<Mask> pick(0, full_mask(n));
  std::uniform_int_distribution<int> count(0, static_cast<int>(std::min<std::size_t>(8, std::size_t{1} << n)));
  std::vector<Mask> members;
  for (int k = count(rng); k > 0; --k) members.push_back(pick(rng));
  return SetFamily::numbered(n, std::move(members));
}

SetFamily random_topology(std::size_t n, std::mt19937_64& rng) {
  SetFamily base = random_family(n, rng);
  std::vector<Mask> members = base.members();
  members.push_back(0);
  members.push_back(full_mask(n));
  SetFamily t = SetFamily::numbered(n, std::move(members));
  // Alternate closures until stable; on a finite lattice this terminates.
  for (;;) {
    SetFamily next = delta_closure(sigma_closure(t));
    if (next == t) return t;
    t = std::move(next);
  }
}

}  // namespace lipderiv
