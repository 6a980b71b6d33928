// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace lipderiv {

/// Subset of a finite ground set, bit i standing for ground element i.
using Mask = std::uint32_t;

/// Largest ground set a family may live on (its membership table has 2^n bits).
inline constexpr std::size_t kMaxGround = 16;
/// Largest ground set for the exhaustive identity checks.
inline constexpr std::size_t kMaxExhaustiveGround = 12;

inline Mask full_mask(std::size_t n) { return n == 32 ? ~Mask{0} : (Mask{1} << n) - 1; }

/// A family of subsets of a finite ground set, deduplicated and kept in
/// ascending mask order so equality of families is plain equality.
class SetFamily {
 public:
  /// Throws CapacityError above kMaxGround, InputError on members outside the ground set.
  SetFamily(std::vector<std::string> ground, std::vector<Mask> members);
  /// Ground of n elements named "1".."n".
  static SetFamily numbered(std::size_t n, std::vector<Mask> members);
  static SetFamily from_sets(std::vector<std::string> ground,
                             const std::vector<std::vector<std::string>>& sets);
  static SetFamily power_set(std::vector<std::string> ground);

  const std::vector<std::string>& ground() const { return ground_; }
  std::size_t ground_size() const { return ground_.size(); }
  Mask full() const { return full_mask(ground_.size()); }
  const std::vector<Mask>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool contains(Mask m) const { return present_[m]; }

  friend bool operator==(const SetFamily& a, const SetFamily& b) {
    return a.ground_ == b.ground_ && a.members_ == b.members_;
  }

 private:
  std::vector<std::string> ground_;
  std::vector<Mask> members_;
  std::vector<bool> present_;
};

SetFamily complements(const SetFamily& f);
/// Closure under (finite, nonempty) unions.
SetFamily sigma_closure(const SetFamily& f);
/// Closure under (finite, nonempty) intersections.
SetFamily delta_closure(const SetFamily& f);

enum class FamilyIdentity { CDeltaC_Sigma, SigmaC_CDelta, DeltaC_CSigma };
std::string to_string(FamilyIdentity id);

struct IdentityResult {
  bool holds = true;
  /// A set in exactly one side of the identity.
  std::optional<Mask> counterexample;
};

/// Exhaustive comparison of both sides. Throws CapacityError above kMaxExhaustiveGround.
IdentityResult verify_family_identity(const SetFamily& f, FamilyIdentity id);

/// Extended-real function on the ground set of a family.
struct FiniteField {
  std::vector<double> values;  // ±inf allowed, NaN not
};

Mask preimage_below(const FiniteField& f, double gamma);     // {f < gamma}
Mask preimage_above(const FiniteField& f, double gamma);     // {f > gamma}
Mask preimage_at_least(const FiniteField& f, double gamma);  // {f >= gamma}
Mask preimage_at_most(const FiniteField& f, double gamma);   // {f <= gamma}
Mask preimage_equal(const FiniteField& f, double value);     // {f == value}

/// Representative real thresholds: the distinct finite values of f, midpoints
/// between consecutive ones, and one value beyond each end ({0} if f has no
/// finite values). Every strict or non-strict level set over real gamma
/// occurs at one of them.
std::vector<double> semicontinuity_thresholds(const FiniteField& f);

bool is_A_upper_sc(const FiniteField& f, const SetFamily& fam);
bool is_A_lower_sc(const FiniteField& f, const SetFamily& fam);

/// The families derived from A that the duality propositions talk about.
struct FamilyAlgebra {
  explicit FamilyAlgebra(SetFamily a);
  SetFamily base, c, sigma, delta, sigma_c, delta_c, c_sigma, c_delta;
};

enum class Semicontinuity { Upper, Lower };

struct DualityReport {
  bool i = false, ii = false, iii = false, iv = false;
  bool all() const { return i && ii && iii && iv; }
};

/// Conclusions (i)-(iv) for an A-upper (mode Upper) or A-lower (mode Lower)
/// semicontinuous field. Throws InputError naming the hypothesis when f is not.
DualityReport check_duality_props(const FiniteField& f, const FamilyAlgebra& alg, Semicontinuity mode);
DualityReport check_duality_props(const FiniteField& f, const SetFamily& fam, Semicontinuity mode);

enum class Envelope { Sup, Inf };

/// Sup of A-upper sc fields is A_{c sigma}-lower sc; inf of A-lower sc fields is
/// A_{c sigma}-upper sc. Throws InputError if some input violates the hypothesis.
bool check_sup_inf_props(const std::vector<FiniteField>& fs, const FamilyAlgebra& alg, Envelope mode);
bool check_sup_inf_props(const std::vector<FiniteField>& fs, const SetFamily& fam, Envelope mode);

/// All topologies on {1..n}; n <= 4.
std::vector<SetFamily> all_topologies(std::size_t n);
/// Topology generated by a few random subsets (closed under unions and
/// intersections, with the empty set and the ground set added).
SetFamily random_topology(std::size_t n, std::mt19937_64& rng);
/// Random family of subsets (not necessarily containing the empty set or ground).
SetFamily random_family(std::size_t n, std::mt19937_64& rng);

}  // namespace lipderiv
