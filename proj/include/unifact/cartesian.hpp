#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "unifact/factorisation.hpp"
#include "unifact/linked_subgroup.hpp"
#include "unifact/strips.hpp"
#include "unifact/subgroup.hpp"

namespace unifact {

/// A group of automorphisms of T^k, given by generators, whose induced
/// action on the factors is transitive.
class FactorTransitiveAutGroup {
 public:
  /// Throws precondition when the factor action is not transitive.
  FactorTransitiveAutGroup(DirectPower ambient, std::vector<FactorAutomorphism> generators);
  /// Pure factor permutations (0-based images).
  static FactorTransitiveAutGroup from_permutations(const DirectPower& ambient,
                                                    const std::vector<std::vector<unsigned>>& perms);

  const DirectPower& ambient() const noexcept { return ambient_; }
  const std::vector<FactorAutomorphism>& generators() const noexcept { return generators_; }
  std::vector<std::vector<unsigned>> factor_permutations() const;
  /// Some element sending factor `from` to factor `to`, as a word in the
  /// generators found by breadth-first search.
  FactorAutomorphism transporter(unsigned from, unsigned to) const;

 private:
  DirectPower ambient_;
  std::vector<FactorAutomorphism> generators_;
};

/// Family K_1, ..., K_l of proper subgroups of M = T^k with l >= 2.
class CartesianFactorisation {
 public:
  /// Throws invalid_input on l < 2, an improper factor or mixed ambients.
  CartesianFactorisation(DirectPower ambient, std::vector<LinkedSubgroup> factors);
  static CartesianFactorisation from_strip_products(const std::vector<StripProduct>& factors);

  const DirectPower& ambient() const noexcept { return ambient_; }
  const std::vector<LinkedSubgroup>& factors() const noexcept { return factors_; }
  std::size_t size() const noexcept { return factors_.size(); }
  /// M_0, the intersection of all factors.
  const LinkedSubgroup& m0() const noexcept { return m0_; }
  /// Intersection of every factor except factor i.
  LinkedSubgroup complement(std::size_t i) const;

 private:
  DirectPower ambient_;
  std::vector<LinkedSubgroup> factors_;
  LinkedSubgroup m0_;
};

struct CartesianVerdict {
  bool holds = false;
  /// Verdict for M = K_i (cap_{j != i} K_j), per i.
  std::vector<FactorisationVerdict> per_index;
  std::optional<std::size_t> failing_index;
  std::optional<Tuple> witness;
};

CartesianVerdict verify_cartesian(const CartesianFactorisation& k,
                                  std::uint64_t witness_budget = default_witness_budget);
/// Extensional variant on element closures; each K_i must fit under `cap`.
CartesianVerdict verify_cartesian(const DirectPower& m, const std::vector<SubgroupHandle>& ks,
                                  std::uint64_t witness_budget = default_witness_budget,
                                  std::size_t cap = default_closure_cap);

/// Full strips X with |Supp X| >= 2 and K = X x K restricted to the other
/// coordinates, ordered by least support index.
std::vector<FullStrip> involved_strips(const LinkedSubgroup& k);
std::vector<FullStrip> involved_strips(const StripProduct& k);
/// Subset search over supports; k <= 16 coordinates.
std::vector<FullStrip> involved_strips(const SubgroupHandle& k);

/// Every generator maps the set of factors onto itself. Generators suffice:
/// a set fixed by each generator is fixed by the group they generate.
bool is_invariant(const CartesianFactorisation& k, const FactorTransitiveAutGroup& g0);

struct InvolvedStrip {
  std::size_t member;  // index into the factorisation
  FullStrip strip;
};

struct MainstripfactReport {
  enum class Status {
    applies,          // two involved strips overlap; the argument ran
    vacuous,          // involved strips pairwise disjoint
    not_cartesian,
    not_invariant,
  };
  Status status = Status::vacuous;
  std::string reason;
  std::vector<InvolvedStrip> involved;
  /// Overlapping pair the argument starts from (indices into `involved`).
  std::optional<std::pair<std::size_t, std::size_t>> start;
  /// The two strips share two or more coordinates; then the projections onto
  /// two shared coordinates factorise T^2 and `composite` comes from that.
  bool shared_two = false;
  /// The strip cycle X_1, ..., X_a (indices into `involved`).
  std::vector<std::size_t> sequence;
  /// Coordinates T_1, ..., T_2d (0-based).
  std::vector<unsigned> labels;
  std::vector<Automorphism> alphas, betas;
  std::optional<Automorphism> composite;
  bool composite_uniform = false;
  /// K_1 projects onto Y_1 x ... x Y_d, the other factors' intersection into
  /// Z_1 x ... x Z_d, and YZ = T^{2d}.
  bool projections_check = false;
  bool base_has_uniform = false;
  bool m0_subdirect = false;
  /// Both conclusions hold whenever the argument applies.
  bool consistent = true;
};

const char* status_name(MainstripfactReport::Status s);

/// Runs the argument that two overlapping involved strips force a uniform
/// automorphism of T and a non-subdirect M_0. Throws precondition for an
/// abelian base group.
MainstripfactReport mainstripfact_verify(const CartesianFactorisation& k, const FactorTransitiveAutGroup& g0);

struct CartesianSearchStats {
  std::uint64_t candidates = 0;       // proper strip products containing M_0
  std::uint64_t families_checked = 0;
};

/// All G0-invariant cartesian factorisations with intersection exactly M_0.
/// M_0 must be subdirect over a non-abelian simple T, so every K_i >= M_0 is
/// a product of full strips; each block of K_i lies inside a block of M_0
/// with twists inherited from M_0. Candidates are therefore the proper
/// refinements of M_0's block partition. Families are visited by size, then
/// lexicographically by candidate index. Throws budget_exceeded past
/// `budget` families.
std::vector<CartesianFactorisation> enumerate_cartesian_over(const DirectPower& m, const SubgroupHandle& m0,
                                                             const FactorTransitiveAutGroup& g0,
                                                             std::uint64_t budget = 1000000,
                                                             CartesianSearchStats* stats = nullptr);
std::vector<CartesianFactorisation> enumerate_cartesian_over(const StripProduct& m0,
                                                             const FactorTransitiveAutGroup& g0,
                                                             std::uint64_t budget = 1000000,
                                                             CartesianSearchStats* stats = nullptr);

}  // namespace unifact
