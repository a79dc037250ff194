#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "unifact/direct_power.hpp"
#include "unifact/linked_subgroup.hpp"

namespace unifact {

class SubgroupHandle;

/// {(t^{a_1}, ..., t^{a_r}) : t in T} placed on the support coordinates
/// i_1 < ... < i_r of T^k, identity elsewhere. The twist at the first support
/// coordinate is the identity, so a strip stores r - 1 twists.
class FullStrip {
 public:
  /// `support` need not be sorted; twists are parallel to it and are
  /// normalized so that the least coordinate carries the identity.
  FullStrip(GroupPtr base, std::vector<unsigned> support, std::vector<Automorphism> twists);
  /// Identity twists on every support coordinate.
  static FullStrip diagonal(GroupPtr base, std::vector<unsigned> support);

  const GroupPtr& base() const noexcept { return base_; }
  const std::vector<unsigned>& support() const noexcept { return support_; }
  /// Twist at support()[pos]; the identity for pos 0.
  const Automorphism& twist(std::size_t pos) const { return twists_[pos]; }
  const std::vector<Automorphism>& twists() const noexcept { return twists_; }
  /// Twist at coordinate c, which must lie in the support.
  const Automorphism& twist_at(unsigned c) const;
  /// Map carrying the value at coordinate `from` to the value at `to`.
  Automorphism relation(unsigned from, unsigned to) const;
  bool in_support(unsigned c) const;
  std::uint64_t support_mask() const;

  /// The strip element with value t at the first support coordinate.
  Tuple element(unsigned k, Elem t) const;
  FullStrip image(const FactorAutomorphism& g) const;

  friend bool operator==(const FullStrip& a, const FullStrip& b) {
    return a.support_ == b.support_ && a.twists_ == b.twists_;
  }

 private:
  GroupPtr base_;
  std::vector<unsigned> support_;
  std::vector<Automorphism> twists_;
};

/// A product of full strips with pairwise disjoint supports, together with a
/// set of coordinates that are left unconstrained (a support-1 strip is the
/// same thing as a full coordinate). Uncovered coordinates are trivial.
class StripProduct {
 public:
  /// Support-1 strips are moved to `full`; strips are sorted by least index.
  StripProduct(DirectPower ambient, std::vector<FullStrip> strips, std::vector<unsigned> full = {});

  const DirectPower& ambient() const noexcept { return ambient_; }
  const std::vector<FullStrip>& strips() const noexcept { return strips_; }
  const std::vector<unsigned>& full() const noexcept { return full_; }

  BigInt order() const;
  bool contains(const Tuple& m) const;
  /// Every coordinate is in some strip or full.
  bool is_subdirect() const;
  /// Coordinates covered by a strip or full.
  std::vector<unsigned> covered() const;

  /// Element built from one value per strip followed by one per full
  /// coordinate.
  Tuple element(std::span<const Elem> params) const;
  std::size_t parameter_count() const noexcept { return strips_.size() + full_.size(); }
  std::vector<Tuple> generators() const;

  LinkedSubgroup to_linked() const;
  SubgroupHandle to_handle() const;
  StripProduct image(const FactorAutomorphism& g) const;

  friend bool operator==(const StripProduct& a, const StripProduct& b) {
    return a.ambient_ == b.ambient_ && a.strips_ == b.strips_ && a.full_ == b.full_;
  }

 private:
  DirectPower ambient_;
  std::vector<FullStrip> strips_;
  std::vector<unsigned> full_;
};

/// |T|^(number of strips + number of full coordinates).
BigInt strip_product_order(const StripProduct& p);

/// Image under the projection onto `coords` (ascending). The result is again
/// a strip product in T^{|coords|}.
StripProduct project(const StripProduct& p, std::span<const unsigned> coords);
bool is_subdirect(const StripProduct& p);

/// Reads a linked subgroup whose blocks all have trivial or full parameter
/// set back as a strip product; nullopt otherwise.
std::optional<StripProduct> as_strip_product(const LinkedSubgroup& l);

/// Recovers the strip decomposition of a subdirect subgroup of T^k for a
/// non-abelian simple T. Coordinates i and j share a strip exactly when the
/// projection onto {i, j} has order |T|; twists are read from those
/// projections. Throws Error(precondition) when T is not non-abelian simple,
/// when the subgroup is not subdirect, or when the recovered product does
/// not equal the subgroup (the message names a witness).
StripProduct scott_decompose(const SubgroupHandle& h);

}  // namespace unifact
