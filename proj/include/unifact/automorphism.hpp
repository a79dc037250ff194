#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "unifact/group.hpp"

namespace unifact {

/// A map between finite groups, stored as the image of every element.
struct Morphism {
  GroupPtr source;
  GroupPtr target;
  std::vector<Elem> map;

  /// map(g h) == map(g) map(h) for every pair (exhaustive).
  bool is_homomorphism() const;
};

/// A bijective endomorphism of a finite group.
///
/// Composition follows the right-action convention used throughout the
/// library: `a.then(b)` sends g to b(a(g)), so a chain of twists written
/// left to right is applied left to right.
class Automorphism {
 public:
  /// Validates that `images` is a bijective homomorphism.
  static Automorphism checked(GroupPtr group, std::vector<Elem> images);
  /// No validation; for maps built from known automorphisms.
  static Automorphism unchecked(GroupPtr group, std::vector<Elem> images);
  static Automorphism identity(GroupPtr group);
  /// g -> x^-1 g x
  static Automorphism inner(GroupPtr group, Elem x);

  Elem operator()(Elem g) const { return images_[g]; }
  const std::vector<Elem>& images() const noexcept { return images_; }
  const GroupPtr& group() const noexcept { return group_; }

  Automorphism then(const Automorphism& next) const;
  Automorphism inverse() const;
  bool is_identity() const;
  Morphism as_morphism() const { return {group_, group_, images_}; }

  friend bool operator==(const Automorphism& a, const Automorphism& b) {
    return a.images_ == b.images_;
  }
  friend bool operator<(const Automorphism& a, const Automorphism& b) {
    return a.images_ < b.images_;
  }

 private:
  Automorphism(GroupPtr group, std::vector<Elem> images)
      : group_(std::move(group)), images_(std::move(images)) {}

  GroupPtr group_;
  std::vector<Elem> images_;
};

/// Composite of a chain applied left to right; identity for an empty chain.
Automorphism compose_chain(const GroupPtr& group, const std::vector<Automorphism>& chain);

inline constexpr std::size_t default_automorphism_budget = 1000000;

/// Every automorphism exactly once, ordered lexicographically by the images
/// of the group's generators. Backtracks over generator images of matching
/// element order and extends each candidate along the Cayley graph, pruning
/// as soon as the partial map stops being a well-defined injective
/// homomorphism.
std::vector<Automorphism> enumerate_automorphisms(const GroupPtr& group,
                                                  std::size_t cap = default_group_cap,
                                                  std::size_t budget = default_automorphism_budget);

struct UniformityReport {
  bool uniform = false;
  /// Least element outside { g^-1 alpha(g) } when not uniform.
  std::optional<Elem> uncovered;
  /// h g^-1 for the least colliding pair g < h with equal images; a
  /// non-identity fixed point of alpha.
  std::optional<Elem> fixed_point;
};

/// Whether g -> g^-1 alpha(g) is surjective.
UniformityReport is_uniform(const Automorphism& alpha);

/// {g : alpha(g) = g}, ascending.
std::vector<Elem> fixed_points(const Automorphism& alpha);

/// First uniform automorphism in enumeration order.
std::optional<Automorphism> has_uniform_automorphism(const GroupPtr& group,
                                                     std::size_t cap = default_group_cap);

/// Least s with s^-1 alpha(s) = y. Throws Error(precondition) if none exists.
Elem uniform_preimage(const Automorphism& alpha, Elem y);

/// Aut(T) with precomputed composition, inverses, uniformity and fixed-point
/// data, indexed in enumeration order. Shared by the exhaustive searches.
class AutomorphismTable {
 public:
  using Index = std::uint32_t;

  explicit AutomorphismTable(GroupPtr group, std::size_t budget = default_automorphism_budget);

  const GroupPtr& group() const noexcept { return group_; }
  std::size_t size() const noexcept { return autos_.size(); }
  const Automorphism& operator[](Index i) const { return autos_[i]; }
  const std::vector<Automorphism>& all() const noexcept { return autos_; }

  Index identity_index() const noexcept { return identity_; }
  /// Index of `a`; throws if `a` is not in the table.
  Index index_of(const Automorphism& a) const;
  /// Index of "i then j".
  Index compose(Index i, Index j) const;
  Index inverse(Index i) const { return inverse_[i]; }
  bool uniform(Index i) const { return uniform_[i] != 0; }
  /// Fixed-point set as a bitmask over element ids; only when |T| <= 64.
  std::uint64_t fixed_mask(Index i) const { return fixed_mask_[i]; }
  bool has_masks() const noexcept { return !fixed_mask_.empty(); }
  bool has_compose_table() const noexcept { return !compose_.empty(); }

 private:
  GroupPtr group_;
  std::vector<Automorphism> autos_;
  std::vector<Index> compose_;
  std::vector<Index> inverse_;
  std::vector<std::uint8_t> uniform_;
  std::vector<std::uint64_t> fixed_mask_;
  Index identity_ = 0;
};

}  // namespace unifact
