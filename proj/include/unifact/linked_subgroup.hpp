#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "unifact/direct_power.hpp"

namespace unifact {

/// A subgroup of T^k cut out by coordinate equations.
///
/// The coordinates are partitioned into blocks. Inside a block the value at
/// every coordinate is a fixed automorphic image of the value at the block's
/// least coordinate (its root), and the root value ranges over a subgroup F
/// of T. Full strips, strip products, their intersections, projections and
/// images under factor automorphisms all have this shape, so orders of
/// products of such subgroups are exact without enumerating T^k.
class LinkedSubgroup {
 public:
  struct Block {
    std::vector<unsigned> coords;         // ascending; coords[0] is the root
    std::vector<Automorphism> from_root;  // parallel to coords; from_root[0] is the identity
    std::vector<Elem> root_values;        // subgroup F of T, ascending
  };

  /// Blocks must partition 0..k-1. Normalizes: re-roots at the least
  /// coordinate, splits blocks with trivial F into singletons, sorts blocks.
  LinkedSubgroup(DirectPower ambient, std::vector<Block> blocks);

  static LinkedSubgroup whole(const DirectPower& m);
  static LinkedSubgroup trivial(const DirectPower& m);

  const DirectPower& ambient() const noexcept { return ambient_; }
  const std::vector<Block>& blocks() const noexcept { return blocks_; }

  BigInt order() const;
  bool contains(const Tuple& m) const;
  /// One generator per generator of each block's F.
  std::vector<Tuple> generators() const;
  /// Element with the given root value per block.
  Tuple element(std::span<const Elem> root_values) const;

  LinkedSubgroup intersect(const LinkedSubgroup& other) const;
  /// Image under the projection onto `coords` (ascending, distinct); the
  /// result lives in T^{|coords|}.
  LinkedSubgroup project(std::span<const unsigned> coords) const;
  LinkedSubgroup image(const FactorAutomorphism& g) const;

  bool is_subdirect() const;
  /// Every element, sorted; throws cap_exceeded beyond `cap`.
  std::vector<Tuple> elements(std::size_t cap) const;

  /// Equality as subsets of T^k.
  friend bool operator==(const LinkedSubgroup& a, const LinkedSubgroup& b);

 private:
  DirectPower ambient_;
  std::vector<Block> blocks_;
};

/// |XY| = |X||Y| / |X cap Y|.
BigInt product_order(const LinkedSubgroup& x, const LinkedSubgroup& y);

}  // namespace unifact
