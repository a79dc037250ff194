#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "unifact/direct_power.hpp"

namespace unifact {

inline constexpr std::size_t default_closure_cap = 10000000;

/// A subgroup of T^k given by generators.
///
/// Order and membership come from a stabilizer chain whose levels are the
/// coordinates: level i holds the projection onto coordinate i of the
/// elements that are trivial on coordinates 0..i-1. Nothing is enumerated
/// unless elements() is called. The chain is built on first use and shared
/// between copies.
class SubgroupHandle {
 public:
  SubgroupHandle(DirectPower ambient, std::vector<Tuple> generators);

  const DirectPower& ambient() const noexcept { return ambient_; }
  const std::vector<Tuple>& generators() const noexcept { return generators_; }

  BigInt order() const;
  bool contains(const Tuple& m) const;
  /// Every element, sorted; throws cap_exceeded when the order exceeds `cap`.
  std::vector<Tuple> elements(std::size_t cap = default_closure_cap) const;
  /// Sizes of the level orbits; their product is the order.
  std::vector<std::size_t> level_sizes() const;

  SubgroupHandle project(std::span<const unsigned> coords) const;
  SubgroupHandle image(const FactorAutomorphism& g) const;
  /// Every coordinate projection is onto T.
  bool is_subdirect() const;

 private:
  struct Chain;
  struct State;
  const Chain& chain() const;

  DirectPower ambient_;
  std::vector<Tuple> generators_;
  std::shared_ptr<State> state_;
};

/// Projection onto the ascending coordinate list.
SubgroupHandle project(const SubgroupHandle& h, std::span<const unsigned> coords);
bool is_subdirect(const SubgroupHandle& h);

}  // namespace unifact
