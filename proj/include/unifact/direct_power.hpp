#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "unifact/automorphism.hpp"
#include "unifact/group.hpp"

namespace unifact {

using BigInt = boost::multiprecision::cpp_int;

/// An element of T^k: one base-group id per coordinate. Coordinates are
/// 0-based in code and 1-based in reports.
using Tuple = std::vector<Elem>;

BigInt big_pow(std::size_t base, unsigned exponent);

/// M = T_1 x ... x T_k with all T_i equal to `base`.
struct DirectPower {
  GroupPtr base;
  unsigned k = 1;

  DirectPower() = default;
  DirectPower(GroupPtr base, unsigned k);

  BigInt order() const { return big_pow(base->order(), k); }
  Tuple identity() const { return Tuple(k, 0); }
  Tuple mul(const Tuple& a, const Tuple& b) const;
  Tuple inv(const Tuple& a) const;
  static bool is_identity(const Tuple& a);

  /// Whether every tuple has a mixed-radix code below 2^64.
  bool fits_code() const;
  /// Mixed radix with coordinate 0 most significant.
  std::uint64_t encode(const Tuple& a) const;
  Tuple decode(std::uint64_t code) const;

  friend bool operator==(const DirectPower& a, const DirectPower& b) {
    return a.base == b.base && a.k == b.k;
  }
};

/// An automorphism of T^k that permutes the factors and twists each one:
/// coordinate i of m is sent to coordinate perm[i] of the image with value
/// twists[i](m_i).
struct FactorAutomorphism {
  std::vector<unsigned> perm;
  std::vector<Automorphism> twists;

  static FactorAutomorphism identity(const DirectPower& m);
  /// Pure factor permutation with identity twists.
  static FactorAutomorphism permutation(const DirectPower& m, std::vector<unsigned> perm);

  Tuple apply(const Tuple& m) const;
  /// First this, then next.
  FactorAutomorphism then(const FactorAutomorphism& next) const;
  FactorAutomorphism inverse() const;
  bool is_pure_permutation() const;

  friend bool operator==(const FactorAutomorphism& a, const FactorAutomorphism& b) {
    return a.perm == b.perm && a.twists == b.twists;
  }
};

/// Orbits of the factor permutations of `gens` on {0..k-1}.
bool acts_transitively_on_factors(unsigned k, std::span<const FactorAutomorphism> gens);

}  // namespace unifact
