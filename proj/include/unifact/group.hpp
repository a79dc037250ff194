#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "unifact/error.hpp"

namespace unifact {

/// Dense element id. Element 0 is always the identity.
using Elem = std::uint32_t;

inline constexpr std::size_t default_group_cap = 10000;

/// Groups up to this order get a full Cayley table.
inline constexpr std::size_t cayley_table_limit = 1024;

/// Textual description of a group to build. See parse_group_spec() for the
/// command-line grammar and group_spec_from_json() for the file format.
struct GroupSpec {
  enum class Kind { cyclic, symmetric, alternating, dihedral, product, table, perm };

  Kind kind = Kind::cyclic;
  unsigned n = 1;
  std::vector<GroupSpec> factors;
  std::vector<std::vector<Elem>> table;
  unsigned degree = 0;
  std::vector<std::vector<unsigned>> generators;  // 0-based point images
  std::string label;                              // optional display name

  static GroupSpec cyclic(unsigned n);
  static GroupSpec symmetric(unsigned n);
  static GroupSpec alternating(unsigned n);
  /// Symmetry group of the regular n-gon, order 2n.
  static GroupSpec dihedral(unsigned n);
  static GroupSpec product(std::vector<GroupSpec> factors);
  static GroupSpec from_table(std::vector<std::vector<Elem>> mul, std::string label = {});
  static GroupSpec from_permutations(unsigned degree,
                                     std::vector<std::vector<unsigned>> generators,
                                     std::string label = {});
};

/// Short name such as "C9", "A5" or "C3xC3".
std::string describe(const GroupSpec& spec);

/// Parses `kind:param[,param]`, e.g. `cyclic:9`, `alternating:5`,
/// `product:cyclic:3,cyclic:3`. A string starting with `{` is read as JSON.
GroupSpec parse_group_spec(std::string_view text);

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// A finite group on dense ids 0..order-1 with identity 0.
///
/// Immutable once built; safe to share between threads.
class FiniteGroup {
 public:
  struct Cyclic {
    std::size_t n;
  };
  struct Permutations {
    unsigned degree;
    std::vector<std::vector<unsigned>> perms;  // sorted lexicographically; id = rank
  };
  struct Product {
    std::vector<GroupPtr> factors;
  };
  using Backend = std::variant<std::monostate, Cyclic, Permutations, Product>;

  std::size_t order() const noexcept { return order_; }
  static constexpr Elem identity() noexcept { return 0; }

  Elem mul(Elem a, Elem b) const {
    if (!table_.empty()) return table_[static_cast<std::size_t>(a) * order_ + b];
    return slow_mul(a, b);
  }
  Elem inv(Elem a) const { return inverse_[a]; }
  /// x^-1 g x
  Elem conj(Elem g, Elem x) const { return mul(mul(inv(x), g), x); }
  /// a^-1 b^-1 a b
  Elem commutator(Elem a, Elem b) const { return mul(mul(inv(a), inv(b)), mul(a, b)); }
  Elem power(Elem g, long long e) const;

  unsigned element_order(Elem g) const { return orders_[g]; }
  std::size_t exponent() const;
  bool is_abelian() const;

  const std::vector<Elem>& generators() const noexcept { return generators_; }
  const std::string& name() const noexcept { return name_; }
  const Backend& backend() const noexcept { return backend_; }

  /// Subgroup generated by `gens`, sorted ascending.
  std::vector<Elem> subgroup_closure(std::span<const Elem> gens) const;
  /// Greedy small generating set of a subgroup given by its elements.
  std::vector<Elem> generating_set_of(std::span<const Elem> subgroup) const;

  /// Builds a group from a multiplication table, relabelling so that the
  /// identity is element 0. Throws not_a_group / non_associative / cap_exceeded.
  static GroupPtr from_table(std::vector<std::vector<Elem>> mul, std::string name,
                             std::size_t cap = default_group_cap);

 private:
  friend GroupPtr make_group(const GroupSpec& spec, std::size_t cap);
  friend class GroupAssembler;

  FiniteGroup() = default;
  Elem slow_mul(Elem a, Elem b) const;

  std::size_t order_ = 1;
  std::string name_;
  std::vector<Elem> table_;
  std::vector<Elem> inverse_;
  std::vector<unsigned> orders_;
  std::vector<Elem> generators_;
  Backend backend_;
};

/// Builds and validates a group. Throws Error(cap_exceeded) if the order would
/// exceed `cap`.
GroupPtr make_group(const GroupSpec& spec, std::size_t cap = default_group_cap);

/// Checks every group axiom exhaustively (associativity over random triples
/// when the order exceeds 512). Used by tests; construction already validates
/// table input.
bool satisfies_group_axioms(const FiniteGroup& g);

/// Derived series reaches the trivial group.
bool is_solvable(const FiniteGroup& g);

/// The derived subgroup of the subgroup `h` (sorted elements).
std::vector<Elem> derived_subgroup(const FiniteGroup& g, std::span<const Elem> h);

/// Non-trivial with no proper non-trivial normal subgroup.
bool is_simple(const FiniteGroup& g);

std::vector<Elem> centralizer(const FiniteGroup& g, Elem x);
std::vector<Elem> normal_closure(const FiniteGroup& g, std::span<const Elem> elems);
std::vector<std::vector<Elem>> conjugacy_classes(const FiniteGroup& g);

}  // namespace unifact
