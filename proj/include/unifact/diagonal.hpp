#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "unifact/cartesian.hpp"
#include "unifact/serialize.hpp"
#include "unifact/strips.hpp"

namespace unifact {

inline constexpr std::size_t default_point_cap = 1000000;

using Point = std::uint32_t;

/// A permutation group on 0..degree-1 given by generator image tables.
struct PermAction {
  Point degree = 0;
  Point base_point = 0;
  std::vector<std::vector<Point>> generators;

  Point act(Point p, std::size_t gen) const { return generators[gen][p]; }
  /// Orbit of p under the generators listed in `gens` (all when empty), in
  /// breadth-first order.
  std::vector<Point> orbit(Point p, const std::vector<std::size_t>& gens = {}) const;
  bool is_transitive(const std::vector<std::size_t>& gens = {}) const;
};

/// Element of T^k : Sym(k) acting on tuples by x -> (x m)^perm, where
/// (y^perm)[perm[i]] = y[i]. An empty perm means the identity.
struct DiagElement {
  Tuple m;
  std::vector<unsigned> perm;
};

/// The coset action of M = T^k on the right cosets of a subdirect product
/// of full strips M_w, extended by factor permutations that normalize M_w.
///
/// Points are the cosets, numbered by their lexicographically least
/// representative: that tuple carries the identity at the least coordinate
/// of each strip, and the point id is the mixed-radix code of its remaining
/// coordinates, lowest coordinate most significant.
class DiagonalAction {
 public:
  /// `top` lists factor permutations (0-based images); nullopt takes a
  /// generating set of every factor permutation normalizing M_w. Throws
  /// precondition unless T is non-abelian simple, invalid_input when the
  /// strips leave coordinates uncovered or a permutation does not normalize
  /// M_w, cap_exceeded above `cap` points.
  explicit DiagonalAction(StripProduct stabilizer,
                          std::optional<std::vector<std::vector<unsigned>>> top = std::nullopt,
                          std::size_t cap = default_point_cap);

  const DirectPower& ambient() const noexcept { return stab_.ambient(); }
  const StripProduct& stabilizer() const noexcept { return stab_; }
  const std::vector<std::vector<unsigned>>& top() const noexcept { return top_; }
  std::size_t strip_count() const noexcept { return stab_.strips().size(); }
  bool is_simple_type() const noexcept { return strip_count() == 1; }
  Point points() const noexcept { return action_.degree; }

  /// Generators of G: each base generator at each coordinate, then the top
  /// permutations. Their tables make up action().
  const std::vector<DiagElement>& generators() const noexcept { return gens_; }
  /// Number of leading generators that lie in M.
  std::size_t m_generator_count() const noexcept { return m_gens_; }
  const PermAction& action() const noexcept { return action_; }

  Point point_of(const Tuple& x) const;
  Tuple representative(Point p) const;
  /// Computed from the representative, bypassing the tables.
  Point act(Point p, const DiagElement& g) const;

 private:
  StripProduct stab_;
  std::vector<std::vector<unsigned>> top_;
  std::vector<int> strip_of_;        // per coordinate
  std::vector<bool> root_;           // least coordinate of its strip
  std::vector<unsigned> free_;       // non-root coordinates, ascending
  std::vector<DiagElement> gens_;
  std::size_t m_gens_ = 0;
  PermAction action_;
};

/// Factor permutations normalizing the strip product, in lexicographic
/// order. k <= 8.
std::vector<std::vector<unsigned>> normalizing_permutations(const StripProduct& p);
/// Greedy generating set of a permutation group given by its elements.
std::vector<std::vector<unsigned>> permutation_generators(const std::vector<std::vector<unsigned>>& group);

struct ActionAxiomsReport {
  bool identity_fixes = true;
  bool bijective = true;
  bool tables_match = true;        // table entry equals the direct computation
  bool products_compatible = true; // (p g) h = p (gh) for consecutive generator pairs
  bool stabilizer_fixes_base = true;
  bool m_transitive = true;
  std::uint64_t checks = 0;
  bool ok() const {
    return identity_fixes && bijective && tables_match && products_compatible && stabilizer_fixes_base && m_transitive;
  }
};

/// Exhaustive over all points. With M transitive and M_w fixing the base
/// point, orbit-stabilizer gives a stabilizer of order exactly |M_w|.
ActionAxiomsReport check_action_axioms(const DiagonalAction& d);

/// Structural surrogate for quasiprimitivity; normal subgroups are not
/// enumerated.
struct StructuralReport {
  bool m_transitive = false;
  bool top_transitive_on_factors = false;
  bool stabilizer_subdirect = false;
  bool passes() const { return m_transitive && top_transitive_on_factors && stabilizer_subdirect; }
};

StructuralReport check_structural_quasiprimitivity(const DiagonalAction& d);

/// (g_1, ..., g_l; sigma) in Sym(Gamma) wr S_l. Coordinate i of the image of
/// (c_1, ..., c_l) is c_j g_j with j = sigma^-1(i). An empty base entry is
/// the identity of Sym(Gamma).
struct WreathElement {
  std::vector<std::vector<Point>> base;
  std::vector<unsigned> top;
};

/// Sym(Gamma) wr S_l on Gamma^l in product action. Point ids are mixed radix
/// with coordinate 0 most significant.
class ProductActionWreath {
 public:
  /// Throws invalid_input for gamma < 2 or l < 2, cap_exceeded when gamma^l
  /// exceeds `cap`.
  ProductActionWreath(Point gamma, unsigned ell, std::size_t cap = default_point_cap);

  Point gamma() const noexcept { return gamma_; }
  unsigned ell() const noexcept { return ell_; }
  Point degree() const noexcept { return degree_; }

  Point encode(const std::vector<Point>& coords) const;
  std::vector<Point> decode(Point p) const;

  WreathElement identity() const;
  /// Throws invalid_input when the element is malformed.
  void validate(const WreathElement& g) const;
  Point act(Point p, const WreathElement& g) const;
  /// a then b.
  WreathElement multiply(const WreathElement& a, const WreathElement& b) const;
  const std::vector<unsigned>& pi(const WreathElement& g) const { return g.top; }
  std::vector<Point> pi_i(const WreathElement& g, unsigned i) const;
  bool in_base_group(const WreathElement& g) const;

  PermAction action(const std::vector<WreathElement>& gens) const;

 private:
  Point gamma_;
  unsigned ell_;
  Point degree_;
};

/// Base generators (identity top part) followed by top generators.
std::pair<ProductActionWreath, PermAction> build_wreath_product_action(
    Point gamma, unsigned ell, const std::vector<WreathElement>& base_generators,
    const std::vector<std::vector<unsigned>>& top_generators, std::size_t cap = default_point_cap);

struct EmbeddingWitness {
  Point delta = 0;  // |Delta|
  unsigned r = 0;
  /// Strip supports grouping the coordinates into M_1, ..., M_r.
  std::vector<std::vector<unsigned>> blocks;
  /// Omega point -> Delta^r point.
  std::vector<Point> bijection;
  /// One per generator of the diagonal action.
  std::vector<WreathElement> images;
};

struct EquivarianceReport {
  bool bijective = false;
  std::uint64_t checks = 0;
  std::uint64_t failures = 0;
  bool sampled = false;
  bool ok() const { return bijective && failures == 0 && checks > 0; }
};

/// samples == 0 checks every (point, generator) pair.
EquivarianceReport verify_embedding(const DiagonalAction& d, const EmbeddingWitness& w, std::uint64_t samples = 0,
                                    std::uint64_t seed = 0);

/// Groups the coordinates by strip support into M_1, ..., M_r and identifies
/// Omega with Delta^r, Delta the cosets of the strip in M_i. Throws
/// precondition for simple type or strips of unequal size, and when the
/// equivariance check fails.
EmbeddingWitness embed_compound(const DiagonalAction& d, std::uint64_t samples = 0, std::uint64_t seed = 0,
                                EquivarianceReport* report = nullptr);

Json to_json(const EmbeddingWitness& w);
/// Throws invalid_input on malformed input.
EmbeddingWitness embedding_witness_from_json(const Json& j);

struct DecompositionSearch {
  bool simple_type = false;
  std::vector<CartesianFactorisation> decompositions;
  CartesianSearchStats stats;
};

/// An embedding into a product-action wreath product yields the factors
/// K_i = stabilizer of the base coordinate under pi_i, a cartesian
/// factorisation of M with intersection M_w that the top group permutes.
/// Enumerates those over M_w and the top group.
DecompositionSearch search_invariant_cartesian_decompositions(const DiagonalAction& d,
                                                              std::uint64_t budget = 1000000);

struct BaseContainmentReport {
  struct PrimeCheck {
    std::uint64_t p = 0;
    bool divides_omega = false;        // p^l | |Omega|
    bool divides_m = false;            // p^l | |M|
    bool divides_ell_factorial = false;// p^l | l!
  };
  bool transitive = false;
  std::vector<PrimeCheck> primes;
  /// Transitive and some p | |Gamma| has p^l not dividing l!.
  bool divisibility_forces_kernel = false;
  /// Every generator has trivial top part.
  bool direct_pi_trivial = false;
  /// The check is only claimed for transitive M; then both routes agree.
  bool consistent = false;
};

BaseContainmentReport check_base_group_containment(const ProductActionWreath& w,
                                                   const std::vector<WreathElement>& m_generators,
                                                   const BigInt& m_order);

}  // namespace unifact
