#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "unifact/automorphism.hpp"
#include "unifact/linked_subgroup.hpp"
#include "unifact/strips.hpp"
#include "unifact/subgroup.hpp"

namespace unifact {

/// Whether XY = T^k, decided by |X||Y| = |X cap Y||T^k|.
struct FactorisationVerdict {
  bool holds = false;
  BigInt x_order, y_order, intersection_order, product_order, ambient_order;
  /// A tuple outside XY when one was found.
  std::optional<Tuple> witness;
};

inline constexpr std::uint64_t default_witness_budget = 100000;

/// Intersection is computed by solving the coordinate equations.
FactorisationVerdict product_covers(const StripProduct& x, const StripProduct& y,
                                    std::uint64_t witness_budget = default_witness_budget);
FactorisationVerdict product_covers(const LinkedSubgroup& x, const LinkedSubgroup& y,
                                    std::uint64_t witness_budget = default_witness_budget);
/// Intersection of the element closures; both must fit under `cap`.
FactorisationVerdict product_covers(const SubgroupHandle& x, const SubgroupHandle& y,
                                    std::uint64_t witness_budget = default_witness_budget,
                                    std::size_t cap = default_closure_cap);

/// Membership in XY, solving the coordinate equations component by
/// component; cost about |T| k per component.
bool in_product(const LinkedSubgroup& x, const LinkedSubgroup& y, const Tuple& m);

struct OrthstripReport {
  std::string group;
  std::size_t automorphisms = 0;
  std::uint64_t pairs = 0;
  std::uint64_t factorising = 0;      // XY = T^2
  std::uint64_t predicted = 0;        // alpha then beta^-1 uniform
  std::uint64_t agreements = 0;
  /// (alpha index, beta index) where prediction and verdict differ.
  std::vector<std::pair<std::size_t, std::size_t>> counterexamples;
  /// Factorising pairs in enumeration order.
  std::vector<std::pair<std::size_t, std::size_t>> factorising_pairs;
};

/// For every pair (alpha, beta) of automorphisms: the twisted diagonals
/// {(g, alpha(g))} and {(g, beta(g))} factorise T^2 exactly when
/// alpha then beta^-1 is uniform.
OrthstripReport orthstrip_check(const GroupPtr& t, std::uint64_t budget = 10000000);

struct DoubleStripSolution {
  Tuple t;  // in X
  Tuple s;  // in Y
};

/// X = {(t_1, alpha_1 t_1, ..., t_d, alpha_d t_d)} and
/// Y = {(beta_d s_d, s_1, beta_1 s_1, ..., s_{d-1}, beta_{d-1} s_{d-1}, s_d)}
/// in T^{2d}, as strip products.
StripProduct double_strip_x(const GroupPtr& t, const std::vector<Automorphism>& alphas);
StripProduct double_strip_y(const GroupPtr& t, const std::vector<Automorphism>& betas);

/// Solves t s = x with t in X and s in Y when alpha_1 beta_1 ... alpha_d
/// beta_d (applied left to right) is uniform. Otherwise returns the failing
/// verdict with witness (u, 1, ..., 1), u outside the twisted image of the
/// composite. The solution is checked by multiplication before returning.
std::variant<DoubleStripSolution, FactorisationVerdict> doublestrips_solve(const std::vector<Automorphism>& alphas,
                                                                           const std::vector<Automorphism>& betas,
                                                                           const Tuple& x);

/// Bipartite intersection graph of the strips of X (vertices 0..r-1) and of
/// Y (vertices r..r+s-1).
struct StripGraph {
  struct Edge {
    std::size_t x, y;               // y is a vertex id, i.e. offset by x_count
    std::vector<unsigned> shared;   // common support coordinates
    bool fat() const { return shared.size() >= 2; }
  };
  std::size_t x_count = 0, y_count = 0;
  std::vector<Edge> edges;
  std::vector<std::vector<std::size_t>> adjacency;

  std::size_t vertex_count() const { return x_count + y_count; }
  bool is_x(std::size_t v) const { return v < x_count; }
  std::size_t valency(std::size_t v) const { return adjacency[v].size(); }
  /// Edge between u and v, if any.
  const Edge* edge(std::size_t u, std::size_t v) const;
};

/// Both products must consist of non-trivial strips only.
StripGraph build_strip_graph(const StripProduct& x, const StripProduct& y);

/// Proof of a group admitting no uniform automorphism, needed before
/// diagnosing.
class NoUniformCertificate {
 public:
  /// nullopt when some automorphism is uniform.
  static std::optional<NoUniformCertificate> issue(const GroupPtr& t);
  const GroupPtr& group() const noexcept { return group_; }
  std::size_t automorphisms_checked() const noexcept { return checked_; }

 private:
  NoUniformCertificate(GroupPtr g, std::size_t n) : group_(std::move(g)), checked_(n) {}
  GroupPtr group_;
  std::size_t checked_;
};

/// Structural reasons XY != T^k, in the order the non-existence argument
/// establishes them.
enum class Claim {
  isolated_vertex = 1,  // a strip meets no strip of the other side
  fat_edge = 2,         // two strips share two or more coordinates
  cycle = 3,            // the strip graph has a cycle
  few_leaves = 4,       // fewer than two leaves
  one_sided_leaves = 5, // every leaf lies on one side
  uncovered_counts = 6, // the numbers of coordinates outside each side are not both 1
  path = 7,             // the remaining path shape
};
inline constexpr std::size_t claim_count = 7;
const char* claim_name(Claim c);

struct Diagnosis {
  Claim claim = Claim::isolated_vertex;
  std::string detail;
  /// Tuple outside XY.
  Tuple witness;
  /// Vertices involved: the isolated strip, the fat edge's ends, the cycle
  /// X_1, Y_1, ..., X_d, Y_d, or the path.
  std::vector<std::size_t> vertices;
  /// Cycle labels T_1..T_2d (0-based coordinates).
  std::vector<unsigned> labels;
  /// For a cycle, alpha_1 beta_1 ... alpha_d beta_d; for a fat edge, the
  /// composite of the two relations. Never uniform.
  std::optional<Automorphism> composite;
  /// Diagnosis of the augmented pair behind claims 5 and 6.
  std::shared_ptr<const Diagnosis> augmented;
};

/// Classifies why XY != T^k and produces a verified uncovered tuple.
Diagnosis diagnose_nonfactorisation(const StripProduct& x, const StripProduct& y, const NoUniformCertificate& cert,
                                    bool verify_witness = true);

enum class SearchMode { exhaustive, sampled };

struct SearchConfig {
  SearchMode mode = SearchMode::exhaustive;
  std::uint64_t samples = 10000;
  std::uint64_t seed = 0;
  /// Largest number of pairs an exhaustive run may visit.
  std::uint64_t budget = 1000000000;
};

struct SearchReport {
  std::string group;
  unsigned k = 0;
  SearchConfig config;
  bool hypothesis_holds = false;        // no uniform automorphism
  std::optional<Automorphism> uniform;  // when the hypothesis fails
  std::size_t automorphisms = 0;
  std::uint64_t shapes = 0;
  BigInt candidates;                    // canonical strip products
  std::uint64_t pairs_checked = 0;
  std::uint64_t factorisations_found = 0;
  /// Per claim, indexed by Claim value - 1.
  std::array<std::uint64_t, claim_count> diagnoses{};
  /// Pairs that neither factorise nor received a diagnosis.
  std::uint64_t undiagnosed = 0;
  std::optional<std::pair<StripProduct, StripProduct>> first_factorisation;
  struct Witness {
    StripProduct x, y;
    Diagnosis diagnosis;
  };
  std::optional<Witness> first_witness;
};

/// Runs over pairs (X, Y) of canonical products of non-trivial strips in
/// T^k and checks XY != T^k for each. Exhaustive runs visit every ordered
/// pair; sampled runs draw a uniform strip shape and uniform twists for each
/// side.
SearchReport nostripfact_search(const GroupPtr& t, unsigned k, const SearchConfig& config);

/// Partitions of subsets of 0..k-1 into blocks of size >= 2 with at least
/// one block, as label vectors (0 = uncovered, blocks numbered in order of
/// first appearance).
std::vector<std::vector<unsigned>> strip_shapes(unsigned k);

struct G6Report {
  std::string group;
  std::size_t order = 0;
  std::size_t automorphisms = 0;
  bool searched = false;
  std::uint64_t pairs = 0;
  /// Largest |{(t^-1 a2(t), t^-1 a3(t))}| over all pairs; at most |G|.
  std::size_t max_joint_image = 0;
  std::size_t best_alpha2 = 0, best_alpha3 = 0;
  /// |G x G| > |G|.
  BigInt square_order;
  BigInt x_order, y_order, intersection_order, product_order, ambient_order, deficiency;
};

/// The six-coordinate construction with X = {(t,t,t,s,s,s)} and
/// Y = {(t1,t2,t3,t1,a2 t2,a3 t3)}: certifies by counting that no pair
/// (a2, a3) makes t -> (t^-1 a2(t), t^-1 a3(t)) onto G x G, measures the
/// largest joint image, and reports |G^6| - |XY| for the best pair.
G6Report g6_joint_uniform_search(const GroupPtr& g, std::uint64_t budget = 1000000);

/// The X and Y above for a given pair.
std::pair<StripProduct, StripProduct> g6_factors(const GroupPtr& g, const Automorphism& a2, const Automorphism& a3);

}  // namespace unifact
