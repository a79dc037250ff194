#include "unifact/diagonal.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "unifact/error.hpp"
#include "unifact/rng.hpp"

namespace unifact {

namespace {

bool is_permutation_of(const std::vector<unsigned>& p, std::size_t n) {
  if (p.size() != n) return false;
  std::vector<bool> seen(n, false);
  for (unsigned x : p) {
    if (x >= n || seen[x]) return false;
    seen[x] = true;
  }
  return true;
}

template <class T>
bool is_point_permutation(const std::vector<T>& p, std::size_t n) {
  if (p.size() != n) return false;
  std::vector<bool> seen(n, false);
  for (T x : p) {
    if (x >= n || seen[x]) return false;
    seen[x] = true;
  }
  return true;
}

std::vector<unsigned> identity_perm(std::size_t n) {
  std::vector<unsigned> p(n);
  std::iota(p.begin(), p.end(), 0u);
  return p;
}

// a then b
std::vector<unsigned> compose_perm(const std::vector<unsigned>& a, const std::vector<unsigned>& b) {
  std::vector<unsigned> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = b[a[i]];
  return out;
}

Tuple permute(const Tuple& y, const std::vector<unsigned>& perm) {
  if (perm.empty()) return y;
  Tuple z(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) z[perm[i]] = y[i];
  return z;
}

std::uint64_t checked_power(std::uint64_t base, unsigned e, std::size_t cap, const char* what) {
  std::uint64_t out = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (out > cap / base) throw Error(ErrorKind::cap_exceeded, std::string(what) + " exceeds the point cap of " + std::to_string(cap));
    out *= base;
  }
  if (out > cap) throw Error(ErrorKind::cap_exceeded, std::string(what) + " exceeds the point cap of " + std::to_string(cap));
  return out;
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  if (n > 1) out.push_back(n);
  return out;
}

// Canonical id of the coset of the strip on `support` containing the values
// of x there: the root value is cleared, the rest read in mixed radix.
Point strip_coset_id(const FullStrip& s, const Tuple& x, const FiniteGroup& t) {
  const Elem shift = t.inv(x[s.support()[0]]);
  Point id = 0;
  for (std::size_t pos = 1; pos < s.support().size(); ++pos) {
    const unsigned c = s.support()[pos];
    id = id * static_cast<Point>(t.order()) + t.mul(s.twist(pos)(shift), x[c]);
  }
  return id;
}

}  // namespace

std::vector<Point> PermAction::orbit(Point p, const std::vector<std::size_t>& gens) const {
  std::vector<std::size_t> use = gens;
  if (use.empty()) {
    use.resize(generators.size());
    std::iota(use.begin(), use.end(), std::size_t{0});
  }
  std::vector<bool> seen(degree, false);
  std::vector<Point> out{p};
  seen[p] = true;
  for (std::size_t qi = 0; qi < out.size(); ++qi)
    for (std::size_t g : use) {
      const Point q = generators[g][out[qi]];
      if (!seen[q]) {
        seen[q] = true;
        out.push_back(q);
      }
    }
  return out;
}

bool PermAction::is_transitive(const std::vector<std::size_t>& gens) const {
  return degree == 0 || orbit(base_point, gens).size() == degree;
}

std::vector<std::vector<unsigned>> normalizing_permutations(const StripProduct& p) {
  const unsigned k = p.ambient().k;
  if (k > 8) throw Error(ErrorKind::invalid_input, "normalizing permutations are enumerated for k <= 8 only");
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> perm = identity_perm(k);
  do {
    if (p.image(FactorAutomorphism::permutation(p.ambient(), perm)) == p) out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

std::vector<std::vector<unsigned>> permutation_generators(const std::vector<std::vector<unsigned>>& group) {
  std::vector<std::vector<unsigned>> gens;
  if (group.empty()) return gens;
  const std::size_t n = group.front().size();
  std::set<std::vector<unsigned>> closure{identity_perm(n)};
  for (const auto& g : group) {
    if (closure.count(g)) continue;
    gens.push_back(g);
    std::vector<std::vector<unsigned>> queue(closure.begin(), closure.end());
    for (std::size_t qi = 0; qi < queue.size(); ++qi)
      for (const auto& h : gens) {
        auto y = compose_perm(queue[qi], h);
        if (closure.insert(y).second) queue.push_back(std::move(y));
      }
  }
  return gens;
}

DiagonalAction::DiagonalAction(StripProduct stabilizer, std::optional<std::vector<std::vector<unsigned>>> top,
                               std::size_t cap)
    : stab_(std::move(stabilizer)) {
  const DirectPower& m = stab_.ambient();
  const FiniteGroup& t = *m.base;
  if (t.is_abelian() || !is_simple(t))
    throw Error(ErrorKind::precondition, "the base group must be non-abelian simple");
  if (!stab_.full().empty())
    throw Error(ErrorKind::invalid_input, "every strip of the point stabilizer needs support of size at least 2");
  if (!stab_.is_subdirect())
    throw Error(ErrorKind::invalid_input, "the strips do not cover every coordinate");

  const unsigned k = m.k;
  strip_of_.assign(k, -1);
  root_.assign(k, false);
  for (std::size_t s = 0; s < stab_.strips().size(); ++s) {
    const auto& sup = stab_.strips()[s].support();
    for (unsigned c : sup) strip_of_[c] = static_cast<int>(s);
    root_[sup[0]] = true;
  }
  for (unsigned c = 0; c < k; ++c)
    if (!root_[c]) free_.push_back(c);
  const Point degree =
      static_cast<Point>(checked_power(t.order(), static_cast<unsigned>(free_.size()), cap, "the number of cosets"));

  if (top) {
    for (const auto& p : *top) {
      if (!is_permutation_of(p, k)) throw Error(ErrorKind::invalid_input, "a top generator is not a permutation of the factors");
      if (!(stab_.image(FactorAutomorphism::permutation(m, p)) == stab_))
        throw Error(ErrorKind::invalid_input, "a top generator does not normalize the point stabilizer");
    }
    top_ = *top;
  } else {
    top_ = permutation_generators(normalizing_permutations(stab_));
  }

  for (unsigned c = 0; c < k; ++c)
    for (Elem s : t.generators()) {
      Tuple g = m.identity();
      g[c] = s;
      gens_.push_back({std::move(g), {}});
    }
  m_gens_ = gens_.size();
  for (const auto& p : top_) gens_.push_back({m.identity(), p});

  action_.degree = degree;
  action_.base_point = 0;
  action_.generators.resize(gens_.size());
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    auto& table = action_.generators[i];
    table.resize(degree);
    for (Point p = 0; p < degree; ++p) table[p] = act(p, gens_[i]);
  }
}

Point DiagonalAction::point_of(const Tuple& x) const {
  const FiniteGroup& t = *ambient().base;
  Point id = 0;
  for (unsigned c : free_) {
    const FullStrip& s = stab_.strips()[static_cast<std::size_t>(strip_of_[c])];
    const Elem shift = t.inv(x[s.support()[0]]);
    id = id * static_cast<Point>(t.order()) + t.mul(s.twist_at(c)(shift), x[c]);
  }
  return id;
}

Tuple DiagonalAction::representative(Point p) const {
  const auto n = static_cast<Point>(ambient().base->order());
  Tuple x = ambient().identity();
  for (std::size_t i = free_.size(); i-- > 0;) {
    x[free_[i]] = p % n;
    p /= n;
  }
  return x;
}

Point DiagonalAction::act(Point p, const DiagElement& g) const {
  Tuple x = representative(p);
  if (!g.m.empty()) x = ambient().mul(x, g.m);
  return point_of(permute(x, g.perm));
}

ActionAxiomsReport check_action_axioms(const DiagonalAction& d) {
  ActionAxiomsReport r;
  const PermAction& a = d.action();
  const DirectPower& m = d.ambient();
  const auto& gens = d.generators();
  const DiagElement id{m.identity(), {}};
  for (Point p = 0; p < a.degree; ++p) {
    ++r.checks;
    if (d.act(p, id) != p) r.identity_fixes = false;
  }
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (!is_point_permutation(a.generators[i], a.degree)) r.bijective = false;
    for (Point p = 0; p < a.degree; ++p) {
      // The image's representative lies in the coset of x g.
      ++r.checks;
      const Tuple xg = permute(m.mul(d.representative(p), gens[i].m), gens[i].perm);
      if (!d.stabilizer().contains(m.mul(d.representative(a.act(p, i)), m.inv(xg)))) r.tables_match = false;
    }
  }
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const DiagElement& g = gens[i];
    const std::size_t j = (i + 1) % gens.size();
    const DiagElement& h = gens[j];
    // (m1, s1)(m2, s2) = (m1 w, s1 s2) with w[c] = m2[s1(c)].
    DiagElement gh;
    Tuple w(m.k);
    for (unsigned c = 0; c < m.k; ++c) w[c] = h.m[g.perm.empty() ? c : g.perm[c]];
    gh.m = m.mul(g.m, w);
    if (!g.perm.empty() || !h.perm.empty()) {
      const auto s1 = g.perm.empty() ? identity_perm(m.k) : g.perm;
      const auto s2 = h.perm.empty() ? identity_perm(m.k) : h.perm;
      gh.perm = compose_perm(s1, s2);
    }
    for (Point p = 0; p < a.degree; ++p) {
      ++r.checks;
      if (a.act(a.act(p, i), j) != d.act(p, gh)) r.products_compatible = false;
    }
  }
  for (const auto& s : d.stabilizer().generators()) {
    ++r.checks;
    if (d.act(0, {s, {}}) != 0) r.stabilizer_fixes_base = false;
  }
  std::vector<std::size_t> mg(d.m_generator_count());
  std::iota(mg.begin(), mg.end(), std::size_t{0});
  r.m_transitive = a.is_transitive(mg);
  return r;
}

StructuralReport check_structural_quasiprimitivity(const DiagonalAction& d) {
  StructuralReport r;
  std::vector<std::size_t> mg(d.m_generator_count());
  std::iota(mg.begin(), mg.end(), std::size_t{0});
  r.m_transitive = d.action().is_transitive(mg);
  std::vector<FactorAutomorphism> tops;
  for (const auto& p : d.top()) tops.push_back(FactorAutomorphism::permutation(d.ambient(), p));
  r.top_transitive_on_factors = acts_transitively_on_factors(d.ambient().k, tops);
  r.stabilizer_subdirect = d.stabilizer().is_subdirect();
  return r;
}

ProductActionWreath::ProductActionWreath(Point gamma, unsigned ell, std::size_t cap) : gamma_(gamma), ell_(ell) {
  if (gamma < 2) throw Error(ErrorKind::invalid_input, "|Gamma| must be at least 2");
  if (ell < 2) throw Error(ErrorKind::invalid_input, "l must be at least 2");
  cap = std::min<std::size_t>(cap, 0xffffffffu);
  degree_ = static_cast<Point>(checked_power(gamma, ell, cap, "|Gamma|^l"));
}

Point ProductActionWreath::encode(const std::vector<Point>& coords) const {
  Point id = 0;
  for (Point c : coords) id = id * gamma_ + c;
  return id;
}

std::vector<Point> ProductActionWreath::decode(Point p) const {
  std::vector<Point> c(ell_);
  for (unsigned i = ell_; i-- > 0;) {
    c[i] = p % gamma_;
    p /= gamma_;
  }
  return c;
}

WreathElement ProductActionWreath::identity() const {
  return {std::vector<std::vector<Point>>(ell_), identity_perm(ell_)};
}

void ProductActionWreath::validate(const WreathElement& g) const {
  if (g.base.size() != ell_) throw Error(ErrorKind::invalid_input, "a wreath element needs l base entries");
  if (!is_permutation_of(g.top, ell_)) throw Error(ErrorKind::invalid_input, "the top part is not a permutation of l points");
  for (const auto& b : g.base)
    if (!b.empty() && !is_point_permutation(b, gamma_))
      throw Error(ErrorKind::invalid_input, "a base entry is not a permutation of Gamma");
}

Point ProductActionWreath::act(Point p, const WreathElement& g) const {
  const auto c = decode(p);
  std::vector<Point> out(ell_);
  for (unsigned j = 0; j < ell_; ++j) out[g.top[j]] = g.base[j].empty() ? c[j] : g.base[j][c[j]];
  return encode(out);
}

WreathElement ProductActionWreath::multiply(const WreathElement& a, const WreathElement& b) const {
  WreathElement out;
  out.top = compose_perm(a.top, b.top);
  out.base.resize(ell_);
  for (unsigned j = 0; j < ell_; ++j) {
    const auto& f = a.base[j];
    const auto& h = b.base[a.top[j]];
    if (f.empty() && h.empty()) continue;
    out.base[j].resize(gamma_);
    for (Point x = 0; x < gamma_; ++x) {
      const Point y = f.empty() ? x : f[x];
      out.base[j][x] = h.empty() ? y : h[y];
    }
  }
  return out;
}

std::vector<Point> ProductActionWreath::pi_i(const WreathElement& g, unsigned i) const {
  if (!g.base[i].empty()) return g.base[i];
  std::vector<Point> id(gamma_);
  std::iota(id.begin(), id.end(), Point{0});
  return id;
}

bool ProductActionWreath::in_base_group(const WreathElement& g) const { return g.top == identity_perm(ell_); }

PermAction ProductActionWreath::action(const std::vector<WreathElement>& gens) const {
  PermAction a;
  a.degree = degree_;
  for (const auto& g : gens) {
    validate(g);
    std::vector<Point> table(degree_);
    for (Point p = 0; p < degree_; ++p) table[p] = act(p, g);
    a.generators.push_back(std::move(table));
  }
  return a;
}

std::pair<ProductActionWreath, PermAction> build_wreath_product_action(
    Point gamma, unsigned ell, const std::vector<WreathElement>& base_generators,
    const std::vector<std::vector<unsigned>>& top_generators, std::size_t cap) {
  ProductActionWreath w(gamma, ell, cap);
  std::vector<WreathElement> gens;
  for (const auto& b : base_generators) {
    w.validate(b);
    if (!w.in_base_group(b)) throw Error(ErrorKind::invalid_input, "a base generator has a non-trivial top part");
    gens.push_back(b);
  }
  for (const auto& t : top_generators) {
    WreathElement g = w.identity();
    g.top = t;
    gens.push_back(std::move(g));
  }
  PermAction a = w.action(gens);
  return {std::move(w), std::move(a)};
}

EquivarianceReport verify_embedding(const DiagonalAction& d, const EmbeddingWitness& w, std::uint64_t samples,
                                    std::uint64_t seed) {
  EquivarianceReport r;
  const PermAction& a = d.action();
  if (w.r < 2 || w.delta < 2 || w.images.size() != d.generators().size()) return r;
  const ProductActionWreath wr(w.delta, w.r, std::max<std::size_t>(a.degree, 4));
  if (wr.degree() != a.degree) return r;
  r.bijective = is_point_permutation(w.bijection, a.degree);
  if (!r.bijective) return r;
  for (const auto& g : w.images) wr.validate(g);
  auto check = [&](Point p, std::size_t i) {
    ++r.checks;
    if (w.bijection[a.act(p, i)] != wr.act(w.bijection[p], w.images[i])) ++r.failures;
  };
  if (samples == 0) {
    for (std::size_t i = 0; i < w.images.size(); ++i)
      for (Point p = 0; p < a.degree; ++p) check(p, i);
  } else {
    r.sampled = true;
    Xoshiro256 rng(seed);
    for (std::uint64_t s = 0; s < samples; ++s) {
      const auto p = static_cast<Point>(rng.below(a.degree));
      check(p, rng.below(w.images.size()));
    }
  }
  return r;
}

EmbeddingWitness embed_compound(const DiagonalAction& d, std::uint64_t samples, std::uint64_t seed,
                                EquivarianceReport* report) {
  if (d.is_simple_type())
    throw Error(ErrorKind::precondition, "simple type: the point stabilizer is a single strip and no embedding exists");
  const auto& strips = d.stabilizer().strips();
  const DirectPower& m = d.ambient();
  const FiniteGroup& t = *m.base;
  for (const auto& s : strips)
    if (s.support().size() != strips[0].support().size())
      throw Error(ErrorKind::precondition, "strips of unequal size give blocks with different coset spaces");

  EmbeddingWitness w;
  w.r = static_cast<unsigned>(strips.size());
  w.delta = static_cast<Point>(checked_power(t.order(), static_cast<unsigned>(strips[0].support().size() - 1),
                                             0xffffffffu, "|Delta|"));
  for (const auto& s : strips) w.blocks.push_back(s.support());

  std::vector<unsigned> block_of(m.k);
  for (unsigned b = 0; b < w.r; ++b)
    for (unsigned c : strips[b].support()) block_of[c] = b;

  // Omega -> Delta^r, block 0 most significant.
  w.bijection.resize(d.points());
  for (Point p = 0; p < d.points(); ++p) {
    const Tuple x = d.representative(p);
    Point id = 0;
    for (const auto& s : strips) id = id * w.delta + strip_coset_id(s, x, t);
    w.bijection[p] = id;
  }

  // Delta point -> tuple supported on one block with identity root.
  auto block_tuple = [&](unsigned b, Point delta_point) {
    Tuple x = m.identity();
    const auto& sup = strips[b].support();
    for (std::size_t pos = sup.size(); pos-- > 1;) {
      x[sup[pos]] = delta_point % static_cast<Point>(t.order());
      delta_point /= static_cast<Point>(t.order());
    }
    return x;
  };

  for (const auto& g : d.generators()) {
    WreathElement img;
    img.top.resize(w.r);
    for (unsigned b = 0; b < w.r; ++b) {
      const unsigned root = strips[b].support()[0];
      img.top[b] = block_of[g.perm.empty() ? root : g.perm[root]];
    }
    img.base.resize(w.r);
    for (unsigned b = 0; b < w.r; ++b) {
      auto& table = img.base[b];
      table.resize(w.delta);
      bool moved = false;
      for (Point delta_point = 0; delta_point < w.delta; ++delta_point) {
        Tuple x = block_tuple(b, delta_point);
        for (unsigned c : strips[b].support()) x[c] = t.mul(x[c], g.m[c]);
        const Tuple y = permute(x, g.perm);
        table[delta_point] = strip_coset_id(strips[img.top[b]], y, t);
        moved = moved || table[delta_point] != delta_point;
      }
      if (!moved) table.clear();
    }
    w.images.push_back(std::move(img));
  }

  const EquivarianceReport r = verify_embedding(d, w, samples, seed);
  if (report) *report = r;
  if (!r.ok())
    throw Error(ErrorKind::precondition, "the constructed embedding failed its equivariance check (" +
                                             std::to_string(r.failures) + " failures)");
  return w;
}

Json to_json(const EmbeddingWitness& w) {
  Json images = Json::array();
  for (const auto& g : w.images) {
    Json base = Json::array();
    for (const auto& b : g.base) base.push_back(b);
    Json top = Json::array();
    for (unsigned x : g.top) top.push_back(x + 1);
    images.push_back({{"base", std::move(base)}, {"top", std::move(top)}});
  }
  Json blocks = Json::array();
  for (const auto& b : w.blocks) blocks.push_back(one_based(b));
  return {{"delta", w.delta}, {"r", w.r}, {"blocks", std::move(blocks)}, {"bijection", w.bijection},
          {"images", std::move(images)}};
}

EmbeddingWitness embedding_witness_from_json(const Json& j) {
  try {
    EmbeddingWitness w;
    w.delta = j.at("delta").get<Point>();
    w.r = j.at("r").get<unsigned>();
    for (const auto& b : j.at("blocks")) {
      std::vector<unsigned> block;
      for (const auto& c : b) {
        const auto v = c.get<unsigned>();
        if (v == 0) throw Error(ErrorKind::invalid_input, "block coordinates are 1-based");
        block.push_back(v - 1);
      }
      w.blocks.push_back(std::move(block));
    }
    w.bijection = j.at("bijection").get<std::vector<Point>>();
    for (const auto& g : j.at("images")) {
      WreathElement e;
      e.base = g.at("base").get<std::vector<std::vector<Point>>>();
      for (const auto& x : g.at("top")) {
        const auto v = x.get<unsigned>();
        if (v == 0) throw Error(ErrorKind::invalid_input, "top permutations are 1-based");
        e.top.push_back(v - 1);
      }
      w.images.push_back(std::move(e));
    }
    return w;
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::invalid_input, std::string("malformed embedding witness: ") + e.what());
  }
}

DecompositionSearch search_invariant_cartesian_decompositions(const DiagonalAction& d, std::uint64_t budget) {
  DecompositionSearch out;
  out.simple_type = d.is_simple_type();
  const auto g0 = FactorTransitiveAutGroup::from_permutations(d.ambient(), d.top());
  out.decompositions = enumerate_cartesian_over(d.stabilizer(), g0, budget, &out.stats);
  return out;
}

BaseContainmentReport check_base_group_containment(const ProductActionWreath& w,
                                                   const std::vector<WreathElement>& m_generators,
                                                   const BigInt& m_order) {
  BaseContainmentReport r;
  r.transitive = w.action(m_generators).is_transitive();
  BigInt omega = 1, fact = 1;
  for (unsigned i = 0; i < w.ell(); ++i) omega *= w.gamma();
  for (unsigned i = 2; i <= w.ell(); ++i) fact *= i;
  bool some_prime_excludes = false;
  for (std::uint64_t p : prime_divisors(w.gamma())) {
    BigInt pl = 1;
    for (unsigned i = 0; i < w.ell(); ++i) pl *= p;
    BaseContainmentReport::PrimeCheck c;
    c.p = p;
    c.divides_omega = omega % pl == 0;
    c.divides_m = m_order % pl == 0;
    c.divides_ell_factorial = fact % pl == 0;
    some_prime_excludes = some_prime_excludes || !c.divides_ell_factorial;
    r.primes.push_back(c);
  }
  r.divisibility_forces_kernel = r.transitive && some_prime_excludes;
  r.direct_pi_trivial = std::all_of(m_generators.begin(), m_generators.end(),
                                    [&](const WreathElement& g) { return w.in_base_group(g); });
  r.consistent = !r.transitive || (r.divisibility_forces_kernel && r.direct_pi_trivial);
  return r;
}

}  // namespace unifact
