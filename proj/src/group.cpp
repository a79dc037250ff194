#include "unifact/group.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <unordered_set>

#include <boost/functional/hash.hpp>

#include "unifact/rng.hpp"

namespace unifact {

namespace {

using Perm = std::vector<unsigned>;

struct PermHash {
  std::size_t operator()(const Perm& p) const { return boost::hash_range(p.begin(), p.end()); }
};

// Apply a first, then b.
Perm compose(const Perm& a, const Perm& b) {
  Perm r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = b[a[i]];
  return r;
}

Perm invert(const Perm& a) {
  Perm r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[a[i]] = static_cast<unsigned>(i);
  return r;
}

Perm identity_perm(unsigned degree) {
  Perm p(degree);
  std::iota(p.begin(), p.end(), 0u);
  return p;
}

Perm cycle_perm(unsigned degree, std::initializer_list<unsigned> pts) {
  Perm p = identity_perm(degree);
  std::vector<unsigned> v(pts);
  for (std::size_t i = 0; i < v.size(); ++i) p[v[i]] = v[(i + 1) % v.size()];
  return p;
}

Perm cycle_range(unsigned degree, unsigned from, unsigned to) {
  Perm p = identity_perm(degree);
  for (unsigned i = from; i < to; ++i) p[i] = i + 1;
  p[to] = from;
  return p;
}

std::size_t perm_rank(const std::vector<Perm>& sorted, const Perm& p) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), p);
  return static_cast<std::size_t>(it - sorted.begin());
}

}  // namespace

/// Fills in the derived data of a group once its multiplication is available.
class GroupAssembler {
 public:
  static void finish(FiniteGroup& g, bool build_table) {
    const std::size_t n = g.order_;
    if (build_table && g.table_.empty() && n <= cayley_table_limit) {
      std::vector<Elem> table(n * n);
      for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b) table[a * n + b] = g.slow_mul(a, b);
      g.table_ = std::move(table);
    }
    if (g.inverse_.empty()) {
      g.inverse_.assign(n, 0);
      for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b)
          if (g.mul(a, b) == 0) {
            g.inverse_[a] = b;
            break;
          }
    }
    g.orders_.assign(n, 1);
    for (Elem a = 1; a < n; ++a) {
      unsigned k = 1;
      Elem x = a;
      while (x != 0) {
        x = g.mul(x, a);
        ++k;
      }
      g.orders_[a] = k;
    }
  }

  static void set_generators(FiniteGroup& g, std::vector<Elem> gens) {
    std::vector<Elem> out;
    for (Elem x : gens)
      if (x != 0 && std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
    g.generators_ = std::move(out);
  }

  static GroupPtr cyclic(std::size_t n, std::size_t cap) {
    if (n == 0) throw Error(ErrorKind::invalid_input, "cyclic group needs n >= 1");
    if (n > cap) throw Error(ErrorKind::cap_exceeded, "cyclic(" + std::to_string(n) + ") exceeds cap");
    auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
    g->order_ = n;
    g->name_ = "C" + std::to_string(n);
    g->backend_ = FiniteGroup::Cyclic{n};
    g->inverse_.resize(n);
    for (std::size_t a = 0; a < n; ++a) g->inverse_[a] = static_cast<Elem>((n - a) % n);
    finish(*g, true);
    set_generators(*g, {n > 1 ? Elem{1} : Elem{0}});
    return g;
  }

  static GroupPtr permutations(unsigned degree, const std::vector<Perm>& gens, std::string name,
                               std::size_t cap) {
    for (const auto& p : gens) {
      if (p.size() != degree)
        throw Error(ErrorKind::invalid_input, "permutation generator has wrong degree");
      std::vector<bool> seen(degree, false);
      for (unsigned x : p) {
        if (x >= degree || seen[x])
          throw Error(ErrorKind::invalid_input, "generator is not a permutation");
        seen[x] = true;
      }
    }
    std::unordered_set<Perm, PermHash> seen;
    std::deque<Perm> queue;
    Perm id = identity_perm(degree);
    seen.insert(id);
    queue.push_back(id);
    while (!queue.empty()) {
      Perm x = std::move(queue.front());
      queue.pop_front();
      for (const auto& s : gens) {
        Perm y = compose(x, s);
        if (seen.insert(y).second) {
          if (seen.size() > cap)
            throw Error(ErrorKind::cap_exceeded,
                        name + ": permutation closure exceeds cap of " + std::to_string(cap));
          queue.push_back(std::move(y));
        }
      }
    }
    std::vector<Perm> sorted(seen.begin(), seen.end());
    std::sort(sorted.begin(), sorted.end());

    auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
    g->order_ = sorted.size();
    g->name_ = std::move(name);
    g->inverse_.resize(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i)
      g->inverse_[i] = static_cast<Elem>(perm_rank(sorted, invert(sorted[i])));
    std::vector<Elem> gen_ids;
    for (const auto& s : gens) gen_ids.push_back(static_cast<Elem>(perm_rank(sorted, s)));
    g->backend_ = FiniteGroup::Permutations{degree, std::move(sorted)};
    finish(*g, true);
    set_generators(*g, std::move(gen_ids));
    return g;
  }

  static GroupPtr product(std::vector<GroupPtr> factors, std::size_t cap) {
    std::size_t n = 1;
    std::string name;
    for (const auto& f : factors) {
      if (f->order() != 0 && n > cap / f->order())
        throw Error(ErrorKind::cap_exceeded, "direct product exceeds cap of " + std::to_string(cap));
      n *= f->order();
      if (!name.empty()) name += "x";
      name += f->name();
    }
    if (n > cap) throw Error(ErrorKind::cap_exceeded, "direct product exceeds cap of " + std::to_string(cap));
    auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
    g->order_ = n;
    g->name_ = name.empty() ? "1" : name;
    g->backend_ = FiniteGroup::Product{factors};
    // Inverses componentwise: mixed radix, first factor most significant.
    g->inverse_.resize(n);
    for (std::size_t id = 0; id < n; ++id) {
      std::size_t rest = id, out = 0, scale = 1;
      for (std::size_t f = factors.size(); f-- > 0;) {
        const std::size_t m = factors[f]->order();
        out += factors[f]->inv(static_cast<Elem>(rest % m)) * scale;
        rest /= m;
        scale *= m;
      }
      g->inverse_[id] = static_cast<Elem>(out);
    }
    std::vector<Elem> gens;
    std::size_t scale = n;
    for (const auto& f : factors) {
      scale /= f->order();
      for (Elem x : f->generators()) gens.push_back(static_cast<Elem>(x * scale));
    }
    finish(*g, true);
    set_generators(*g, std::move(gens));
    return g;
  }

  static GroupPtr table(std::vector<std::vector<Elem>> mul, std::string name, std::size_t cap) {
    const std::size_t n = mul.size();
    if (n == 0) throw Error(ErrorKind::not_a_group, "empty multiplication table");
    if (n > cap) throw Error(ErrorKind::cap_exceeded, "table of order " + std::to_string(n) + " exceeds cap");
    if (n > cayley_table_limit)
      throw Error(ErrorKind::cap_exceeded, "multiplication tables are limited to order " +
                                               std::to_string(cayley_table_limit));
    for (const auto& row : mul) {
      if (row.size() != n) throw Error(ErrorKind::not_a_group, "multiplication table is not square");
      for (Elem x : row)
        if (x >= n) throw Error(ErrorKind::not_a_group, "table entry out of range");
    }
    // Locate a two-sided identity.
    std::size_t e = n;
    for (std::size_t c = 0; c < n && e == n; ++c) {
      bool ok = true;
      for (std::size_t x = 0; x < n && ok; ++x) ok = mul[c][x] == x && mul[x][c] == x;
      if (ok) e = c;
    }
    if (e == n) throw Error(ErrorKind::not_a_group, "no two-sided identity");
    // Relabel: swap e and 0.
    std::vector<Elem> relabel(n);
    std::iota(relabel.begin(), relabel.end(), Elem{0});
    std::swap(relabel[0], relabel[e]);
    std::vector<Elem> t(n * n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) t[relabel[a] * n + relabel[b]] = relabel[mul[a][b]];

    for (std::size_t a = 0; a < n; ++a) {
      bool has_inverse = false;
      for (std::size_t b = 0; b < n && !has_inverse; ++b)
        has_inverse = t[a * n + b] == 0 && t[b * n + a] == 0;
      if (!has_inverse)
        throw Error(ErrorKind::not_a_group, "element " + std::to_string(a) + " has no inverse");
    }
    auto at = [&](std::size_t a, std::size_t b) { return static_cast<std::size_t>(t[a * n + b]); };
    if (n <= 512) {
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
          const std::size_t ab = at(a, b);
          for (std::size_t c = 0; c < n; ++c)
            if (at(ab, c) != at(a, at(b, c)))
              throw Error(ErrorKind::non_associative, "table is not associative");
        }
    } else {
      Xoshiro256 rng(0);
      for (int i = 0; i < 1000000; ++i) {
        const std::size_t a = rng.below(n), b = rng.below(n), c = rng.below(n);
        if (at(at(a, b), c) != at(a, at(b, c)))
          throw Error(ErrorKind::non_associative, "table is not associative");
      }
    }

    auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
    g->order_ = n;
    g->name_ = name.empty() ? "table(" + std::to_string(n) + ")" : std::move(name);
    g->table_ = std::move(t);
    finish(*g, false);
    // Greedy generating set: highest order first, then lowest id.
    std::vector<Elem> by_order(n);
    std::iota(by_order.begin(), by_order.end(), Elem{0});
    std::stable_sort(by_order.begin(), by_order.end(),
                     [&](Elem a, Elem b) { return g->orders_[a] > g->orders_[b]; });
    g->generators_ = g->generating_set_of(by_order);
    return g;
  }
};

Elem FiniteGroup::slow_mul(Elem a, Elem b) const {
  return std::visit(
      [&](const auto& be) -> Elem {
        using B = std::decay_t<decltype(be)>;
        if constexpr (std::is_same_v<B, Cyclic>) {
          return static_cast<Elem>((static_cast<std::size_t>(a) + b) % be.n);
        } else if constexpr (std::is_same_v<B, Permutations>) {
          return static_cast<Elem>(perm_rank(be.perms, compose(be.perms[a], be.perms[b])));
        } else if constexpr (std::is_same_v<B, Product>) {
          std::size_t ra = a, rb = b, out = 0, scale = 1;
          for (std::size_t f = be.factors.size(); f-- > 0;) {
            const std::size_t m = be.factors[f]->order();
            out += be.factors[f]->mul(static_cast<Elem>(ra % m), static_cast<Elem>(rb % m)) * scale;
            ra /= m;
            rb /= m;
            scale *= m;
          }
          return static_cast<Elem>(out);
        } else {
          return 0;
        }
      },
      backend_);
}

Elem FiniteGroup::power(Elem g, long long e) const {
  const long long ord = orders_[g];
  long long r = ((e % ord) + ord) % ord;
  Elem out = 0;
  Elem base = g;
  while (r > 0) {
    if (r & 1) out = mul(out, base);
    base = mul(base, base);
    r >>= 1;
  }
  return out;
}

std::size_t FiniteGroup::exponent() const {
  std::size_t e = 1;
  for (unsigned o : orders_) e = std::lcm(e, static_cast<std::size_t>(o));
  return e;
}

bool FiniteGroup::is_abelian() const {
  for (Elem a : generators_)
    for (Elem b : generators_)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

std::vector<Elem> FiniteGroup::subgroup_closure(std::span<const Elem> gens) const {
  std::vector<bool> in(order_, false);
  std::vector<Elem> out{0};
  in[0] = true;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const Elem x = out[i];
    for (Elem s : gens) {
      const Elem y = mul(x, s);
      if (!in[y]) {
        in[y] = true;
        out.push_back(y);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Elem> FiniteGroup::generating_set_of(std::span<const Elem> subgroup) const {
  std::vector<Elem> gens;
  std::vector<bool> in(order_, false);
  in[0] = true;
  for (Elem x : subgroup) {
    if (in[x]) continue;
    gens.push_back(x);
    for (Elem y : subgroup_closure(gens)) in[y] = true;
  }
  return gens;
}

GroupPtr FiniteGroup::from_table(std::vector<std::vector<Elem>> mul, std::string name,
                                 std::size_t cap) {
  return GroupAssembler::table(std::move(mul), std::move(name), cap);
}

GroupPtr make_group(const GroupSpec& spec, std::size_t cap) {
  using K = GroupSpec::Kind;
  GroupPtr g;
  switch (spec.kind) {
    case K::cyclic:
      g = GroupAssembler::cyclic(spec.n, cap);
      break;
    case K::symmetric:
    case K::alternating:
    case K::dihedral: {
      const unsigned n = spec.n;
      if (n == 0) throw Error(ErrorKind::invalid_input, "degree must be >= 1");
      std::vector<Perm> gens;
      if (spec.kind == K::symmetric) {
        if (n >= 2) gens = {cycle_perm(n, {0, 1}), cycle_range(n, 0, n - 1)};
      } else if (spec.kind == K::alternating) {
        if (n >= 3) gens.push_back(cycle_perm(n, {0, 1, 2}));
        if (n >= 4) gens.push_back(n % 2 == 1 ? cycle_range(n, 0, n - 1) : cycle_range(n, 1, n - 1));
      } else {
        if (n < 3) throw Error(ErrorKind::invalid_input, "dihedral group needs n >= 3");
        Perm flip(n);
        for (unsigned i = 0; i < n; ++i) flip[i] = (n - i) % n;
        gens = {cycle_range(n, 0, n - 1), flip};
      }
      if (gens.empty()) gens.push_back(identity_perm(n));
      g = GroupAssembler::permutations(n, gens, describe(spec), cap);
      break;
    }
    case K::product: {
      if (spec.factors.empty()) throw Error(ErrorKind::invalid_input, "product needs factors");
      std::vector<GroupPtr> factors;
      for (const auto& f : spec.factors) factors.push_back(make_group(f, cap));
      g = GroupAssembler::product(std::move(factors), cap);
      break;
    }
    case K::table:
      g = GroupAssembler::table(spec.table, spec.label, cap);
      break;
    case K::perm: {
      if (spec.degree == 0) throw Error(ErrorKind::invalid_input, "permutation degree must be >= 1");
      std::vector<Perm> gens = spec.generators;
      if (gens.empty()) gens.push_back(identity_perm(spec.degree));
      g = GroupAssembler::permutations(spec.degree, gens, describe(spec), cap);
      break;
    }
  }
  if (!spec.label.empty() && g->name() != spec.label) {
    auto copy = std::make_shared<FiniteGroup>(*g);
    copy->name_ = spec.label;
    g = copy;
  }
  return g;
}

bool satisfies_group_axioms(const FiniteGroup& g) {
  const std::size_t n = g.order();
  for (Elem a = 0; a < n; ++a) {
    if (g.mul(0, a) != a || g.mul(a, 0) != a) return false;
    if (g.mul(g.inv(a), a) != 0 || g.mul(a, g.inv(a)) != 0) return false;
  }
  if (n <= 512) {
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b) {
        const Elem ab = g.mul(a, b);
        for (Elem c = 0; c < n; ++c)
          if (g.mul(ab, c) != g.mul(a, g.mul(b, c))) return false;
      }
  } else {
    Xoshiro256 rng(1);
    for (int i = 0; i < 200000; ++i) {
      const auto a = static_cast<Elem>(rng.below(n));
      const auto b = static_cast<Elem>(rng.below(n));
      const auto c = static_cast<Elem>(rng.below(n));
      if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c))) return false;
    }
  }
  return g.subgroup_closure(g.generators()).size() == n;
}

std::vector<Elem> derived_subgroup(const FiniteGroup& g, std::span<const Elem> h) {
  // [H,H] is the normal closure in H of the commutators of a generating set.
  const std::vector<Elem> gens = g.generating_set_of(h);
  std::vector<bool> in(g.order(), false);
  std::vector<Elem> words;
  auto add = [&](Elem x) {
    if (!in[x]) {
      in[x] = true;
      words.push_back(x);
    }
  };
  for (Elem a : gens)
    for (Elem b : gens) add(g.commutator(a, b));
  for (std::size_t i = 0; i < words.size(); ++i)
    for (Elem s : gens) add(g.conj(words[i], s));
  return g.subgroup_closure(words);
}

bool is_solvable(const FiniteGroup& g) {
  std::vector<Elem> current(g.order());
  std::iota(current.begin(), current.end(), Elem{0});
  for (std::size_t step = 0; step <= g.order(); ++step) {
    if (current.size() == 1) return true;
    auto next = derived_subgroup(g, current);
    if (next.size() == current.size()) return false;
    current = std::move(next);
  }
  return current.size() == 1;
}

std::vector<std::vector<Elem>> conjugacy_classes(const FiniteGroup& g) {
  const std::size_t n = g.order();
  std::vector<bool> done(n, false);
  std::vector<std::vector<Elem>> classes;
  for (Elem x = 0; x < n; ++x) {
    if (done[x]) continue;
    std::vector<Elem> cls{x};
    done[x] = true;
    for (std::size_t i = 0; i < cls.size(); ++i)
      for (Elem s : g.generators()) {
        const Elem y = g.conj(cls[i], s);
        if (!done[y]) {
          done[y] = true;
          cls.push_back(y);
        }
      }
    std::sort(cls.begin(), cls.end());
    classes.push_back(std::move(cls));
  }
  return classes;
}

std::vector<Elem> normal_closure(const FiniteGroup& g, std::span<const Elem> elems) {
  std::vector<Elem> gens;
  std::vector<bool> in(g.order(), false);
  for (Elem x : elems)
    if (!in[x]) {
      in[x] = true;
      gens.push_back(x);
    }
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (Elem s : g.generators()) {
      const Elem y = g.conj(gens[i], s);
      if (!in[y]) {
        in[y] = true;
        gens.push_back(y);
      }
    }
  return g.subgroup_closure(gens);
}

bool is_simple(const FiniteGroup& g) {
  if (g.order() == 1) return false;
  for (const auto& cls : conjugacy_classes(g)) {
    if (cls.front() == 0) continue;
    if (g.subgroup_closure(cls).size() != g.order()) return false;
  }
  return true;
}

std::vector<Elem> centralizer(const FiniteGroup& g, Elem x) {
  std::vector<Elem> out;
  for (Elem y = 0; y < g.order(); ++y)
    if (g.mul(x, y) == g.mul(y, x)) out.push_back(y);
  return out;
}

}  // namespace unifact
