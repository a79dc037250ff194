#include "unifact/cartesian.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace unifact {

FactorTransitiveAutGroup::FactorTransitiveAutGroup(DirectPower ambient, std::vector<FactorAutomorphism> generators)
    : ambient_(std::move(ambient)), generators_(std::move(generators)) {
  for (const auto& g : generators_)
    if (g.perm.size() != ambient_.k || g.twists.size() != ambient_.k)
      throw Error(ErrorKind::invalid_input, "generator does not act on the ambient direct power");
  if (!acts_transitively_on_factors(ambient_.k, generators_))
    throw Error(ErrorKind::precondition, "G0 is not transitive on the factors");
}

FactorTransitiveAutGroup FactorTransitiveAutGroup::from_permutations(const DirectPower& ambient,
                                                                    const std::vector<std::vector<unsigned>>& perms) {
  std::vector<FactorAutomorphism> gens;
  for (const auto& p : perms) gens.push_back(FactorAutomorphism::permutation(ambient, p));
  return FactorTransitiveAutGroup(ambient, std::move(gens));
}

std::vector<std::vector<unsigned>> FactorTransitiveAutGroup::factor_permutations() const {
  std::vector<std::vector<unsigned>> out;
  for (const auto& g : generators_) out.push_back(g.perm);
  return out;
}

FactorAutomorphism FactorTransitiveAutGroup::transporter(unsigned from, unsigned to) const {
  std::vector<std::optional<FactorAutomorphism>> word(ambient_.k);
  word[from] = FactorAutomorphism::identity(ambient_);
  std::vector<unsigned> queue{from};
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const unsigned c = queue[qi];
    if (c == to) return *word[c];
    for (const auto& g : generators_) {
      const unsigned d = g.perm[c];
      if (!word[d]) {
        word[d] = word[c]->then(g);
        queue.push_back(d);
      }
    }
  }
  throw Error(ErrorKind::precondition, "no element of G0 maps the factor");
}

namespace {

LinkedSubgroup intersect_all(const DirectPower& m, const std::vector<LinkedSubgroup>& ks, std::size_t skip) {
  LinkedSubgroup acc = LinkedSubgroup::whole(m);
  for (std::size_t i = 0; i < ks.size(); ++i)
    if (i != skip) acc = acc.intersect(ks[i]);
  return acc;
}

std::vector<LinkedSubgroup> checked_factors(const DirectPower& m, std::vector<LinkedSubgroup> ks) {
  if (ks.size() < 2) throw Error(ErrorKind::invalid_input, "a cartesian factorisation needs at least two factors");
  for (const auto& k : ks) {
    if (!(k.ambient() == m)) throw Error(ErrorKind::invalid_input, "factor lives in a different direct power");
    if (k.order() == m.order()) throw Error(ErrorKind::invalid_input, "improper factor");
  }
  return ks;
}

}  // namespace

CartesianFactorisation::CartesianFactorisation(DirectPower ambient, std::vector<LinkedSubgroup> factors)
    : ambient_(std::move(ambient)),
      factors_(checked_factors(ambient_, std::move(factors))),
      m0_(intersect_all(ambient_, factors_, factors_.size())) {}

CartesianFactorisation CartesianFactorisation::from_strip_products(const std::vector<StripProduct>& factors) {
  if (factors.empty()) throw Error(ErrorKind::invalid_input, "a cartesian factorisation needs at least two factors");
  std::vector<LinkedSubgroup> ks;
  for (const auto& f : factors) ks.push_back(f.to_linked());
  return CartesianFactorisation(factors[0].ambient(), std::move(ks));
}

LinkedSubgroup CartesianFactorisation::complement(std::size_t i) const { return intersect_all(ambient_, factors_, i); }

CartesianVerdict verify_cartesian(const CartesianFactorisation& k, std::uint64_t witness_budget) {
  CartesianVerdict v;
  v.holds = true;
  for (std::size_t i = 0; i < k.size(); ++i) {
    auto f = product_covers(k.factors()[i], k.complement(i), v.holds ? witness_budget : 0);
    if (!f.holds && v.holds) {
      v.holds = false;
      v.failing_index = i;
      v.witness = f.witness;
    }
    v.per_index.push_back(std::move(f));
  }
  return v;
}

CartesianVerdict verify_cartesian(const DirectPower& m, const std::vector<SubgroupHandle>& ks,
                                  std::uint64_t witness_budget, std::size_t cap) {
  if (ks.size() < 2) throw Error(ErrorKind::invalid_input, "a cartesian factorisation needs at least two factors");
  std::vector<std::vector<Tuple>> elems;
  for (const auto& k : ks) {
    if (!(k.ambient() == m)) throw Error(ErrorKind::invalid_input, "factor lives in a different direct power");
    if (k.order() == m.order()) throw Error(ErrorKind::invalid_input, "improper factor");
    elems.push_back(k.elements(cap));
  }
  CartesianVerdict v;
  v.holds = true;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    std::optional<std::vector<Tuple>> rest;
    for (std::size_t j = 0; j < ks.size(); ++j) {
      if (j == i) continue;
      if (!rest) {
        rest = elems[j];
        continue;
      }
      std::vector<Tuple> meet;
      std::set_intersection(rest->begin(), rest->end(), elems[j].begin(), elems[j].end(), std::back_inserter(meet));
      rest = std::move(meet);
    }
    SubgroupHandle complement(m, *rest);
    auto f = product_covers(ks[i], complement, v.holds ? witness_budget : 0, cap);
    if (!f.holds && v.holds) {
      v.holds = false;
      v.failing_index = i;
      v.witness = f.witness;
    }
    v.per_index.push_back(std::move(f));
  }
  return v;
}

std::vector<FullStrip> involved_strips(const LinkedSubgroup& k) {
  // Normalized blocks are the connected classes of the coordinate
  // equations, so a block with F = T is exactly an involved strip.
  std::vector<FullStrip> out;
  const std::size_t n = k.ambient().base->order();
  for (const auto& b : k.blocks())
    if (b.coords.size() >= 2 && b.root_values.size() == n) out.emplace_back(k.ambient().base, b.coords, b.from_root);
  return out;
}

std::vector<FullStrip> involved_strips(const StripProduct& k) { return involved_strips(k.to_linked()); }

std::vector<FullStrip> involved_strips(const SubgroupHandle& k) {
  const unsigned kk = k.ambient().k;
  if (kk > 16) throw Error(ErrorKind::invalid_input, "involved strip search supports at most 16 coordinates");
  const std::size_t n = k.ambient().base->order();
  const BigInt order = k.order();
  std::vector<FullStrip> out;
  for (std::uint32_t mask = 1; mask < (1u << kk); ++mask) {
    if (std::popcount(mask) < 2) continue;
    std::vector<unsigned> in, rest;
    for (unsigned c = 0; c < kk; ++c) ((mask >> c) & 1 ? in : rest).push_back(c);
    const SubgroupHandle p = k.project(in);
    if (p.order() != n) continue;
    bool full = true;
    for (unsigned i = 0; i < in.size() && full; ++i) {
      const unsigned one[] = {i};
      full = p.project(one).order() == n;
    }
    if (!full) continue;
    const BigInt rest_order = rest.empty() ? BigInt(1) : k.project(rest).order();
    if (rest_order * n != order) continue;
    // The projection is a full strip; read the twists off its elements.
    const auto elems = p.elements(n);
    std::vector<std::vector<Elem>> images(in.size(), std::vector<Elem>(n));
    for (const auto& e : elems)
      for (std::size_t i = 0; i < in.size(); ++i) images[i][e[0]] = e[i];
    std::vector<Automorphism> tw;
    for (auto& im : images) tw.push_back(Automorphism::checked(k.ambient().base, std::move(im)));
    out.emplace_back(k.ambient().base, in, std::move(tw));
  }
  std::sort(out.begin(), out.end(),
            [](const FullStrip& a, const FullStrip& b) { return a.support() < b.support(); });
  return out;
}

bool is_invariant(const CartesianFactorisation& k, const FactorTransitiveAutGroup& g0) {
  if (!(g0.ambient() == k.ambient())) throw Error(ErrorKind::invalid_input, "G0 acts on a different direct power");
  for (const auto& g : g0.generators())
    for (const auto& f : k.factors()) {
      const LinkedSubgroup img = f.image(g);
      if (std::none_of(k.factors().begin(), k.factors().end(), [&](const LinkedSubgroup& h) { return h == img; }))
        return false;
    }
  return true;
}

const char* status_name(MainstripfactReport::Status s) {
  switch (s) {
    case MainstripfactReport::Status::applies: return "applies";
    case MainstripfactReport::Status::vacuous: return "vacuous";
    case MainstripfactReport::Status::not_cartesian: return "not_cartesian";
    case MainstripfactReport::Status::not_invariant: return "not_invariant";
  }
  return "?";
}

namespace {

std::vector<unsigned> shared_support(const FullStrip& a, const FullStrip& b) {
  std::vector<unsigned> out;
  std::set_intersection(a.support().begin(), a.support().end(), b.support().begin(), b.support().end(),
                        std::back_inserter(out));
  return out;
}

// Projection onto `labels` in the given (not necessarily ascending) order.
LinkedSubgroup project_ordered(const LinkedSubgroup& k, const std::vector<unsigned>& labels) {
  std::vector<unsigned> sorted = labels;
  std::sort(sorted.begin(), sorted.end());
  const LinkedSubgroup p = k.project(sorted);
  std::vector<unsigned> perm(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i)
    perm[i] = static_cast<unsigned>(std::find(labels.begin(), labels.end(), sorted[i]) - labels.begin());
  return p.image(FactorAutomorphism::permutation(p.ambient(), perm));
}

void internal(const std::string& what) { throw Error(ErrorKind::precondition, "strip cycle construction: " + what); }

}  // namespace

MainstripfactReport mainstripfact_verify(const CartesianFactorisation& k, const FactorTransitiveAutGroup& g0) {
  const DirectPower& m = k.ambient();
  const GroupPtr& t = m.base;
  if (t->is_abelian())
    throw Error(ErrorKind::precondition,
                "abelian base group: cartesian factorisations of an elementary abelian group are direct sum "
                "decompositions and are out of scope");
  if (!(g0.ambient() == m)) throw Error(ErrorKind::invalid_input, "G0 acts on a different direct power");

  MainstripfactReport r;
  r.base_has_uniform = has_uniform_automorphism(t).has_value();
  r.m0_subdirect = k.m0().is_subdirect();
  for (std::size_t i = 0; i < k.size(); ++i)
    for (auto& s : involved_strips(k.factors()[i])) r.involved.push_back({i, std::move(s)});

  if (!verify_cartesian(k, 0).holds) {
    r.status = MainstripfactReport::Status::not_cartesian;
    r.reason = "the family is not a cartesian factorisation";
    return r;
  }
  if (!is_invariant(k, g0)) {
    r.status = MainstripfactReport::Status::not_invariant;
    r.reason = "the family is not invariant under G0";
    return r;
  }

  const auto& inv = r.involved;
  for (std::size_t i = 0; i < inv.size() && !r.start; ++i)
    for (std::size_t j = i + 1; j < inv.size() && !r.start; ++j)
      if (!shared_support(inv[i].strip, inv[j].strip).empty()) r.start = {i, j};
  if (!r.start) {
    r.status = MainstripfactReport::Status::vacuous;
    r.reason = "involved strips are pairwise disjoint; the proposition is vacuous";
    return r;
  }
  r.status = MainstripfactReport::Status::applies;

  // Overlapping strips in two coordinates: projections onto those two
  // coordinates are twisted diagonals factorising T^2.
  for (std::size_t i = 0; i < inv.size() && !r.shared_two; ++i)
    for (std::size_t j = i + 1; j < inv.size() && !r.shared_two; ++j) {
      const auto sh = shared_support(inv[i].strip, inv[j].strip);
      if (sh.size() < 2) continue;
      r.shared_two = true;
      r.start = {i, j};
      r.labels = {sh[0], sh[1]};
      const Automorphism a = inv[i].strip.relation(sh[0], sh[1]);
      const Automorphism b = inv[j].strip.relation(sh[0], sh[1]);
      r.composite = a.then(b.inverse());
      r.composite_uniform = is_uniform(*r.composite).uniform;
      const unsigned two[] = {sh[0], sh[1]};
      r.projections_check =
          inv[i].member != inv[j].member &&
          product_covers(k.factors()[inv[i].member].project(two), k.factors()[inv[j].member].project(two), 0).holds;
    }

  if (!r.shared_two) {
    auto find = [&](const FullStrip& s) -> std::size_t {
      for (std::size_t i = 0; i < inv.size(); ++i)
        if (inv[i].strip == s) return i;
      internal("image of an involved strip is not involved");
      return 0;
    };
    std::vector<std::size_t> seq{r.start->first, r.start->second};
    while (true) {
      if (seq.size() > inv.size() + 1) internal("sequence did not close");
      const FullStrip& prev = inv[seq[seq.size() - 2]].strip;
      const FullStrip& cur = inv[seq.back()].strip;
      const unsigned tt = shared_support(prev, cur).at(0);
      unsigned target = m.k;
      for (unsigned c : cur.support())
        if (!prev.in_support(c)) {
          target = c;
          break;
        }
      const FactorAutomorphism g = g0.transporter(tt, target);
      std::optional<std::size_t> next;
      for (std::size_t cand : {find(prev.image(g)), find(cur.image(g))})
        if (cand != seq[seq.size() - 2] && cand != seq.back()) {
          next = cand;
          break;
        }
      if (!next) internal("no new strip through the transported factor");
      seq.push_back(*next);
      const std::size_t a = seq.size();
      std::optional<std::size_t> hit;
      for (std::size_t j = 0; j + 2 < a; ++j)
        if (!shared_support(inv[seq[j]].strip, inv[*next].strip).empty()) hit = j;
      if (hit) {
        seq.erase(seq.begin(), seq.begin() + static_cast<std::ptrdiff_t>(*hit));
        break;
      }
    }
    const std::size_t a = seq.size();
    for (std::size_t i = 0; i < a; ++i)
      for (std::size_t j = i + 1; j < a; ++j) {
        const bool neighbours = j == i + 1 || (i == 0 && j == a - 1);
        const std::size_t s = shared_support(inv[seq[i]].strip, inv[seq[j]].strip).size();
        if (neighbours ? s != 1 : s != 0) internal("cycle conditions fail");
      }
    r.sequence = seq;

    auto strip = [&](std::size_t pos) -> const FullStrip& { return inv[seq[pos % a]].strip; };
    auto meet = [&](std::size_t p, std::size_t q) { return shared_support(strip(p), strip(q)).at(0); };
    const std::size_t member = inv[seq[0]].member;
    std::vector<std::size_t> pos;
    for (std::size_t p = 0; p < a; ++p)
      if (inv[seq[p]].member == member) pos.push_back(p);
    if (pos.back() == a - 1) internal("last strip lies in the first member");
    const std::size_t d = pos.size();
    r.labels.assign(2 * d, 0);
    for (std::size_t j = 0; j < d; ++j) {
      r.labels[2 * j] = meet(pos[j] + a - 1, pos[j]);
      r.labels[2 * j + 1] = meet(pos[j], pos[j] + 1);
    }
    for (std::size_t j = 0; j < d; ++j) {
      r.alphas.push_back(strip(pos[j]).relation(r.labels[2 * j], r.labels[2 * j + 1]));
      const std::size_t end = j + 1 < d ? pos[j + 1] : a;
      Automorphism beta = Automorphism::identity(t);
      for (std::size_t q = pos[j] + 1; q < end; ++q) beta = beta.then(strip(q).relation(meet(q - 1, q), meet(q, q + 1)));
      r.betas.push_back(std::move(beta));
    }
    std::vector<Automorphism> chain;
    for (std::size_t j = 0; j < d; ++j) {
      chain.push_back(r.alphas[j]);
      chain.push_back(r.betas[j]);
    }
    r.composite = compose_chain(t, chain);
    r.composite_uniform = is_uniform(*r.composite).uniform;

    auto sorted_labels = r.labels;
    std::sort(sorted_labels.begin(), sorted_labels.end());
    if (std::adjacent_find(sorted_labels.begin(), sorted_labels.end()) != sorted_labels.end())
      internal("labels are not distinct");
    const LinkedSubgroup y = double_strip_x(t, r.alphas).to_linked();
    const LinkedSubgroup z = double_strip_y(t, r.betas).to_linked();
    const LinkedSubgroup k1 = project_ordered(k.factors()[member], r.labels);
    const LinkedSubgroup hat = project_ordered(k.complement(member), r.labels);
    r.projections_check = k1 == y && hat.intersect(z) == hat && product_covers(y, z, 0).holds;
  }
  r.consistent = r.composite_uniform && r.projections_check && r.base_has_uniform && !r.m0_subdirect;
  return r;
}

namespace {

std::vector<std::vector<unsigned>> set_partitions(std::size_t n) {
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> label(n, 0);
  auto rec = [&](auto&& self, std::size_t pos, unsigned used) -> void {
    if (pos == n) {
      out.push_back(label);
      return;
    }
    for (unsigned l = 0; l <= used && l < n; ++l) {
      label[pos] = l;
      self(self, pos + 1, std::max(used, l + 1));
    }
  };
  if (n > 0) {
    label[0] = 0;
    rec(rec, 1, 1);
  }
  return out;
}

struct Candidate {
  StripProduct product;
  LinkedSubgroup linked;
  std::vector<unsigned> block_of;  // coordinate -> block id, ids local to the candidate
};

}  // namespace

std::vector<CartesianFactorisation> enumerate_cartesian_over(const StripProduct& m0, const FactorTransitiveAutGroup& g0,
                                                             std::uint64_t budget, CartesianSearchStats* stats) {
  const DirectPower& m = m0.ambient();
  const GroupPtr& t = m.base;
  if (t->is_abelian() || !is_simple(*t))
    throw Error(ErrorKind::precondition, "the base group must be non-abelian simple");
  if (!m0.is_subdirect()) throw Error(ErrorKind::precondition, "M0 must be subdirect");
  if (!(g0.ambient() == m)) throw Error(ErrorKind::invalid_input, "G0 acts on a different direct power");

  // Blocks of M0: its strips, then its full coordinates as singletons.
  struct Block {
    std::vector<unsigned> coords;
    std::optional<FullStrip> strip;
  };
  std::vector<Block> blocks;
  for (const auto& s : m0.strips()) blocks.push_back({s.support(), s});
  for (unsigned c : m0.full()) blocks.push_back({{c}, std::nullopt});
  std::vector<std::vector<std::vector<unsigned>>> parts;
  for (const auto& b : blocks) parts.push_back(set_partitions(b.coords.size()));

  std::vector<Candidate> cands;
  std::vector<std::size_t> idx(blocks.size(), 0);
  while (true) {
    std::vector<FullStrip> strips;
    std::vector<unsigned> full;
    std::vector<unsigned> block_of(m.k, 0);
    unsigned next_id = 0;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      const auto& label = parts[b][idx[b]];
      const unsigned used = label.empty() ? 0 : *std::max_element(label.begin(), label.end()) + 1;
      for (unsigned l = 0; l < used; ++l) {
        std::vector<unsigned> sub;
        std::vector<Automorphism> tw;
        for (std::size_t i = 0; i < label.size(); ++i)
          if (label[i] == l) {
            const unsigned c = blocks[b].coords[i];
            sub.push_back(c);
            block_of[c] = next_id;
            tw.push_back(blocks[b].strip ? blocks[b].strip->twist_at(c) : Automorphism::identity(t));
          }
        ++next_id;
        if (sub.size() == 1)
          full.push_back(sub[0]);
        else
          strips.emplace_back(t, sub, tw);
      }
    }
    if (!strips.empty()) {
      StripProduct p(m, std::move(strips), std::move(full));
      LinkedSubgroup l = p.to_linked();
      cands.push_back({std::move(p), std::move(l), std::move(block_of)});
    }
    std::size_t i = blocks.size();
    while (i > 0 && ++idx[i - 1] == parts[i - 1].size()) idx[--i] = 0;
    if (i == 0) break;
  }
  if (stats) stats->candidates = cands.size();

  // Image of each candidate under each generator, as a candidate index.
  constexpr std::size_t none = static_cast<std::size_t>(-1);
  std::vector<std::vector<std::size_t>> image(g0.generators().size(), std::vector<std::size_t>(cands.size(), none));
  for (std::size_t g = 0; g < g0.generators().size(); ++g)
    for (std::size_t c = 0; c < cands.size(); ++c) {
      const LinkedSubgroup img = cands[c].linked.image(g0.generators()[g]);
      for (std::size_t d = 0; d < cands.size(); ++d)
        if (cands[d].linked == img) {
          image[g][c] = d;
          break;
        }
    }

  const std::size_t m0_blocks = blocks.size();
  std::vector<CartesianFactorisation> out;
  std::uint64_t visited = 0;
  const std::size_t max_l = std::min<std::size_t>(m.k, cands.size());
  for (std::size_t l = 2; l <= max_l; ++l) {
    std::vector<std::size_t> pick(l);
    std::iota(pick.begin(), pick.end(), 0);
    while (true) {
      if (++visited > budget)
        throw Error(ErrorKind::budget_exceeded, "more than " + std::to_string(budget) + " candidate families");
      // The intersection equals M0 exactly when the partitions join to M0's.
      std::vector<unsigned> parent(m.k);
      std::iota(parent.begin(), parent.end(), 0u);
      auto root = [&](unsigned x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
      };
      std::size_t classes = m.k;
      for (std::size_t c : pick) {
        std::vector<int> first(m.k, -1);
        for (unsigned x = 0; x < m.k; ++x) {
          const unsigned b = cands[c].block_of[x];
          if (first[b] < 0) {
            first[b] = static_cast<int>(x);
          } else {
            const unsigned ra = root(x), rb = root(static_cast<unsigned>(first[b]));
            if (ra != rb) {
              parent[ra] = rb;
              --classes;
            }
          }
        }
      }
      bool ok = classes == m0_blocks;
      for (std::size_t g = 0; ok && g < image.size(); ++g)
        for (std::size_t c : pick)
          if (std::find(pick.begin(), pick.end(), image[g][c]) == pick.end()) {
            ok = false;
            break;
          }
      if (ok) {
        std::vector<LinkedSubgroup> ks;
        for (std::size_t c : pick) ks.push_back(cands[c].linked);
        CartesianFactorisation f(m, std::move(ks));
        if (verify_cartesian(f, 0).holds) out.push_back(std::move(f));
      }
      std::size_t i = l;
      while (i > 0 && pick[i - 1] == cands.size() - l + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < l; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  if (stats) stats->families_checked = visited;
  return out;
}

std::vector<CartesianFactorisation> enumerate_cartesian_over(const DirectPower& m, const SubgroupHandle& m0,
                                                             const FactorTransitiveAutGroup& g0, std::uint64_t budget,
                                                             CartesianSearchStats* stats) {
  if (!(m0.ambient() == m)) throw Error(ErrorKind::invalid_input, "M0 lives in a different direct power");
  return enumerate_cartesian_over(scott_decompose(m0), g0, budget, stats);
}

}  // namespace unifact
