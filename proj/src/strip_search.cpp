#include <algorithm>
#include <bit>

#include "unifact/factorisation.hpp"
#include "unifact/rng.hpp"

namespace unifact {

std::vector<std::vector<unsigned>> strip_shapes(unsigned k) {
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> label(k, 0);
  // Restricted growth strings with 0 reserved for "uncovered".
  auto rec = [&](auto&& self, unsigned pos, unsigned used) -> void {
    if (pos == k) {
      if (used == 0) return;
      std::vector<unsigned> size(used + 1, 0);
      for (unsigned l : label) ++size[l];
      for (unsigned b = 1; b <= used; ++b)
        if (size[b] < 2) return;
      out.push_back(label);
      return;
    }
    for (unsigned l = 0; l <= used + 1; ++l) {
      label[pos] = l;
      self(self, pos + 1, std::max(used, l));
    }
  };
  rec(rec, 0, 0);
  return out;
}

namespace {

using Index = AutomorphismTable::Index;

struct Shape {
  std::vector<unsigned> label;
  std::vector<std::vector<unsigned>> blocks;  // supports, ascending
  unsigned twist_slots = 0;                   // sum of (|block| - 1)
};

Shape make_shape(const std::vector<unsigned>& label) {
  Shape s;
  s.label = label;
  unsigned used = 0;
  for (unsigned l : label) used = std::max(used, l);
  s.blocks.resize(used);
  for (unsigned c = 0; c < label.size(); ++c)
    if (label[c]) s.blocks[label[c] - 1].push_back(c);
  for (const auto& b : s.blocks) s.twist_slots += static_cast<unsigned>(b.size() - 1);
  return s;
}

StripProduct realize(const DirectPower& m, const Shape& s, const AutomorphismTable& autos,
                     const std::vector<Index>& twists) {
  std::vector<FullStrip> strips;
  std::size_t slot = 0;
  for (const auto& b : s.blocks) {
    std::vector<Automorphism> tw{Automorphism::identity(m.base)};
    for (std::size_t i = 1; i < b.size(); ++i) tw.push_back(autos[twists[slot++]]);
    strips.emplace_back(m.base, b, std::move(tw));
  }
  return StripProduct(m, std::move(strips));
}

bool advance(std::vector<Index>& v, Index radix) {
  for (std::size_t i = v.size(); i-- > 0;) {
    if (++v[i] < radix) return true;
    v[i] = 0;
  }
  return false;
}

// Evaluates |X||Y| = |X cap Y||T^k| for one pair of shapes and varying
// twists. X cap Y is solved on the graph whose vertices are coordinates and
// whose edges come from both sides' strips: every unforced component carries
// a single root value, each coordinate a potential automorphism of it, and
// edges closing a cycle restrict the root to a fixed-point set.
class PairKernel {
 public:
  PairKernel(const Shape& sx, const Shape& sy, const AutomorphismTable& autos, unsigned k)
      : autos_(autos), k_(k) {
    struct RawEdge {
      unsigned from, to;
      int side;
      unsigned slot;
    };
    std::vector<RawEdge> raw;
    auto add = [&](const Shape& s, int side) {
      unsigned slot = 0;
      for (const auto& b : s.blocks)
        for (std::size_t i = 1; i < b.size(); ++i) raw.push_back({b[0], b[i], side, slot++});
    };
    add(sx, 0);
    add(sy, 1);

    std::vector<std::vector<std::size_t>> adj(k);
    for (std::size_t e = 0; e < raw.size(); ++e) {
      adj[raw[e].from].push_back(e);
      adj[raw[e].to].push_back(e);
    }
    std::vector<int> comp(k, -1);
    std::vector<bool> used(raw.size(), false);
    int comps = 0;
    for (unsigned r = 0; r < k; ++r) {
      if (comp[r] != -1) continue;
      const int id = comps++;
      std::vector<unsigned> queue{r};
      comp[r] = id;
      bool forced = false;
      std::vector<Step> tree;
      std::vector<Check> cycle;
      for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        const unsigned u = queue[qi];
        if (sx.label[u] == 0 || sy.label[u] == 0) forced = true;
        for (std::size_t e : adj[u]) {
          if (used[e]) continue;
          used[e] = true;
          const RawEdge& re = raw[e];
          const unsigned v = re.from == u ? re.to : re.from;
          if (comp[v] == -1) {
            comp[v] = id;
            queue.push_back(v);
            tree.push_back({u, v, re.side, re.slot, re.from == u});
          } else {
            cycle.push_back({re.from, re.to, re.side, re.slot});
          }
        }
      }
      roots_.push_back(r);
      if (!forced) {
        steps_.insert(steps_.end(), tree.begin(), tree.end());
        groups_.push_back({static_cast<unsigned>(checks_.size()), static_cast<unsigned>(cycle.size())});
        checks_.insert(checks_.end(), cycle.begin(), cycle.end());
      }
    }
    const unsigned n = static_cast<unsigned>(autos.group()->order());
    full_mask_ = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    lhs_ = 1;
    for (unsigned i = 0; i < sx.blocks.size() + sy.blocks.size(); ++i) lhs_ *= n;
    nk_ = 1;
    for (unsigned i = 0; i < k; ++i) nk_ *= n;
  }

  bool covers(const std::vector<Index>& tx, const std::vector<Index>& ty) {
    pot_.assign(k_, autos_.identity_index());
    for (const auto& s : steps_) {
      const Index tw = (s.side == 0 ? tx : ty)[s.slot];
      pot_[s.child] = s.forward ? autos_.compose(pot_[s.parent], tw) : autos_.compose(pot_[s.parent], autos_.inverse(tw));
    }
    unsigned __int128 meet = 1;
    for (const auto& g : groups_) {
      std::uint64_t mask = full_mask_;
      for (unsigned i = g.first; i < g.first + g.count; ++i) {
        const Check& c = checks_[i];
        const Index tw = (c.side == 0 ? tx : ty)[c.slot];
        // value at `to` must equal tw(value at `from`)
        const Index loop = autos_.compose(autos_.compose(pot_[c.from], tw), autos_.inverse(pot_[c.to]));
        mask &= autos_.fixed_mask(loop);
      }
      meet *= static_cast<unsigned>(std::popcount(mask));
    }
    return lhs_ == meet * nk_;
  }

 private:
  struct Step {
    unsigned parent, child;
    int side;
    unsigned slot;
    bool forward;  // edge runs parent -> child
  };
  struct Check {
    unsigned from, to;
    int side;
    unsigned slot;
  };
  struct Group {
    unsigned first, count;
  };
  const AutomorphismTable& autos_;
  unsigned k_;
  std::vector<unsigned> roots_;
  std::vector<Step> steps_;
  std::vector<Check> checks_;
  std::vector<Group> groups_;
  std::vector<Index> pot_;
  std::uint64_t full_mask_ = 0;
  unsigned __int128 lhs_ = 1, nk_ = 1;
};

void record(SearchReport& r, const std::optional<NoUniformCertificate>& cert, const StripProduct& x,
            const StripProduct& y, bool holds, std::optional<Claim> claim) {
  ++r.pairs_checked;
  if (holds) {
    ++r.factorisations_found;
    if (!r.first_factorisation) r.first_factorisation.emplace(x, y);
    return;
  }
  if (!cert) {
    ++r.undiagnosed;
    return;
  }
  if (!r.first_witness) {
    Diagnosis d = diagnose_nonfactorisation(x, y, *cert, true);
    if (claim && d.claim != *claim) throw Error(ErrorKind::precondition, "diagnosis class table disagrees");
    claim = d.claim;
    r.first_witness.emplace(SearchReport::Witness{x, y, std::move(d)});
  } else if (!claim) {
    claim = diagnose_nonfactorisation(x, y, *cert, true).claim;
  }
  ++r.diagnoses[static_cast<std::size_t>(*claim) - 1];
}

}  // namespace

SearchReport nostripfact_search(const GroupPtr& t, unsigned k, const SearchConfig& config) {
  if (k < 2) throw Error(ErrorKind::invalid_input, "k must be at least 2");
  if (t->order() < 2) throw Error(ErrorKind::precondition, "the base group must be non-trivial");
  if (config.mode == SearchMode::sampled && config.samples == 0)
    throw Error(ErrorKind::invalid_input, "sampled mode needs at least one sample");
  const AutomorphismTable autos(t);
  SearchReport r;
  r.group = t->name();
  r.k = k;
  r.config = config;
  r.automorphisms = autos.size();
  for (const auto& a : autos.all())
    if (is_uniform(a).uniform) {
      r.uniform = a;
      break;
    }
  r.hypothesis_holds = !r.uniform;
  std::optional<NoUniformCertificate> cert;
  if (r.hypothesis_holds) cert = NoUniformCertificate::issue(t);

  std::vector<Shape> shapes;
  for (const auto& l : strip_shapes(k)) shapes.push_back(make_shape(l));
  r.shapes = shapes.size();
  r.candidates = 0;
  for (const auto& s : shapes) r.candidates += big_pow(autos.size(), s.twist_slots);

  const DirectPower m(t, k);
  const Index a = static_cast<Index>(autos.size());

  if (config.mode == SearchMode::sampled) {
    Xoshiro256 rng(config.seed);
    auto draw = [&]() {
      const Shape& s = shapes[rng.below(shapes.size())];
      std::vector<Index> tw(s.twist_slots);
      for (auto& i : tw) i = static_cast<Index>(rng.below(a));
      return realize(m, s, autos, tw);
    };
    for (std::uint64_t i = 0; i < config.samples; ++i) {
      const StripProduct x = draw();
      const StripProduct y = draw();
      record(r, cert, x, y, product_covers(x, y, 0).holds, std::nullopt);
    }
    return r;
  }

  if (r.candidates * r.candidates > config.budget)
    throw Error(ErrorKind::budget_exceeded, "exhaustive search over " + r.candidates.convert_to<std::string>() +
                                                "^2 pairs exceeds the budget of " + std::to_string(config.budget) +
                                                "; use sampled mode");

  const bool fast = autos.has_masks() && autos.has_compose_table() && k <= 10;
  for (const auto& sx : shapes)
    for (const auto& sy : shapes) {
      std::optional<Claim> claim;
      if (cert) {
        const std::vector<Index> ix(sx.twist_slots, autos.identity_index()), iy(sy.twist_slots, autos.identity_index());
        claim = diagnose_nonfactorisation(realize(m, sx, autos, ix), realize(m, sy, autos, iy), *cert, false).claim;
      }
      std::optional<PairKernel> kernel;
      if (fast) kernel.emplace(sx, sy, autos, k);
      std::vector<Index> tx(sx.twist_slots, 0);
      do {
        std::vector<Index> ty(sy.twist_slots, 0);
        std::optional<StripProduct> x_cached;
        do {
          bool holds;
          if (kernel) {
            holds = kernel->covers(tx, ty);
          } else {
            if (!x_cached) x_cached = realize(m, sx, autos, tx);
            holds = product_covers(*x_cached, realize(m, sy, autos, ty), 0).holds;
          }
          if (!holds && cert && r.first_witness) {
            // Hot path: the class depends on the supports only.
            ++r.pairs_checked;
            ++r.diagnoses[static_cast<std::size_t>(*claim) - 1];
          } else {
            record(r, cert, realize(m, sx, autos, tx), realize(m, sy, autos, ty), holds, claim);
          }
        } while (advance(ty, a));
      } while (advance(tx, a));
    }
  return r;
}

}  // namespace unifact
