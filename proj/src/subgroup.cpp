#include "unifact/subgroup.hpp"

#include <algorithm>
#include <mutex>

namespace unifact {

struct SubgroupHandle::Chain {
  // transversal[i][x] maps coordinate i from 1 to x and is trivial on
  // coordinates < i; empty when x is not in the level-i orbit.
  std::vector<std::vector<Tuple>> transversal;
  std::vector<std::vector<Elem>> orbit;
};

struct SubgroupHandle::State {
  std::once_flag once;
  Chain chain;
};

namespace {

struct Sifted {
  Tuple residue;
  unsigned level;  // first coordinate where sifting failed; k when it succeeded
};

class ChainBuilder {
 public:
  ChainBuilder(const DirectPower& m) : m_(m), n_(m.base->order()) {
    transversal_.assign(m.k, std::vector<Tuple>(n_));
    orbit_.assign(m.k, {});
    for (unsigned i = 0; i < m.k; ++i) {
      transversal_[i][0] = m.identity();
      orbit_[i] = {0};
    }
  }

  Sifted sift(Tuple g, unsigned from) const {
    for (unsigned i = from; i < m_.k; ++i) {
      const Elem x = g[i];
      if (x == 0) continue;
      const Tuple& u = transversal_[i][x];
      if (u.empty()) return {std::move(g), i};
      g = m_.mul(g, m_.inv(u));
    }
    return {std::move(g), m_.k};
  }

  void add_strong(Sifted s) {
    strong_.push_back(std::move(s.residue));
    strong_level_.push_back(s.level);
  }

  void rebuild_level(unsigned i) {
    auto& tr = transversal_[i];
    for (auto& t : tr) t.clear();
    tr[0] = m_.identity();
    auto& orb = orbit_[i];
    orb.assign(1, 0);
    for (std::size_t qi = 0; qi < orb.size(); ++qi) {
      const Elem x = orb[qi];
      for (std::size_t s = 0; s < strong_.size(); ++s) {
        if (strong_level_[s] < i) continue;
        const Elem y = m_.base->mul(x, strong_[s][i]);
        if (tr[y].empty()) {
          tr[y] = m_.mul(tr[x], strong_[s]);
          orb.push_back(y);
        }
      }
    }
  }

  // Schreier generators of level i sift through the deeper levels. Returns
  // whether a new strong generator was added.
  bool close_level(unsigned i) {
    bool added = false;
    rebuild_level(i);
    for (std::size_t qi = 0; qi < orbit_[i].size(); ++qi) {
      const Elem x = orbit_[i][qi];
      for (std::size_t s = 0; s < strong_.size(); ++s) {
        if (strong_level_[s] < i) continue;
        const Elem y = m_.base->mul(x, strong_[s][i]);
        Tuple schreier = m_.mul(m_.mul(transversal_[i][x], strong_[s]), m_.inv(transversal_[i][y]));
        Sifted r = sift(std::move(schreier), i + 1);
        if (r.level == m_.k) continue;
        const unsigned lvl = r.level;
        add_strong(std::move(r));
        for (unsigned j = i + 1; j <= lvl; ++j) rebuild_level(j);
        added = true;
      }
    }
    return added;
  }

  std::pair<std::vector<std::vector<Tuple>>, std::vector<std::vector<Elem>>> build(
      const std::vector<Tuple>& gens) && {
    for (const auto& g : gens) {
      Sifted r = sift(g, 0);
      if (r.level < m_.k) add_strong(std::move(r));
    }
    bool changed = true;
    while (changed) {
      changed = false;
      for (unsigned i = 0; i < m_.k; ++i) changed = close_level(i) || changed;
    }
    return {std::move(transversal_), std::move(orbit_)};
  }

 private:
  const DirectPower& m_;
  std::size_t n_;
  std::vector<std::vector<Tuple>> transversal_;
  std::vector<std::vector<Elem>> orbit_;
  std::vector<Tuple> strong_;
  std::vector<unsigned> strong_level_;
};

}  // namespace

SubgroupHandle::SubgroupHandle(DirectPower ambient, std::vector<Tuple> generators)
    : ambient_(std::move(ambient)), generators_(std::move(generators)), state_(std::make_shared<State>()) {
  for (const auto& g : generators_) {
    if (g.size() != ambient_.k) throw Error(ErrorKind::invalid_input, "generator has the wrong number of coordinates");
    for (Elem x : g)
      if (x >= ambient_.base->order()) throw Error(ErrorKind::invalid_input, "generator coordinate out of range");
  }
}

const SubgroupHandle::Chain& SubgroupHandle::chain() const {
  std::call_once(state_->once, [this] {
    auto [tr, orb] = ChainBuilder(ambient_).build(generators_);
    state_->chain.transversal = std::move(tr);
    state_->chain.orbit = std::move(orb);
  });
  return state_->chain;
}

BigInt SubgroupHandle::order() const {
  BigInt out = 1;
  for (const auto& o : chain().orbit) out *= o.size();
  return out;
}

std::vector<std::size_t> SubgroupHandle::level_sizes() const {
  std::vector<std::size_t> out;
  for (const auto& o : chain().orbit) out.push_back(o.size());
  return out;
}

bool SubgroupHandle::contains(const Tuple& m) const {
  if (m.size() != ambient_.k) return false;
  const Chain& c = chain();
  Tuple g = m;
  for (unsigned i = 0; i < ambient_.k; ++i) {
    if (g[i] >= ambient_.base->order()) return false;
    if (g[i] == 0) continue;
    const Tuple& u = c.transversal[i][g[i]];
    if (u.empty()) return false;
    g = ambient_.mul(g, ambient_.inv(u));
  }
  return true;
}

std::vector<Tuple> SubgroupHandle::elements(std::size_t cap) const {
  if (order() > cap)
    throw Error(ErrorKind::cap_exceeded, "subgroup has more than " + std::to_string(cap) + " elements");
  const Chain& c = chain();
  // Every element is u_{k-1} ... u_1 u_0 with u_i from the level-i transversal.
  std::vector<Tuple> out{ambient_.identity()};
  for (unsigned i = ambient_.k; i-- > 0;) {
    std::vector<Tuple> next;
    next.reserve(out.size() * c.orbit[i].size());
    for (const auto& acc : out)
      for (Elem x : c.orbit[i]) next.push_back(ambient_.mul(acc, c.transversal[i][x]));
    out = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

SubgroupHandle SubgroupHandle::project(std::span<const unsigned> coords) const {
  for (std::size_t i = 0; i < coords.size(); ++i)
    if (coords[i] >= ambient_.k || (i > 0 && coords[i] <= coords[i - 1]))
      throw Error(ErrorKind::invalid_input, "projection coordinates must be ascending and distinct");
  if (coords.empty()) throw Error(ErrorKind::invalid_input, "projection onto no coordinates");
  std::vector<Tuple> gens;
  gens.reserve(generators_.size());
  for (const auto& g : generators_) {
    Tuple p;
    for (unsigned c : coords) p.push_back(g[c]);
    gens.push_back(std::move(p));
  }
  return SubgroupHandle(DirectPower(ambient_.base, static_cast<unsigned>(coords.size())), std::move(gens));
}

SubgroupHandle SubgroupHandle::image(const FactorAutomorphism& g) const {
  std::vector<Tuple> gens;
  for (const auto& x : generators_) gens.push_back(g.apply(x));
  return SubgroupHandle(ambient_, std::move(gens));
}

bool SubgroupHandle::is_subdirect() const {
  for (unsigned i = 0; i < ambient_.k; ++i) {
    std::vector<Elem> proj;
    for (const auto& g : generators_) proj.push_back(g[i]);
    if (ambient_.base->subgroup_closure(proj).size() != ambient_.base->order()) return false;
  }
  return true;
}

SubgroupHandle project(const SubgroupHandle& h, std::span<const unsigned> coords) { return h.project(coords); }

bool is_subdirect(const SubgroupHandle& h) { return h.is_subdirect(); }

}  // namespace unifact
