#include "unifact/linked_subgroup.hpp"

#include <algorithm>
#include <numeric>

namespace unifact {

namespace {

using Block = LinkedSubgroup::Block;

// Re-expresses a block so that its parameter is the value at its least
// coordinate. Input maps go from an arbitrary parameter to each coordinate.
Block reroot(const GroupPtr& base, Block b) {
  std::vector<std::size_t> order(b.coords.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return b.coords[i] < b.coords[j]; });
  const Automorphism& lead = b.from_root[order[0]];
  Block out;
  if (lead.is_identity()) {
    out.root_values = std::move(b.root_values);
    for (std::size_t i : order) {
      out.coords.push_back(b.coords[i]);
      out.from_root.push_back(b.from_root[i]);
    }
  } else {
    const Automorphism back = lead.inverse();
    for (Elem t : b.root_values) out.root_values.push_back(lead(t));
    std::sort(out.root_values.begin(), out.root_values.end());
    for (std::size_t i : order) {
      out.coords.push_back(b.coords[i]);
      out.from_root.push_back(back.then(b.from_root[i]));
    }
  }
  out.from_root[0] = Automorphism::identity(base);
  return out;
}

std::vector<Elem> all_elements(std::size_t n) {
  std::vector<Elem> v(n);
  std::iota(v.begin(), v.end(), Elem{0});
  return v;
}

}  // namespace

LinkedSubgroup::LinkedSubgroup(DirectPower ambient, std::vector<Block> blocks) : ambient_(std::move(ambient)) {
  const unsigned k = ambient_.k;
  std::vector<bool> seen(k, false);
  for (auto& b : blocks) {
    if (b.coords.empty() || b.coords.size() != b.from_root.size())
      throw Error(ErrorKind::invalid_input, "malformed coordinate block");
    for (unsigned c : b.coords) {
      if (c >= k || seen[c]) throw Error(ErrorKind::invalid_input, "coordinate blocks must partition the factors");
      seen[c] = true;
    }
    std::sort(b.root_values.begin(), b.root_values.end());
    if (b.root_values.empty() || b.root_values.front() != 0)
      throw Error(ErrorKind::invalid_input, "block parameter set must be a subgroup");
    Block r = reroot(ambient_.base, std::move(b));
    if (r.root_values.size() == 1) {
      for (unsigned c : r.coords)
        blocks_.push_back(Block{{c}, {Automorphism::identity(ambient_.base)}, {0}});
    } else {
      blocks_.push_back(std::move(r));
    }
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end())
    throw Error(ErrorKind::invalid_input, "coordinate blocks must cover every factor");
  std::sort(blocks_.begin(), blocks_.end(), [](const Block& a, const Block& b) { return a.coords[0] < b.coords[0]; });
}

LinkedSubgroup LinkedSubgroup::whole(const DirectPower& m) {
  std::vector<Block> blocks;
  const auto all = all_elements(m.base->order());
  for (unsigned c = 0; c < m.k; ++c) blocks.push_back(Block{{c}, {Automorphism::identity(m.base)}, all});
  return LinkedSubgroup(m, std::move(blocks));
}

LinkedSubgroup LinkedSubgroup::trivial(const DirectPower& m) {
  std::vector<Block> blocks;
  for (unsigned c = 0; c < m.k; ++c) blocks.push_back(Block{{c}, {Automorphism::identity(m.base)}, {0}});
  return LinkedSubgroup(m, std::move(blocks));
}

BigInt LinkedSubgroup::order() const {
  BigInt out = 1;
  for (const auto& b : blocks_) out *= b.root_values.size();
  return out;
}

bool LinkedSubgroup::contains(const Tuple& m) const {
  if (m.size() != ambient_.k) return false;
  for (const auto& b : blocks_) {
    const Elem t = m[b.coords[0]];
    if (!std::binary_search(b.root_values.begin(), b.root_values.end(), t)) return false;
    for (std::size_t i = 1; i < b.coords.size(); ++i)
      if (m[b.coords[i]] != b.from_root[i](t)) return false;
  }
  return true;
}

std::vector<Tuple> LinkedSubgroup::generators() const {
  std::vector<Tuple> out;
  for (const auto& b : blocks_) {
    if (b.root_values.size() == 1) continue;
    for (Elem t : ambient_.base->generating_set_of(b.root_values)) {
      Tuple m = ambient_.identity();
      for (std::size_t i = 0; i < b.coords.size(); ++i) m[b.coords[i]] = b.from_root[i](t);
      out.push_back(std::move(m));
    }
  }
  return out;
}

Tuple LinkedSubgroup::element(std::span<const Elem> roots) const {
  if (roots.size() != blocks_.size()) throw Error(ErrorKind::invalid_input, "need one root value per block");
  Tuple m = ambient_.identity();
  for (std::size_t bi = 0; bi < blocks_.size(); ++bi) {
    const auto& b = blocks_[bi];
    for (std::size_t i = 0; i < b.coords.size(); ++i) m[b.coords[i]] = b.from_root[i](roots[bi]);
  }
  return m;
}

LinkedSubgroup LinkedSubgroup::intersect(const LinkedSubgroup& other) const {
  if (!(ambient_ == other.ambient_)) throw Error(ErrorKind::invalid_input, "intersection of subgroups of different groups");
  const unsigned k = ambient_.k;
  const std::size_t n = ambient_.base->order();
  struct Edge {
    unsigned to;
    const Automorphism* map;  // value_to = map(value_from), or its inverse when `reverse`
    bool reverse;
  };
  std::vector<std::vector<Edge>> adj(k);
  for (const auto* side : {this, &other})
    for (const auto& b : side->blocks_)
      for (std::size_t i = 1; i < b.coords.size(); ++i) {
        adj[b.coords[0]].push_back({b.coords[i], &b.from_root[i], false});
        adj[b.coords[i]].push_back({b.coords[0], &b.from_root[i], true});
      }

  std::vector<std::optional<Automorphism>> psi(k);
  std::vector<std::size_t> comp(k);
  std::vector<std::vector<unsigned>> members;
  std::vector<std::vector<char>> allowed;
  for (unsigned start = 0; start < k; ++start) {
    if (psi[start]) continue;
    const std::size_t ci = members.size();
    members.emplace_back();
    allowed.emplace_back(n, 1);
    psi[start] = Automorphism::identity(ambient_.base);
    comp[start] = ci;
    std::vector<unsigned> queue{start};
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      const unsigned u = queue[qi];
      members[ci].push_back(u);
      for (const Edge& e : adj[u]) {
        if (!psi[e.to]) {
          psi[e.to] = e.reverse ? psi[u]->then(e.map->inverse()) : psi[u]->then(*e.map);
          comp[e.to] = ci;
          queue.push_back(e.to);
        } else if (!e.reverse) {
          // Cycle edge: the root value must satisfy map(psi_u(t)) = psi_to(t).
          auto& ok = allowed[ci];
          for (Elem t = 0; t < n; ++t)
            if (ok[t] && (*e.map)((*psi[u])(t)) != (*psi[e.to])(t)) ok[t] = 0;
        }
      }
    }
  }
  for (const auto* side : {this, &other})
    for (const auto& b : side->blocks_) {
      if (b.root_values.size() == n) continue;
      std::vector<char> in_f(n, 0);
      for (Elem x : b.root_values) in_f[x] = 1;
      const unsigned r = b.coords[0];
      auto& ok = allowed[comp[r]];
      for (Elem t = 0; t < n; ++t)
        if (ok[t] && !in_f[(*psi[r])(t)]) ok[t] = 0;
    }

  std::vector<Block> blocks;
  for (std::size_t ci = 0; ci < members.size(); ++ci) {
    Block b;
    for (unsigned c : members[ci]) {
      b.coords.push_back(c);
      b.from_root.push_back(*psi[c]);
    }
    for (Elem t = 0; t < n; ++t)
      if (allowed[ci][t]) b.root_values.push_back(t);
    blocks.push_back(std::move(b));
  }
  return LinkedSubgroup(ambient_, std::move(blocks));
}

LinkedSubgroup LinkedSubgroup::project(std::span<const unsigned> coords) const {
  if (coords.empty()) throw Error(ErrorKind::invalid_input, "projection onto no coordinates");
  std::vector<int> pos(ambient_.k, -1);
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (coords[i] >= ambient_.k || pos[coords[i]] != -1 || (i > 0 && coords[i] <= coords[i - 1]))
      throw Error(ErrorKind::invalid_input, "projection coordinates must be ascending and distinct");
    pos[coords[i]] = static_cast<int>(i);
  }
  std::vector<Block> blocks;
  for (const auto& b : blocks_) {
    Block nb;
    for (std::size_t i = 0; i < b.coords.size(); ++i)
      if (pos[b.coords[i]] >= 0) {
        nb.coords.push_back(static_cast<unsigned>(pos[b.coords[i]]));
        nb.from_root.push_back(b.from_root[i]);
      }
    if (nb.coords.empty()) continue;
    nb.root_values = b.root_values;
    blocks.push_back(std::move(nb));
  }
  return LinkedSubgroup(DirectPower(ambient_.base, static_cast<unsigned>(coords.size())), std::move(blocks));
}

LinkedSubgroup LinkedSubgroup::image(const FactorAutomorphism& g) const {
  std::vector<Block> blocks;
  for (const auto& b : blocks_) {
    Block nb;
    nb.root_values = b.root_values;
    for (std::size_t i = 0; i < b.coords.size(); ++i) {
      nb.coords.push_back(g.perm[b.coords[i]]);
      nb.from_root.push_back(b.from_root[i].then(g.twists[b.coords[i]]));
    }
    blocks.push_back(std::move(nb));
  }
  return LinkedSubgroup(ambient_, std::move(blocks));
}

bool LinkedSubgroup::is_subdirect() const {
  for (const auto& b : blocks_)
    if (b.root_values.size() != ambient_.base->order()) return false;
  return true;
}

std::vector<Tuple> LinkedSubgroup::elements(std::size_t cap) const {
  if (order() > cap) throw Error(ErrorKind::cap_exceeded, "subgroup has more than " + std::to_string(cap) + " elements");
  std::vector<Tuple> out;
  std::vector<std::size_t> idx(blocks_.size(), 0);
  std::vector<Elem> roots(blocks_.size(), 0);
  while (true) {
    for (std::size_t i = 0; i < blocks_.size(); ++i) roots[i] = blocks_[i].root_values[idx[i]];
    out.push_back(element(roots));
    std::size_t i = 0;
    while (i < blocks_.size() && ++idx[i] == blocks_[i].root_values.size()) idx[i++] = 0;
    if (i == blocks_.size()) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool operator==(const LinkedSubgroup& a, const LinkedSubgroup& b) {
  if (!(a.ambient_ == b.ambient_) || a.blocks_.size() != b.blocks_.size()) return false;
  for (std::size_t i = 0; i < a.blocks_.size(); ++i) {
    const auto& x = a.blocks_[i];
    const auto& y = b.blocks_[i];
    if (x.coords != y.coords || x.root_values != y.root_values) return false;
    for (std::size_t j = 1; j < x.coords.size(); ++j)
      for (Elem t : x.root_values)
        if (x.from_root[j](t) != y.from_root[j](t)) return false;
  }
  return true;
}

BigInt product_order(const LinkedSubgroup& x, const LinkedSubgroup& y) {
  return x.order() * y.order() / x.intersect(y).order();
}

}  // namespace unifact
