#include "unifact/strips.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "unifact/subgroup.hpp"

namespace unifact {

FullStrip::FullStrip(GroupPtr base, std::vector<unsigned> support, std::vector<Automorphism> twists)
    : base_(std::move(base)) {
  if (support.empty()) throw Error(ErrorKind::invalid_input, "strip support is empty");
  if (support.size() != twists.size())
    throw Error(ErrorKind::invalid_input, "strip needs one twist per support coordinate");
  std::vector<std::size_t> order(support.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return support[a] < support[b]; });
  for (std::size_t i = 1; i < order.size(); ++i)
    if (support[order[i]] == support[order[i - 1]])
      throw Error(ErrorKind::invalid_input, "strip support has a repeated coordinate");
  const Automorphism back = twists[order[0]].inverse();
  for (std::size_t i : order) {
    support_.push_back(support[i]);
    twists_.push_back(back.then(twists[i]));
  }
}

FullStrip FullStrip::diagonal(GroupPtr base, std::vector<unsigned> support) {
  std::vector<Automorphism> tw(support.size(), Automorphism::identity(base));
  return FullStrip(std::move(base), std::move(support), std::move(tw));
}

const Automorphism& FullStrip::twist_at(unsigned c) const {
  auto it = std::lower_bound(support_.begin(), support_.end(), c);
  if (it == support_.end() || *it != c)
    throw Error(ErrorKind::invalid_input, "coordinate " + std::to_string(c + 1) + " is not in the strip support");
  return twists_[static_cast<std::size_t>(it - support_.begin())];
}

Automorphism FullStrip::relation(unsigned from, unsigned to) const {
  return twist_at(from).inverse().then(twist_at(to));
}

bool FullStrip::in_support(unsigned c) const { return std::binary_search(support_.begin(), support_.end(), c); }

std::uint64_t FullStrip::support_mask() const {
  std::uint64_t m = 0;
  for (unsigned c : support_) {
    if (c >= 64) throw Error(ErrorKind::cap_exceeded, "support masks need k <= 64");
    m |= std::uint64_t{1} << c;
  }
  return m;
}

Tuple FullStrip::element(unsigned k, Elem t) const {
  Tuple m(k, 0);
  for (std::size_t i = 0; i < support_.size(); ++i) m[support_[i]] = twists_[i](t);
  return m;
}

FullStrip FullStrip::image(const FactorAutomorphism& g) const {
  std::vector<unsigned> sup;
  std::vector<Automorphism> tw;
  for (std::size_t i = 0; i < support_.size(); ++i) {
    sup.push_back(g.perm[support_[i]]);
    tw.push_back(twists_[i].then(g.twists[support_[i]]));
  }
  return FullStrip(base_, std::move(sup), std::move(tw));
}

StripProduct::StripProduct(DirectPower ambient, std::vector<FullStrip> strips, std::vector<unsigned> full)
    : ambient_(std::move(ambient)), full_(std::move(full)) {
  for (auto& s : strips) {
    if (s.base() != ambient_.base) throw Error(ErrorKind::invalid_input, "strip over a different base group");
    if (s.support().size() == 1)
      full_.push_back(s.support()[0]);
    else
      strips_.push_back(std::move(s));
  }
  std::sort(strips_.begin(), strips_.end(),
            [](const FullStrip& a, const FullStrip& b) { return a.support()[0] < b.support()[0]; });
  std::sort(full_.begin(), full_.end());
  std::vector<bool> used(ambient_.k, false);
  auto mark = [&](unsigned c) {
    if (c >= ambient_.k) throw Error(ErrorKind::invalid_input, "strip coordinate " + std::to_string(c + 1) + " out of range");
    if (used[c]) throw Error(ErrorKind::invalid_input, "strip supports overlap at coordinate " + std::to_string(c + 1));
    used[c] = true;
  };
  for (const auto& s : strips_)
    for (unsigned c : s.support()) mark(c);
  for (unsigned c : full_) mark(c);
}

BigInt StripProduct::order() const { return big_pow(ambient_.base->order(), static_cast<unsigned>(parameter_count())); }

bool StripProduct::contains(const Tuple& m) const {
  if (m.size() != ambient_.k) return false;
  std::vector<bool> free(ambient_.k, false);
  for (unsigned c : full_) free[c] = true;
  for (const auto& s : strips_) {
    const Elem t = m[s.support()[0]];
    for (std::size_t i = 0; i < s.support().size(); ++i) {
      if (m[s.support()[i]] != s.twist(i)(t)) return false;
      free[s.support()[i]] = true;
    }
  }
  for (unsigned c = 0; c < ambient_.k; ++c)
    if (!free[c] && m[c] != 0) return false;
  return true;
}

bool StripProduct::is_subdirect() const {
  std::size_t covered = full_.size();
  for (const auto& s : strips_) covered += s.support().size();
  return covered == ambient_.k;
}

std::vector<unsigned> StripProduct::covered() const {
  std::vector<unsigned> out(full_);
  for (const auto& s : strips_) out.insert(out.end(), s.support().begin(), s.support().end());
  std::sort(out.begin(), out.end());
  return out;
}

Tuple StripProduct::element(std::span<const Elem> params) const {
  if (params.size() != parameter_count()) throw Error(ErrorKind::invalid_input, "wrong number of strip parameters");
  Tuple m = ambient_.identity();
  for (std::size_t i = 0; i < strips_.size(); ++i) {
    const auto& s = strips_[i];
    for (std::size_t j = 0; j < s.support().size(); ++j) m[s.support()[j]] = s.twist(j)(params[i]);
  }
  for (std::size_t i = 0; i < full_.size(); ++i) m[full_[i]] = params[strips_.size() + i];
  return m;
}

std::vector<Tuple> StripProduct::generators() const {
  std::vector<Tuple> out;
  const auto& tg = ambient_.base->generators();
  for (const auto& s : strips_)
    for (Elem t : tg) out.push_back(s.element(ambient_.k, t));
  for (unsigned c : full_)
    for (Elem t : tg) {
      Tuple m = ambient_.identity();
      m[c] = t;
      out.push_back(std::move(m));
    }
  return out;
}

LinkedSubgroup StripProduct::to_linked() const {
  std::vector<Elem> all(ambient_.base->order());
  std::iota(all.begin(), all.end(), Elem{0});
  std::vector<LinkedSubgroup::Block> blocks;
  std::vector<bool> used(ambient_.k, false);
  for (const auto& s : strips_) {
    blocks.push_back({s.support(), s.twists(), all});
    for (unsigned c : s.support()) used[c] = true;
  }
  for (unsigned c : full_) {
    blocks.push_back({{c}, {Automorphism::identity(ambient_.base)}, all});
    used[c] = true;
  }
  for (unsigned c = 0; c < ambient_.k; ++c)
    if (!used[c]) blocks.push_back({{c}, {Automorphism::identity(ambient_.base)}, {0}});
  return LinkedSubgroup(ambient_, std::move(blocks));
}

SubgroupHandle StripProduct::to_handle() const { return SubgroupHandle(ambient_, generators()); }

StripProduct StripProduct::image(const FactorAutomorphism& g) const {
  std::vector<FullStrip> strips;
  for (const auto& s : strips_) strips.push_back(s.image(g));
  std::vector<unsigned> full;
  for (unsigned c : full_) full.push_back(g.perm[c]);
  return StripProduct(ambient_, std::move(strips), std::move(full));
}

BigInt strip_product_order(const StripProduct& p) { return p.order(); }

StripProduct project(const StripProduct& p, std::span<const unsigned> coords) {
  auto l = p.to_linked().project(coords);
  auto out = as_strip_product(l);
  // Projections of strips are strips, so this cannot fail.
  return std::move(*out);
}

bool is_subdirect(const StripProduct& p) { return p.is_subdirect(); }

std::optional<StripProduct> as_strip_product(const LinkedSubgroup& l) {
  const std::size_t n = l.ambient().base->order();
  std::vector<FullStrip> strips;
  for (const auto& b : l.blocks()) {
    if (b.root_values.size() == 1) continue;
    if (b.root_values.size() != n) return std::nullopt;
    strips.emplace_back(l.ambient().base, b.coords, b.from_root);
  }
  return StripProduct(l.ambient(), std::move(strips));
}

namespace {

std::string tuple_text(const Tuple& t) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < t.size(); ++i) os << (i ? "," : "") << t[i];
  os << ')';
  return os.str();
}

}  // namespace

StripProduct scott_decompose(const SubgroupHandle& h) {
  const DirectPower& m = h.ambient();
  const FiniteGroup& t = *m.base;
  if (t.is_abelian() || !is_simple(t))
    throw Error(ErrorKind::precondition, t.name() + " is not a non-abelian simple group");
  if (!h.is_subdirect()) throw Error(ErrorKind::precondition, "subgroup is not subdirect");
  const std::size_t n = t.order();
  const unsigned k = m.k;

  std::vector<unsigned> root(k);
  std::iota(root.begin(), root.end(), 0u);
  std::vector<std::optional<Automorphism>> twist(k);
  for (unsigned i = 0; i < k; ++i) {
    if (root[i] != i) continue;
    twist[i] = Automorphism::identity(m.base);
    for (unsigned j = i + 1; j < k; ++j) {
      if (root[j] != j) continue;
      const unsigned pair[2] = {i, j};
      const SubgroupHandle p = h.project(pair);
      if (p.order() != n) continue;
      // The projection is the graph of a bijection T -> T; for simple T it is
      // an automorphism.
      std::vector<Elem> images(n);
      for (const auto& e : p.elements(n)) images[e[0]] = e[1];
      Automorphism a = Automorphism::unchecked(m.base, std::move(images));
      if (!a.as_morphism().is_homomorphism())
        throw Error(ErrorKind::precondition, "projection onto coordinates " + std::to_string(i + 1) + "," +
                                                 std::to_string(j + 1) + " is not an automorphism graph");
      root[j] = i;
      twist[j] = std::move(a);
    }
  }
  std::vector<FullStrip> strips;
  for (unsigned i = 0; i < k; ++i) {
    if (root[i] != i) continue;
    std::vector<unsigned> sup;
    std::vector<Automorphism> tw;
    for (unsigned j = i; j < k; ++j)
      if (root[j] == i) {
        sup.push_back(j);
        tw.push_back(*twist[j]);
      }
    strips.emplace_back(m.base, std::move(sup), std::move(tw));
  }
  StripProduct out(m, std::move(strips));
  for (const auto& g : h.generators())
    if (!out.contains(g))
      throw Error(ErrorKind::precondition, "recovered strip product misses generator " + tuple_text(g));
  if (out.order() != h.order()) {
    // Some strip element lies outside the subgroup.
    for (const auto& g : out.generators())
      if (!h.contains(g))
        throw Error(ErrorKind::precondition, "subgroup misses strip element " + tuple_text(g));
    throw Error(ErrorKind::precondition, "recovered strip product has the wrong order");
  }
  return out;
}

}  // namespace unifact
