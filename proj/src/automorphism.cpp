#include "unifact/automorphism.hpp"

#include <algorithm>
#include <numeric>

namespace unifact {

bool Morphism::is_homomorphism() const {
  if (map.size() != source->order()) return false;
  for (Elem x : map)
    if (x >= target->order()) return false;
  for (Elem a = 0; a < source->order(); ++a)
    for (Elem b = 0; b < source->order(); ++b)
      if (map[source->mul(a, b)] != target->mul(map[a], map[b])) return false;
  return true;
}

Automorphism Automorphism::checked(GroupPtr group, std::vector<Elem> images) {
  if (images.size() != group->order())
    throw Error(ErrorKind::invalid_input, "automorphism image array has wrong length");
  std::vector<bool> hit(images.size(), false);
  for (Elem x : images) {
    if (x >= images.size() || hit[x])
      throw Error(ErrorKind::invalid_input, "automorphism image array is not a bijection");
    hit[x] = true;
  }
  Morphism m{group, group, images};
  if (!m.is_homomorphism())
    throw Error(ErrorKind::invalid_input, "map is not a homomorphism");
  return Automorphism(std::move(group), std::move(images));
}

Automorphism Automorphism::unchecked(GroupPtr group, std::vector<Elem> images) {
  return Automorphism(std::move(group), std::move(images));
}

Automorphism Automorphism::identity(GroupPtr group) {
  std::vector<Elem> images(group->order());
  std::iota(images.begin(), images.end(), Elem{0});
  return Automorphism(std::move(group), std::move(images));
}

Automorphism Automorphism::inner(GroupPtr group, Elem x) {
  std::vector<Elem> images(group->order());
  for (Elem g = 0; g < group->order(); ++g) images[g] = group->conj(g, x);
  return Automorphism(std::move(group), std::move(images));
}

Automorphism Automorphism::then(const Automorphism& next) const {
  std::vector<Elem> images(images_.size());
  for (std::size_t g = 0; g < images_.size(); ++g) images[g] = next.images_[images_[g]];
  return Automorphism(group_, std::move(images));
}

Automorphism Automorphism::inverse() const {
  std::vector<Elem> images(images_.size());
  for (std::size_t g = 0; g < images_.size(); ++g) images[images_[g]] = static_cast<Elem>(g);
  return Automorphism(group_, std::move(images));
}

bool Automorphism::is_identity() const {
  for (std::size_t g = 0; g < images_.size(); ++g)
    if (images_[g] != g) return false;
  return true;
}

Automorphism compose_chain(const GroupPtr& group, const std::vector<Automorphism>& chain) {
  Automorphism out = Automorphism::identity(group);
  for (const auto& a : chain) out = out.then(a);
  return out;
}

namespace {

// Extends generator images to the subgroup generated by the first `depth`
// generators. Returns false when the partial map is inconsistent or not
// injective.
bool extend(const FiniteGroup& g, const std::vector<Elem>& gens, const std::vector<Elem>& imgs,
            std::size_t depth, std::vector<Elem>& map, std::vector<Elem>& used,
            std::vector<Elem>& queue) {
  constexpr Elem unset = ~Elem{0};
  std::fill(map.begin(), map.end(), unset);
  std::fill(used.begin(), used.end(), unset);
  queue.clear();
  map[0] = 0;
  used[0] = 0;
  queue.push_back(0);
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const Elem x = queue[qi];
    for (std::size_t i = 0; i < depth; ++i) {
      const Elem y = g.mul(x, gens[i]);
      const Elem v = g.mul(map[x], imgs[i]);
      if (map[y] == unset) {
        if (used[v] != unset) return false;
        map[y] = v;
        used[v] = y;
        queue.push_back(y);
      } else if (map[y] != v) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace

std::vector<Automorphism> enumerate_automorphisms(const GroupPtr& group, std::size_t cap,
                                                  std::size_t budget) {
  const FiniteGroup& g = *group;
  if (g.order() > cap)
    throw Error(ErrorKind::cap_exceeded, g.name() + " exceeds the group cap of " + std::to_string(cap));
  const std::vector<Elem>& gens = g.generators();
  std::vector<Automorphism> out;
  if (gens.empty()) {
    out.push_back(Automorphism::identity(group));
    return out;
  }
  std::vector<std::vector<Elem>> candidates(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (Elem x = 1; x < g.order(); ++x)
      if (g.element_order(x) == g.element_order(gens[i])) candidates[i].push_back(x);

  std::vector<Elem> imgs(gens.size());
  std::vector<Elem> map(g.order()), used(g.order()), queue;
  queue.reserve(g.order());
  std::vector<std::size_t> cursor(gens.size(), 0);
  std::size_t depth = 0;
  // Iterative depth-first search over generator images in lexicographic order.
  while (true) {
    if (cursor[depth] == candidates[depth].size()) {
      if (depth == 0) break;
      cursor[depth] = 0;
      --depth;
      ++cursor[depth];
      continue;
    }
    imgs[depth] = candidates[depth][cursor[depth]];
    const bool ok = extend(g, gens, imgs, depth + 1, map, used, queue);
    if (!ok) {
      ++cursor[depth];
      continue;
    }
    if (depth + 1 == gens.size()) {
      if (queue.size() == g.order()) {
        out.push_back(Automorphism::unchecked(group, map));
        if (out.size() > budget)
          throw Error(ErrorKind::budget_exceeded,
                      "Aut(" + g.name() + ") exceeds the budget of " + std::to_string(budget));
      }
      ++cursor[depth];
    } else {
      ++depth;
    }
  }
  return out;
}

UniformityReport is_uniform(const Automorphism& alpha) {
  const FiniteGroup& g = *alpha.group();
  const std::size_t n = g.order();
  constexpr Elem unset = ~Elem{0};
  std::vector<Elem> first_source(n, unset);
  UniformityReport report;
  for (Elem x = 0; x < n; ++x) {
    const Elem v = g.mul(g.inv(x), alpha(x));
    if (first_source[v] == unset) {
      first_source[v] = x;
    } else if (!report.fixed_point) {
      // x^-1 alpha(x) = h^-1 alpha(h) with h < x; then x h^-1 is fixed.
      report.fixed_point = g.mul(x, g.inv(first_source[v]));
    }
  }
  for (Elem v = 0; v < n; ++v)
    if (first_source[v] == unset) {
      report.uncovered = v;
      break;
    }
  report.uniform = !report.uncovered.has_value();
  return report;
}

std::vector<Elem> fixed_points(const Automorphism& alpha) {
  std::vector<Elem> out;
  for (Elem x = 0; x < alpha.images().size(); ++x)
    if (alpha(x) == x) out.push_back(x);
  return out;
}

std::optional<Automorphism> has_uniform_automorphism(const GroupPtr& group, std::size_t cap) {
  for (auto& a : enumerate_automorphisms(group, cap))
    if (is_uniform(a).uniform) return a;
  return std::nullopt;
}

Elem uniform_preimage(const Automorphism& alpha, Elem y) {
  const FiniteGroup& g = *alpha.group();
  for (Elem s = 0; s < g.order(); ++s)
    if (g.mul(g.inv(s), alpha(s)) == y) return s;
  throw Error(ErrorKind::precondition,
              "element " + std::to_string(y) + " is not of the form s^-1 alpha(s)");
}

namespace {

std::vector<Elem> generator_key(const FiniteGroup& g, const Automorphism& a) {
  std::vector<Elem> key;
  key.reserve(g.generators().size());
  for (Elem x : g.generators()) key.push_back(a(x));
  return key;
}

}  // namespace

AutomorphismTable::AutomorphismTable(GroupPtr group, std::size_t budget)
    : group_(std::move(group)), autos_(enumerate_automorphisms(group_, default_group_cap, budget)) {
  const FiniteGroup& g = *group_;
  const std::size_t a = autos_.size();
  // Enumeration order is lexicographic in generator images, so binary search
  // over those keys finds an index.
  auto find = [&](const Automorphism& x) {
    const auto key = generator_key(g, x);
    auto it = std::lower_bound(autos_.begin(), autos_.end(), key,
                               [&](const Automorphism& e, const std::vector<Elem>& k) {
                                 return generator_key(g, e) < k;
                               });
    return static_cast<Index>(it - autos_.begin());
  };
  for (Index i = 0; i < a; ++i)
    if (autos_[i].is_identity()) identity_ = i;
  inverse_.resize(a);
  uniform_.resize(a);
  for (Index i = 0; i < a; ++i) {
    inverse_[i] = find(autos_[i].inverse());
    uniform_[i] = is_uniform(autos_[i]).uniform ? 1 : 0;
  }
  if (a <= 1024) {
    compose_.resize(a * a);
    for (Index i = 0; i < a; ++i)
      for (Index j = 0; j < a; ++j) compose_[i * a + j] = find(autos_[i].then(autos_[j]));
  }
  if (g.order() <= 64) {
    fixed_mask_.resize(a);
    for (Index i = 0; i < a; ++i) {
      std::uint64_t m = 0;
      for (Elem x : fixed_points(autos_[i])) m |= std::uint64_t{1} << x;
      fixed_mask_[i] = m;
    }
  }
}

AutomorphismTable::Index AutomorphismTable::index_of(const Automorphism& x) const {
  const FiniteGroup& g = *group_;
  const auto key = generator_key(g, x);
  auto it = std::lower_bound(autos_.begin(), autos_.end(), key,
                             [&](const Automorphism& e, const std::vector<Elem>& k) {
                               return generator_key(g, e) < k;
                             });
  if (it == autos_.end() || !(*it == x))
    throw Error(ErrorKind::invalid_input, "map is not an automorphism of " + g.name());
  return static_cast<Index>(it - autos_.begin());
}

AutomorphismTable::Index AutomorphismTable::compose(Index i, Index j) const {
  if (!compose_.empty()) return compose_[i * autos_.size() + j];
  return index_of(autos_[i].then(autos_[j]));
}

}  // namespace unifact
