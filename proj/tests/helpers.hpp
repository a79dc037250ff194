#pragma once

#include <algorithm>
#include <set>
#include <vector>

#include "unifact/automorphism.hpp"
#include "unifact/direct_power.hpp"
#include "unifact/rng.hpp"
#include "unifact/strips.hpp"

namespace testing {

using namespace unifact;

// Plain BFS closure of a set of tuples; deliberately independent of the
// stabilizer chain.
inline std::set<Tuple> brute_closure(const DirectPower& m, const std::vector<Tuple>& gens) {
  std::set<Tuple> seen{m.identity()};
  std::vector<Tuple> queue{m.identity()};
  for (std::size_t qi = 0; qi < queue.size(); ++qi)
    for (const auto& g : gens) {
      Tuple y = m.mul(queue[qi], g);
      if (seen.insert(y).second) queue.push_back(std::move(y));
    }
  return seen;
}

inline std::set<Tuple> brute_product(const DirectPower& m, const std::set<Tuple>& x, const std::set<Tuple>& y) {
  std::set<Tuple> out;
  for (const auto& a : x)
    for (const auto& b : y) out.insert(m.mul(a, b));
  return out;
}

inline std::set<Tuple> brute_elements(const StripProduct& p) {
  return brute_closure(p.ambient(), p.generators());
}

// Random strip product: a random set partition of the coordinates, random
// twists; singleton blocks become full coordinates or stay uncovered unless
// `subdirect` is set.
inline StripProduct random_strip_product(const DirectPower& m, const std::vector<Automorphism>& autos, Xoshiro256& rng,
                                         bool subdirect) {
  std::vector<unsigned> label(m.k);
  for (auto& l : label) l = static_cast<unsigned>(rng.below(m.k));
  std::vector<FullStrip> strips;
  std::vector<unsigned> full;
  for (unsigned b = 0; b < m.k; ++b) {
    std::vector<unsigned> sup;
    for (unsigned c = 0; c < m.k; ++c)
      if (label[c] == b) sup.push_back(c);
    if (sup.empty()) continue;
    if (sup.size() == 1) {
      if (subdirect || rng.below(2) == 0) full.push_back(sup[0]);
      continue;
    }
    std::vector<Automorphism> tw;
    for (std::size_t i = 0; i < sup.size(); ++i) tw.push_back(autos[rng.below(autos.size())]);
    strips.emplace_back(m.base, sup, tw);
  }
  return StripProduct(m, std::move(strips), std::move(full));
}

inline Elem element_of_order(const FiniteGroup& g, unsigned n) {
  for (Elem x = 0; x < g.order(); ++x)
    if (g.element_order(x) == n) return x;
  return 0;
}

}  // namespace testing
