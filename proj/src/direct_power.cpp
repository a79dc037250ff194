#include "unifact/direct_power.hpp"

#include <limits>
#include <numeric>

namespace unifact {

BigInt big_pow(std::size_t base, unsigned exponent) {
  BigInt out = 1;
  for (unsigned i = 0; i < exponent; ++i) out *= base;
  return out;
}

DirectPower::DirectPower(GroupPtr b, unsigned kk) : base(std::move(b)), k(kk) {
  if (!base) throw Error(ErrorKind::invalid_input, "direct power needs a base group");
  if (k == 0) throw Error(ErrorKind::invalid_input, "direct power needs k >= 1");
}

Tuple DirectPower::mul(const Tuple& a, const Tuple& b) const {
  Tuple out(k);
  for (unsigned i = 0; i < k; ++i) out[i] = base->mul(a[i], b[i]);
  return out;
}

Tuple DirectPower::inv(const Tuple& a) const {
  Tuple out(k);
  for (unsigned i = 0; i < k; ++i) out[i] = base->inv(a[i]);
  return out;
}

bool DirectPower::is_identity(const Tuple& a) {
  for (Elem x : a)
    if (x != 0) return false;
  return true;
}

bool DirectPower::fits_code() const {
  return order() <= BigInt(std::numeric_limits<std::uint64_t>::max());
}

std::uint64_t DirectPower::encode(const Tuple& a) const {
  std::uint64_t code = 0;
  const std::uint64_t n = base->order();
  for (unsigned i = 0; i < k; ++i) code = code * n + a[i];
  return code;
}

Tuple DirectPower::decode(std::uint64_t code) const {
  Tuple out(k);
  const std::uint64_t n = base->order();
  for (unsigned i = k; i-- > 0;) {
    out[i] = static_cast<Elem>(code % n);
    code /= n;
  }
  return out;
}

FactorAutomorphism FactorAutomorphism::identity(const DirectPower& m) {
  std::vector<unsigned> perm(m.k);
  std::iota(perm.begin(), perm.end(), 0u);
  return permutation(m, std::move(perm));
}

FactorAutomorphism FactorAutomorphism::permutation(const DirectPower& m, std::vector<unsigned> perm) {
  if (perm.size() != m.k) throw Error(ErrorKind::invalid_input, "factor permutation has wrong length");
  std::vector<bool> seen(m.k, false);
  for (unsigned p : perm) {
    if (p >= m.k || seen[p]) throw Error(ErrorKind::invalid_input, "factor map is not a permutation");
    seen[p] = true;
  }
  FactorAutomorphism out;
  out.perm = std::move(perm);
  out.twists.assign(m.k, Automorphism::identity(m.base));
  return out;
}

Tuple FactorAutomorphism::apply(const Tuple& m) const {
  Tuple out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) out[perm[i]] = twists[i](m[i]);
  return out;
}

FactorAutomorphism FactorAutomorphism::then(const FactorAutomorphism& next) const {
  FactorAutomorphism out;
  out.perm.resize(perm.size());
  out.twists.reserve(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    out.perm[i] = next.perm[perm[i]];
    out.twists.push_back(twists[i].then(next.twists[perm[i]]));
  }
  return out;
}

FactorAutomorphism FactorAutomorphism::inverse() const {
  FactorAutomorphism out;
  out.perm.resize(perm.size());
  std::vector<std::optional<Automorphism>> tw(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    out.perm[perm[i]] = static_cast<unsigned>(i);
    tw[perm[i]] = twists[i].inverse();
  }
  for (auto& t : tw) out.twists.push_back(std::move(*t));
  return out;
}

bool FactorAutomorphism::is_pure_permutation() const {
  for (const auto& t : twists)
    if (!t.is_identity()) return false;
  return true;
}

bool acts_transitively_on_factors(unsigned k, std::span<const FactorAutomorphism> gens) {
  std::vector<bool> seen(k, false);
  std::vector<unsigned> queue{0};
  seen[0] = true;
  for (std::size_t qi = 0; qi < queue.size(); ++qi)
    for (const auto& g : gens) {
      const unsigned j = g.perm[queue[qi]];
      if (!seen[j]) {
        seen[j] = true;
        queue.push_back(j);
      }
    }
  return queue.size() == k;
}

}  // namespace unifact
