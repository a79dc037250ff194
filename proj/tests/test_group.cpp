#include <doctest.h>

#include <algorithm>
#include <set>

#include "unifact/automorphism.hpp"
#include "unifact/group.hpp"

using namespace unifact;

namespace {

// Brute-force image of g -> g^-1 alpha(g).
std::set<Elem> twisted_image(const Automorphism& a) {
  const auto& g = *a.group();
  std::set<Elem> out;
  for (Elem x = 0; x < g.order(); ++x) out.insert(g.mul(g.inv(x), a(x)));
  return out;
}

std::vector<GroupPtr> small_corpus() {
  std::vector<GroupPtr> out;
  for (auto spec : {"cyclic:2", "cyclic:3", "cyclic:5", "cyclic:9", "product:cyclic:3,cyclic:3", "symmetric:3",
                    "dihedral:4", "alternating:4", "symmetric:4", "alternating:5"})
    out.push_back(make_group(parse_group_spec(spec)));
  return out;
}

}  // namespace

TEST_CASE("built-in groups have the expected orders") {
  auto c3 = make_group(GroupSpec::cyclic(3));
  CHECK(c3->order() == 3);
  for (Elem x = 1; x < 3; ++x) CHECK(c3->element_order(x) == 3);
  CHECK(make_group(GroupSpec::alternating(5))->order() == 60);
  CHECK(make_group(GroupSpec::symmetric(4))->order() == 24);
  CHECK(make_group(GroupSpec::dihedral(4))->order() == 8);
  auto c33 = make_group(parse_group_spec("product:cyclic:3,cyclic:3"));
  CHECK(c33->order() == 9);
  CHECK(c33->exponent() == 3);
  auto big = make_group(parse_group_spec("product:alternating:5,cyclic:2"));
  CHECK(big->order() == 120);
}

TEST_CASE("group axioms hold for every corpus group") {
  for (const auto& g : small_corpus()) {
    INFO(g->name());
    CHECK(satisfies_group_axioms(*g));
    CHECK(g->subgroup_closure(g->generators()).size() == g->order());
  }
}

TEST_CASE("group spec grammar") {
  CHECK(describe(parse_group_spec("cyclic:9")) == "C9");
  CHECK(describe(parse_group_spec("product:cyclic:3,cyclic:3")) == "C3xC3");
  CHECK(make_group(parse_group_spec(R"({"kind":"alternating","n":5})"))->order() == 60);
  CHECK(make_group(parse_group_spec(R"({"kind":"perm","degree":3,"generators":[[1,2,0],[1,0,2]]})"))->order() == 6);
  CHECK_THROWS_AS(parse_group_spec("cyclic"), Error);
  CHECK_THROWS_AS(parse_group_spec("blob:3"), Error);
  CHECK_THROWS_AS(parse_group_spec("cyclic:x"), Error);
}

TEST_CASE("table construction reports distinct errors") {
  auto kind_of = [](std::vector<std::vector<Elem>> t, std::size_t cap = default_group_cap) {
    try {
      FiniteGroup::from_table(std::move(t), "t", cap);
    } catch (const Error& e) {
      return e.kind();
    }
    FAIL("no error raised");
    return ErrorKind::precondition;
  };
  // Latin square with identity 0 that is not associative (order 5 loop).
  std::vector<std::vector<Elem>> loop = {
      {0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
  CHECK(kind_of(loop) == ErrorKind::non_associative);
  CHECK(kind_of({{0, 1}, {1, 1}}) == ErrorKind::not_a_group);
  CHECK(kind_of({{0, 1}, {1, 0}}, 1) == ErrorKind::cap_exceeded);
  CHECK_THROWS_AS(make_group(GroupSpec::symmetric(8)), Error);
  auto g = FiniteGroup::from_table({{1, 0}, {0, 1}}, "relabelled");
  CHECK(g->mul(0, 0) == 0);
  CHECK(g->mul(1, 1) == 0);
}

TEST_CASE("automorphism counts") {
  CHECK(enumerate_automorphisms(make_group(GroupSpec::cyclic(3))).size() == 2);
  CHECK(enumerate_automorphisms(make_group(GroupSpec::cyclic(2))).size() == 1);
  CHECK(enumerate_automorphisms(make_group(GroupSpec::symmetric(3))).size() == 6);
  CHECK(enumerate_automorphisms(make_group(GroupSpec::cyclic(9))).size() == 6);
  CHECK(enumerate_automorphisms(make_group(parse_group_spec("product:cyclic:3,cyclic:3"))).size() == 48);
  CHECK(enumerate_automorphisms(make_group(GroupSpec::dihedral(4))).size() == 8);
  CHECK(enumerate_automorphisms(make_group(GroupSpec::symmetric(4))).size() == 24);
}

TEST_CASE("Aut(A5) has 120 elements, 60 of them inner") {
  auto a5 = make_group(GroupSpec::alternating(5));
  auto autos = enumerate_automorphisms(a5);
  CHECK(autos.size() == 120);
  std::set<std::vector<Elem>> inner;
  for (Elem x = 0; x < a5->order(); ++x) inner.insert(Automorphism::inner(a5, x).images());
  CHECK(inner.size() == 60);
  std::set<std::vector<Elem>> all;
  for (const auto& a : autos) all.insert(a.images());
  CHECK(all.size() == 120);
  for (const auto& i : inner) CHECK(all.count(i) == 1);
  // Outer part has order 2: the square of every automorphism is inner.
  for (const auto& a : autos) CHECK(inner.count(a.then(a).images()) == 1);
  for (const auto& a : autos) CHECK(a.as_morphism().is_homomorphism());
}

TEST_CASE("automorphisms form a group and are ordered by generator images") {
  for (const auto& g : small_corpus()) {
    INFO(g->name());
    auto autos = enumerate_automorphisms(g);
    std::set<std::vector<Elem>> all;
    for (const auto& a : autos) all.insert(a.images());
    CHECK(all.size() == autos.size());
    CHECK(all.count(Automorphism::identity(g).images()) == 1);
    for (const auto& a : autos) {
      CHECK(all.count(a.inverse().images()) == 1);
      for (const auto& b : autos) CHECK(all.count(a.then(b).images()) == 1);
    }
    auto key = [&](const Automorphism& a) {
      std::vector<Elem> k;
      for (Elem x : g->generators()) k.push_back(a(x));
      return k;
    };
    for (std::size_t i = 1; i < autos.size(); ++i) CHECK(key(autos[i - 1]) < key(autos[i]));
  }
}

TEST_CASE("uniformity") {
  auto c3 = make_group(GroupSpec::cyclic(3));
  auto inversion = Automorphism::checked(c3, {0, 2, 1});
  CHECK(is_uniform(inversion).uniform);
  auto id = Automorphism::identity(c3);
  auto r = is_uniform(id);
  CHECK_FALSE(r.uniform);
  CHECK(twisted_image(id) == std::set<Elem>{0});
  REQUIRE(r.fixed_point);
  CHECK(*r.fixed_point != 0);
  CHECK(fixed_points(inversion) == std::vector<Elem>{0});
  CHECK(fixed_points(id).size() == 3);

  auto c5 = make_group(GroupSpec::cyclic(5));
  auto u = has_uniform_automorphism(c5);
  REQUIRE(u);
  CHECK(twisted_image(*u).size() == 5);
  CHECK_FALSE(has_uniform_automorphism(make_group(GroupSpec::symmetric(3))));
  CHECK_FALSE(has_uniform_automorphism(make_group(GroupSpec::alternating(5))));
}

TEST_CASE("uniform iff fixed-point-free, with witnesses") {
  for (const auto& g : small_corpus()) {
    INFO(g->name());
    for (const auto& a : enumerate_automorphisms(g)) {
      const auto r = is_uniform(a);
      const bool surjective = twisted_image(a).size() == g->order();
      CHECK(r.uniform == surjective);
      CHECK(r.uniform == (fixed_points(a) == std::vector<Elem>{0}));
      if (!r.uniform) {
        REQUIRE(r.uncovered);
        CHECK(twisted_image(a).count(*r.uncovered) == 0);
        REQUIRE(r.fixed_point);
        CHECK(*r.fixed_point != 0);
        CHECK(a(*r.fixed_point) == *r.fixed_point);
      }
    }
  }
}

TEST_CASE("fixed points of a 5-cycle conjugation form its centralizer") {
  auto a5 = make_group(GroupSpec::alternating(5));
  Elem five = 0;
  for (Elem x = 0; x < a5->order(); ++x)
    if (a5->element_order(x) == 5) {
      five = x;
      break;
    }
  auto conj = Automorphism::inner(a5, five);
  std::vector<Elem> brute;
  for (Elem y = 0; y < a5->order(); ++y)
    if (a5->mul(y, five) == a5->mul(five, y)) brute.push_back(y);
  CHECK(fixed_points(conj) == brute);
  CHECK(brute.size() == 5);
  CHECK(centralizer(*a5, five) == brute);
}

TEST_CASE("solvability and simplicity") {
  CHECK(is_solvable(*make_group(GroupSpec::symmetric(4))));
  CHECK_FALSE(is_solvable(*make_group(GroupSpec::alternating(5))));
  CHECK(is_solvable(*make_group(GroupSpec::cyclic(9))));
  CHECK_FALSE(is_solvable(*make_group(GroupSpec::symmetric(5))));
  CHECK(is_simple(*make_group(GroupSpec::alternating(5))));
  CHECK(is_simple(*make_group(GroupSpec::cyclic(5))));
  CHECK_FALSE(is_simple(*make_group(GroupSpec::alternating(4))));
  CHECK_FALSE(is_simple(*make_group(GroupSpec::symmetric(5))));
  auto s4 = make_group(GroupSpec::symmetric(4));
  std::vector<Elem> all(s4->order());
  for (Elem x = 0; x < all.size(); ++x) all[x] = x;
  CHECK(derived_subgroup(*s4, all).size() == 12);
  std::size_t classes = conjugacy_classes(*make_group(GroupSpec::alternating(5))).size();
  CHECK(classes == 5);
}

TEST_CASE("uniform preimage is the least solution") {
  auto c9 = make_group(GroupSpec::cyclic(9));
  std::vector<Elem> inv(9);
  for (Elem x = 0; x < 9; ++x) inv[x] = c9->inv(x);
  auto alpha = Automorphism::checked(c9, inv);
  for (Elem y = 0; y < 9; ++y) {
    const Elem s = uniform_preimage(alpha, y);
    CHECK(c9->mul(c9->inv(s), alpha(s)) == y);
    for (Elem t = 0; t < s; ++t) CHECK(c9->mul(c9->inv(t), alpha(t)) != y);
  }
  auto c3 = make_group(GroupSpec::cyclic(3));
  CHECK(uniform_preimage(Automorphism::checked(c3, {0, 2, 1}), 0) == 0);
  CHECK_THROWS_AS(uniform_preimage(Automorphism::identity(c3), 1), Error);
}

TEST_CASE("automorphism table agrees with direct composition") {
  for (auto spec : {"symmetric:3", "alternating:4", "alternating:5"}) {
    auto g = make_group(parse_group_spec(spec));
    AutomorphismTable t(g);
    CHECK(t.has_compose_table());
    CHECK(t.has_masks());
    CHECK(t[t.identity_index()].is_identity());
    for (AutomorphismTable::Index i = 0; i < t.size(); ++i) {
      CHECK(t[t.inverse(i)] == t[i].inverse());
      CHECK(t.uniform(i) == is_uniform(t[i]).uniform);
      std::uint64_t mask = 0;
      for (Elem x : fixed_points(t[i])) mask |= std::uint64_t{1} << x;
      CHECK(t.fixed_mask(i) == mask);
      for (AutomorphismTable::Index j = 0; j < t.size(); j += 7) CHECK(t[t.compose(i, j)] == t[i].then(t[j]));
    }
  }
}

TEST_CASE("checked automorphisms reject bad maps") {
  auto c3 = make_group(GroupSpec::cyclic(3));
  CHECK_THROWS_AS(Automorphism::checked(c3, {0, 1}), Error);
  CHECK_THROWS_AS(Automorphism::checked(c3, {0, 1, 1}), Error);
  CHECK_THROWS_AS(Automorphism::checked(c3, {1, 0, 2}), Error);
}
