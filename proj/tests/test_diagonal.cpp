#include <doctest.h>

#include <map>

#include "helpers.hpp"
#include "unifact/diagonal.hpp"

using namespace unifact;

namespace {

GroupPtr a5() {
  static GroupPtr g = make_group(GroupSpec::alternating(5));
  return g;
}

FullStrip diag(std::vector<unsigned> s) { return FullStrip::diagonal(a5(), std::move(s)); }

StripProduct strips(unsigned k, std::vector<FullStrip> s) { return StripProduct(DirectPower(a5(), k), std::move(s)); }

bool structural(const DiagonalAction& d) { return check_structural_quasiprimitivity(d).passes(); }

}  // namespace

TEST_CASE("diagonal actions over A5") {
  SUBCASE("k = 2, one strip") {
    DiagonalAction d(strips(2, {diag({0, 1})}));
    CHECK(d.points() == 60);
    CHECK(d.is_simple_type());
    CHECK(check_action_axioms(d).ok());
    CHECK(structural(d));
  }
  SUBCASE("k = 3, one strip") {
    DiagonalAction d(strips(3, {diag({0, 1, 2})}), std::vector<std::vector<unsigned>>{{1, 2, 0}});
    CHECK(d.points() == 3600);
    CHECK(d.is_simple_type());
    const auto ax = check_action_axioms(d);
    CHECK(ax.ok());
    const auto s = check_structural_quasiprimitivity(d);
    CHECK(s.m_transitive);
    CHECK(s.top_transitive_on_factors);
    CHECK(s.stabilizer_subdirect);
    // Default top group is all of S_3.
    DiagonalAction full(strips(3, {diag({0, 1, 2})}));
    CHECK(normalizing_permutations(full.stabilizer()).size() == 6);
    CHECK(structural(full));
  }
  SUBCASE("k = 4, strips {1,2} and {3,4}") {
    DiagonalAction d(strips(4, {diag({0, 1}), diag({2, 3})}));
    CHECK(d.points() == 3600);
    CHECK_FALSE(d.is_simple_type());
    CHECK(normalizing_permutations(d.stabilizer()).size() == 8);
    CHECK(check_action_axioms(d).ok());
    CHECK(structural(d));
  }
  SUBCASE("trivial top group") {
    DiagonalAction d(strips(3, {diag({0, 1, 2})}), std::vector<std::vector<unsigned>>{});
    const auto s = check_structural_quasiprimitivity(d);
    CHECK(s.m_transitive);
    CHECK_FALSE(s.top_transitive_on_factors);
    CHECK_FALSE(s.passes());
  }
}

TEST_CASE("point count is |T|^(k - strips)") {
  const auto autos = enumerate_automorphisms(a5());
  Xoshiro256 rng(4);
  for (unsigned k = 2; k <= 5; ++k) {
    // Every partition of k into blocks of size >= 2, random twists.
    for (const auto& label : strip_shapes(k)) {
      if (std::count(label.begin(), label.end(), 0u)) continue;
      std::map<unsigned, std::vector<unsigned>> blocks;
      for (unsigned c = 0; c < k; ++c) blocks[label[c]].push_back(c);
      std::vector<FullStrip> ss;
      for (auto& [_, sup] : blocks) {
        std::vector<Automorphism> tw{Automorphism::identity(a5())};
        for (std::size_t i = 1; i < sup.size(); ++i) tw.push_back(autos[rng.below(autos.size())]);
        ss.emplace_back(a5(), sup, tw);
      }
      const auto r = static_cast<unsigned>(ss.size());
      if (k - r > 3) continue;
      DiagonalAction d(strips(k, ss), std::vector<std::vector<unsigned>>{});
      std::uint64_t expect = 1;
      for (unsigned i = 0; i < k - r; ++i) expect *= 60;
      CHECK(d.points() == expect);
      if (d.points() <= 3600) CHECK(check_action_axioms(d).ok());
    }
  }
}

TEST_CASE("coset ids agree with brute-force cosets") {
  const auto autos = enumerate_automorphisms(a5());
  const Automorphism phi = autos[37];
  StripProduct stab = strips(2, {FullStrip(a5(), {0, 1}, {Automorphism::identity(a5()), phi})});
  DiagonalAction d(stab, std::vector<std::vector<unsigned>>{});
  const auto elements = testing::brute_elements(stab);
  REQUIRE(elements.size() == 60);
  const DirectPower& m = stab.ambient();
  std::map<Point, Tuple> least;
  for (Elem a = 0; a < 60; ++a)
    for (Elem b = 0; b < 60; ++b) {
      const Tuple x{a, b};
      const Point p = d.point_of(x);
      // Every element of the coset gets the same id, and the stored
      // representative is the least tuple of the coset.
      Tuple lo = x;
      for (const auto& s : elements) {
        const Tuple y = m.mul(s, x);
        CHECK(d.point_of(y) == p);
        lo = std::min(lo, y);
      }
      CHECK(d.representative(p) == lo);
      least.emplace(p, lo);
    }
  CHECK(least.size() == 60);
}

TEST_CASE("diagonal action input checks") {
  CHECK_THROWS_AS(DiagonalAction(strips(3, {diag({0, 1})})), Error);
  try {
    DiagonalAction(strips(3, {diag({0, 1})}));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::invalid_input);
  }
  try {
    DiagonalAction(strips(5, {diag({0, 1, 2, 3, 4})}));
    FAIL("expected cap error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::cap_exceeded);
  }
  try {
    DiagonalAction(strips(4, {diag({0, 1}), diag({2, 3})}), std::vector<std::vector<unsigned>>{{1, 2, 3, 0}});
    FAIL("expected normalizer error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::invalid_input);
  }
  auto s3 = make_group(GroupSpec::symmetric(3));
  try {
    DiagonalAction(StripProduct(DirectPower(s3, 2), {FullStrip::diagonal(s3, {0, 1})}));
    FAIL("expected precondition");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::precondition);
  }
}

TEST_CASE("product action wreath") {
  SUBCASE("gamma 2, l 2") {
    auto [w, a] = build_wreath_product_action(2, 2, {}, {{1, 0}});
    CHECK(w.degree() == 4);
    CHECK(a.generators[0] == std::vector<Point>{0, 2, 1, 3});
  }
  SUBCASE("gamma 60, l 2") {
    ProductActionWreath w(60, 2);
    CHECK(w.degree() == 3600);
    const auto id = w.identity();
    for (Point p = 0; p < w.degree(); ++p) CHECK(w.act(p, id) == p);
    CHECK(w.decode(61) == std::vector<Point>{1, 1});
  }
  SUBCASE("input checks") {
    CHECK_THROWS_AS(ProductActionWreath(1, 2), Error);
    CHECK_THROWS_AS(ProductActionWreath(2, 1), Error);
    CHECK_THROWS_AS(ProductActionWreath(60, 4), Error);
    ProductActionWreath w(3, 2);
    CHECK_THROWS_AS(w.validate({{{0, 0, 1}, {}}, {0, 1}}), Error);
    CHECK_THROWS_AS(w.validate({{{}, {}}, {0, 0}}), Error);
  }
  SUBCASE("coordinate i of the image comes from coordinate sigma^-1(i)") {
    Xoshiro256 rng(6);
    ProductActionWreath w(4, 3);
    auto random_elem = [&]() {
      WreathElement g;
      for (unsigned i = 0; i < 3; ++i) {
        std::vector<Point> p{0, 1, 2, 3};
        for (unsigned j = 3; j > 0; --j) std::swap(p[j], p[rng.below(j + 1)]);
        g.base.push_back(p);
      }
      g.top = {0, 1, 2};
      for (unsigned j = 2; j > 0; --j) std::swap(g.top[j], g.top[rng.below(j + 1)]);
      return g;
    };
    for (int trial = 0; trial < 50; ++trial) {
      const auto g = random_elem(), h = random_elem();
      std::vector<unsigned> inv(3);
      for (unsigned j = 0; j < 3; ++j) inv[g.top[j]] = j;
      for (Point p = 0; p < w.degree(); ++p) {
        const auto c = w.decode(p);
        std::vector<Point> expect(3);
        for (unsigned i = 0; i < 3; ++i) expect[i] = g.base[inv[i]][c[inv[i]]];
        CHECK(w.decode(w.act(p, g)) == expect);
        CHECK(w.act(w.act(p, g), h) == w.act(p, w.multiply(g, h)));
      }
    }
  }
}

TEST_CASE("compound embedding") {
  SUBCASE("A5^4, strips {1,2} {3,4}") {
    DiagonalAction d(strips(4, {diag({0, 1}), diag({2, 3})}));
    EquivarianceReport r;
    const auto w = embed_compound(d, 0, 0, &r);
    CHECK(w.delta == 60);
    CHECK(w.r == 2);
    CHECK(r.ok());
    CHECK_FALSE(r.sampled);
    CHECK(r.checks == 3600 * d.generators().size());
    // JSON round trip.
    const auto back = embedding_witness_from_json(Json::parse(to_json(w).dump()));
    CHECK(verify_embedding(d, back).ok());
    CHECK(back.blocks == w.blocks);
    // A tampered bijection is caught.
    auto bad = w;
    std::swap(bad.bijection[0], bad.bijection[1]);
    const auto rb = verify_embedding(d, bad);
    CHECK(rb.bijective);
    CHECK(rb.failures > 0);
    bad.bijection[0] = bad.bijection[2];
    CHECK_FALSE(verify_embedding(d, bad).bijective);
  }
  SUBCASE("interleaved and twisted strips") {
    const auto autos = enumerate_automorphisms(a5());
    const Automorphism phi = autos[11];
    const auto id = Automorphism::identity(a5());
    DiagonalAction d(strips(4, {FullStrip(a5(), {0, 2}, {id, phi}), FullStrip(a5(), {1, 3}, {id, phi})}));
    CHECK(structural(d));
    EquivarianceReport r;
    const auto w = embed_compound(d, 0, 0, &r);
    CHECK(r.ok());
    CHECK(w.blocks == std::vector<std::vector<unsigned>>{{0, 2}, {1, 3}});
  }
  SUBCASE("A5^6, three strips, sampled") {
    DiagonalAction d(strips(6, {diag({0, 1}), diag({2, 3}), diag({4, 5})}));
    CHECK(d.points() == 216000);
    EquivarianceReport r;
    const auto w = embed_compound(d, 10000, 0, &r);
    CHECK(w.r == 3);
    CHECK(r.sampled);
    CHECK(r.checks == 10000);
    CHECK(r.failures == 0);
  }
  SUBCASE("simple type refuses") {
    DiagonalAction d(strips(3, {diag({0, 1, 2})}));
    try {
      embed_compound(d);
      FAIL("expected simple type error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::precondition);
      CHECK(std::string(e.what()).find("simple type") != std::string::npos);
    }
  }
  SUBCASE("unequal strips refuse") {
    DiagonalAction d(strips(5, {diag({0, 1}), diag({2, 3, 4})}));
    CHECK_FALSE(structural(d));
    CHECK_THROWS_AS(embed_compound(d), Error);
  }
}

TEST_CASE("invariant cartesian decompositions of diagonal actions") {
  SUBCASE("simple A5^3 with rotation") {
    DiagonalAction d(strips(3, {diag({0, 1, 2})}), std::vector<std::vector<unsigned>>{{1, 2, 0}});
    const auto s = search_invariant_cartesian_decompositions(d);
    CHECK(s.simple_type);
    CHECK(s.decompositions.empty());
    CHECK(s.stats.candidates == 4);
  }
  SUBCASE("simple A5^2") {
    DiagonalAction d(strips(2, {diag({0, 1})}));
    CHECK(search_invariant_cartesian_decompositions(d).decompositions.empty());
  }
  SUBCASE("compound A5^4 matches the embedding") {
    DiagonalAction d(strips(4, {diag({0, 1}), diag({2, 3})}));
    const auto s = search_invariant_cartesian_decompositions(d);
    CHECK_FALSE(s.simple_type);
    REQUIRE(s.decompositions.size() == 1);
    // K_i is the stabilizer of coordinate value 0 under pi_i of the embedding:
    // a generator of M lies in K_i iff its base entry i fixes 0.
    const auto w = embed_compound(d);
    const DirectPower& m = d.ambient();
    for (unsigned i = 0; i < 2; ++i) {
      const auto& k = s.decompositions[0].factors()[i];
      for (std::size_t g = 0; g < d.m_generator_count(); ++g) {
        const auto& b = w.images[g].base[i];
        const bool fixes = b.empty() || b[0] == 0;
        CHECK(k.contains(d.generators()[g].m) == fixes);
      }
      CHECK(k.order() == m.order() / 60);
    }
  }
}

TEST_CASE("base group containment") {
  SUBCASE("compound A5^4 in Sym(60) wr S_2") {
    DiagonalAction d(strips(4, {diag({0, 1}), diag({2, 3})}));
    const auto w = embed_compound(d);
    std::vector<WreathElement> mg(w.images.begin(), w.images.begin() + static_cast<long>(d.m_generator_count()));
    ProductActionWreath wr(60, 2);
    const auto r = check_base_group_containment(wr, mg, d.ambient().order());
    CHECK(r.transitive);
    CHECK(r.direct_pi_trivial);
    CHECK(r.divisibility_forces_kernel);
    CHECK(r.consistent);
    REQUIRE(r.primes.size() == 3);
    for (const auto& p : r.primes) {
      CHECK(p.divides_omega);
      CHECK_FALSE(p.divides_ell_factorial);
    }
  }
  SUBCASE("intransitive group, claim not made") {
    ProductActionWreath w(2, 2);
    WreathElement swap = w.identity();
    swap.top = {1, 0};
    const auto r = check_base_group_containment(w, {swap}, 2);
    CHECK_FALSE(r.transitive);
    CHECK_FALSE(r.direct_pi_trivial);
    CHECK_FALSE(r.divisibility_forces_kernel);
    CHECK(r.consistent);
  }
  SUBCASE("p = 2, l = 3") {
    ProductActionWreath w(2, 3);
    std::vector<WreathElement> gens;
    for (unsigned i = 0; i < 3; ++i) {
      WreathElement g = w.identity();
      g.base[i] = {1, 0};
      gens.push_back(g);
    }
    const auto r = check_base_group_containment(w, gens, 8);
    CHECK(r.transitive);
    REQUIRE(r.primes.size() == 1);
    CHECK(r.primes[0].p == 2);
    CHECK(r.primes[0].divides_omega);
    CHECK(r.primes[0].divides_m);
    CHECK_FALSE(r.primes[0].divides_ell_factorial);
    CHECK(r.consistent);
  }
}
