#include <catch2/catch.hpp>

#include "nhom/enumerate.hpp"
#include "nhom/group.hpp"
#include "nhom/random_gen.hpp"

using namespace nhom;

namespace {

const PresentedGroup z8 = PresentedGroup::cyclic(Int(8));

Subgroup span_of(const PresentedGroup& g, std::initializer_list<long> gens) {
  IntMatrix m(g.generators, gens.size());
  std::size_t j = 0;
  for (long v : gens) m.at(0, j++) = v;
  return Subgroup(g, std::move(m));
}

}  // namespace

TEST_CASE("canonical invariants classify the worked presentations") {
  REQUIRE(canonical_invariants(PresentedGroup::cyclic(Int(8))) ==
          GroupInvariants{0, {Int(8)}});
  PresentedGroup two_gens(2, IntMatrix::from_rows({{6}, {4}}));
  REQUIRE(canonical_invariants(two_gens) == GroupInvariants{1, {Int(2)}});
  REQUIRE(canonical_invariants(PresentedGroup::free(3)) == GroupInvariants{3, {}});
  REQUIRE(canonical_invariants(PresentedGroup::cyclic(Int(1))).trivial());
  REQUIRE(canonical_invariants(PresentedGroup::zero()).trivial());
}

TEST_CASE("morphism well-definedness") {
  REQUIRE(check_morphism(multiplication_morphism(z8, Int(2))));
  PresentedGroup z2 = PresentedGroup::cyclic(Int(2));
  PresentedGroup z4 = PresentedGroup::cyclic(Int(4));
  GroupMorphism bad(z2, z4, IntMatrix::identity(1));
  REQUIRE_FALSE(check_morphism(bad));
  REQUIRE(check_morphism(zero_morphism(z2, z4)));
}

TEST_CASE("kernel and image of multiplication by 2 on Z/8") {
  GroupMorphism mul2 = multiplication_morphism(z8, Int(2));
  ElementTable t8(z8);
  SECTION("kernel is the two-element subgroup generated by 4") {
    Subgroup ker = kernel(mul2);
    REQUIRE(subgroup_equal(ker, span_of(z8, {4})));
    REQUIRE(oracle_span(t8, ker.gens) == oracle_kernel(t8, t8, mul2.matrix));
    REQUIRE(oracle_kernel(t8, t8, mul2.matrix).size() == 2);
  }
  SECTION("image is the four-element subgroup generated by 2") {
    Subgroup im = image(mul2);
    REQUIRE(subgroup_equal(im, span_of(z8, {2})));
    REQUIRE(oracle_span(t8, im.gens) == oracle_image(t8, t8, mul2.matrix));
    REQUIRE(oracle_image(t8, t8, mul2.matrix).size() == 4);
  }
  SECTION("identity and zero degenerate correctly") {
    REQUIRE(subgroup_equal(kernel(identity_morphism(z8)), zero_subgroup(z8)));
    REQUIRE(subgroup_equal(kernel(zero_morphism(z8, z8)), full_subgroup(z8)));
    REQUIRE(subgroup_equal(image(zero_morphism(z8, z8)), zero_subgroup(z8)));
    REQUIRE(subgroup_equal(image(identity_morphism(z8)), full_subgroup(z8)));
  }
}

TEST_CASE("subgroup lattice operations in Z/8") {
  Subgroup four = span_of(z8, {4});
  Subgroup two = span_of(z8, {2});
  REQUIRE(subgroup_equal(subgroup_sum(four, zero_subgroup(z8)), four));
  REQUIRE(subgroup_equal(subgroup_sum(four, four), four));
  REQUIRE(subgroup_equal(subgroup_sum(four, two), two));
  REQUIRE(subgroup_equal(subgroup_intersection(four, full_subgroup(z8)), four));
  REQUIRE(subgroup_equal(subgroup_intersection(four, zero_subgroup(z8)), zero_subgroup(z8)));
  REQUIRE(subgroup_equal(subgroup_intersection(four, two), four));
  REQUIRE(contains(full_subgroup(z8), two));
  REQUIRE(contains(two, four));
  REQUIRE_FALSE(contains(four, two));
  PresentedGroup other = PresentedGroup::cyclic(Int(4));
  REQUIRE_THROWS_AS(subgroup_sum(four, zero_subgroup(other)), Error);
  REQUIRE_THROWS_AS(contains(four, zero_subgroup(other)), Error);
}

TEST_CASE("subquotients") {
  Subgroup four = span_of(z8, {4});
  Subgroup two = span_of(z8, {2});
  SECTION("K over itself is trivial") {
    REQUIRE(canonical_invariants(subquotient(two, two).quotient).trivial());
  }
  SECTION("K over zero recovers K") {
    Subquotient sq = subquotient(two, zero_subgroup(z8));
    REQUIRE(canonical_invariants(sq.quotient) == GroupInvariants{0, {Int(4)}});
  }
  SECTION("the paper-sized example: four elements over two") {
    Subquotient sq = subquotient(two, four);
    REQUIRE(canonical_invariants(sq.quotient) == GroupInvariants{0, {Int(2)}});
    ElementTable t8(z8);
    OracleQuotient oq = oracle_quotient(t8, oracle_span(t8, two.gens), oracle_span(t8, four.gens));
    REQUIRE(oq.order() == 2);
    REQUIRE(oracle_matches_invariants(oq, canonical_invariants(sq.quotient)));
  }
  SECTION("containment failures are reported") {
    REQUIRE_THROWS_AS(subquotient(four, two), Error);
  }
}

TEST_CASE("induced maps on subquotients") {
  Subgroup four = span_of(z8, {4});
  Subgroup two = span_of(z8, {2});
  Subquotient sq = subquotient(two, four);
  SECTION("identity induces the identity") {
    GroupMorphism ind = induced_map(identity_morphism(z8), sq, sq);
    REQUIRE(morphism_equal(ind, identity_morphism(sq.quotient)));
  }
  SECTION("the zero map induces zero") {
    GroupMorphism ind = induced_map(zero_morphism(z8, z8), sq, sq);
    REQUIRE(is_zero_morphism(ind));
  }
  SECTION("multiplication by 2 induces zero on ker/im") {
    GroupMorphism ind = induced_map(multiplication_morphism(z8, Int(2)), sq, sq);
    REQUIRE(is_zero_morphism(ind));
    REQUIRE(canonical_invariants(ind.target) == GroupInvariants{0, {Int(2)}});
  }
  SECTION("maps that do not preserve the filtration are rejected") {
    Subquotient smaller = subquotient(four, zero_subgroup(z8));
    REQUIRE_THROWS_AS(induced_map(identity_morphism(z8), sq, smaller), Error);
  }
}

TEST_CASE("brute-force tables enumerate small groups") {
  REQUIRE(ElementTable(z8).order() == 8);
  PresentedGroup z2z4(2, IntMatrix::from_rows({{2, 0}, {0, 4}}));
  REQUIRE(ElementTable(z2z4).order() == 8);
  REQUIRE(ElementTable(PresentedGroup::zero()).order() == 1);
  REQUIRE_THROWS_AS(ElementTable(PresentedGroup::free(1)), Error);
  REQUIRE_THROWS_AS(ElementTable(PresentedGroup::cyclic(Int(1024))), Error);
  SECTION("addition matches the presentation") {
    ElementTable t(z2z4);
    int g0 = t.id_of({Int(1), Int(0)});
    int g1 = t.id_of({Int(0), Int(1)});
    REQUIRE(t.add(g0, g0) == t.id_of({Int(0), Int(0)}));
    REQUIRE(t.add(g1, g1) == t.id_of({Int(0), Int(2)}));
    REQUIRE(t.scalar(4, g1) == t.id_of({Int(0), Int(0)}));
  }
}

TEST_CASE("containment is a partial order on random subgroups") {
  Rng rng(23);
  GroupParams gp;
  gp.max_generators = 3;
  gp.max_order = 32;
  gp.free_chance_pct = 25;  // free directions included
  for (int k = 0; k < 60; ++k) {
    RandomGroup g = random_group(rng, gp);
    auto random_sub = [&]() {
      IntMatrix gens(g.group.generators, static_cast<std::size_t>(rng.range(0, 2)));
      for (std::size_t i = 0; i < gens.rows(); ++i)
        for (std::size_t j = 0; j < gens.cols(); ++j) gens.at(i, j) = rng.range(-6, 6);
      return Subgroup(g.group, std::move(gens));
    };
    Subgroup a = random_sub(), b = random_sub(), c = random_sub();
    REQUIRE(contains(a, a));
    if (contains(a, b) && contains(b, a)) REQUIRE(subgroup_equal(a, b));
    if (contains(a, b) && contains(b, c)) REQUIRE(contains(a, c));
    Subgroup meet = subgroup_intersection(a, b);
    Subgroup join = subgroup_sum(a, b);
    REQUIRE(contains(a, meet));
    REQUIRE(contains(b, meet));
    REQUIRE(contains(join, a));
    REQUIRE(contains(join, b));
    REQUIRE(contains(join, meet));
  }
}

TEST_CASE("induced maps compose") {
  Rng rng(29);
  GroupParams gp;
  gp.max_generators = 2;
  gp.max_order = 16;
  for (int k = 0; k < 40; ++k) {
    RandomGroup g = random_group(rng, gp);
    RandomGroup h = random_group(rng, gp);
    RandomGroup kk = random_group(rng, gp);
    GroupMorphism f = random_morphism(rng, g, h);
    GroupMorphism gmor = random_morphism(rng, h, kk);
    GroupMorphism gf = compose(gmor, f);
    Subquotient sq1 = subquotient(full_subgroup(g.group), kernel(gf));
    Subquotient sq2 = subquotient(full_subgroup(h.group), kernel(gmor));
    Subquotient sq3 = subquotient(full_subgroup(kk.group), zero_subgroup(kk.group));
    GroupMorphism step1 = induced_map(f, sq1, sq2);
    GroupMorphism step2 = induced_map(gmor, sq2, sq3);
    GroupMorphism direct = induced_map(gf, sq1, sq3);
    REQUIRE(morphism_equal(compose(step2, step1), direct));
  }
}

TEST_CASE("isomorphism detection") {
  REQUIRE(is_isomorphism(identity_morphism(z8)));
  REQUIRE_FALSE(is_isomorphism(multiplication_morphism(z8, Int(2))));
  REQUIRE(is_isomorphism(multiplication_morphism(PresentedGroup::free(1), Int(-1))));
  PresentedGroup z2 = PresentedGroup::cyclic(Int(2));
  PresentedGroup z4 = PresentedGroup::cyclic(Int(4));
  GroupMorphism doubling(z2, z4, IntMatrix::from_rows({{2}}));
  REQUIRE(check_morphism(doubling));
  REQUIRE_FALSE(is_isomorphism(doubling));
  REQUIRE(is_isomorphism(multiplication_morphism(z8, Int(3))));
}
