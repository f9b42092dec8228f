#include <catch2/catch.hpp>

#include "nhom/enumerate.hpp"
#include "nhom/json_io.hpp"
#include "nhom/random_gen.hpp"
#include "nhom/suites.hpp"

using namespace nhom;

namespace {

std::string fixture(const std::string& name) {
  return std::string(NHOM_FIXTURE_DIR) + "/" + name;
}

NComplex load_fixture_complex(const std::string& name, int n) {
  return validate_ncomplex(load_complex_file(fixture(name)).sequence, n);
}

const GroupInvariants z2_inv{0, {Int(2)}};

}  // namespace

TEST_CASE("the two fixture 3-complexes separate (2,1) but not (2,2)") {
  NComplex c8 = load_fixture_complex("z8_d2.json", 3);
  NComplex c2 = load_fixture_complex("z2_d0.json", 3);
  for (int j = 2; j <= 4; ++j) {
    REQUIRE(homology(c8, HomologyQuery{2, 2, j}).invariants == z2_inv);
    REQUIRE(homology(c2, HomologyQuery{2, 2, j}).invariants == z2_inv);
  }
  for (int j = 1; j <= 4; ++j) {
    REQUIRE(homology(c8, HomologyQuery{2, 1, j}).invariants.trivial());
    REQUIRE(homology(c2, HomologyQuery{2, 1, j}).invariants == z2_inv);
  }
}

TEST_CASE("classical homology of a short free complex") {
  Sequence c = Sequence::make(-1, {PresentedGroup::free(1), PresentedGroup::free(1)},
                              {IntMatrix::from_rows({{2}})});
  REQUIRE(homology(c, HomologyQuery{1, 1, 0}).invariants == z2_inv);
  REQUIRE(homology(c, HomologyQuery{1, 1, -1}).invariants.trivial());
  REQUIRE(homology(Sequence(), HomologyQuery{3, 2, 0}).invariants.trivial());
  REQUIRE_THROWS_AS(homology(c, HomologyQuery{0, 1, 0}), Error);
}

TEST_CASE("Kapranov queries require a + b at least N") {
  NComplex c8 = load_fixture_complex("z8_d2.json", 3);
  REQUIRE_THROWS_AS(homology(c8, HomologyQuery{1, 1, 3}), Error);
  // the generalized functor still applies to the underlying sequence
  REQUIRE(homology(c8.seq(), HomologyQuery{1, 1, 3}).invariants.trivial());
}

TEST_CASE("window-truncated positions are flagged") {
  Sequence c = Sequence::make(0, {PresentedGroup::cyclic(Int(4)), PresentedGroup::cyclic(Int(4))},
                              {IntMatrix::from_rows({{2}})});
  REQUIRE_FALSE(homology(c, HomologyQuery{1, 1, 0}).interior);
  REQUIRE(homology(pad_window(c, 1, 1), HomologyQuery{1, 1, 0}).interior);
}

TEST_CASE("induced maps in homology") {
  NComplex c8 = load_fixture_complex("z8_d2.json", 3);
  SECTION("identity induces the identity") {
    SeqMorphism id = identity_seq_morphism(c8.seq());
    InducedHomology ih = induced_homology(id, HomologyQuery{2, 2, 3});
    REQUIRE(morphism_equal(ih.map, identity_morphism(ih.map.source)));
  }
  SECTION("functor law on composable conjugations") {
    Rng rng(71);
    SequenceParams p = suites::default_params();
    for (int k = 0; k < 15; ++k) {
      Sequence c = random_sequence(rng, p);
      ConjugatedComplex first = conjugate_complex(rng, c, 2);
      ConjugatedComplex second = conjugate_complex(rng, first.sequence, 2);
      SeqMorphism gf = compose(second.iso, first.iso);
      HomologyQuery q{static_cast<int>(rng.range(1, 2)), static_cast<int>(rng.range(1, 2)),
                      static_cast<int>(rng.range(c.lo(), c.hi()))};
      GroupMorphism lhs = homology_induced(gf, q);
      GroupMorphism rhs =
          compose(homology_induced(second.iso, q), homology_induced(first.iso, q));
      REQUIRE(morphism_equal(lhs, rhs));
    }
  }
  SECTION("functor law across mixed morphism kinds") {
    Rng rng(151);
    SequenceParams p = suites::default_params();
    for (int k = 0; k < 20; ++k) {
      SeqMorphism f = random_seq_morphism(rng, p);
      SeqMorphism g = [&]() -> SeqMorphism {
        switch (rng.below(3)) {
          case 0: return scalar_seq_morphism(f.target(), Int(rng.range(-2, 3)));
          case 1: return shift_power_morphism(f.target(), 1);
          default: return conjugate_complex(rng, f.target(), 2).iso;
        }
      }();
      int lo = std::min(f.source().lo(), g.target().lo());
      int hi = std::max(f.source().hi(), g.target().hi());
      if (lo > hi) continue;
      HomologyQuery q{static_cast<int>(rng.range(1, 2)), static_cast<int>(rng.range(1, 2)),
                      static_cast<int>(rng.range(lo, hi))};
      GroupMorphism lhs = homology_induced(compose(g, f), q);
      GroupMorphism rhs = compose(homology_induced(g, q), homology_induced(f, q));
      REQUIRE(morphism_equal(lhs, rhs));
    }
  }
  SECTION("the truncation counit induces isomorphisms when a + b = N") {
    Rng rng(73);
    SequenceParams p = suites::default_params();
    for (int k = 0; k < 10; ++k) {
      Sequence c = random_sequence(rng, p);
      int a = static_cast<int>(rng.range(1, 2));
      int b = static_cast<int>(rng.range(1, 2));
      TruncationResult tr = kernel_truncate(c, a + b);
      for (int j = c.lo(); j <= c.hi(); ++j) {
        GroupMorphism counit_h = homology_induced(tr.counit, HomologyQuery{a, b, j});
        REQUIRE(is_isomorphism(counit_h));
      }
    }
  }
}

TEST_CASE("factorization through the alternating-power complex") {
  NComplex c8 = load_fixture_complex("z8_d2.json", 3);
  for (int a = 1; a <= 3; ++a)
    for (int b = std::max(1, 3 - a); b <= 3; ++b) {
      InteriorRange range = interior_range(c8.seq(), a, b);
      for (int j = range.lo; j <= range.hi; ++j)
        REQUIRE(factorization_check(c8, HomologyQuery{a, b, j}));
    }
  REQUIRE(factorization_check(validate_ncomplex(Sequence(), 3), HomologyQuery{2, 1, 0}));
}

TEST_CASE("homology sequences") {
  SECTION("a = b = 1 on 2-complexes gives zero differentials") {
    Rng rng(79);
    NComplex c = random_two_complex(rng, suites::default_params());
    NComplex hs = homology_sequence(c, 1, 1);
    REQUIRE(hs.n() == 1);
    for (int j = hs.seq().lo(); j < hs.seq().hi(); ++j)
      REQUIRE(is_zero_morphism(hs.seq().differential_at(j)));
  }
  SECTION("the Z/8 fixture has vanishing (2,1) homology sequence") {
    NComplex c8 = load_fixture_complex("z8_d2.json", 3);
    NComplex hs = homology_sequence(c8, 2, 1);
    InteriorRange range = interior_range(c8.seq(), 2, 1);
    for (int j = range.lo; j <= range.hi; ++j)
      REQUIRE(is_trivial(hs.seq().object_at(j)));
  }
  SECTION("zero differential keeps every value and kills every map") {
    NComplex c2 = load_fixture_complex("z2_d0.json", 3);
    NComplex hs = homology_sequence(c2, 2, 2);
    for (int j = 2; j <= 4; ++j) {
      REQUIRE(canonical_invariants(hs.seq().object_at(j)) == z2_inv);
      REQUIRE(is_zero_morphism(hs.seq().differential_at(j)));
    }
  }
}

TEST_CASE("inclusion-induced and differential-induced maps") {
  NComplex c8 = load_fixture_complex("z8_d2.json", 3);
  NComplex c2 = load_fixture_complex("z2_d0.json", 3);
  SECTION("i* is the identity on the zero-differential fixture") {
    GroupMorphism i = i_star(c2, 1, 3);
    REQUIRE(canonical_invariants(i.source) == z2_inv);
    REQUIRE(canonical_invariants(i.target) == z2_inv);
    REQUIRE(is_isomorphism(i));
  }
  SECTION("i* on the Z/8 fixture is the zero map between trivial groups") {
    GroupMorphism i = i_star(c8, 1, 3);
    REQUIRE(canonical_invariants(i.source).trivial());
    REQUIRE(canonical_invariants(i.target).trivial());
  }
  SECTION("d* vanishes whenever the differential does") {
    GroupMorphism d = d_star(c2, 2, 3);
    REQUIRE(is_zero_morphism(d));
  }
  SECTION("d* on the Z/8 fixture connects trivial groups") {
    GroupMorphism d = d_star(c8, 2, 3);
    REQUIRE(canonical_invariants(d.source).trivial());
    REQUIRE(canonical_invariants(d.target).trivial());
    REQUIRE(is_zero_morphism(d));
  }
  SECTION("range checks") {
    REQUIRE_THROWS_AS(i_star(c8, 2, 3), Error);
    REQUIRE_THROWS_AS(d_star(c8, 1, 3), Error);
  }
}

TEST_CASE("total homology") {
  SECTION("zero complexes total to zero") {
    TotalHomology t = total_homology(validate_ncomplex(Sequence(), 3));
    REQUIRE(t.complex.seq().empty());
  }
  SECTION("the Z/8 fixture has vanishing total homology") {
    TotalHomology t = total_homology(load_fixture_complex("z8_d2.json", 3));
    for (int n = t.lo; n <= t.hi; ++n)
      REQUIRE(is_trivial(t.complex.seq().object_at(n)));
  }
  SECTION("the zero-differential fixture alternates identity and zero") {
    TotalHomology t = total_homology(load_fixture_complex("z2_d0.json", 3));
    REQUIRE(t.complex.n() == 2);
    for (int n = 4; n <= 10; ++n) {
      REQUIRE(canonical_invariants(t.complex.seq().object_at(n)) == z2_inv);
      GroupMorphism d = t.complex.seq().differential_at(n);
      if (n % 2 == 1)
        REQUIRE(is_isomorphism(d));  // the inclusion-induced block
      else if (n < 10)
        REQUIRE(is_zero_morphism(d));  // the d-induced block, and d = 0
    }
    for (const TotalSummand& s : t.summands_at(7)) REQUIRE(s.interior);
  }
}

TEST_CASE("total differential blocks are exactly the induced maps") {
  Rng rng(139);
  for (int k = 0; k < 8; ++k) {
    int n = static_cast<int>(rng.range(3, 4));
    NComplex c = random_ncomplex(rng, n, suites::factorization_params());
    TotalHomology total = total_homology(c);
    for (int pos = total.lo; pos < total.hi; ++pos) {
      const IntMatrix d = total.complex.seq().differential_at(pos).matrix;
      for (const TotalSummand& src : total.summands_at(pos)) {
        for (const TotalSummand& tgt : total.summands_at(pos + 1)) {
          IntMatrix block(tgt.gens, src.gens);
          for (std::size_t i = 0; i < tgt.gens; ++i)
            for (std::size_t j = 0; j < src.gens; ++j)
              block.at(i, j) = d.at(tgt.offset + i, src.offset + j);
          if (tgt.p == src.p + 1 && tgt.j == src.j) {
            REQUIRE(block == i_star(c, src.p, src.j).matrix);
          } else if (tgt.p == src.p - 1 && tgt.j == src.j + 1) {
            REQUIRE(block == d_star(c, src.p, src.j).matrix);
          } else {
            REQUIRE(block.is_zero());
          }
        }
      }
    }
  }
}

TEST_CASE("the alternating-power functor acts on morphisms") {
  Rng rng(149);
  for (int k = 0; k < 8; ++k) {
    int n = static_cast<int>(rng.range(2, 4));
    NComplex c = random_ncomplex(rng, n, suites::default_params());
    ConjugatedComplex first = conjugate_complex(rng, c.seq(), 2);
    ConjugatedComplex second = conjugate_complex(rng, first.sequence, 2);
    int a = static_cast<int>(rng.range(1, n));
    int b = std::max(1, n - a);
    SeqMorphism sf = s_functor(first.iso, a, b);
    SeqMorphism sg = s_functor(second.iso, a, b);
    SeqMorphism s_of_composite = s_functor(compose(second.iso, first.iso), a, b);
    REQUIRE(seq_morphism_equal(s_of_composite, compose(sg, sf)));
    REQUIRE(seq_morphism_equal(s_functor(identity_seq_morphism(c.seq()), a, b),
                               identity_seq_morphism(s_functor(c.seq(), a, b))));
  }
}

TEST_CASE("quasi-isomorphism checks") {
  SECTION("identities pass") {
    Rng rng(83);
    Sequence c = random_sequence(rng, suites::default_params());
    REQUIRE(is_quasi_iso(identity_seq_morphism(c), 1, 2));
  }
  SECTION("the projection fixture passes") {
    SeqMorphism f = load_morphism_file(fixture("projection_qis.json"));
    REQUIRE(is_quasi_iso(f, 1, 1));
    QisReport report = qis_report(f, 1, 1);
    REQUIRE(report.positions.size() == 2);
    for (const QisPosition& p : report.positions) REQUIRE(p.iso);
  }
  SECTION("multiplication by 2 on the Z/8 fixture is not a quasi-isomorphism at (2,2)") {
    NComplex c8 = load_fixture_complex("z8_d2.json", 3);
    SeqMorphism two = scalar_seq_morphism(c8.seq(), Int(2));
    REQUIRE_FALSE(is_quasi_iso(two, 2, 2));
  }
}

TEST_CASE("reformulation identities") {
  SECTION("on a certified complex both routes agree trivially") {
    NComplex c8 = load_fixture_complex("z8_d2.json", 3);
    REQUIRE(reformulation_check(c8.seq(), 2, 1, 3));
  }
  SECTION("the free staircase has vanishing generalized homology inside") {
    Sequence zzz = Sequence::make(
        -1, {PresentedGroup::free(1), PresentedGroup::free(1), PresentedGroup::free(1)},
        {IntMatrix::from_rows({{1}}), IntMatrix::from_rows({{1}})});
    REQUIRE(homology(zzz, HomologyQuery{1, 1, 0}).invariants.trivial());
    REQUIRE(reformulation_check(zzz, 1, 1, 0));
  }
  SECTION("random sequences satisfy the identity") {
    SuiteResult result = run_suite("reformulation", 103, 25);
    INFO(result.first_failure);
    REQUIRE(result.passed());
  }
}

TEST_CASE("inclusion lattice") {
  NComplex c8 = load_fixture_complex("z8_d2.json", 3);
  LatticeReport report = inclusion_lattice(c8, 3);
  REQUIRE(report.interior);
  REQUIRE(report.all_edges_hold);
  REQUIRE(report.nodes.size() == 4);
  REQUIRE(report.nodes[0].invariants == z2_inv);                      // ker d
  REQUIRE(report.nodes[1].invariants == GroupInvariants{0, {Int(4)}});  // ker d^2
  REQUIRE(report.nodes[2].invariants == GroupInvariants{0, {Int(4)}});  // im d
  REQUIRE(report.nodes[3].invariants == z2_inv);                      // im d^2
  SECTION("the collapsed containments match element enumeration") {
    ElementTable t(c8.seq().object_at(3));
    std::vector<std::set<int>> sets;
    for (int k = 1; k <= 2; ++k) {
      IntMatrix pw = power_differential(c8.seq(), 3, k).matrix;
      sets.push_back(oracle_kernel(t, t, pw));
    }
    for (int k = 1; k <= 2; ++k) {
      IntMatrix pw = power_differential(c8.seq(), 3 - k, k).matrix;
      sets.push_back(oracle_image(t, t, pw));
    }
    int true_pairs = 0;
    for (std::size_t x = 0; x < sets.size(); ++x)
      for (std::size_t y = 0; y < sets.size(); ++y) {
        if (x == y) continue;
        bool includes =
            std::includes(sets[x].begin(), sets[x].end(), sets[y].begin(), sets[y].end());
        REQUIRE(report.contains_matrix[x][y] == includes);
        true_pairs += includes ? 1 : 0;
      }
    REQUIRE(true_pairs == 8);  // two collapsed pairs make the poset almost full
  }
  SECTION("DOT output lists every node and verified edge") {
    std::string dot = report.to_dot();
    REQUIRE(dot.find("ker d^1") != std::string::npos);
    REQUIRE(dot.find("im d^2") != std::string::npos);
    REQUIRE(dot.find("->") != std::string::npos);
  }
  SECTION("a zero differential maximizes kernels and kills images") {
    NComplex c2 = load_fixture_complex("z2_d0.json", 3);
    LatticeReport zero_lat = inclusion_lattice(c2, 3);
    REQUIRE(zero_lat.nodes[0].invariants == z2_inv);   // ker d is everything
    REQUIRE(zero_lat.nodes[1].invariants == z2_inv);   // ker d^2 too
    REQUIRE(zero_lat.nodes[2].invariants.trivial());   // im d vanishes
    REQUIRE(zero_lat.nodes[3].invariants.trivial());
    REQUIRE(zero_lat.all_edges_hold);
  }
  SECTION("a 2-complex renders the single edge im d inside ker d") {
    Rng rng(89);
    NComplex two = random_two_complex(rng, suites::default_params());
    Sequence padded = pad_window(two.seq(), 2, 2);
    LatticeReport small = inclusion_lattice(validate_ncomplex(padded, 2), padded.lo() + 1);
    REQUIRE(small.edges.size() == 1);
    REQUIRE(small.edges[0].holds);
  }
}

TEST_CASE("remaining property suites stay green on small budgets") {
  for (const std::string& name : {"factorization", "m-complex", "total", "rn-preserves-qis"}) {
    SuiteResult result = run_suite(name, 107, 15);
    INFO(name << ": " << result.first_failure);
    REQUIRE(result.passed());
  }
}
