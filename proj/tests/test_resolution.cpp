#include <catch2/catch.hpp>

#include "nhom/random_gen.hpp"
#include "nhom/resolution.hpp"
#include "nhom/suites.hpp"

using namespace nhom;

TEST_CASE("projectivity is freeness") {
  REQUIRE(is_projective(PresentedGroup::free(3)));
  REQUIRE_FALSE(is_projective(PresentedGroup::cyclic(Int(8))));
  REQUIRE(is_projective(PresentedGroup::zero()));
  REQUIRE(is_projective(PresentedGroup(2, IntMatrix::from_rows({{1}, {1}}))));
}

TEST_CASE("classical resolutions") {
  SECTION("Z/6 resolves by multiplication by 6") {
    ClassicalResolution r = classical_resolution(PresentedGroup::cyclic(Int(6)));
    REQUIRE(r.complex.seq().lo() == -1);
    REQUIRE(r.complex.seq().hi() == 0);
    REQUIRE(r.complex.seq().differential_at(-1).matrix == IntMatrix::from_rows({{6}}));
    REQUIRE(canonical_invariants(r.complex.seq().object_at(-1)) == GroupInvariants{1, {}});
  }
  SECTION("free groups resolve by themselves") {
    ClassicalResolution r = classical_resolution(PresentedGroup::free(1));
    REQUIRE(is_trivial(r.complex.seq().object_at(-1)));
    REQUIRE(canonical_invariants(r.complex.seq().object_at(0)) == GroupInvariants{1, {}});
  }
  SECTION("mixed torsion and free parts") {
    PresentedGroup x(2, IntMatrix::from_rows({{2}, {0}}));
    ClassicalResolution r = classical_resolution(x);
    REQUIRE(canonical_invariants(r.complex.seq().object_at(-1)) == GroupInvariants{1, {}});
    REQUIRE(r.complex.seq().differential_at(-1).matrix == IntMatrix::from_rows({{2}, {0}}));
  }
  SECTION("augmented resolutions are exact everywhere") {
    Rng rng(113);
    GroupParams gp;
    gp.max_generators = 3;
    gp.max_order = 32;
    for (int k = 0; k < 25; ++k) {
      RandomGroup x = random_group(rng, gp);
      ClassicalResolution r = classical_resolution(x.group);
      const Sequence& p = r.complex.seq();
      std::vector<PresentedGroup> objects{p.object_at(-1), p.object_at(0), x.group};
      std::vector<IntMatrix> diffs{p.differential_at(-1).matrix,
                                   r.augmentation.component_matrix_at(0)};
      Sequence augmented = Sequence::make(-1, std::move(objects), diffs);
      for (int j = -2; j <= 2; ++j)
        REQUIRE(homology(augmented, HomologyQuery{1, 1, j}).invariants.trivial());
    }
  }
}

TEST_CASE("expanded resolutions for Z/6 with (a, b) = (2, 1)") {
  ResolutionReport report = hh_projective_resolution(PresentedGroup::cyclic(Int(6)), 2, 1);
  const Sequence& p = report.resolution.seq();
  REQUIRE(p.lo() == -2);
  REQUIRE(p.hi() == 0);
  REQUIRE(report.quasi_iso.all);
  REQUIRE(report.vanishing_above_zero);
  for (const auto& [degree, projective] : report.projective_per_degree) REQUIRE(projective);
  REQUIRE(report.max_nonzero_power == 2);
  REQUIRE(verify_lower_bound(report, 2, 1));
  SECTION("the homology values match the resolved group") {
    Sequence padded = pad_window(p, 2, 3);
    REQUIRE(homology(padded, HomologyQuery{2, 1, 0}).invariants == GroupInvariants{0, {Int(6)}});
    REQUIRE(homology(padded, HomologyQuery{2, 1, -1}).invariants.trivial());
    REQUIRE(homology(padded, HomologyQuery{2, 1, -2}).invariants.trivial());
  }
}

TEST_CASE("free groups resolve to themselves under any parameters") {
  ResolutionReport report = hh_projective_resolution(PresentedGroup::free(2), 3, 2);
  REQUIRE(report.quasi_iso.all);
  REQUIRE(report.max_nonzero_power == 0);
  for (int i = report.resolution.seq().lo(); i < 0; ++i)
    REQUIRE(is_trivial(report.resolution.seq().object_at(i)));
  REQUIRE_THROWS_AS(verify_lower_bound(report, 3, 2), Error);
}

TEST_CASE("a = b = 1 recovers the classical resolution") {
  ResolutionReport report = hh_projective_resolution(PresentedGroup::cyclic(Int(2)), 1, 1);
  REQUIRE(report.resolution.seq().lo() == -1);
  REQUIRE(report.resolution.seq().hi() == 0);
  REQUIRE(report.resolution.seq().differential_at(-1).matrix == IntMatrix::from_rows({{2}}));
  REQUIRE(report.quasi_iso.all);
  REQUIRE(report.max_nonzero_power == 1);
  REQUIRE(verify_lower_bound(report, 1, 1));
}

TEST_CASE("lower bound witnesses for larger expansions") {
  ResolutionReport report = hh_projective_resolution(PresentedGroup::cyclic(Int(8)), 3, 2);
  REQUIRE(report.max_nonzero_power == 4);
  REQUIRE(verify_lower_bound(report, 3, 2));
  SECTION("degree bound: support inside [-(a+b-1), 0]") {
    REQUIRE(report.resolution.seq().lo() == -4);
    REQUIRE(report.resolution.seq().hi() == 0);
  }
}

TEST_CASE("resolution suite on random groups") {
  SuiteResult result = run_suite("lower-bound", 109, 15);
  INFO(result.first_failure);
  REQUIRE(result.passed());
}
