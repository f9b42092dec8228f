#pragma once

#include <utility>
#include <vector>

#include "nhom/homology.hpp"

namespace nhom {

/// Projective = free for finitely generated abelian groups: no torsion in
/// the invariants.
inline bool is_projective(const PresentedGroup& x) {
  return canonical_invariants(x).factors.empty();
}

struct ClassicalResolution {
  NComplex complex;          // 2-complex on window [-1, 0]
  SeqMorphism augmentation;  // projection onto X concentrated at 0
};

/// Free resolution 0 -> Z^r -> Z^n -> X -> 0 over the integers. The
/// differential columns are the Hermite basis of the relation lattice, so it
/// is injective and its cokernel is X.
inline ClassicalResolution classical_resolution(const PresentedGroup& x) {
  IntMatrix basis = hermite_basis(x.relations);
  PresentedGroup p0 = PresentedGroup::free(x.generators);
  PresentedGroup pm1 = PresentedGroup::free(basis.cols());
  Sequence seq = Sequence::make(-1, {pm1, p0}, {basis});
  NComplex complex = validate_ncomplex(seq, 2);
  // Exactness of the augmented complex: d injective, coker(d) = X.
  Subgroup ker_d = kernel(seq.differential_at(-1));
  require(SmithSolver(pm1.relations).solve_matrix(ker_d.gens).has_value(),
          "classical_resolution: differential is not injective");
  require(isomorphic(PresentedGroup(x.generators, basis), x),
          "classical_resolution: cokernel does not match the group");
  SeqMorphism augmentation = SeqMorphism::make(
      seq, concentrated_at(x), 0, {IntMatrix::identity(x.generators)});
  return ClassicalResolution{std::move(complex), std::move(augmentation)};
}

/// One resolution with its verification data: degreewise projectivity,
/// vanishing above zero, the per-position quasi-isomorphism record of the
/// augmentation, and the largest k with d^k nonzero somewhere.
struct ResolutionReport {
  PresentedGroup x;
  NComplex resolution;       // window not padded; support in [-(a+b-1), 0]
  SeqMorphism augmentation;  // padded resolution -> X at 0
  std::vector<std::pair<int, bool>> projective_per_degree;
  bool vanishing_above_zero;
  QisReport quasi_iso;
  int max_nonzero_power;

  bool all_pass() const {
    for (const auto& [degree, ok] : projective_per_degree)
      if (!ok) return false;
    return vanishing_above_zero && quasi_iso.all;
  }
};

inline int max_nonzero_power(const Sequence& s) {
  int best = 0;
  for (int k = 1; k <= s.hi() - s.lo(); ++k)
    for (int i = s.lo(); i + k <= s.hi(); ++i)
      if (!is_zero_morphism(power_differential(s, i, k))) {
        best = std::max(best, k);
        break;
      }
  return best;
}

/// Expand the classical resolution by repetition into an (a+b)-complex and
/// verify that the induced augmentation is an (a, b)-quasi-isomorphism. The
/// window is padded before the check so that every support position is
/// interior.
inline ResolutionReport hh_projective_resolution(const PresentedGroup& x, int a, int b) {
  require(a >= 1 && b >= 1, "hh_projective_resolution: a and b must be positive");
  const int n = a + b;
  ClassicalResolution cls = classical_resolution(x);
  NComplex expanded = r_n_expand(cls.complex, n);

  Sequence padded = pad_window(expanded.seq(), b + 1, a + 1);
  SeqMorphism augmentation =
      SeqMorphism::make(padded, concentrated_at(x), 0, {IntMatrix::identity(x.generators)});

  ResolutionReport report{x, expanded, augmentation, {}, true, qis_report(augmentation, a, b),
                          max_nonzero_power(expanded.seq())};
  for (int i = expanded.seq().lo(); i <= expanded.seq().hi(); ++i)
    report.projective_per_degree.emplace_back(i, is_projective(expanded.seq().object_at(i)));
  for (int i = 1; i <= expanded.seq().hi(); ++i)
    if (!is_trivial(expanded.seq().object_at(i))) report.vanishing_above_zero = false;
  return report;
}

/// A non-projective X cannot be resolved inside (a+b-1)-complexes: the
/// constructed resolution must exhibit d^{a+b-1} != 0 somewhere.
inline bool verify_lower_bound(const ResolutionReport& report, int a, int b) {
  require(!is_projective(report.x),
          "verify_lower_bound: X is projective, the bound says nothing");
  return report.max_nonzero_power >= a + b - 1;
}

}  // namespace nhom
