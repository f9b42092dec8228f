#pragma once

// Named property suites behind `check`: each case draws a random instance
// and verifies one family of identities exactly. A failure carries a
// replayable JSON description of the instance.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nhom/enumerate.hpp"
#include "nhom/json_io.hpp"
#include "nhom/random_gen.hpp"

namespace nhom {

struct CaseFailure {
  std::string message;
  Json data;
};

using CaseOutcome = std::optional<CaseFailure>;

struct SuiteResult {
  std::string suite;
  std::uint64_t seed = 0;
  int cases_run = 0;
  int failures = 0;
  int first_failure_case = -1;
  std::string first_failure;
  Json counterexample;

  bool passed() const { return failures == 0; }
};

namespace suites {

inline SequenceParams default_params() {
  SequenceParams p;
  p.groups.max_generators = 2;
  p.groups.max_order = 16;
  p.groups.free_chance_pct = 15;
  p.groups.scramble_ops = 3;
  p.max_length = 4;
  return p;
}

/// Adjunction between inclusion and kernel truncation: triangle identities,
/// counit naturality, and functoriality of truncation.
inline CaseOutcome adjunction_case(Rng& rng) {
  SequenceParams p = default_params();
  int n = static_cast<int>(rng.range(1, 4));
  SeqMorphism f = random_seq_morphism(rng, p);
  auto report = [&](const std::string& msg) {
    return CaseFailure{msg + " (n = " + std::to_string(n) + ")",
                       Json{{"n", n}, {"morphism", morphism_to_json(f)}}};
  };
  TruncationResult trc = kernel_truncate(f.source(), n);
  TruncationResult trd = kernel_truncate(f.target(), n);

  TruncationResult trk = kernel_truncate(embed(trc.complex), n);
  if (!(trk.complex.seq() == trc.complex.seq()))
    return report("truncation of an embedded complex is not the complex itself");
  if (!seq_morphism_equal(trk.counit, identity_seq_morphism(trc.complex.seq())))
    return report("counit on an embedded complex is not the identity");
  SeqMorphism truncated_counit = truncate_morphism(trc.counit, trk, trc);
  if (!seq_morphism_equal(truncated_counit, identity_seq_morphism(trc.complex.seq())))
    return report("triangle identity failed: truncated counit is not the identity");

  SeqMorphism fp = truncate_morphism(f, trc, trd);
  if (!seq_morphism_equal(compose(trd.counit, fp), compose(f, trc.counit)))
    return report("counit naturality square failed");

  SeqMorphism g = rng.chance(50) ? scalar_seq_morphism(f.target(), Int(rng.range(-2, 2)))
                                 : shift_power_morphism(f.target(), 1);
  TruncationResult tre = kernel_truncate(g.target(), n);
  SeqMorphism both = truncate_morphism(compose(g, f), trc, tre);
  SeqMorphism chained = compose(truncate_morphism(g, trd, tre), fp);
  if (!seq_morphism_equal(both, chained))
    return report("truncation is not functorial on a composite");
  return std::nullopt;
}

inline SequenceParams factorization_params() {
  SequenceParams p;
  p.groups.max_generators = 3;
  p.groups.max_order = 64;
  p.groups.free_chance_pct = 10;
  p.groups.scramble_ops = 3;
  p.max_length = 6;
  return p;
}

/// Kapranov homology factors through the alternating-power complex of the
/// translate, for every valid (a, b) up to N and every interior position.
inline CaseOutcome factorization_case(Rng& rng) {
  int n = static_cast<int>(rng.range(2, 5));
  NComplex c = random_ncomplex(rng, n, factorization_params());
  for (int a = 1; a <= n; ++a)
    for (int b = std::max(1, n - a); b <= n; ++b) {
      InteriorRange range = interior_range(c.seq(), a, b);
      for (int j = range.lo; j <= range.hi; ++j)
        if (!factorization_check(c, HomologyQuery{a, b, j}))
          return CaseFailure{"factorization failed at (a, b, j) = (" + std::to_string(a) + ", " +
                                 std::to_string(b) + ", " + std::to_string(j) + ")",
                             Json{{"n", n},
                                  {"a", a},
                                  {"b", b},
                                  {"j", j},
                                  {"complex", complex_to_json(c)}}};
    }
  return std::nullopt;
}

/// Generalized homology of a sequence against Kapranov homology of its
/// kernel truncation, with N = a + b, counit inducing the isomorphism.
inline CaseOutcome reformulation_case(Rng& rng) {
  SequenceParams p = default_params();
  Sequence c = random_sequence(rng, p);
  for (int n = 2; n <= 5; ++n) {
    TruncationResult tr = kernel_truncate(c, n);
    for (int a = 1; a < n; ++a) {
      int b = n - a;
      for (int j = c.lo(); j <= c.hi(); ++j)
        if (!reformulation_check(c, a, b, j, tr))
          return CaseFailure{"reformulation failed at (a, b, j) = (" + std::to_string(a) + ", " +
                                 std::to_string(b) + ", " + std::to_string(j) + ")",
                             Json{{"a", a}, {"b", b}, {"j", j}, {"complex", complex_to_json(c)}}};
    }
  }
  return std::nullopt;
}

/// The homology sequence of an N-complex is an M-complex for M = min(a, b),
/// and its differential is natural in the complex.
inline CaseOutcome m_complex_case(Rng& rng) {
  int n = static_cast<int>(rng.range(2, 5));
  NComplex c = random_ncomplex(rng, n, factorization_params());
  for (int a = 1; a <= n; ++a)
    for (int b = std::max(1, n - a); b <= n; ++b) {
      NComplex hs = homology_sequence(c, a, b);
      if (auto bad = find_ncomplex_violation(hs.seq(), std::min(a, b)))
        return CaseFailure{"homology sequence is not a min(a,b)-complex at position " +
                               std::to_string(*bad),
                           Json{{"n", n}, {"a", a}, {"b", b}, {"complex", complex_to_json(c)}}};
    }
  // naturality of [x] -> [dx] along a conjugation of the complex
  ConjugatedComplex conj = conjugate_complex(rng, c.seq(), 3);
  NComplex d = validate_ncomplex(conj.sequence, n);
  int a = static_cast<int>(rng.range(1, n));
  int b = std::max(1, n - a);
  for (int j = c.seq().lo(); j < c.seq().hi(); ++j) {
    HomologyValue c_j = homology(c, {a, b, j});
    HomologyValue c_j1 = homology(c, {a, b, j + 1});
    HomologyValue d_j = homology(d, {a, b, j});
    HomologyValue d_j1 = homology(d, {a, b, j + 1});
    GroupMorphism star_c = induced_map(c.seq().differential_at(j), c_j.sq, c_j1.sq);
    GroupMorphism star_d = induced_map(d.seq().differential_at(j), d_j.sq, d_j1.sq);
    GroupMorphism f_j = induced_map(conj.iso.component_at(j), c_j.sq, d_j.sq);
    GroupMorphism f_j1 = induced_map(conj.iso.component_at(j + 1), c_j1.sq, d_j1.sq);
    if (!morphism_equal(compose(star_d, f_j), compose(f_j1, star_c)))
      return CaseFailure{"homology-sequence differential is not natural at position " +
                             std::to_string(j),
                         Json{{"n", n}, {"a", a}, {"b", b}, {"complex", complex_to_json(c)}}};
  }
  return std::nullopt;
}

/// Total homology: certified (N-1)-complex and commuting bidegree squares.
inline CaseOutcome total_case(Rng& rng) {
  int n = static_cast<int>(rng.range(2, 5));
  NComplex c = random_ncomplex(rng, n, factorization_params());
  TotalHomology total = total_homology(c);  // certification happens inside
  (void)total;
  for (int p = 2; p <= n - 2; ++p)
    for (int j = c.seq().lo(); j < c.seq().hi(); ++j) {
      GroupMorphism up_then_d = compose(d_star(c, p + 1, j), i_star(c, p, j));
      GroupMorphism d_then_up = compose(i_star(c, p - 1, j + 1), d_star(c, p, j));
      if (!morphism_equal(up_then_d, d_then_up))
        return CaseFailure{"bidegree square does not commute at (p, j) = (" + std::to_string(p) +
                               ", " + std::to_string(j) + ")",
                           Json{{"n", n}, {"p", p}, {"j", j}, {"complex", complex_to_json(c)}}};
    }
  return std::nullopt;
}

/// Repetition of a classical quasi-isomorphism is an (a, b)-quasi-
/// isomorphism of (a+b)-complexes.
inline CaseOutcome rn_qis_case(Rng& rng) {
  SequenceParams p = default_params();
  p.max_length = 3;
  SeqMorphism f = random_two_complex_qis(rng, p);
  SeqMorphism padded = [&] {
    Sequence src = pad_window(f.source(), 2, 2);
    Sequence tgt = pad_window(f.target(), 2, 2);
    int lo = std::min(f.source().lo(), f.target().lo());
    int hi = std::max(f.source().hi(), f.target().hi());
    std::vector<IntMatrix> comps;
    for (int i = lo; i <= hi; ++i) comps.push_back(f.component_matrix_at(i));
    if (lo > hi) return zero_seq_morphism(src, tgt);
    return SeqMorphism::make(std::move(src), std::move(tgt), lo, std::move(comps));
  }();
  if (!is_quasi_iso(padded, 1, 1))
    return CaseFailure{"generator produced a non-quasi-isomorphism",
                       Json{{"morphism", morphism_to_json(f)}}};
  for (int n = 2; n <= 5; ++n) {
    SeqMorphism expanded = r_n_expand_morphism(padded, n);
    for (int a = 1; a < n; ++a) {
      int b = n - a;
      if (!is_quasi_iso(expanded, a, b))
        return CaseFailure{"expanded morphism fails to be a quasi-isomorphism at (a, b) = (" +
                               std::to_string(a) + ", " + std::to_string(b) + ")",
                           Json{{"a", a}, {"b", b}, {"morphism", morphism_to_json(f)}}};
    }
  }
  return std::nullopt;
}

/// Resolutions: report checks pass, the resolution is supported inside
/// [-(a+b-1), 0], and the differential power witnesses d^{a+b-1} != 0 for
/// non-projective groups.
inline CaseOutcome lower_bound_case(Rng& rng) {
  PresentedGroup x;
  if (rng.chance(60)) {
    x = PresentedGroup::cyclic(Int(rng.range(2, rng.chance(25) ? 512 : 64)));
  } else {
    GroupParams gp;
    gp.max_generators = 2;
    gp.max_order = 64;
    RandomGroup g = random_group(rng, gp);
    x = g.group;
  }
  for (int n = 2; n <= 6; ++n) {
    int a = static_cast<int>(rng.range(1, n - 1));
    int b = n - a;
    ResolutionReport report = hh_projective_resolution(x, a, b);
    if (!report.all_pass())
      return CaseFailure{"resolution report failed its checks",
                         Json{{"a", a}, {"b", b}, {"group", group_to_json(x)}}};
    const Sequence& p = report.resolution.seq();
    if (p.hi() > 0 || p.lo() < -(a + b - 1))
      return CaseFailure{"resolution leaves the window [-(a+b-1), 0]",
                         Json{{"a", a}, {"b", b}, {"group", group_to_json(x)}}};
    if (!is_projective(x) && !verify_lower_bound(report, a, b))
      return CaseFailure{"lower bound failed: d^{a+b-1} vanished on a resolution of a "
                         "non-projective group",
                         Json{{"a", a}, {"b", b}, {"group", group_to_json(x)}}};
  }
  return std::nullopt;
}

inline Json subgroup_json(const Subgroup& s) {
  return Json{{"ambient", group_to_json(s.ambient)}, {"gens", matrix_to_json(s.gens)}};
}

/// Engine vs element enumeration on small finite groups: kernels, images,
/// sums, intersections, containment, subquotients, homology values.
inline CaseOutcome oracle_case(Rng& rng) {
  GroupParams gp;
  gp.free_chance_pct = 0;
  gp.scramble_ops = 3;
  if (rng.chance(20)) {
    gp.max_generators = 1;
    gp.max_order = 512;
  } else {
    gp.max_generators = 3;
    gp.max_order = 64;
  }
  RandomGroup g = random_group(rng, gp);
  RandomGroup h = random_group(rng, gp);
  ElementTable tg(g.group);
  ElementTable th(h.group);
  GroupMorphism f = random_morphism(rng, g, h);
  auto data = [&]() {
    return Json{{"source", group_to_json(g.group)},
                {"target", group_to_json(h.group)},
                {"matrix", matrix_to_json(f.matrix)}};
  };

  if (oracle_span(tg, kernel(f).gens) != oracle_kernel(tg, th, f.matrix))
    return CaseFailure{"kernel disagrees with enumeration", data()};
  if (oracle_span(th, image(f).gens) != oracle_image(tg, th, f.matrix))
    return CaseFailure{"image disagrees with enumeration", data()};

  auto random_subgroup = [&](const RandomGroup& rg, const ElementTable&) {
    std::size_t k = static_cast<std::size_t>(rng.range(0, 2));
    IntMatrix gens(rg.group.generators, k);
    for (std::size_t c = 0; c < k; ++c)
      for (std::size_t i = 0; i < rg.group.generators; ++i) gens.at(i, c) = rng.range(-8, 8);
    return Subgroup(rg.group, std::move(gens));
  };
  Subgroup s1 = random_subgroup(g, tg);
  Subgroup s2 = random_subgroup(g, tg);
  std::set<int> set1 = oracle_span(tg, s1.gens);
  std::set<int> set2 = oracle_span(tg, s2.gens);
  if (oracle_span(tg, subgroup_sum(s1, s2).gens) != oracle_sum(tg, set1, set2))
    return CaseFailure{"subgroup sum disagrees with enumeration",
                       Json{{"s1", subgroup_json(s1)}, {"s2", subgroup_json(s2)}}};
  if (oracle_span(tg, subgroup_intersection(s1, s2).gens) != oracle_intersection(set1, set2))
    return CaseFailure{"subgroup intersection disagrees with enumeration",
                       Json{{"s1", subgroup_json(s1)}, {"s2", subgroup_json(s2)}}};
  bool engine_contains = contains(s1, s2);
  bool oracle_contains = std::includes(set1.begin(), set1.end(), set2.begin(), set2.end());
  if (engine_contains != oracle_contains)
    return CaseFailure{"containment disagrees with enumeration",
                       Json{{"s1", subgroup_json(s1)}, {"s2", subgroup_json(s2)}}};

  Subgroup inter = subgroup_intersection(s1, s2);
  Subquotient sq = subquotient(s1, inter);
  OracleQuotient oq = oracle_quotient(tg, set1, oracle_intersection(set1, set2));
  GroupInvariants sq_inv = canonical_invariants(sq.quotient);
  if (!oracle_matches_invariants(oq, sq_inv))
    return CaseFailure{"subquotient disagrees with enumeration",
                       Json{{"s1", subgroup_json(s1)}, {"s2", subgroup_json(s2)}}};
  if (sq_inv.order() * static_cast<long>(oracle_intersection(set1, set2).size()) !=
      static_cast<long>(set1.size()))
    return CaseFailure{"subquotient order is not |K|/|I|",
                       Json{{"s1", subgroup_json(s1)}, {"s2", subgroup_json(s2)}}};

  // homology of a short sequence of finite groups against sets of elements
  SequenceParams sp;
  sp.groups.max_generators = 2;
  sp.groups.max_order = 16;
  sp.groups.free_chance_pct = 0;
  sp.max_length = 4;
  Sequence c = random_sequence(rng, sp);
  std::vector<ElementTable> tables;
  for (int i = c.lo(); i <= c.hi(); ++i) tables.emplace_back(c.object_at(i));
  auto table_at = [&](int i) -> const ElementTable& {
    static const ElementTable trivial{PresentedGroup::zero()};
    if (!c.in_window(i)) return trivial;
    return tables[static_cast<std::size_t>(i - c.lo())];
  };
  int a = static_cast<int>(rng.range(1, 3));
  int b = static_cast<int>(rng.range(1, 3));
  for (int j = c.lo(); j <= c.hi(); ++j) {
    IntMatrix pow_a = power_differential(c, j, a).matrix;
    IntMatrix pow_b = power_differential(c, j - b, b).matrix;
    std::set<int> kset = oracle_kernel(table_at(j), table_at(j + a), pow_a);
    std::set<int> iset = oracle_image(table_at(j - b), table_at(j), pow_b);
    std::set<int> denom = oracle_intersection(kset, iset);
    OracleQuotient hq = oracle_quotient(table_at(j), kset, denom);
    HomologyValue hv = homology(c, HomologyQuery{a, b, j});
    if (!oracle_matches_invariants(hq, hv.invariants))
      return CaseFailure{"homology value disagrees with enumeration at position " +
                             std::to_string(j),
                         Json{{"a", a}, {"b", b}, {"j", j}, {"complex", complex_to_json(c)}}};
  }
  return std::nullopt;
}

}  // namespace suites

inline std::vector<std::string> suite_names() {
  return {"adjunction", "factorization", "reformulation", "m-complex",
          "total",      "rn-preserves-qis", "lower-bound", "oracle"};
}

inline SuiteResult run_suite(const std::string& name, std::uint64_t seed, int cases) {
  CaseOutcome (*check)(Rng&) = nullptr;
  if (name == "adjunction") check = suites::adjunction_case;
  else if (name == "factorization") check = suites::factorization_case;
  else if (name == "reformulation") check = suites::reformulation_case;
  else if (name == "m-complex") check = suites::m_complex_case;
  else if (name == "total") check = suites::total_case;
  else if (name == "rn-preserves-qis") check = suites::rn_qis_case;
  else if (name == "lower-bound") check = suites::lower_bound_case;
  else if (name == "oracle") check = suites::oracle_case;
  else fail("unknown suite: " + name);

  SuiteResult result;
  result.suite = name;
  result.seed = seed;
  Rng rng(seed);
  for (int k = 0; k < cases; ++k) {
    CaseOutcome outcome = check(rng);
    ++result.cases_run;
    if (outcome) {
      ++result.failures;
      if (result.first_failure_case < 0) {
        result.first_failure_case = k;
        result.first_failure = outcome->message;
        result.counterexample = Json{{"suite", name},
                                     {"seed", seed},
                                     {"case", k},
                                     {"message", outcome->message},
                                     {"instance", outcome->data}};
      }
    }
  }
  return result;
}

}  // namespace nhom
