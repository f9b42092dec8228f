#pragma once

// Deterministic random instances for the property suites: presented groups
// with a known diagonal core, morphisms valid by construction, sequences,
// N-complexes and quasi-isomorphisms built from closure-preserving recipes.
// Only the raw mt19937_64 stream is used, so a seed reproduces the same
// instances on every platform.

#include <cstdint>
#include <random>

#include "nhom/resolution.hpp"

namespace nhom {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  long below(long n) {
    require(n > 0, "rng: empty range");
    return static_cast<long>(next() % static_cast<std::uint64_t>(n));
  }

  long range(long lo, long hi) { return lo + below(hi - lo + 1); }  // inclusive

  bool chance(int percent) { return below(100) < percent; }

 private:
  std::mt19937_64 eng_;
};

struct Unimodular {
  IntMatrix u;
  IntMatrix u_inv;
};

inline Unimodular random_unimodular(Rng& rng, std::size_t n, int ops) {
  IntMatrix u = IntMatrix::identity(n);
  IntMatrix v = IntMatrix::identity(n);
  if (n < 1) return {u, v};
  for (int t = 0; t < ops; ++t) {
    long kind = rng.below(n >= 2 ? 3 : 1);
    if (kind == 0) {
      std::size_t i = static_cast<std::size_t>(rng.below(static_cast<long>(n)));
      if (rng.chance(50)) {
        u.negate_row(i);
        v.negate_col(i);
      }
    } else if (kind == 1) {
      std::size_t i = static_cast<std::size_t>(rng.below(static_cast<long>(n)));
      std::size_t j = static_cast<std::size_t>(rng.below(static_cast<long>(n)));
      if (i == j) continue;
      u.swap_rows(i, j);
      v.swap_cols(i, j);
    } else {
      std::size_t i = static_cast<std::size_t>(rng.below(static_cast<long>(n)));
      std::size_t j = static_cast<std::size_t>(rng.below(static_cast<long>(n)));
      if (i == j) continue;
      Int c(rng.range(-2, 2));
      if (c == 0) continue;
      u.row_axpy(i, j, c);
      v.col_axpy(j, i, -c);
    }
  }
  return {std::move(u), std::move(v)};
}

struct GroupParams {
  int max_generators = 3;
  long max_order = 64;      // cap on the torsion part
  int free_chance_pct = 0;  // chance per generator slot of a free factor
  int scramble_ops = 3;
};

/// A presented group whose diagonal core is known: the relation span equals
/// change.u applied to the lattice spanned by diag entries (0 = free slot).
struct RandomGroup {
  PresentedGroup group;
  std::vector<Int> diag;
  Unimodular change;
};

inline RandomGroup random_group(Rng& rng, const GroupParams& p) {
  std::size_t n = static_cast<std::size_t>(rng.range(0, p.max_generators));
  std::vector<Int> diag;
  Int torsion_order(1);
  Int prev(1);
  for (std::size_t i = 0; i < n; ++i) {
    if (rng.chance(p.free_chance_pct)) {
      diag.push_back(Int(0));
      continue;
    }
    Int mult(rng.range(1, 4));
    Int d = prev * mult;
    if (torsion_order * d > p.max_order) d = prev == 0 ? Int(1) : prev;
    if (torsion_order * d > p.max_order) d = 1;
    diag.push_back(d);
    torsion_order *= d;
    prev = d;
  }
  // free slots sort behind torsion so the chain convention is kept
  std::stable_sort(diag.begin(), diag.end(),
                   [](const Int& a, const Int& b) { return a != 0 && b == 0; });
  Unimodular change = random_unimodular(rng, n, p.scramble_ops);
  std::vector<IntMatrix> cols;
  for (std::size_t i = 0; i < n; ++i) {
    if (diag[i] == 0 && !rng.chance(20)) continue;  // usually drop trivial columns
    IntMatrix c(n, 1);
    c.at(i, 0) = diag[i];
    cols.push_back(std::move(c));
  }
  IntMatrix d_cols(n, 0);
  for (const IntMatrix& c : cols) d_cols = hstack(d_cols, c);
  IntMatrix rels = change.u * d_cols;
  if (rng.chance(30) && d_cols.cols() > 0) {
    // one redundant relation: a combination of existing columns
    IntMatrix w(d_cols.cols(), 1);
    for (std::size_t i = 0; i < w.rows(); ++i) w.at(i, 0) = rng.range(-2, 2);
    rels = hstack(rels, change.u * (d_cols * w));
  }
  return RandomGroup{PresentedGroup(n, std::move(rels)), std::move(diag), std::move(change)};
}

/// Valid morphism between two random groups, built on the diagonal cores
/// and conjugated into the scrambled presentations.
inline GroupMorphism random_morphism(Rng& rng, const RandomGroup& src, const RandomGroup& tgt) {
  IntMatrix f0(tgt.group.generators, src.group.generators);
  for (std::size_t i = 0; i < f0.rows(); ++i)
    for (std::size_t j = 0; j < f0.cols(); ++j) {
      const Int& d = src.diag[j];
      const Int& e = tgt.diag[i];
      if (d == 0) {
        f0.at(i, j) = rng.range(-3, 3);
      } else if (e == 0) {
        f0.at(i, j) = 0;
      } else {
        Int step = e / int_gcd(d, e);
        f0.at(i, j) = Int(rng.range(-2, 2)) * step;
      }
    }
  return GroupMorphism(src.group, tgt.group, tgt.change.u * f0 * src.change.u_inv);
}

struct SequenceParams {
  GroupParams groups;
  int max_length = 5;
};

struct RandomSequence {
  Sequence sequence;
  std::vector<RandomGroup> levels;
};

inline RandomSequence random_sequence_with_cores(Rng& rng, const SequenceParams& p) {
  int len = static_cast<int>(rng.range(1, p.max_length));
  int lo = static_cast<int>(rng.range(-2, 2));
  std::vector<RandomGroup> levels;
  for (int i = 0; i < len; ++i) levels.push_back(random_group(rng, p.groups));
  std::vector<PresentedGroup> objects;
  for (const RandomGroup& g : levels) objects.push_back(g.group);
  std::vector<IntMatrix> diffs;
  for (int i = 0; i + 1 < len; ++i)
    diffs.push_back(random_morphism(rng, levels[static_cast<std::size_t>(i)],
                                    levels[static_cast<std::size_t>(i + 1)])
                        .matrix);
  return RandomSequence{Sequence::make(lo, std::move(objects), diffs), std::move(levels)};
}

inline Sequence random_sequence(Rng& rng, const SequenceParams& p) {
  return random_sequence_with_cores(rng, p).sequence;
}

/// Level-wise change of presentation: an isomorphic complex together with
/// the isomorphism onto it.
struct ConjugatedComplex {
  Sequence sequence;
  SeqMorphism iso;
};

inline ConjugatedComplex conjugate_complex(Rng& rng, const Sequence& c, int ops) {
  if (c.empty())
    return ConjugatedComplex{c, identity_seq_morphism(c)};
  std::vector<Unimodular> changes;
  for (int i = c.lo(); i <= c.hi(); ++i)
    changes.push_back(random_unimodular(rng, c.object_at(i).generators, ops));
  std::vector<PresentedGroup> objects;
  std::vector<IntMatrix> diffs;
  for (int i = c.lo(); i <= c.hi(); ++i) {
    const Unimodular& ch = changes[static_cast<std::size_t>(i - c.lo())];
    objects.push_back(PresentedGroup(c.object_at(i).generators, ch.u * c.object_at(i).relations));
  }
  for (int i = c.lo(); i < c.hi(); ++i) {
    const Unimodular& a = changes[static_cast<std::size_t>(i - c.lo())];
    const Unimodular& b = changes[static_cast<std::size_t>(i + 1 - c.lo())];
    diffs.push_back(b.u * c.differential_at(i).matrix * a.u_inv);
  }
  Sequence conj = Sequence::make(c.lo(), std::move(objects), diffs);
  std::vector<IntMatrix> comps;
  for (int i = c.lo(); i <= c.hi(); ++i)
    comps.push_back(changes[static_cast<std::size_t>(i - c.lo())].u);
  SeqMorphism iso = SeqMorphism::make(c, conj, c.lo(), std::move(comps));
  return ConjugatedComplex{std::move(conj), std::move(iso)};
}

/// One strand with cyclic groups Z/p^k and differential multiplication by a
/// multiple of p^ceil(k/n); its n-th power vanishes.
inline Sequence cyclic_strand(Rng& rng, int n, long max_order) {
  long p = rng.chance(50) ? 2 : 3;
  int kmax = 0;
  long pw = 1;
  while (pw * p <= max_order) pw *= p, ++kmax;
  if (kmax == 0) {
    p = 2;
    kmax = 1;
  }
  int k = static_cast<int>(rng.range(1, kmax));
  Int order(1);
  for (int t = 0; t < k; ++t) order *= p;
  int tpow = (k + n - 1) / n;
  Int mult(1);
  for (int t = 0; t < tpow; ++t) mult *= p;
  mult *= rng.range(1, 2);
  int len = static_cast<int>(rng.range(4, 7));
  int lo = static_cast<int>(rng.range(-1, 0));
  std::vector<PresentedGroup> objects;
  std::vector<IntMatrix> diffs;
  for (int i = 0; i < len; ++i) objects.push_back(PresentedGroup::cyclic(order));
  for (int i = 0; i + 1 < len; ++i) {
    IntMatrix m(1, 1);
    m.at(0, 0) = mult;
    diffs.push_back(std::move(m));
  }
  return Sequence::make(lo, std::move(objects), diffs);
}

/// Random certified N-complex: kernel truncations of random sequences,
/// repetition expansions of 2-complexes, and cyclic strands, optionally
/// summed and conjugated.
inline NComplex random_ncomplex(Rng& rng, int n, const SequenceParams& p) {
  Sequence base;
  long variant = rng.below(n >= 2 ? 3 : 2);
  if (variant == 0) {
    base = kernel_truncate(random_sequence(rng, p), n).complex.seq();
  } else if (variant == 1) {
    std::vector<Sequence> strands;
    int count = static_cast<int>(rng.range(1, 2));
    long budget = count == 1 ? p.groups.max_order : std::max(2L, p.groups.max_order / 8);
    for (int i = 0; i < count; ++i) strands.push_back(cyclic_strand(rng, n, budget));
    base = seq_direct_sum(strands);
  } else {
    SequenceParams shorter = p;
    shorter.max_length = std::min(p.max_length, 1 + 6 / n);
    NComplex two = kernel_truncate(random_sequence(rng, shorter), 2).complex;
    base = r_n_expand(two, n).seq();
  }
  if (rng.chance(50)) base = conjugate_complex(rng, base, p.groups.scramble_ops).sequence;
  return validate_ncomplex(base, n);
}

/// Random valid sequence morphism: scalars, powers of the shift, counits,
/// sum inclusions/projections, zero maps and composites of those.
inline SeqMorphism random_seq_morphism(Rng& rng, const SequenceParams& p, int depth = 1) {
  long recipe = rng.below(depth > 0 ? 7 : 6);
  switch (recipe) {
    case 0: {
      Sequence c = random_sequence(rng, p);
      return scalar_seq_morphism(c, Int(rng.range(-3, 3)));
    }
    case 1: {
      Sequence c = random_sequence(rng, p);
      return shift_power_morphism(c, static_cast<int>(rng.range(1, 2)));
    }
    case 2: {
      Sequence c = random_sequence(rng, p);
      return kernel_truncate(c, static_cast<int>(rng.range(1, 4))).counit;
    }
    case 3: {
      std::vector<Sequence> parts{random_sequence(rng, p), random_sequence(rng, p)};
      std::size_t which = static_cast<std::size_t>(rng.below(2));
      return rng.chance(50) ? seq_sum_inclusion(parts, which) : seq_sum_projection(parts, which);
    }
    case 4: {
      Sequence c = random_sequence(rng, p);
      Sequence d = random_sequence(rng, p);
      return zero_seq_morphism(c, d);
    }
    case 5: {
      Sequence c = random_sequence(rng, p);
      return conjugate_complex(rng, c, p.groups.scramble_ops).iso;
    }
    default: {
      SeqMorphism f = random_seq_morphism(rng, p, depth - 1);
      // extend f by a morphism out of its target
      if (rng.chance(50)) {
        SeqMorphism g = scalar_seq_morphism(f.target(), Int(rng.range(-2, 2)));
        return compose(g, f);
      }
      SeqMorphism g = shift_power_morphism(f.target(), 1);
      return compose(g, f);
    }
  }
}

inline NComplex random_two_complex(Rng& rng, const SequenceParams& p) {
  long variant = rng.below(3);
  if (variant == 0) return kernel_truncate(random_sequence(rng, p), 2).complex;
  if (variant == 1) {
    GroupParams gp = p.groups;
    RandomGroup x = random_group(rng, gp);
    return classical_resolution(x.group).complex;
  }
  RandomGroup x = random_group(rng, p.groups);
  return validate_ncomplex(concentrated_at(x.group, static_cast<int>(rng.range(-1, 1))), 2);
}

/// Contractible 2-complex: some group mapped identically onto itself at two
/// consecutive positions.
inline Sequence contractible_pair(Rng& rng, const GroupParams& gp) {
  RandomGroup a = random_group(rng, gp);
  int pos = static_cast<int>(rng.range(-2, 2));
  return Sequence::make(pos, {a.group, a.group},
                        {IntMatrix::identity(a.group.generators)});
}

/// Random quasi-isomorphism of bounded 2-complexes (for the classical
/// homology): isomorphisms, inclusions and projections along contractible
/// summands, resolution augmentations, and composites.
inline SeqMorphism random_two_complex_qis(Rng& rng, const SequenceParams& p) {
  long recipe = rng.below(5);
  switch (recipe) {
    case 0: {
      Sequence c = random_two_complex(rng, p).seq();
      return conjugate_complex(rng, c, p.groups.scramble_ops).iso;
    }
    case 1: {
      Sequence c = random_two_complex(rng, p).seq();
      std::vector<Sequence> parts{c, contractible_pair(rng, p.groups)};
      return seq_sum_inclusion(parts, 0);
    }
    case 2: {
      Sequence c = random_two_complex(rng, p).seq();
      std::vector<Sequence> parts{c, contractible_pair(rng, p.groups)};
      return seq_sum_projection(parts, 0);
    }
    case 3: {
      RandomGroup x = random_group(rng, p.groups);
      return classical_resolution(x.group).augmentation;
    }
    default: {
      SeqMorphism f = random_two_complex_qis(rng, p);
      ConjugatedComplex conj = conjugate_complex(rng, f.target(), p.groups.scramble_ops);
      return compose(conj.iso, f);
    }
  }
}

}  // namespace nhom
