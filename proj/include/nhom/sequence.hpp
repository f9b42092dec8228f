#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "nhom/group.hpp"

namespace nhom {

inline int floor_div_int(int a, int b) {
  int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

/// Z-indexed diagram of presented groups with differentials raising the
/// index: d_i : C_i -> C_{i+1}. Only a finite window [lo, hi] is stored;
/// positions outside it are the zero group and maps touching the outside are
/// zero maps. The empty window is the zero sequence.
class Sequence {
 public:
  Sequence() : lo_(0), hi_(-1) {}

  /// Validating constructor from raw matrices. Differential k maps
  /// objects[k] to objects[k+1].
  static Sequence make(int lo, std::vector<PresentedGroup> objects,
                       const std::vector<IntMatrix>& differentials) {
    Sequence s;
    if (objects.empty()) {
      require(differentials.empty(), "sequence: differentials without objects");
      return s;
    }
    s.lo_ = lo;
    s.hi_ = lo + static_cast<int>(objects.size()) - 1;
    require(differentials.size() + 1 == objects.size(),
            "sequence: need exactly one differential between consecutive objects");
    s.objects_ = std::move(objects);
    for (std::size_t k = 0; k < differentials.size(); ++k) {
      const IntMatrix& m = differentials[k];
      require(m.rows() == s.objects_[k + 1].generators && m.cols() == s.objects_[k].generators,
              "sequence: differential " + std::to_string(lo + static_cast<int>(k)) +
                  " has wrong shape");
      GroupMorphism d(s.objects_[k], s.objects_[k + 1], m);
      require(check_morphism(d), "sequence: differential at position " +
                                     std::to_string(lo + static_cast<int>(k)) +
                                     " is not well-defined");
      s.diffs_.push_back(std::move(d));
    }
    return s;
  }

  int lo() const { return lo_; }
  int hi() const { return hi_; }
  bool empty() const { return lo_ > hi_; }
  bool in_window(int i) const { return lo_ <= i && i <= hi_; }

  const PresentedGroup& object_at(int i) const {
    static const PresentedGroup zero;
    return in_window(i) ? objects_[static_cast<std::size_t>(i - lo_)] : zero;
  }

  GroupMorphism differential_at(int i) const {
    if (lo_ <= i && i < hi_) return diffs_[static_cast<std::size_t>(i - lo_)];
    return zero_morphism(object_at(i), object_at(i + 1));
  }

  bool operator==(const Sequence& o) const {
    if (lo_ != o.lo_ || hi_ != o.hi_) return false;
    if (objects_ != o.objects_) return false;
    for (std::size_t k = 0; k < diffs_.size(); ++k)
      if (diffs_[k].matrix != o.diffs_[k].matrix) return false;
    return true;
  }
  bool operator!=(const Sequence& o) const { return !(*this == o); }

 private:
  int lo_, hi_;
  std::vector<PresentedGroup> objects_;
  std::vector<GroupMorphism> diffs_;
};

/// d^k : C_i -> C_{i+k}, with k = 0 the identity. Composites through
/// positions outside the window pass through the zero group.
inline GroupMorphism power_differential(const Sequence& c, int i, int k) {
  require(k >= 0, "power_differential: negative power");
  GroupMorphism m = identity_morphism(c.object_at(i));
  for (int t = 0; t < k; ++t) m = compose(c.differential_at(i + t), m);
  return m;
}

/// First position where the composite of n consecutive differentials fails
/// to vanish, if any.
inline std::optional<int> find_ncomplex_violation(const Sequence& c, int n) {
  require(n >= 1, "n-complex check: n must be at least 1");
  for (int i = c.lo(); i + n <= c.hi(); ++i)
    if (!is_zero_morphism(power_differential(c, i, n))) return i;
  return std::nullopt;
}

/// Sequence plus a certificate that any n consecutive differentials compose
/// to zero. Only obtainable through validation.
class NComplex {
 public:
  const Sequence& seq() const { return seq_; }
  int n() const { return n_; }

 private:
  NComplex(Sequence s, int n) : seq_(std::move(s)), n_(n) {}
  friend NComplex validate_ncomplex(const Sequence&, int);
  Sequence seq_;
  int n_;
};

inline NComplex validate_ncomplex(const Sequence& c, int n) {
  if (auto bad = find_ncomplex_violation(c, n))
    fail("not a " + std::to_string(n) + "-complex: d^" + std::to_string(n) +
         " is nonzero starting at position " + std::to_string(*bad));
  struct Access : NComplex {
    Access(Sequence s, int n) : NComplex(std::move(s), n) {}
  };
  return Access(c, n);
}

/// T^j: position i of the result holds C_{i+j}; the window shifts by -j.
inline Sequence translate(const Sequence& c, int j) {
  if (c.empty()) return c;
  std::vector<PresentedGroup> objects;
  std::vector<IntMatrix> diffs;
  for (int i = c.lo(); i <= c.hi(); ++i) objects.push_back(c.object_at(i));
  for (int i = c.lo(); i < c.hi(); ++i) diffs.push_back(c.differential_at(i).matrix);
  return Sequence::make(c.lo() - j, std::move(objects), diffs);
}

inline NComplex translate(const NComplex& c, int j) {
  return validate_ncomplex(translate(c.seq(), j), c.n());
}

/// Level-wise family of morphisms C_i -> D_i with commuting squares.
/// Components outside the stored range are zero.
class SeqMorphism {
 public:
  static SeqMorphism make(Sequence source, Sequence target, int comp_lo,
                          std::vector<IntMatrix> components) {
    SeqMorphism f;
    f.source_ = std::move(source);
    f.target_ = std::move(target);
    f.lo_ = comp_lo;
    f.comps_ = std::move(components);
    for (std::size_t k = 0; k < f.comps_.size(); ++k) {
      int i = comp_lo + static_cast<int>(k);
      require(f.comps_[k].rows() == f.target_.object_at(i).generators &&
                  f.comps_[k].cols() == f.source_.object_at(i).generators,
              "sequence morphism: component at position " + std::to_string(i) +
                  " has wrong shape");
      require(check_morphism(f.component_at(i)),
              "sequence morphism: component at position " + std::to_string(i) +
                  " is not well-defined");
    }
    int lo = std::min({f.source_.lo(), f.target_.lo(), comp_lo}) - 1;
    int hi = std::max({f.source_.hi(), f.target_.hi(),
                       comp_lo + static_cast<int>(f.comps_.size()) - 1});
    for (int i = lo; i <= hi; ++i) {
      GroupMorphism left = compose(f.target_.differential_at(i), f.component_at(i));
      GroupMorphism right = compose(f.component_at(i + 1), f.source_.differential_at(i));
      require(morphism_equal(left, right),
              "sequence morphism: square at position " + std::to_string(i) +
                  " does not commute");
    }
    return f;
  }

  const Sequence& source() const { return source_; }
  const Sequence& target() const { return target_; }

  IntMatrix component_matrix_at(int i) const {
    if (i >= lo_ && i < lo_ + static_cast<int>(comps_.size()))
      return comps_[static_cast<std::size_t>(i - lo_)];
    return IntMatrix(target_.object_at(i).generators, source_.object_at(i).generators);
  }

  GroupMorphism component_at(int i) const {
    return GroupMorphism(source_.object_at(i), target_.object_at(i), component_matrix_at(i));
  }

 private:
  SeqMorphism() = default;
  Sequence source_, target_;
  int lo_ = 0;
  std::vector<IntMatrix> comps_;
};

inline SeqMorphism identity_seq_morphism(const Sequence& c) {
  std::vector<IntMatrix> comps;
  for (int i = c.lo(); i <= c.hi(); ++i)
    comps.push_back(IntMatrix::identity(c.object_at(i).generators));
  return SeqMorphism::make(c, c, c.lo(), std::move(comps));
}

inline SeqMorphism zero_seq_morphism(const Sequence& src, const Sequence& tgt) {
  return SeqMorphism::make(src, tgt, 0, {});
}

inline SeqMorphism compose(const SeqMorphism& g, const SeqMorphism& f) {
  require(g.source() == f.target(), "sequence morphism compose: middle objects differ");
  int lo = std::min(f.source().lo(), g.target().lo());
  int hi = std::max(f.source().hi(), g.target().hi());
  std::vector<IntMatrix> comps;
  for (int i = lo; i <= hi; ++i)
    comps.push_back(g.component_matrix_at(i) * f.component_matrix_at(i));
  if (lo > hi) return zero_seq_morphism(f.source(), g.target());
  return SeqMorphism::make(f.source(), g.target(), lo, std::move(comps));
}

inline bool seq_morphism_equal(const SeqMorphism& f, const SeqMorphism& g) {
  require(f.source() == g.source() && f.target() == g.target(),
          "seq_morphism_equal: endpoints differ");
  int lo = std::min(f.source().lo(), f.target().lo());
  int hi = std::max(f.source().hi(), f.target().hi());
  for (int i = lo; i <= hi; ++i)
    if (!morphism_equal(f.component_at(i), g.component_at(i))) return false;
  return true;
}

/// The differential as a morphism C -> T^k C with component d^k at every
/// position; k = 1 is the shift morphism.
inline SeqMorphism shift_power_morphism(const Sequence& c, int k) {
  require(k >= 0, "shift_power_morphism: negative power");
  Sequence shifted = translate(c, k);
  std::vector<IntMatrix> comps;
  for (int i = c.lo(); i <= c.hi(); ++i) comps.push_back(power_differential(c, i, k).matrix);
  if (c.empty()) return zero_seq_morphism(c, shifted);
  return SeqMorphism::make(c, shifted, c.lo(), std::move(comps));
}

inline SeqMorphism shift_morphism(const Sequence& c) { return shift_power_morphism(c, 1); }

/// s * identity; scalars are central, so this always commutes.
inline SeqMorphism scalar_seq_morphism(const Sequence& c, const Int& s) {
  std::vector<IntMatrix> comps;
  for (int i = c.lo(); i <= c.hi(); ++i)
    comps.push_back(s * IntMatrix::identity(c.object_at(i).generators));
  if (c.empty()) return zero_seq_morphism(c, c);
  return SeqMorphism::make(c, c, c.lo(), std::move(comps));
}

inline SeqMorphism translate(const SeqMorphism& f, int j) {
  Sequence src = translate(f.source(), j);
  Sequence tgt = translate(f.target(), j);
  int lo = std::min(f.source().lo(), f.target().lo());
  int hi = std::max(f.source().hi(), f.target().hi());
  std::vector<IntMatrix> comps;
  for (int i = lo; i <= hi; ++i) comps.push_back(f.component_matrix_at(i + j));
  if (lo > hi) return zero_seq_morphism(src, tgt);
  return SeqMorphism::make(src, tgt, lo - j, std::move(comps));
}

/// Same diagram on a wider window: explicit zero objects are glued on both
/// ends. Values of every homology functor are unchanged; only interiority
/// of positions changes.
inline Sequence pad_window(const Sequence& c, int below, int above) {
  require(below >= 0 && above >= 0, "pad_window: negative padding");
  int lo = c.lo() - below, hi = c.hi() + above;
  if (lo > hi) return Sequence();
  std::vector<PresentedGroup> objects;
  std::vector<IntMatrix> diffs;
  for (int i = lo; i <= hi; ++i) objects.push_back(c.object_at(i));
  for (int i = lo; i < hi; ++i) diffs.push_back(c.differential_at(i).matrix);
  return Sequence::make(lo, std::move(objects), diffs);
}

/// A single group sitting at one position, zero elsewhere.
inline Sequence concentrated_at(const PresentedGroup& x, int pos = 0) {
  return Sequence::make(pos, {x}, {});
}

struct InteriorRange {
  int lo, hi;
  bool contains(int j) const { return lo <= j && j <= hi; }
  bool empty() const { return lo > hi; }
};

/// Positions j with [j-b, j+a] inside the window: homology queries with
/// parameters (a, b) there are unaffected by zero padding.
inline InteriorRange interior_range(const Sequence& c, int a, int b) {
  return InteriorRange{c.lo() + b, c.hi() - a};
}

inline bool is_interior(const Sequence& c, int a, int b, int j) {
  return interior_range(c, a, b).contains(j);
}

/// Alternating-power functor: output position 2k holds C_{k(a+b)}, output
/// position 2k+1 holds C_{k(a+b)+a}; differentials alternate d^a and d^b.
inline Sequence s_functor(const Sequence& c, int a, int b) {
  require(a >= 1 && b >= 1, "s_functor: a and b must be positive");
  if (c.empty()) return c;
  auto idx = [&](int m) {
    return (m % 2 == 0) ? (m / 2) * (a + b) : ((m - 1) / 2) * (a + b) + a;
  };
  int m_first = 2 * floor_div_int(c.lo(), a + b) - 2;
  int m_last = 2 * floor_div_int(c.hi(), a + b) + 3;
  int out_lo = 0, out_hi = -1;
  bool seen = false;
  for (int m = m_first; m <= m_last; ++m) {
    if (idx(m) >= c.lo() && idx(m) <= c.hi()) {
      if (!seen) out_lo = m, seen = true;
      out_hi = m;
    }
  }
  if (!seen) return Sequence();
  std::vector<PresentedGroup> objects;
  std::vector<IntMatrix> diffs;
  for (int m = out_lo; m <= out_hi; ++m) objects.push_back(c.object_at(idx(m)));
  for (int m = out_lo; m < out_hi; ++m)
    diffs.push_back(power_differential(c, idx(m), idx(m + 1) - idx(m)).matrix);
  return Sequence::make(out_lo, std::move(objects), diffs);
}

/// On an N-complex with a + b >= N the alternating composites are d^{a+b} =
/// 0, so the output is a genuine 2-complex.
inline NComplex s_functor(const NComplex& c, int a, int b) {
  require(a + b >= c.n(), "s_functor: need a + b >= n for a certified 2-complex");
  return validate_ncomplex(s_functor(c.seq(), a, b), 2);
}

inline SeqMorphism s_functor(const SeqMorphism& f, int a, int b) {
  Sequence src = s_functor(f.source(), a, b);
  Sequence tgt = s_functor(f.target(), a, b);
  auto idx = [&](int m) {
    return (m % 2 == 0) ? (m / 2) * (a + b) : ((m - 1) / 2) * (a + b) + a;
  };
  int lo = std::min(src.lo(), tgt.lo());
  int hi = std::max(src.hi(), tgt.hi());
  std::vector<IntMatrix> comps;
  for (int m = lo; m <= hi; ++m) comps.push_back(f.component_matrix_at(idx(m)));
  if (lo > hi) return zero_seq_morphism(src, tgt);
  return SeqMorphism::make(std::move(src), std::move(tgt), lo, std::move(comps));
}

/// Largest sub-N-complex of a sequence: position i carries ker(d^N : C_i ->
/// C_{i+N}), re-presented on its own generators, together with the inclusion
/// back into C. On an N-complex the kernels are everything and the result
/// is the complex itself with the identity counit.
struct TruncationResult {
  NComplex complex;
  SeqMorphism counit;
};

inline TruncationResult kernel_truncate(const Sequence& c, int n) {
  require(n >= 1, "kernel_truncate: n must be at least 1");
  std::vector<PresentedGroup> objects;
  std::vector<IntMatrix> gens;  // kernel generators inside each C_i
  std::vector<bool> full;
  for (int i = c.lo(); i <= c.hi(); ++i) {
    const PresentedGroup& ci = c.object_at(i);
    Subgroup k = kernel(power_differential(c, i, n));
    if (contains(k, full_subgroup(ci))) {
      objects.push_back(ci);
      gens.push_back(IntMatrix::identity(ci.generators));
      full.push_back(true);
    } else {
      Subquotient sq = subquotient(k, zero_subgroup(ci));
      objects.push_back(sq.quotient);
      gens.push_back(sq.lift);
      full.push_back(false);
    }
  }
  auto level = [&](int i) -> Subquotient {
    std::size_t k = static_cast<std::size_t>(i - c.lo());
    Subgroup sub(c.object_at(i), gens[k]);
    return Subquotient{c.object_at(i), sub, zero_subgroup(c.object_at(i)), objects[k], gens[k]};
  };
  std::vector<IntMatrix> diffs;
  for (int i = c.lo(); i < c.hi(); ++i) {
    std::size_t k = static_cast<std::size_t>(i - c.lo());
    if (full[k] && full[k + 1]) {
      diffs.push_back(c.differential_at(i).matrix);
    } else {
      diffs.push_back(induced_map(c.differential_at(i), level(i), level(i + 1)).matrix);
    }
  }
  Sequence kseq = c.empty() ? Sequence() : Sequence::make(c.lo(), objects, diffs);
  NComplex complex = validate_ncomplex(kseq, n);
  SeqMorphism counit = c.empty() ? zero_seq_morphism(kseq, c)
                                 : SeqMorphism::make(kseq, c, c.lo(), gens);
  return TruncationResult{std::move(complex), std::move(counit)};
}

/// The unique morphism between kernel truncations commuting with the
/// counits. Restriction of each component to the kernel subgroup.
inline SeqMorphism truncate_morphism(const SeqMorphism& f, const TruncationResult& src,
                                     const TruncationResult& tgt) {
  const Sequence& ks = src.complex.seq();
  const Sequence& kt = tgt.complex.seq();
  int lo = std::min(ks.lo(), kt.lo());
  int hi = std::max(ks.hi(), kt.hi());
  std::vector<IntMatrix> comps;
  for (int i = lo; i <= hi; ++i) {
    IntMatrix src_gens = src.counit.component_matrix_at(i);
    IntMatrix tgt_gens = tgt.counit.component_matrix_at(i);
    IntMatrix mapped = f.component_matrix_at(i) * src_gens;
    if (tgt_gens == IntMatrix::identity(tgt_gens.rows())) {
      comps.push_back(std::move(mapped));
      continue;
    }
    SmithSolver into(hstack(tgt_gens, f.target().object_at(i).relations));
    auto sol = into.solve_matrix(mapped);
    if (!sol) fail("truncate_morphism: image left the kernel; invariant broken");
    IntMatrix m(kt.object_at(i).generators, ks.object_at(i).generators);
    for (std::size_t jc = 0; jc < m.cols(); ++jc)
      for (std::size_t ir = 0; ir < m.rows(); ++ir) m.at(ir, jc) = sol->at(ir, jc);
    comps.push_back(std::move(m));
  }
  SeqMorphism out = (lo > hi) ? zero_seq_morphism(ks, kt)
                              : SeqMorphism::make(ks, kt, lo, std::move(comps));
  require(seq_morphism_equal(compose(tgt.counit, out), compose(f, src.counit)),
          "truncate_morphism: counit square failed; invariant broken");
  return out;
}

inline SeqMorphism truncate_morphism(const SeqMorphism& f, int n) {
  TruncationResult src = kernel_truncate(f.source(), n);
  TruncationResult tgt = kernel_truncate(f.target(), n);
  return truncate_morphism(f, src, tgt);
}

/// Forgets the d^N = 0 certificate.
inline Sequence embed(const NComplex& c) { return c.seq(); }

/// Repetition functor: degree Nj holds C_{2j}; degrees Nj+1 .. Nj+N-1 all
/// hold C_{2j+1} connected by identities; the two original differentials
/// sit at the block boundaries.
inline NComplex r_n_expand(const NComplex& c2, int n) {
  require(c2.n() <= 2, "r_n_expand: input must be a 2-complex");
  require(n >= 2, "r_n_expand: n must be at least 2");
  if (n == 2) return c2;
  const Sequence& c = c2.seq();
  if (c.empty()) return validate_ncomplex(Sequence(), n);
  auto in_index = [&](int m) {
    int j = floor_div_int(m, n);
    int t = m - n * j;
    return t == 0 ? 2 * j : 2 * j + 1;
  };
  int lo = c.lo(), hi = c.hi();
  int out_lo = (lo % 2 == 0) ? n * (lo / 2) : n * ((lo - 1) / 2) + 1;
  int out_hi = (hi % 2 == 0) ? n * (hi / 2) : n * ((hi - 1) / 2) + (n - 1);
  std::vector<PresentedGroup> objects;
  std::vector<IntMatrix> diffs;
  for (int m = out_lo; m <= out_hi; ++m) objects.push_back(c.object_at(in_index(m)));
  for (int m = out_lo; m < out_hi; ++m) {
    int j = floor_div_int(m, n);
    int t = m - n * j;
    if (t == 0)
      diffs.push_back(c.differential_at(2 * j).matrix);
    else if (t == n - 1)
      diffs.push_back(c.differential_at(2 * j + 1).matrix);
    else
      diffs.push_back(IntMatrix::identity(c.object_at(2 * j + 1).generators));
  }
  return validate_ncomplex(Sequence::make(out_lo, std::move(objects), diffs), n);
}

inline SeqMorphism r_n_expand_morphism(const SeqMorphism& f, int n) {
  require(n >= 2, "r_n_expand_morphism: n must be at least 2");
  if (n == 2) return f;
  NComplex src2 = validate_ncomplex(f.source(), 2);
  NComplex tgt2 = validate_ncomplex(f.target(), 2);
  Sequence src = r_n_expand(src2, n).seq();
  Sequence tgt = r_n_expand(tgt2, n).seq();
  auto in_index = [&](int m) {
    int j = floor_div_int(m, n);
    int t = m - n * j;
    return t == 0 ? 2 * j : 2 * j + 1;
  };
  int lo = std::min(src.lo(), tgt.lo());
  int hi = std::max(src.hi(), tgt.hi());
  std::vector<IntMatrix> comps;
  for (int m = lo; m <= hi; ++m) comps.push_back(f.component_matrix_at(in_index(m)));
  if (lo > hi) return zero_seq_morphism(src, tgt);
  return SeqMorphism::make(std::move(src), std::move(tgt), lo, std::move(comps));
}

inline Sequence seq_direct_sum(const std::vector<Sequence>& parts) {
  int lo = 0, hi = -1;
  bool seen = false;
  for (const Sequence& p : parts)
    if (!p.empty()) {
      lo = seen ? std::min(lo, p.lo()) : p.lo();
      hi = seen ? std::max(hi, p.hi()) : p.hi();
      seen = true;
    }
  if (!seen) return Sequence();
  std::vector<PresentedGroup> objects;
  std::vector<IntMatrix> diffs;
  for (int i = lo; i <= hi; ++i) {
    std::vector<PresentedGroup> level;
    for (const Sequence& p : parts) level.push_back(p.object_at(i));
    objects.push_back(direct_sum(level));
  }
  for (int i = lo; i < hi; ++i) {
    std::vector<IntMatrix> blocks;
    for (const Sequence& p : parts) blocks.push_back(p.differential_at(i).matrix);
    diffs.push_back(block_diagonal(blocks));
  }
  return Sequence::make(lo, std::move(objects), diffs);
}

inline SeqMorphism seq_sum_inclusion(const std::vector<Sequence>& parts, std::size_t which) {
  Sequence sum = seq_direct_sum(parts);
  const Sequence& part = parts[which];
  int lo = std::min(part.lo(), sum.lo());
  int hi = std::max(part.hi(), sum.hi());
  std::vector<IntMatrix> comps;
  for (int i = lo; i <= hi; ++i) {
    std::vector<PresentedGroup> level;
    for (const Sequence& p : parts) level.push_back(p.object_at(i));
    comps.push_back(direct_sum_inclusion(level, which).matrix);
  }
  if (lo > hi) return zero_seq_morphism(part, sum);
  return SeqMorphism::make(part, std::move(sum), lo, std::move(comps));
}

inline SeqMorphism seq_sum_projection(const std::vector<Sequence>& parts, std::size_t which) {
  Sequence sum = seq_direct_sum(parts);
  const Sequence& part = parts[which];
  int lo = std::min(part.lo(), sum.lo());
  int hi = std::max(part.hi(), sum.hi());
  std::vector<IntMatrix> comps;
  for (int i = lo; i <= hi; ++i) {
    std::vector<PresentedGroup> level;
    for (const Sequence& p : parts) level.push_back(p.object_at(i));
    comps.push_back(direct_sum_projection(level, which).matrix);
  }
  if (lo > hi) return zero_seq_morphism(sum, part);
  return SeqMorphism::make(std::move(sum), part, lo, std::move(comps));
}

}  // namespace nhom
