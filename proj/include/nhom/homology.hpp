#pragma once

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "nhom/sequence.hpp"

namespace nhom {

struct HomologyQuery {
  int a;
  int b;
  int j;
};

/// The value ker d^a / (denominator) at one position, together with its
/// isomorphism invariants and a flag recording whether the position was far
/// enough from the window boundary for padding not to matter.
struct HomologyValue {
  HomologyQuery query;
  Subquotient sq;
  GroupInvariants invariants;
  bool interior;

  bool window_truncated() const { return !interior; }
};

enum class HomologyRoute {
  generalized,  // denominator ker d^a and im d^b intersected; valid on any sequence
  kapranov,     // denominator im d^b outright; needs im d^b inside ker d^a
};

inline HomologyValue homology_impl(const Sequence& c, HomologyQuery q, HomologyRoute route) {
  require(q.a >= 1 && q.b >= 1, "homology: a and b must be positive");
  Subgroup ker_a = kernel(power_differential(c, q.j, q.a));
  Subgroup im_b = image(power_differential(c, q.j - q.b, q.b));
  Subgroup denom = im_b;
  if (route == HomologyRoute::kapranov) {
    require(contains(ker_a, im_b),
            "homology: im d^b not inside ker d^a although the complex is certified");
  } else {
    denom = subgroup_intersection(ker_a, im_b);
  }
  Subquotient sq = subquotient(ker_a, denom);
  GroupInvariants inv = canonical_invariants(sq.quotient);
  return HomologyValue{q, std::move(sq), std::move(inv), is_interior(c, q.a, q.b, q.j)};
}

/// Generalized homology ker d^a / (ker d^a + im d^b intersected), defined on
/// any sequence.
inline HomologyValue homology(const Sequence& c, HomologyQuery q) {
  return homology_impl(c, q, HomologyRoute::generalized);
}

/// Kapranov homology ker d^a / im d^b on a certified N-complex; requires
/// a + b >= N, which makes the containment automatic.
inline HomologyValue homology(const NComplex& c, HomologyQuery q) {
  require(q.a + q.b >= c.n(),
          "homology: Kapranov query on an N-complex requires a + b >= N");
  return homology_impl(c.seq(), q, HomologyRoute::kapranov);
}

struct InducedHomology {
  HomologyValue source;
  HomologyValue target;
  GroupMorphism map;
};

/// H(f) at one position: the induced map between the two subquotients.
inline InducedHomology induced_homology(const SeqMorphism& f, HomologyQuery q,
                                        HomologyRoute route = HomologyRoute::generalized) {
  HomologyValue hs = homology_impl(f.source(), q, route);
  HomologyValue ht = homology_impl(f.target(), q, route);
  GroupMorphism m = induced_map(f.component_at(q.j), hs.sq, ht.sq);
  return InducedHomology{std::move(hs), std::move(ht), std::move(m)};
}

inline GroupMorphism homology_induced(const SeqMorphism& f, HomologyQuery q,
                                      HomologyRoute route = HomologyRoute::generalized) {
  return induced_homology(f, q, route).map;
}

/// Checks that homology at (a, b, j) equals classical homology of the
/// alternating-power complex of the translate, via the explicit
/// identity-induced isomorphism and matching invariants.
inline bool factorization_check(const NComplex& c, HomologyQuery q) {
  HomologyValue lhs = homology(c, q);
  NComplex s = s_functor(translate(c, q.j), q.a, q.b);
  HomologyValue rhs = homology(s, HomologyQuery{1, 1, 0});
  if (lhs.invariants != rhs.invariants) return false;
  GroupMorphism ind = induced_map(identity_morphism(c.seq().object_at(q.j)), lhs.sq, rhs.sq);
  return is_isomorphism(ind);
}

/// The homology groups of an N-complex strung into a sequence: position j
/// holds the (a, b) value there and the differential sends [x] to [dx]. The
/// result is an M-complex for M = min(a, b).
inline NComplex homology_sequence(const NComplex& c, int a, int b) {
  require(a + b >= c.n(), "homology_sequence: requires a + b >= n");
  const Sequence& s = c.seq();
  if (s.empty()) return validate_ncomplex(Sequence(), std::min(a, b));
  std::vector<HomologyValue> values;
  for (int j = s.lo(); j <= s.hi(); ++j) values.push_back(homology(c, HomologyQuery{a, b, j}));
  std::vector<PresentedGroup> objects;
  for (const HomologyValue& v : values) objects.push_back(v.sq.quotient);
  std::vector<IntMatrix> diffs;
  for (int j = s.lo(); j < s.hi(); ++j) {
    std::size_t k = static_cast<std::size_t>(j - s.lo());
    diffs.push_back(induced_map(s.differential_at(j), values[k].sq, values[k + 1].sq).matrix);
  }
  return validate_ncomplex(Sequence::make(s.lo(), std::move(objects), diffs), std::min(a, b));
}

/// [x] -> [x] from the (p, N-p) value into the (p+1, N-p-1) value at the
/// same position, induced by ker d^p inside ker d^{p+1} and im d^{N-p}
/// inside im d^{N-p-1}.
inline GroupMorphism i_star(const NComplex& c, int p, int j) {
  require(1 <= p && p <= c.n() - 2, "i_star: p out of range");
  HomologyValue src = homology(c, HomologyQuery{p, c.n() - p, j});
  HomologyValue tgt = homology(c, HomologyQuery{p + 1, c.n() - p - 1, j});
  return induced_map(identity_morphism(c.seq().object_at(j)), src.sq, tgt.sq);
}

/// [x] -> [dx] from the (p, N-p) value at j into the (p-1, N-p+1) value at
/// j+1.
inline GroupMorphism d_star(const NComplex& c, int p, int j) {
  require(2 <= p && p <= c.n() - 1, "d_star: p out of range");
  HomologyValue src = homology(c, HomologyQuery{p, c.n() - p, j});
  HomologyValue tgt = homology(c, HomologyQuery{p - 1, c.n() - p + 1, j + 1});
  return induced_map(c.seq().differential_at(j), src.sq, tgt.sq);
}

struct TotalSummand {
  int p;
  int j;
  GroupInvariants invariants;
  bool interior;
  std::size_t offset;  // generator offset of this block inside the sum
  std::size_t gens;
};

/// Total homology of an N-complex: position n carries the sum of all
/// (p, N-p) values at positions j with 2j + p = n, the differential is the
/// unsigned sum of the inclusion-induced and differential-induced blocks,
/// and the whole thing is certified as an (N-1)-complex.
struct TotalHomology {
  NComplex complex;
  int lo = 0;
  int hi = -1;
  std::vector<std::vector<TotalSummand>> labels;  // indexed by n - lo

  const std::vector<TotalSummand>& summands_at(int n) const {
    static const std::vector<TotalSummand> none;
    if (n < lo || n > hi) return none;
    return labels[static_cast<std::size_t>(n - lo)];
  }
};

inline TotalHomology total_homology(const NComplex& c) {
  const int n_c = c.n();
  require(n_c >= 2, "total_homology: n must be at least 2");
  const Sequence& s = c.seq();
  if (s.empty())
    return TotalHomology{validate_ncomplex(Sequence(), n_c - 1), 0, -1, {}};

  // Only interior positions contribute: boundary values are artifacts of the
  // finite window. Pad the window first if a finite-support complex should
  // contribute everywhere.
  std::map<std::pair<int, int>, HomologyValue> value;  // (p, j) -> H value
  for (int p = 1; p <= n_c - 1; ++p)
    for (int j = s.lo(); j <= s.hi(); ++j)
      if (is_interior(s, p, n_c - p, j))
        value.emplace(std::make_pair(p, j), homology(c, HomologyQuery{p, n_c - p, j}));

  const int out_lo = 2 * s.lo() + 1;
  const int out_hi = 2 * s.hi() + n_c - 1;
  std::vector<std::vector<TotalSummand>> labels;
  std::vector<PresentedGroup> objects;
  for (int n = out_lo; n <= out_hi; ++n) {
    std::vector<TotalSummand> row;
    std::vector<PresentedGroup> parts;
    std::size_t offset = 0;
    for (int p = 1; p <= n_c - 1; ++p) {
      if ((n - p) % 2 != 0) continue;
      int j = (n - p) / 2;
      auto it = value.find({p, j});
      if (it == value.end()) continue;
      const HomologyValue& v = it->second;
      row.push_back(TotalSummand{p, j, v.invariants, v.interior, offset,
                                 v.sq.quotient.generators});
      parts.push_back(v.sq.quotient);
      offset += v.sq.quotient.generators;
    }
    labels.push_back(std::move(row));
    objects.push_back(direct_sum(parts));
  }

  std::vector<IntMatrix> diffs;
  for (int n = out_lo; n < out_hi; ++n) {
    const auto& src_row = labels[static_cast<std::size_t>(n - out_lo)];
    const auto& tgt_row = labels[static_cast<std::size_t>(n + 1 - out_lo)];
    IntMatrix block(objects[static_cast<std::size_t>(n + 1 - out_lo)].generators,
                    objects[static_cast<std::size_t>(n - out_lo)].generators);
    auto find_target = [&](int p, int j) -> const TotalSummand* {
      for (const TotalSummand& t : tgt_row)
        if (t.p == p && t.j == j) return &t;
      return nullptr;
    };
    auto write_block = [&](const IntMatrix& m, std::size_t ro, std::size_t co) {
      for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t jj = 0; jj < m.cols(); ++jj) block.at(ro + i, co + jj) = m.at(i, jj);
    };
    for (const TotalSummand& src : src_row) {
      const HomologyValue& hv = value.at({src.p, src.j});
      if (src.p + 1 <= n_c - 1) {
        if (const TotalSummand* tgt = find_target(src.p + 1, src.j)) {
          const HomologyValue& tv = value.at({tgt->p, tgt->j});
          GroupMorphism m =
              induced_map(identity_morphism(s.object_at(src.j)), hv.sq, tv.sq);
          write_block(m.matrix, tgt->offset, src.offset);
        }
      }
      if (src.p >= 2) {
        if (const TotalSummand* tgt = find_target(src.p - 1, src.j + 1)) {
          const HomologyValue& tv = value.at({tgt->p, tgt->j});
          GroupMorphism m = induced_map(s.differential_at(src.j), hv.sq, tv.sq);
          write_block(m.matrix, tgt->offset, src.offset);
        }
      }
    }
    diffs.push_back(std::move(block));
  }

  NComplex total = validate_ncomplex(Sequence::make(out_lo, std::move(objects), diffs), n_c - 1);
  return TotalHomology{std::move(total), out_lo, out_hi, std::move(labels)};
}

struct QisPosition {
  int j;
  bool iso;
  GroupInvariants source;
  GroupInvariants target;
};

struct QisReport {
  std::vector<QisPosition> positions;
  bool all = true;
};

inline QisReport qis_report(const SeqMorphism& f, int a, int b,
                            const std::vector<int>& positions) {
  QisReport report;
  for (int j : positions) {
    InducedHomology ih = induced_homology(f, HomologyQuery{a, b, j});
    bool iso = is_isomorphism(ih.map);
    report.positions.push_back(QisPosition{j, iso, ih.source.invariants, ih.target.invariants});
    report.all = report.all && iso;
  }
  return report;
}

inline std::vector<int> default_qis_positions(const SeqMorphism& f, int a, int b) {
  int lo = std::min(f.source().lo(), f.target().lo());
  int hi = std::max(f.source().hi(), f.target().hi());
  std::vector<int> out;
  for (int j = lo + b; j <= hi - a; ++j) out.push_back(j);
  return out;
}

inline QisReport qis_report(const SeqMorphism& f, int a, int b) {
  return qis_report(f, a, b, default_qis_positions(f, a, b));
}

/// Is H^{(a,b)}(f) an isomorphism at every queried position? Defaults to
/// all positions of the union window that are interior for (a, b).
inline bool is_quasi_iso(const SeqMorphism& f, int a, int b, const std::vector<int>& positions) {
  return qis_report(f, a, b, positions).all;
}

inline bool is_quasi_iso(const SeqMorphism& f, int a, int b) {
  return qis_report(f, a, b).all;
}

/// With N = a + b: generalized homology of a sequence agrees with Kapranov
/// homology of its kernel truncation, the counit inducing the isomorphism;
/// and ker/(ker ∩ im) agrees with (ker + im)/im via the identity.
inline bool reformulation_check(const Sequence& c, int a, int b, int j,
                                const TruncationResult& tr) {
  require(tr.complex.n() == a + b, "reformulation_check: truncation has the wrong n");
  HomologyQuery q{a, b, j};
  HomologyValue lhs = homology(c, q);
  HomologyValue rhs = homology(tr.complex, q);
  if (lhs.invariants != rhs.invariants) return false;
  GroupMorphism counit_induced = induced_map(tr.counit.component_at(j), rhs.sq, lhs.sq);
  if (!is_isomorphism(counit_induced)) return false;
  // Second isomorphism theorem, both quotients formed explicitly.
  Subgroup im_b = image(power_differential(c, j - b, b));
  Subgroup sum = subgroup_sum(lhs.sq.k, im_b);
  Subquotient right_form = subquotient(sum, Subgroup(c.object_at(j), im_b.gens));
  if (canonical_invariants(right_form.quotient) != lhs.invariants) return false;
  GroupMorphism second = induced_map(identity_morphism(c.object_at(j)), lhs.sq, right_form);
  return is_isomorphism(second);
}

inline bool reformulation_check(const Sequence& c, int a, int b, int j) {
  return reformulation_check(c, a, b, j, kernel_truncate(c, a + b));
}

struct LatticeNode {
  bool is_kernel;
  int power;
  GroupInvariants invariants;

  std::string name() const {
    return (is_kernel ? "ker d^" : "im d^") + std::to_string(power);
  }
};

struct LatticeEdge {
  std::size_t sub;    // index of the smaller node
  std::size_t super;  // index of the larger node
  bool holds;
};

/// The inclusion diagram among ker d^k and im d^k (1 <= k < N) at one
/// position: every structural edge verified semantically, plus the full
/// ordered containment matrix for spotting collapses.
struct LatticeReport {
  int position;
  int n;
  bool interior;
  std::vector<LatticeNode> nodes;  // ker d^1..ker d^{N-1}, then im d^1..im d^{N-1}
  std::vector<LatticeEdge> edges;
  std::vector<std::vector<bool>> contains_matrix;  // [x][y]: node x contains node y
  bool all_edges_hold = true;

  std::string to_dot() const {
    std::ostringstream os;
    os << "digraph inclusion_lattice {\n  rankdir=BT;\n  node [shape=box];\n";
    for (std::size_t i = 0; i < nodes.size(); ++i)
      os << "  n" << i << " [label=\"" << nodes[i].name() << "\\n"
         << nodes[i].invariants.to_string() << "\"];\n";
    for (const LatticeEdge& e : edges)
      if (e.holds) os << "  n" << e.sub << " -> n" << e.super << ";\n";
    os << "}\n";
    return os.str();
  }
};

inline LatticeReport inclusion_lattice(const NComplex& c, int j) {
  const int n = c.n();
  require(n >= 2, "inclusion_lattice: n must be at least 2");
  const Sequence& s = c.seq();
  LatticeReport report;
  report.position = j;
  report.n = n;
  report.interior = is_interior(s, n - 1, n - 1, j);
  std::vector<Subgroup> subs;
  for (int k = 1; k <= n - 1; ++k) {
    Subgroup ker_k = kernel(power_differential(s, j, k));
    report.nodes.push_back(LatticeNode{
        true, k, canonical_invariants(subquotient(ker_k, zero_subgroup(s.object_at(j))).quotient)});
    subs.push_back(std::move(ker_k));
  }
  for (int k = 1; k <= n - 1; ++k) {
    Subgroup im_k = image(power_differential(s, j - k, k));
    report.nodes.push_back(LatticeNode{
        false, k, canonical_invariants(subquotient(im_k, zero_subgroup(s.object_at(j))).quotient)});
    subs.push_back(std::move(im_k));
  }
  auto ker_index = [&](int k) { return static_cast<std::size_t>(k - 1); };
  auto im_index = [&](int k) { return static_cast<std::size_t>(n - 1 + k - 1); };
  auto add_edge = [&](std::size_t sub, std::size_t super) {
    bool holds = contains(subs[super], subs[sub]);
    report.edges.push_back(LatticeEdge{sub, super, holds});
    report.all_edges_hold = report.all_edges_hold && holds;
  };
  for (int k = 1; k <= n - 2; ++k) add_edge(ker_index(k), ker_index(k + 1));
  for (int k = 1; k <= n - 2; ++k) add_edge(im_index(k + 1), im_index(k));
  for (int k = 1; k <= n - 1; ++k) add_edge(im_index(n - k), ker_index(k));
  report.contains_matrix.assign(subs.size(), std::vector<bool>(subs.size(), false));
  for (std::size_t x = 0; x < subs.size(); ++x)
    for (std::size_t y = 0; y < subs.size(); ++y)
      report.contains_matrix[x][y] = contains(subs[x], subs[y]);
  return report;
}

}  // namespace nhom
