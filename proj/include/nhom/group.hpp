#pragma once

#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "nhom/normal_form.hpp"

namespace nhom {

/// Finitely generated abelian group presented as the cokernel of an integer
/// relation matrix: G = Z^generators / (column span of relations). Each
/// column of `relations` is one relation vector.
struct PresentedGroup {
  std::size_t generators = 0;
  IntMatrix relations;  // generators x (number of relations)

  PresentedGroup() : relations(0, 0) {}
  PresentedGroup(std::size_t gens, IntMatrix rels) : generators(gens), relations(std::move(rels)) {
    require(relations.rows() == generators, "presented group: relation rows != generator count");
  }

  static PresentedGroup zero() { return PresentedGroup(); }
  static PresentedGroup free(std::size_t n) { return PresentedGroup(n, IntMatrix(n, 0)); }
  static PresentedGroup cyclic(const Int& m) {
    IntMatrix r(1, 1);
    r.at(0, 0) = m;
    return PresentedGroup(1, std::move(r));
  }

  bool operator==(const PresentedGroup& o) const {
    return generators == o.generators && relations == o.relations;
  }
  bool operator!=(const PresentedGroup& o) const { return !(*this == o); }
};

/// Isomorphism invariants: G = Z^free_rank + sum Z/f_i with f_1 | f_2 | ...
/// and every f_i > 1. Two presented groups are isomorphic iff these match.
struct GroupInvariants {
  std::size_t free_rank = 0;
  std::vector<Int> factors;

  bool operator==(const GroupInvariants& o) const {
    return free_rank == o.free_rank && factors == o.factors;
  }
  bool operator!=(const GroupInvariants& o) const { return !(*this == o); }

  bool trivial() const { return free_rank == 0 && factors.empty(); }

  /// Group order as an integer; 0 stands for infinite.
  Int order() const {
    if (free_rank > 0) return Int(0);
    Int n(1);
    for (const Int& f : factors) n *= f;
    return n;
  }

  std::string to_string() const {
    if (trivial()) return "0";
    std::ostringstream os;
    bool first = true;
    if (free_rank > 0) {
      os << "Z";
      if (free_rank > 1) os << "^" << free_rank;
      first = false;
    }
    for (const Int& f : factors) {
      if (!first) os << " + ";
      os << "Z/" << f.get_str();
      first = false;
    }
    return os.str();
  }
};

inline GroupInvariants canonical_invariants(const PresentedGroup& g) {
  SmithDecomposition snf = smith_normal_form(g.relations);
  GroupInvariants inv;
  const std::size_t rank = snf.rank();
  inv.free_rank = g.generators - rank;
  for (std::size_t i = 0; i < rank; ++i)
    if (snf.d.at(i, i) > 1) inv.factors.push_back(snf.d.at(i, i));
  return inv;
}

inline bool is_trivial(const PresentedGroup& g) { return canonical_invariants(g).trivial(); }

inline bool isomorphic(const PresentedGroup& g, const PresentedGroup& h) {
  return canonical_invariants(g) == canonical_invariants(h);
}

/// Morphism of presented groups. `matrix` sends generator j of the source to
/// the column-j combination of target generators; well-definedness means
/// matrix * source.relations lands in the target relation span.
struct GroupMorphism {
  PresentedGroup source;
  PresentedGroup target;
  IntMatrix matrix;  // target.generators x source.generators

  GroupMorphism(PresentedGroup src, PresentedGroup tgt, IntMatrix m)
      : source(std::move(src)), target(std::move(tgt)), matrix(std::move(m)) {
    require(matrix.rows() == target.generators && matrix.cols() == source.generators,
            "group morphism: matrix shape does not match generator counts");
  }
};

inline GroupMorphism identity_morphism(const PresentedGroup& g) {
  return GroupMorphism(g, g, IntMatrix::identity(g.generators));
}

inline GroupMorphism zero_morphism(const PresentedGroup& src, const PresentedGroup& tgt) {
  return GroupMorphism(src, tgt, IntMatrix(tgt.generators, src.generators));
}

inline GroupMorphism multiplication_morphism(const PresentedGroup& g, const Int& s) {
  return GroupMorphism(g, g, s * IntMatrix::identity(g.generators));
}

inline GroupMorphism compose(const GroupMorphism& g, const GroupMorphism& f) {
  require(g.source == f.target, "compose: middle objects differ");
  return GroupMorphism(f.source, g.target, g.matrix * f.matrix);
}

inline bool check_morphism(const GroupMorphism& f) {
  SmithSolver tgt(f.target.relations);
  return tgt.solve_matrix(f.matrix * f.source.relations).has_value();
}

/// Equality of morphisms is semantic: matrices may differ by columns lying
/// in the target relation span.
inline bool morphism_equal(const GroupMorphism& f, const GroupMorphism& g) {
  require(f.source == g.source && f.target == g.target,
          "morphism_equal: endpoints differ");
  return SmithSolver(f.target.relations).solve_matrix(f.matrix - g.matrix).has_value();
}

inline bool is_zero_morphism(const GroupMorphism& f) {
  return SmithSolver(f.target.relations).solve_matrix(f.matrix).has_value();
}

/// Subgroup of a presented group, generated by the columns of `gens`
/// (written in ambient generators). Equality and containment are semantic,
/// never representational.
struct Subgroup {
  PresentedGroup ambient;
  IntMatrix gens;  // ambient.generators x k

  Subgroup(PresentedGroup amb, IntMatrix g) : ambient(std::move(amb)), gens(std::move(g)) {
    require(gens.rows() == ambient.generators, "subgroup: generator rows != ambient generators");
  }
};

inline Subgroup zero_subgroup(const PresentedGroup& g) {
  return Subgroup(g, IntMatrix(g.generators, 0));
}

inline Subgroup full_subgroup(const PresentedGroup& g) {
  return Subgroup(g, IntMatrix::identity(g.generators));
}

/// Does x (in ambient generators) lie in s, modulo the ambient relations?
inline bool subgroup_member(const Subgroup& s, const std::vector<Int>& x) {
  return SmithSolver(hstack(s.gens, s.ambient.relations)).contains(x);
}

inline bool contains(const Subgroup& outer, const Subgroup& inner) {
  require(outer.ambient == inner.ambient, "contains: ambient groups differ");
  SmithSolver solver(hstack(outer.gens, outer.ambient.relations));
  for (std::size_t j = 0; j < inner.gens.cols(); ++j)
    if (!solver.contains(inner.gens.col(j))) return false;
  return true;
}

inline bool subgroup_equal(const Subgroup& a, const Subgroup& b) {
  return contains(a, b) && contains(b, a);
}

/// ker f as a subgroup of the source: all x with f(x) = 0 in the target.
inline Subgroup kernel(const GroupMorphism& f) {
  // (x, y) with matrix*x + relations*y = 0; the x-parts generate the kernel.
  IntMatrix k = kernel_basis(hstack(f.matrix, f.target.relations));
  IntMatrix gens(f.source.generators, k.cols());
  for (std::size_t j = 0; j < k.cols(); ++j)
    for (std::size_t i = 0; i < f.source.generators; ++i) gens.at(i, j) = k.at(i, j);
  return Subgroup(f.source, std::move(gens));
}

inline Subgroup image(const GroupMorphism& f) { return Subgroup(f.target, f.matrix); }

inline Subgroup subgroup_sum(const Subgroup& a, const Subgroup& b) {
  require(a.ambient == b.ambient, "subgroup_sum: ambient groups differ");
  return Subgroup(a.ambient, hstack(a.gens, b.gens));
}

inline Subgroup subgroup_intersection(const Subgroup& a, const Subgroup& b) {
  require(a.ambient == b.ambient, "subgroup_intersection: ambient groups differ");
  // Solve a.gens*x + rel*x' = b.gens*y + rel*y'; the left-hand values
  // generate the intersection of the two lifted lattices.
  const IntMatrix& rel = a.ambient.relations;
  IntMatrix lhs = hstack(a.gens, rel);
  IntMatrix rhs = hstack(b.gens, rel);
  IntMatrix neg = Int(-1) * rhs;
  IntMatrix k = kernel_basis(hstack(lhs, neg));
  IntMatrix coeffs(lhs.cols(), k.cols());
  for (std::size_t j = 0; j < k.cols(); ++j)
    for (std::size_t i = 0; i < lhs.cols(); ++i) coeffs.at(i, j) = k.at(i, j);
  return Subgroup(a.ambient, lhs * coeffs);
}

/// K/I presented on K's generators. `lift` maps each quotient generator to
/// a representative element of K inside the ambient group; projection
/// followed by lift is the identity on quotient generators by construction.
struct Subquotient {
  PresentedGroup ambient;
  Subgroup k;
  Subgroup i;
  PresentedGroup quotient;
  IntMatrix lift;  // ambient.generators x quotient.generators
};

inline Subquotient subquotient(const Subgroup& k, const Subgroup& i) {
  require(k.ambient == i.ambient, "subquotient: ambient groups differ");
  require(contains(k, i), "subquotient: denominator is not contained in numerator");
  // Relations among K's generators in K/I: coefficient vectors c with
  // K.gens * c inside span(I.gens) + span(ambient relations).
  IntMatrix big = hstack(k.gens, hstack(i.gens, k.ambient.relations));
  IntMatrix ker = kernel_basis(big);
  IntMatrix rels(k.gens.cols(), ker.cols());
  for (std::size_t j = 0; j < ker.cols(); ++j)
    for (std::size_t c = 0; c < k.gens.cols(); ++c) rels.at(c, j) = ker.at(c, j);
  PresentedGroup quotient(k.gens.cols(), std::move(rels));
  return Subquotient{k.ambient, k, i, std::move(quotient), k.gens};
}

/// The map [x] -> [f(x)] between subquotients, for f mapping numerator into
/// numerator and denominator into denominator. Throws when the containments
/// fail (the map is simply not induced then).
inline GroupMorphism induced_map(const GroupMorphism& f, const Subquotient& src,
                                 const Subquotient& tgt) {
  require(f.source == src.ambient && f.target == tgt.ambient,
          "induced_map: morphism endpoints do not match the subquotients");
  SmithSolver into_k(hstack(tgt.k.gens, tgt.ambient.relations));
  auto mapped_k = into_k.solve_matrix(f.matrix * src.k.gens);
  if (!mapped_k) fail("map not induced: image of numerator leaves the target numerator");
  SmithSolver into_i(hstack(tgt.i.gens, tgt.ambient.relations));
  if (!into_i.solve_matrix(f.matrix * src.i.gens))
    fail("map not induced: image of denominator leaves the target denominator");
  // Coefficients on tgt.K's generators for each mapped source generator.
  IntMatrix m(tgt.quotient.generators, src.quotient.generators);
  for (std::size_t j = 0; j < src.quotient.generators; ++j)
    for (std::size_t i = 0; i < tgt.quotient.generators; ++i) m.at(i, j) = mapped_k->at(i, j);
  GroupMorphism out(src.quotient, tgt.quotient, std::move(m));
  if (!check_morphism(out)) fail("induced_map: internal error, induced matrix ill-defined");
  return out;
}

/// Isomorphism test for an explicit morphism: trivial kernel and trivial
/// cokernel, both decided exactly.
inline bool is_isomorphism(const GroupMorphism& f) {
  PresentedGroup coker(f.target.generators, hstack(f.matrix, f.target.relations));
  if (!is_trivial(coker)) return false;
  Subgroup ker = kernel(f);
  SmithSolver src_rel(f.source.relations);
  for (std::size_t j = 0; j < ker.gens.cols(); ++j)
    if (!src_rel.contains(ker.gens.col(j))) return false;
  return true;
}

inline PresentedGroup direct_sum(const std::vector<PresentedGroup>& parts) {
  std::size_t gens = 0;
  std::vector<IntMatrix> rels;
  rels.reserve(parts.size());
  for (const PresentedGroup& p : parts) {
    gens += p.generators;
    rels.push_back(p.relations);
  }
  return PresentedGroup(gens, block_diagonal(rels));
}

inline GroupMorphism direct_sum_inclusion(const std::vector<PresentedGroup>& parts,
                                          std::size_t which) {
  PresentedGroup sum = direct_sum(parts);
  std::size_t offset = 0;
  for (std::size_t i = 0; i < which; ++i) offset += parts[i].generators;
  IntMatrix m(sum.generators, parts[which].generators);
  for (std::size_t j = 0; j < parts[which].generators; ++j) m.at(offset + j, j) = 1;
  return GroupMorphism(parts[which], sum, std::move(m));
}

inline GroupMorphism direct_sum_projection(const std::vector<PresentedGroup>& parts,
                                           std::size_t which) {
  PresentedGroup sum = direct_sum(parts);
  std::size_t offset = 0;
  for (std::size_t i = 0; i < which; ++i) offset += parts[i].generators;
  IntMatrix m(parts[which].generators, sum.generators);
  for (std::size_t j = 0; j < parts[which].generators; ++j) m.at(j, offset + j) = 1;
  return GroupMorphism(sum, parts[which], std::move(m));
}

}  // namespace nhom
