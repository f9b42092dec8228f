#pragma once

// Brute-force element tables for small finite presented groups, used to
// cross-check the normal-form engine. Everything here is elementary on
// purpose: group orders and exponents come from gcds of minors (Bareiss
// determinants), elements from breadth-first closures. No code in this
// header calls the Smith/Hermite machinery.

#include <cstdint>
#include <set>
#include <vector>

#include "nhom/group.hpp"

namespace nhom {

/// gcd of all k x k minors; 0 when there are none or all vanish.
inline Int gcd_of_minors(const IntMatrix& m, std::size_t k) {
  if (k == 0) return Int(1);
  if (k > m.rows() || k > m.cols()) return Int(0);
  std::vector<std::size_t> ri(k), ci(k);
  auto first_combo = [](std::vector<std::size_t>& idx) {
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  };
  auto next_combo = [](std::vector<std::size_t>& idx, std::size_t limit) {
    std::size_t i = idx.size();
    while (i > 0) {
      --i;
      if (idx[i] + (idx.size() - i) < limit) {
        ++idx[i];
        for (std::size_t j = i + 1; j < idx.size(); ++j) idx[j] = idx[j - 1] + 1;
        return true;
      }
    }
    return false;
  };
  Int g(0);
  first_combo(ri);
  do {
    first_combo(ci);
    do {
      IntMatrix sub(k, k);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) sub.at(i, j) = m.at(ri[i], ci[j]);
      g = int_gcd(g, det_bareiss(sub));
      if (g == 1) return g;
    } while (next_combo(ci, m.cols()));
  } while (next_combo(ri, m.rows()));
  return g;
}

/// Invariant factors read off minor gcds: d_k = D_k / D_{k-1}. Returns the
/// full diagonal (including leading 1s, excluding trailing 0s).
inline std::vector<Int> minor_invariant_diagonal(const IntMatrix& m) {
  std::vector<Int> out;
  Int prev(1);
  for (std::size_t k = 1; k <= std::min(m.rows(), m.cols()); ++k) {
    Int dk = gcd_of_minors(m, k);
    if (dk == 0) break;
    out.push_back(dk / prev);
    prev = dk;
  }
  return out;
}

/// Explicit element enumeration of a finite presented group: every element
/// gets an id, addition is a table lookup. Construction rejects infinite
/// groups, groups above `order_bound`, and presentations whose enumeration
/// space (exponent^generators) exceeds `space_cap`.
class ElementTable {
 public:
  explicit ElementTable(const PresentedGroup& g, long order_bound = 512,
                        std::int64_t space_cap = std::int64_t(1) << 22)
      : group_(g) {
    const std::size_t n = g.generators;
    if (n == 0) {
      exponent_ = 1;
      space_ = 1;
      owner_.assign(1, 0);
      reps_.push_back({});
      finish_tables();
      return;
    }
    Int order_big = gcd_of_minors(g.relations, n);
    if (order_big == 0) fail("brute force: group is infinite");
    if (!fits_long(order_big) || to_long(order_big) > order_bound)
      fail("brute force: group order exceeds the configured bound");
    Int prev = gcd_of_minors(g.relations, n - 1);
    require(prev != 0 && divides(prev, order_big), "brute force: minor gcd chain broken");
    Int exp_big = order_big / prev;
    exponent_ = to_long(exp_big);
    if (exponent_ == 0) exponent_ = 1;

    space_ = 1;
    for (std::size_t i = 0; i < n; ++i) {
      space_ *= exponent_;
      if (space_ > space_cap) fail("brute force: enumeration space too large");
    }

    // Image of the relation lattice in (Z/e)^n. exponent * Z^n lies inside
    // the lattice, so membership mod e decides membership outright.
    std::vector<std::vector<long>> rel_cols;
    for (std::size_t j = 0; j < g.relations.cols(); ++j) {
      std::vector<long> col(n);
      for (std::size_t i = 0; i < n; ++i)
        col[i] = to_long(mod_floor(g.relations.at(i, j), exp_big));
      rel_cols.push_back(std::move(col));
    }
    std::vector<char> in_lat(static_cast<std::size_t>(space_), 0);
    std::vector<std::vector<long>> lattice;
    lattice.push_back(std::vector<long>(n, 0));
    in_lat[0] = 1;
    for (std::size_t head = 0; head < lattice.size(); ++head) {
      std::vector<long> cur = lattice[head];
      for (const auto& rc : rel_cols) {
        std::vector<long> nxt(n);
        for (std::size_t i = 0; i < n; ++i) nxt[i] = (cur[i] + rc[i]) % exponent_;
        std::int64_t c = encode(nxt);
        if (!in_lat[static_cast<std::size_t>(c)]) {
          in_lat[static_cast<std::size_t>(c)] = 1;
          lattice.push_back(std::move(nxt));
        }
      }
    }

    // Breadth-first over cosets; each new coset floods its full member set.
    owner_.assign(static_cast<std::size_t>(space_), -1);
    auto claim = [&](const std::vector<long>& rep, int id) {
      for (const auto& l : lattice) {
        std::vector<long> mem(n);
        for (std::size_t i = 0; i < n; ++i) mem[i] = (rep[i] + l[i]) % exponent_;
        owner_[static_cast<std::size_t>(encode(mem))] = id;
      }
    };
    reps_.push_back(std::vector<long>(n, 0));
    claim(reps_[0], 0);
    for (std::size_t head = 0; head < reps_.size(); ++head) {
      std::vector<long> cur = reps_[head];
      for (std::size_t i = 0; i < n; ++i) {
        std::vector<long> nxt = cur;
        nxt[i] = (nxt[i] + 1) % exponent_;
        if (owner_[static_cast<std::size_t>(encode(nxt))] == -1) {
          int id = static_cast<int>(reps_.size());
          claim(nxt, id);
          reps_.push_back(std::move(nxt));
        }
      }
    }
    require(Int(static_cast<long>(reps_.size())) == order_big,
            "brute force: enumeration disagrees with the minor-gcd order");
    finish_tables();
  }

  const PresentedGroup& group() const { return group_; }
  long order() const { return static_cast<long>(reps_.size()); }
  long exponent() const { return exponent_; }
  const std::vector<long>& rep(int id) const { return reps_[static_cast<std::size_t>(id)]; }

  /// Element id of an arbitrary vector written in ambient generators.
  int id_of(const std::vector<Int>& x) const {
    require(x.size() == group_.generators, "id_of: wrong coordinate count");
    std::vector<long> red(x.size());
    Int e(exponent_);
    for (std::size_t i = 0; i < x.size(); ++i) red[i] = to_long(mod_floor(x[i], e));
    return owner_[static_cast<std::size_t>(encode(red))];
  }

  int add(int a, int b) const { return add_table_[a][b]; }
  int negate(int a) const { return neg_[a]; }

  int scalar(long s, int a) const {
    std::vector<long> v = reps_[static_cast<std::size_t>(a)];
    std::vector<Int> w(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) w[i] = Int(s) * Int(v[i]);
    return id_of(w);
  }

  const std::vector<std::vector<int>>& addition_table() const { return add_table_; }

 private:
  std::int64_t encode(const std::vector<long>& v) const {
    std::int64_t c = 0;
    for (std::size_t i = v.size(); i > 0; --i) c = c * exponent_ + v[i - 1];
    return c;
  }

  void finish_tables() {
    const int m = static_cast<int>(reps_.size());
    add_table_.assign(m, std::vector<int>(m, 0));
    neg_.assign(m, 0);
    for (int a = 0; a < m; ++a) {
      for (int b = 0; b < m; ++b) {
        std::vector<long> s(reps_[a].size());
        for (std::size_t i = 0; i < s.size(); ++i)
          s[i] = (reps_[a][i] + reps_[b][i]) % exponent_;
        add_table_[a][b] = owner_[static_cast<std::size_t>(encode(s))];
      }
      std::vector<long> ng(reps_[a].size());
      for (std::size_t i = 0; i < ng.size(); ++i)
        ng[i] = (exponent_ - reps_[a][i]) % exponent_;
      neg_[a] = owner_[static_cast<std::size_t>(encode(ng))];
    }
  }

  PresentedGroup group_;
  long exponent_ = 1;
  std::int64_t space_ = 1;
  std::vector<int> owner_;
  std::vector<std::vector<long>> reps_;
  std::vector<std::vector<int>> add_table_;
  std::vector<int> neg_;
};

inline ElementTable brute_force_group(const PresentedGroup& g, long order_bound = 512) {
  return ElementTable(g, order_bound);
}

/// Subgroup generated by the given ambient-coordinate columns, as a set of
/// element ids.
inline std::set<int> oracle_span(const ElementTable& t, const IntMatrix& gens) {
  std::set<int> out{t.id_of(std::vector<Int>(t.group().generators, Int(0)))};
  std::vector<int> queue(out.begin(), out.end());
  std::vector<int> gen_ids;
  for (std::size_t j = 0; j < gens.cols(); ++j) gen_ids.push_back(t.id_of(gens.col(j)));
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (int g : gen_ids) {
      int s = t.add(queue[head], g);
      if (out.insert(s).second) queue.push_back(s);
    }
  }
  return out;
}

inline std::vector<Int> apply_matrix(const IntMatrix& f, const std::vector<long>& rep) {
  std::vector<Int> x(rep.size());
  for (std::size_t i = 0; i < rep.size(); ++i) x[i] = rep[i];
  return mul_vec(f, x);
}

inline std::set<int> oracle_kernel(const ElementTable& src, const ElementTable& tgt,
                                   const IntMatrix& f) {
  std::set<int> out;
  const int zero = tgt.id_of(std::vector<Int>(tgt.group().generators, Int(0)));
  for (int a = 0; a < src.order(); ++a)
    if (tgt.id_of(apply_matrix(f, src.rep(a))) == zero) out.insert(a);
  return out;
}

inline std::set<int> oracle_image(const ElementTable& src, const ElementTable& tgt,
                                  const IntMatrix& f) {
  std::set<int> out;
  for (int a = 0; a < src.order(); ++a) out.insert(tgt.id_of(apply_matrix(f, src.rep(a))));
  return out;
}

inline std::set<int> oracle_sum(const ElementTable& t, const std::set<int>& a,
                                const std::set<int>& b) {
  std::set<int> out;
  for (int x : a)
    for (int y : b) out.insert(t.add(x, y));
  return out;
}

inline std::set<int> oracle_intersection(const std::set<int>& a, const std::set<int>& b) {
  std::set<int> out;
  for (int x : a)
    if (b.count(x)) out.insert(x);
  return out;
}

/// Coset decomposition of K by I inside an element table. Supplies exactly
/// what isomorphism testing needs: the order and, for each divisor d, the
/// number of cosets killed by multiplication by d.
struct OracleQuotient {
  const ElementTable* table;
  std::set<int> k;
  std::set<int> i;
  std::vector<int> coset_reps;  // minimal member id per coset

  long order() const { return static_cast<long>(coset_reps.size()); }

  long count_killed_by(long d) const {
    long c = 0;
    for (int r : coset_reps)
      if (i.count(table->scalar(d, r))) ++c;
    return c;
  }
};

inline OracleQuotient oracle_quotient(const ElementTable& t, const std::set<int>& k,
                                      const std::set<int>& i) {
  for (int x : i) require(k.count(x) != 0, "oracle_quotient: denominator not inside numerator");
  std::set<int> seen;
  OracleQuotient q{&t, k, i, {}};
  for (int x : k) {
    if (seen.count(x)) continue;
    int least = x;
    for (int s : i) {
      int m = t.add(x, s);
      seen.insert(m);
      if (m < least) least = m;
    }
    q.coset_reps.push_back(least);
  }
  return q;
}

/// Does a finite abelian group with the given invariant factors have the
/// same annihilator profile as the enumerated quotient? Matching profiles
/// for every divisor of the order pin the isomorphism type.
inline bool oracle_matches_invariants(const OracleQuotient& q, const GroupInvariants& inv) {
  if (inv.free_rank != 0) return false;
  Int order = inv.order();
  if (order != q.order()) return false;
  const long n = q.order();
  for (long d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    Int engine_count(1);
    for (const Int& f : inv.factors) engine_count *= int_gcd(Int(d), f);
    if (engine_count != q.count_killed_by(d)) return false;
  }
  return true;
}

}  // namespace nhom
