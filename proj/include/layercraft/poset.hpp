#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "layercraft/bitset.hpp"
#include "layercraft/errors.hpp"
#include "layercraft/poly.hpp"

namespace layercraft {

/// Finite ranked poset with a unique minimal element. Elements are opaque ids
/// 0..n-1, sorted so that ids ascend with rank and id 0 is the bottom. All
/// order queries run on precomputed up/down bitsets.
///
/// `assume_locally_geometric` / `assume_geometric` mark posets whose structure
/// is known by construction (layer posets of arrangements and their generated
/// subposets / upper sets); they unlock the fast closure path and the GPMI
/// M-ideal criterion without re-running the expensive definitional checks.
class Poset {
public:
  int size() const { return n_; }
  int rank_of(int x) const { return rank_[x]; }
  int rank() const { return poset_rank_; }
  const std::string& label(int x) const { return labels_[x]; }
  const std::vector<int>& atoms() const { return atoms_; }
  const std::vector<int>& upper_covers(int x) const { return upper_covers_[x]; }
  const std::vector<int>& lower_covers(int x) const { return lower_covers_[x]; }
  const Bits& up(int x) const { return up_[x]; }
  const Bits& down(int x) const { return down_[x]; }
  bool leq(int x, int y) const { return up_[x].test(y); }

  bool assume_locally_geometric() const { return assume_lg_; }
  bool assume_geometric() const { return assume_geo_; }
  void set_structure_hints(bool locally_geometric, bool geometric) {
    assume_lg_ = locally_geometric;
    assume_geo_ = geometric;
  }

  Bits all_members() const {
    Bits b(n_);
    for (int i = 0; i < n_; ++i) b.set(i);
    return b;
  }

  int find_label(const std::string& s) const {
    for (int i = 0; i < n_; ++i)
      if (labels_[i] == s) return i;
    return -1;
  }

  /// Validating constructor from raw cover data. Applies transitive reduction
  /// to tolerate redundant covers, then checks acyclicity, unique minimum and
  /// rankedness. Ids are reassigned by (rank, input order).
  static Poset validate(std::vector<std::string> labels,
                        const std::vector<std::pair<int, int>>& covers);

  /// Trusted constructor: `covers` already form the Hasse diagram of a graded
  /// order and `ranks` are consistent. Used by the arrangement builder.
  static Poset from_graded_covers(std::vector<std::string> labels, std::vector<int> ranks,
                                  const std::vector<std::pair<int, int>>& covers);

private:
  friend struct Subposet;
  void build_derived();

  int n_ = 0;
  int poset_rank_ = 0;
  std::vector<std::string> labels_;
  std::vector<int> rank_;
  std::vector<std::vector<int>> upper_covers_, lower_covers_;
  std::vector<Bits> up_, down_;
  std::vector<int> atoms_;
  bool assume_lg_ = false;
  bool assume_geo_ = false;
};

/// Lightweight view of an interval-like subset: the elements `members`
/// (always containing `base`, all >= base) with the induced order. Ranks are
/// inherited from the parent, which is valid for the views this library
/// forms (generated subposets and upper sets of locally geometric posets).
struct Subposet {
  const Poset* p = nullptr;
  Bits members;
  int base = 0;

  static Subposet whole(const Poset& poset) { return {&poset, poset.all_members(), 0}; }

  int rank_of(int x) const { return p->rank_of(x) - p->rank_of(base); }

  int rank() const {
    int r = 0;
    members.for_each([&](int x) { r = std::max(r, rank_of(x)); });
    return r;
  }

  int count() const { return members.count(); }

  bool leq(int x, int y) const { return p->leq(x, y); }

  /// Elements of view-rank 1, ascending id.
  std::vector<int> atoms() const {
    std::vector<int> out;
    const int want = p->rank_of(base) + 1;
    members.for_each([&](int x) {
      if (p->rank_of(x) == want) out.push_back(x);
    });
    return out;
  }

  std::vector<int> elements() const { return members.to_vector(); }

  /// Maximal elements of the view.
  std::vector<int> maximal() const {
    std::vector<int> out;
    members.for_each([&](int x) {
      Bits above = p->up(x);
      above &= members;
      if (above.count() == 1) out.push_back(x);
    });
    return out;
  }

  bool is_pure() const {
    int r = rank();
    for (int m : maximal())
      if (rank_of(m) != r) return false;
    return true;
  }

  Subposet upper_set(int x) const {
    check_internal(members.test(x), "upper_set base outside view");
    Bits m = p->up(x);
    m &= members;
    return {p, std::move(m), x};
  }
};

/// Minimal upper bounds of T within the view (the poset join; possibly empty
/// or with several members). T empty yields {base}.
inline std::vector<int> joins(const Subposet& v, const std::vector<int>& t) {
  Bits ub = v.members;
  for (int x : t) ub &= v.p->up(x);
  std::vector<int> out;
  ub.for_each([&](int z) {
    Bits below = v.p->down(z);
    below &= ub;
    if (below.count() == 1) out.push_back(z);  // only z itself
  });
  return out;
}

inline std::vector<int> joins(const Poset& p, const std::vector<int>& t) {
  return joins(Subposet::whole(p), t);
}

/// Mobius values mu(base, x) for x in the view.
inline std::vector<int64_t> mobius_from_base(const Subposet& v) {
  std::vector<int64_t> mu(v.p->size(), 0);
  std::vector<int> elems = v.elements();  // ascending id == ascending rank
  for (int x : elems) {
    if (x == v.base) {
      mu[x] = 1;
      continue;
    }
    int64_t s = 0;
    Bits below = v.p->down(x);
    below &= v.members;
    below.for_each([&](int y) {
      if (y != x) s = PolyZ::checked_add(s, mu[y]);
    });
    mu[x] = -s;
  }
  return mu;
}

/// Full Mobius function as a dense map; intended for small posets and tests.
inline std::vector<std::vector<int64_t>> mobius(const Poset& p) {
  std::vector<std::vector<int64_t>> m(p.size(), std::vector<int64_t>(p.size(), 0));
  for (int a = 0; a < p.size(); ++a) {
    Subposet v{&p, p.up(a), a};
    auto mu = mobius_from_base(v);
    p.up(a).for_each([&](int x) { m[a][x] = mu[x]; });
  }
  return m;
}

inline PolyZ char_poly(const Subposet& v) {
  const int r = v.rank();
  std::vector<int64_t> coeff(size_t(r) + 1, 0);
  auto mu = mobius_from_base(v);
  v.members.for_each([&](int x) {
    size_t pw = size_t(r - v.rank_of(x));
    coeff[pw] = PolyZ::checked_add(coeff[pw], mu[x]);
  });
  return PolyZ(std::move(coeff));
}

inline PolyZ char_poly(const Poset& p) { return char_poly(Subposet::whole(p)); }

namespace detail {

/// Closure of {base} union B under joins, inside the view. Fast path for
/// locally geometric parents: x lies in the closure iff x is a minimal upper
/// bound of the B-atoms below it (atomicity of the lower intervals makes this
/// enumeration complete). Generic path: worklist of pairwise joins.
inline Bits join_closure(const Subposet& v, const std::vector<int>& gen_atoms) {
  const Poset& p = *v.p;
  Bits gen(p.size());
  for (int a : gen_atoms) {
    check_internal(v.members.test(a) && v.rank_of(a) == 1, "generator is not a view atom");
    gen.set(a);
  }
  if (p.assume_locally_geometric()) {
    Bits out(p.size());
    out.set(v.base);
    v.members.for_each([&](int x) {
      if (x == v.base) return;
      Bits s = p.down(x);
      s &= gen;
      if (!s.any()) return;
      Bits ub = v.members;
      s.for_each([&](int a) { ub &= p.up(a); });
      // x is an upper bound of s; minimal iff nothing in ub lies strictly below.
      Bits strictly_below = p.down(x);
      strictly_below &= ub;
      if (strictly_below.count() == 1) out.set(x);
    });
    return out;
  }
  // Generic worklist closure by pairwise joins (pairwise iteration reaches all
  // finite joins that exist stepwise; adequate for the hand-entered posets
  // this path serves, and cross-checked against the fast path in tests).
  Bits out(p.size());
  out.set(v.base);
  std::vector<int> elems;
  elems.push_back(v.base);
  gen.for_each([&](int a) {
    if (!out.test(a)) {
      out.set(a);
      elems.push_back(a);
    }
  });
  Subposet view{&p, v.members, v.base};
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<int> cur = elems;
    for (size_t i = 0; i < cur.size(); ++i)
      for (size_t j = i + 1; j < cur.size(); ++j)
        for (int z : joins(view, {cur[i], cur[j]}))
          if (!out.test(z)) {
            out.set(z);
            elems.push_back(z);
            changed = true;
          }
  }
  return out;
}

}  // namespace detail

/// View of the subposet generated by a set of view-atoms.
inline Subposet generated_view(const Subposet& v, const std::vector<int>& atoms) {
  return {v.p, detail::join_closure(v, atoms), v.base};
}

/// Materialize a view as a standalone Poset (ids remapped in ascending
/// order, ranks shifted so the base has rank 0).
inline Poset materialize(const Subposet& v) {
  std::vector<int> ids = v.elements();
  std::unordered_map<int, int> to_new;
  to_new.reserve(ids.size());
  for (size_t i = 0; i < ids.size(); ++i) to_new[ids[i]] = int(i);
  std::vector<std::string> labels;
  std::vector<int> ranks;
  labels.reserve(ids.size());
  for (int x : ids) {
    labels.push_back(v.p->label(x));
    ranks.push_back(v.rank_of(x));
  }
  std::vector<std::pair<int, int>> covers;
  for (size_t yi = 0; yi < ids.size(); ++yi) {
    int y = ids[yi];
    Bits strictly_below = v.p->down(y);
    strictly_below &= v.members;
    strictly_below.for_each([&](int x) {
      if (x == y) return;
      // x is covered by y in the view iff nothing of the view sits between.
      Bits between = v.p->up(x);
      between &= v.p->down(y);
      between &= v.members;
      if (between.count() == 2) covers.emplace_back(to_new[x], int(yi));
    });
  }
  Poset out = Poset::from_graded_covers(std::move(labels), std::move(ranks), covers);
  out.set_structure_hints(v.p->assume_locally_geometric(), v.p->assume_geometric());
  return out;
}

/// Subposet of p generated by a set of its atoms (spec operation).
inline Poset generated_subposet(const Poset& p, const std::vector<int>& atom_ids) {
  return materialize(generated_view(Subposet::whole(p), atom_ids));
}

/// Upper set P_{>= x} as a standalone poset with ranks shifted to base 0.
inline Poset upper_set(const Poset& p, int x) {
  if (x < 0 || x >= p.size()) fail(errc::atom_not_found, "element out of range");
  return materialize(Subposet::whole(p).upper_set(x));
}

/// rk(P) - rk(P(A \ {a})); 0 or 1 for locally geometric posets.
inline int separator_epsilon(const Poset& p, int a) {
  if (a < 0 || a >= p.size() || p.rank_of(a) != 1) fail(errc::atom_not_found, "not an atom");
  std::vector<int> rest;
  for (int b : p.atoms())
    if (b != a) rest.push_back(b);
  Subposet v = generated_view(Subposet::whole(p), rest);
  return p.rank() - v.rank();
}

// ---------------------------------------------------------------------------
// Validation / construction
// ---------------------------------------------------------------------------

inline Poset Poset::from_graded_covers(std::vector<std::string> labels, std::vector<int> ranks,
                                       const std::vector<std::pair<int, int>>& covers) {
  Poset p;
  p.n_ = int(labels.size());
  p.labels_ = std::move(labels);
  p.rank_ = std::move(ranks);
  p.upper_covers_.assign(p.n_, {});
  p.lower_covers_.assign(p.n_, {});
  for (auto [lo, hi] : covers) {
    check_internal(p.rank_[hi] == p.rank_[lo] + 1, "graded covers must step one rank");
    p.upper_covers_[lo].push_back(hi);
    p.lower_covers_[hi].push_back(lo);
  }
  for (int i = 1; i < p.n_; ++i) check_internal(p.rank_[i - 1] <= p.rank_[i], "ids must ascend with rank");
  p.build_derived();
  return p;
}

inline void Poset::build_derived() {
  poset_rank_ = 0;
  for (int r : rank_) poset_rank_ = std::max(poset_rank_, r);
  up_.assign(n_, Bits(n_));
  down_.assign(n_, Bits(n_));
  // ids ascend with rank, so a forward sweep closes downward reachability.
  for (int x = 0; x < n_; ++x) {
    down_[x].set(x);
    for (int y : lower_covers_[x]) down_[x] |= down_[y];
  }
  for (int x = n_ - 1; x >= 0; --x) {
    up_[x].set(x);
    for (int y : upper_covers_[x]) up_[x] |= up_[y];
  }
  atoms_.clear();
  for (int x = 0; x < n_; ++x) {
    if (rank_[x] == 1) atoms_.push_back(x);
    std::sort(upper_covers_[x].begin(), upper_covers_[x].end());
    std::sort(lower_covers_[x].begin(), lower_covers_[x].end());
  }
}

inline Poset Poset::validate(std::vector<std::string> labels,
                             const std::vector<std::pair<int, int>>& covers) {
  const int n = int(labels.size());
  if (n == 0) fail(errc::invalid_input, "poset needs at least one element");
  std::vector<std::vector<int>> succ(n), pred(n);
  for (auto [lo, hi] : covers) {
    if (lo < 0 || hi < 0 || lo >= n || hi >= n || lo == hi)
      fail(errc::invalid_input, "cover references invalid element");
    succ[lo].push_back(hi);
    pred[hi].push_back(lo);
  }

  // Kahn toposort; leftovers mean a cycle.
  std::vector<int> indeg(n, 0), topo;
  for (int i = 0; i < n; ++i) indeg[i] = int(pred[i].size());
  for (int i = 0; i < n; ++i)
    if (indeg[i] == 0) topo.push_back(i);
  for (size_t h = 0; h < topo.size(); ++h)
    for (int y : succ[topo[h]])
      if (--indeg[y] == 0) topo.push_back(y);
  if (int(topo.size()) != n) fail(errc::cycle_detected, "cover relation has a cycle");

  // Reachability, then transitive reduction (tolerant ingestion).
  std::vector<Bits> reach(n, Bits(n));
  for (int i = n - 1; i >= 0; --i) {
    int x = topo[size_t(i)];
    reach[x].set(x);
    for (int y : succ[x]) reach[x] |= reach[y];
  }
  std::vector<std::vector<int>> red_succ(n);
  for (int x = 0; x < n; ++x) {
    // dedup parallel edges first
    std::vector<int> ys = succ[x];
    std::sort(ys.begin(), ys.end());
    ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
    for (int y : ys) {
      bool redundant = false;
      for (int z : ys) {
        if (z == y || z == x) continue;
        if (z != y && reach[z].test(y)) {
          redundant = true;
          break;
        }
      }
      if (!redundant) red_succ[x].push_back(y);
    }
  }

  std::vector<int> red_indeg(n, 0);
  for (int x = 0; x < n; ++x)
    for (int y : red_succ[x]) red_indeg[y]++;
  std::vector<int> minima;
  for (int i = 0; i < n; ++i)
    if (red_indeg[i] == 0) minima.push_back(i);
  if (minima.size() != 1)
    fail(errc::multiple_minima, "poset must have a unique minimal element, found " +
                                    std::to_string(minima.size()));

  // Ranks: every lower cover of x must sit at the same height.
  std::vector<int> rank(n, -1);
  rank[minima[0]] = 0;
  for (int x : topo) {
    if (x == minima[0]) continue;
    int r = -1;
    for (int y = 0; y < n; ++y)
      for (int z : red_succ[y])
        if (z == x) {
          if (r == -1) r = rank[y];
          else if (rank[y] != r)
            fail(errc::not_ranked, "element '" + labels[x] + "' has maximal chains of unequal length");
        }
    rank[x] = r + 1;
  }

  // Canonical ids: stable sort by (rank, input index).
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return rank[a] < rank[b]; });
  std::vector<int> to_new(n);
  for (int i = 0; i < n; ++i) to_new[order[i]] = i;

  std::vector<std::string> new_labels(n);
  std::vector<int> new_rank(n);
  for (int i = 0; i < n; ++i) {
    new_labels[size_t(to_new[i])] = labels[i];
    new_rank[size_t(to_new[i])] = rank[i];
  }
  std::vector<std::pair<int, int>> new_covers;
  for (int x = 0; x < n; ++x)
    for (int y : red_succ[x]) new_covers.emplace_back(to_new[x], to_new[y]);
  return from_graded_covers(std::move(new_labels), std::move(new_rank), new_covers);
}

// ---------------------------------------------------------------------------
// Isomorphism
// ---------------------------------------------------------------------------

/// Order isomorphism P -> Q as an id mapping, if one exists. Backtracking
/// over a Weisfeiler-Leman style refinement of (rank, up-degree, down-degree)
/// signatures; deterministic for fixed input ordering.
inline std::optional<std::vector<int>> is_isomorphic(const Poset& p, const Poset& q) {
  if (p.size() != q.size() || p.rank() != q.rank()) return std::nullopt;
  if (char_poly(p) != char_poly(q)) return std::nullopt;

  auto colors = [](const Poset& r) {
    std::vector<int64_t> c(r.size());
    for (int x = 0; x < r.size(); ++x)
      c[x] = r.rank_of(x) * 100000000LL + int(r.upper_covers(x).size()) * 10000 +
             int(r.lower_covers(x).size());
    // Refine until the partition stabilizes. Renumbering goes through a
    // sorted map so the resulting colors are canonical (comparable between
    // the two posets regardless of element order).
    for (int round = 0; round < r.size(); ++round) {
      std::vector<std::vector<int64_t>> sigs(r.size());
      for (int x = 0; x < r.size(); ++x) {
        std::vector<int64_t>& sig = sigs[x];
        sig.push_back(c[x]);
        std::vector<int64_t> nb;
        for (int y : r.upper_covers(x)) nb.push_back(c[y]);
        std::sort(nb.begin(), nb.end());
        sig.push_back(-1);
        sig.insert(sig.end(), nb.begin(), nb.end());
        nb.clear();
        for (int y : r.lower_covers(x)) nb.push_back(c[y]);
        std::sort(nb.begin(), nb.end());
        sig.push_back(-2);
        sig.insert(sig.end(), nb.begin(), nb.end());
      }
      std::map<std::vector<int64_t>, int64_t> dict;
      for (int x = 0; x < r.size(); ++x) dict.emplace(sigs[x], 0);
      int64_t k = 0;
      for (auto& kv : dict) kv.second = k++;
      std::vector<int64_t> next(r.size());
      for (int x = 0; x < r.size(); ++x) next[x] = dict[sigs[x]];
      if (next == c) break;
      c = next;
    }
    return c;
  };
  auto cp = colors(p), cq = colors(q);

  std::map<int64_t, int> histo_p, histo_q;
  for (auto v : cp) histo_p[v]++;
  for (auto v : cq) histo_q[v]++;
  if (histo_p != histo_q) return std::nullopt;

  const int n = p.size();
  std::vector<int> map_pq(n, -1), used(n, 0);
  // assign in ascending id order (ranks ascend, so covers point backward)
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;

  auto compatible = [&](int x, int y) {
    if (cp[x] != cq[y]) return false;
    if (p.rank_of(x) != q.rank_of(y)) return false;
    // all already-mapped lower covers must match exactly
    std::vector<int> want;
    for (int z : p.lower_covers(x)) {
      if (map_pq[z] < 0) return false;  // lower covers always mapped first
      want.push_back(map_pq[z]);
    }
    std::sort(want.begin(), want.end());
    std::vector<int> have = q.lower_covers(y);
    std::sort(have.begin(), have.end());
    return want == have;
  };

  int pos = 0;
  std::vector<int> cursor(n, 0);
  while (pos >= 0 && pos < n) {
    int x = order[size_t(pos)];
    bool advanced = false;
    for (int y = cursor[size_t(pos)]; y < n; ++y) {
      if (used[y] || !compatible(x, y)) continue;
      map_pq[x] = y;
      used[y] = 1;
      cursor[size_t(pos)] = y + 1;
      ++pos;
      advanced = true;
      break;
    }
    if (!advanced) {
      cursor[size_t(pos)] = 0;
      --pos;
      if (pos >= 0) {
        int xb = order[size_t(pos)];
        used[map_pq[xb]] = 0;
        map_pq[xb] = -1;
      }
    }
  }
  if (pos < 0) return std::nullopt;
  return map_pq;
}

}  // namespace layercraft
