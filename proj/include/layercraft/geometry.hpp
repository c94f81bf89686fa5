#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "layercraft/poset.hpp"

namespace layercraft {

/// Maximal lower bounds of {x, y} within the view (the poset meet).
inline std::vector<int> meets(const Subposet& v, int x, int y) {
  Bits lb = v.p->down(x);
  lb &= v.p->down(y);
  lb &= v.members;
  std::vector<int> out;
  lb.for_each([&](int z) {
    Bits above = v.p->up(z);
    above &= lb;
    if (above.count() == 1) out.push_back(z);
  });
  return out;
}

/// Every pair must have a unique minimal upper bound and a unique maximal
/// lower bound.
inline bool is_lattice(const Subposet& v) {
  std::vector<int> elems = v.elements();
  for (size_t i = 0; i < elems.size(); ++i)
    for (size_t j = i + 1; j < elems.size(); ++j) {
      if (joins(v, {elems[i], elems[j]}).size() != 1) return false;
      if (meets(v, elems[i], elems[j]).size() != 1) return false;
    }
  return true;
}

inline bool is_lattice(const Poset& p) { return is_lattice(Subposet::whole(p)); }

/// Geometric lattice test: covers are exactly the atom-joins, both ways.
///  - x covered by y  ==>  y = x v a for some atom a not below x
///  - x v a is defined (unique) and covers x for every atom a not below x
inline bool is_geometric_lattice(const Subposet& v) {
  if (!is_lattice(v)) fail(errc::not_a_lattice, "is_geometric_lattice expects a lattice");
  std::vector<int> elems = v.elements();
  std::vector<int> atoms = v.atoms();
  for (int x : elems) {
    for (int a : atoms) {
      if (v.leq(a, x)) continue;
      auto j = joins(v, {x, a});
      if (j.size() != 1) return false;
      // the join of x with an atom outside must cover x
      Bits between = v.p->up(x);
      between &= v.p->down(j[0]);
      between &= v.members;
      if (between.count() != 2) return false;
    }
  }
  // covers direction: every cover pair (x,y) needs an atom a <= y, a not<= x
  for (int y : elems) {
    if (y == v.base) continue;
    Bits strictly_below = v.p->down(y);
    strictly_below &= v.members;
    strictly_below.reset(y);
    bool ok = true;
    strictly_below.for_each([&](int x) {
      // covers only
      Bits between = v.p->up(x);
      between &= v.p->down(y);
      between &= v.members;
      if (between.count() != 2) return;
      bool found = false;
      for (int a : atoms)
        if (v.leq(a, y) && !v.leq(a, x)) {
          auto j = joins(v, {x, a});
          if (j.size() == 1 && j[0] == y) found = true;
          if (found) break;
        }
      if (!found) ok = false;
    });
    if (!ok) return false;
  }
  return true;
}

inline bool is_geometric_lattice(const Poset& p) {
  return is_geometric_lattice(Subposet::whole(p));
}

/// Every lower interval P_{<= x} must be a geometric lattice.
inline bool is_locally_geometric(const Subposet& v) {
  if (v.p->assume_locally_geometric()) return true;
  std::vector<int> elems = v.elements();
  for (int x : elems) {
    Bits m = v.p->down(x);
    m &= v.members;
    Subposet low{v.p, std::move(m), v.base};
    if (!is_lattice(low)) return false;
    if (!is_geometric_lattice(low)) return false;
  }
  return true;
}

inline bool is_locally_geometric(const Poset& p) {
  return is_locally_geometric(Subposet::whole(p));
}

inline void require_locally_geometric(const Subposet& v) {
  if (!is_locally_geometric(v)) fail(errc::not_locally_geometric, "poset is not locally geometric");
}

/// Geometric poset test (the atom-compatibility condition): for all x, y with
/// rk(x) < rk(y), every atom set I with |I| = rk(y) and y in joins(I) must
/// contain an atom a with a not<= x and a v x nonempty.
inline bool is_geometric_poset(const Subposet& v) {
  require_locally_geometric(v);
  if (v.p->assume_geometric()) return true;
  std::vector<int> elems = v.elements();
  std::vector<int> atoms = v.atoms();
  for (int y : elems) {
    int ry = v.rank_of(y);
    if (ry < 1) continue;
    // candidate atom sets I subset of atoms below y, |I| = rk(y), y in joins(I)
    std::vector<int> below;
    for (int a : atoms)
      if (v.leq(a, y)) below.push_back(a);
    std::vector<int> pick;
    std::vector<int> offenders;  // x with rk(x) < rk(y) pre-collected
    for (int x : elems)
      if (v.rank_of(x) < ry) offenders.push_back(x);
    bool good = true;
    std::function<void(size_t)> rec = [&](size_t start) {
      if (!good) return;
      if (int(pick.size()) == ry) {
        auto j = joins(v, pick);
        if (std::find(j.begin(), j.end(), y) == j.end()) return;
        for (int x : offenders) {
          bool has = false;
          for (int a : pick)
            if (!v.leq(a, x) && !joins(v, {a, x}).empty()) {
              has = true;
              break;
            }
          if (!has) {
            good = false;
            return;
          }
        }
        return;
      }
      for (size_t i = start; i < below.size() && good; ++i) {
        pick.push_back(below[i]);
        rec(i + 1);
        pick.pop_back();
      }
    };
    rec(0);
    if (!good) return false;
  }
  return true;
}

inline bool is_geometric_poset(const Poset& p) { return is_geometric_poset(Subposet::whole(p)); }

/// Modular element test in a geometric lattice: x ^ (y v z) = (x ^ y) v z for
/// all z <= x and all y.
inline bool is_modular(const Subposet& lat, int x) {
  std::vector<int> elems = lat.elements();
  Bits under_x = lat.p->down(x);
  under_x &= lat.members;
  bool ok = true;
  under_x.for_each([&](int z) {
    if (!ok) return;
    for (int y : elems) {
      auto yvz = joins(lat, {y, z});
      check_internal(yvz.size() == 1, "join not unique in lattice");
      auto lhs = meets(lat, x, yvz[0]);
      check_internal(lhs.size() == 1, "meet not unique in lattice");
      auto xmy = meets(lat, x, y);
      check_internal(xmy.size() == 1, "meet not unique in lattice");
      auto rhs = joins(lat, {xmy[0], z});
      check_internal(rhs.size() == 1, "join not unique in lattice");
      if (lhs[0] != rhs[0]) {
        ok = false;
        return;
      }
    }
  });
  return ok;
}

inline bool is_modular(const Poset& lattice, int x) {
  if (!is_lattice(lattice)) fail(errc::not_a_lattice, "is_modular expects a lattice");
  return is_modular(Subposet::whole(lattice), x);
}

/// Witness for an M- or TM-ideal: the ideal's elements, its atoms, and the
/// modular partner chosen in each maximal interval of the ambient poset.
struct IdealWitness {
  bool tm = false;
  std::vector<int> atom_ids;                       // atoms generating the ideal
  std::vector<int> element_ids;                    // the ideal's elements
  std::vector<std::pair<int, int>> modular_partners;  // (x in max(P), y in max(Q))
};

enum class MIdealMethod { automatic, definition, gpmi };

namespace detail {

/// Shared precondition of both checks: Q must be a pure, join-closed, proper
/// order ideal of the view. Q is given by its members bitset. In a locally
/// geometric ambient poset a downward-closed Q is join-closed exactly when it
/// equals the join-closure of its own atoms (lower intervals are atomic), so
/// that is the test used here.
inline bool ideal_shape_ok(const Subposet& v, const Bits& q_members) {
  if (!q_members.test(v.base)) return false;
  if (!q_members.subset_of(v.members)) return false;
  Bits rest = v.members;
  rest.andnot(q_members);
  if (!rest.any()) return false;  // must be proper
  // order ideal: downward closed within the view
  bool ok = true;
  q_members.for_each([&](int x) {
    if (!ok) return;
    Bits below = v.p->down(x);
    below &= v.members;
    if (!below.subset_of(q_members)) ok = false;
  });
  if (!ok) return false;
  Subposet q{v.p, q_members, v.base};
  if (!q.is_pure()) return false;
  return generated_view(v, q.atoms()).members == q_members;
}

}  // namespace detail

/// Definition-based M-ideal check: shape conditions plus
///  (1) |a v y| >= 1 for atoms a outside, y in Q, and
///  (2) a modular partner y in max(Q) inside every P_{<= x}, x in max(P).
/// With `gpmi` (valid on geometric posets, rank(Q) = rank(P)-1), condition
/// (1)+(2) is replaced by the criterion of the geometric-poset M-ideal
/// lemma: every element of a1 v a2 for outside atoms a1,a2 sits above an
/// atom of Q. `tm` additionally demands |a v y| = 1 throughout.
inline std::optional<IdealWitness> check_ideal(const Subposet& v, const Bits& q_members, bool tm,
                                               MIdealMethod method = MIdealMethod::automatic) {
  require_locally_geometric(v);
  if (!detail::ideal_shape_ok(v, q_members)) return std::nullopt;
  Subposet q{v.p, q_members, v.base};
  const int rv = v.rank(), rq = q.rank();

  MIdealMethod m = method;
  if (m == MIdealMethod::automatic)
    m = (v.p->assume_geometric() && rq == rv - 1) ? MIdealMethod::gpmi : MIdealMethod::definition;
  if (m == MIdealMethod::gpmi && rq != rv - 1)
    fail(errc::invalid_input, "GPMI criterion applies only at corank 1");

  std::vector<int> out_atoms;
  for (int a : v.atoms())
    if (!q_members.test(a)) out_atoms.push_back(a);
  if (out_atoms.empty()) return std::nullopt;  // proper ideals miss an atom (join-closure)

  // TM strengthening: unique minimal upper bound against every element of Q.
  if (tm) {
    for (int y : q.elements())
      for (int a : out_atoms)
        if (joins(v, {y, a}).size() != 1) return std::nullopt;
  }

  IdealWitness w;
  w.tm = tm;
  for (int a : q.atoms()) w.atom_ids.push_back(a);
  w.element_ids = q.elements();

  if (m == MIdealMethod::gpmi) {
    if (!v.is_pure()) return std::nullopt;  // a corank-1 M-ideal forces purity
    Bits q_atom_bits(v.p->size());
    for (int a : q.atoms()) q_atom_bits.set(a);
    for (size_t i = 0; i < out_atoms.size(); ++i)
      for (size_t j = i + 1; j < out_atoms.size(); ++j)
        for (int x : joins(v, {out_atoms[i], out_atoms[j]})) {
          Bits below = v.p->down(x);
          below &= q_atom_bits;
          if (!below.any()) return std::nullopt;
        }
    // Partner bookkeeping: the unique rank-(r-1) element of Q under each
    // maximal x, guaranteed by the geometric-poset M-ideal lemma.
    for (int x : v.maximal()) {
      int partner = -1, count = 0;
      q_members.for_each([&](int y) {
        if (q.rank_of(y) == rq && v.leq(y, x)) {
          partner = y;
          ++count;
        }
      });
      check_internal(count == 1, "GPMI-certified ideal lost its modular partner");
      w.modular_partners.emplace_back(x, partner);
    }
    return w;
  }

  // Definition path. Condition (1):
  if (!tm) {
    for (int y : q.elements())
      for (int a : out_atoms)
        if (joins(v, {y, a}).empty()) return std::nullopt;
  }
  // Condition (2): modular partner in each maximal interval (y <= x forced).
  std::vector<int> qmax = q.maximal();
  for (int x : v.maximal()) {
    Bits low = v.p->down(x);
    low &= v.members;
    Subposet interval{v.p, low, v.base};
    int partner = -1;
    for (int y : qmax) {
      if (!v.leq(y, x)) continue;
      if (is_modular(interval, y)) {
        partner = y;
        break;
      }
    }
    if (partner < 0) return std::nullopt;
    w.modular_partners.emplace_back(x, partner);
  }
  return w;
}

/// Whole-poset wrappers; Q is given by its element ids.
inline std::optional<IdealWitness> check_M_ideal(const Poset& p, const std::vector<int>& q_elements,
                                                 MIdealMethod method = MIdealMethod::automatic) {
  Bits q(p.size());
  for (int x : q_elements) q.set(x);
  return check_ideal(Subposet::whole(p), q, false, method);
}

inline std::optional<IdealWitness> check_TM_ideal(const Poset& p, const std::vector<int>& q_elements,
                                                  MIdealMethod method = MIdealMethod::automatic) {
  Bits q(p.size());
  for (int x : q_elements) q.set(x);
  return check_ideal(Subposet::whole(p), q, true, method);
}

/// A full M- or TM-chain {0} = Q_0 < Q_1 < ... < Q_r = P, one ideal per rank,
/// with the per-step atom-count differences.
struct ChainWitness {
  bool tm = false;
  std::vector<IdealWitness> ideals;  // ranks r-1 down to 0 as found (top first)
  Multiset step_atom_counts;         // d_r, ..., d_1 (top first)

  Multiset exponents() const {
    Multiset m = step_atom_counts;
    return sorted(std::move(m));
  }
};

namespace detail {

/// Exhaustive chain search: enumerate atom subsets in ascending mask order,
/// keep those whose join-closure is a pure rank-(r-1) ideal passing the M/TM
/// conditions, recurse. First witness in that deterministic order wins.
inline bool supersolvable_chain(const Subposet& v, bool tm, ChainWitness& out,
                                uint64_t* step_budget) {
  const int r = v.rank();
  if (r == 0) return true;
  std::vector<int> atoms = v.atoms();
  const int na = int(atoms.size());
  check_internal(na <= 30, "exhaustive chain search needs <= 30 atoms");
  for (uint64_t mask = 0; mask < (uint64_t(1) << na); ++mask) {
    if (step_budget) {
      if (*step_budget == 0) fail(errc::budget_exceeded, "supersolvable search budget exhausted");
      --*step_budget;
    }
    std::vector<int> sub;
    for (int i = 0; i < na; ++i)
      if (mask & (uint64_t(1) << i)) sub.push_back(atoms[size_t(i)]);
    Subposet q = generated_view(v, sub);
    if (q.rank() != r - 1) continue;
    if (int(q.atoms().size()) != int(sub.size())) continue;  // closure grew new atoms? (cannot)
    auto w = check_ideal(v, q.members, tm);
    if (!w) continue;
    ChainWitness rest;
    rest.tm = tm;
    if (!supersolvable_chain(q, tm, rest, step_budget)) continue;
    out.ideals.push_back(*w);
    out.step_atom_counts.push_back(int64_t(atoms.size() - sub.size()));
    for (auto& iw : rest.ideals) out.ideals.push_back(std::move(iw));
    for (auto d : rest.step_atom_counts) out.step_atom_counts.push_back(d);
    return true;
  }
  return false;
}

}  // namespace detail

/// Exhaustive supersolvability: searches candidate rank-(r-1) ideals as
/// join-closures of atom subsets, recursing to rank 0; deterministic first
/// witness. Throws BudgetExceeded when the step budget runs out.
inline std::optional<ChainWitness> is_supersolvable(const Poset& p,
                                                    uint64_t step_budget = UINT64_MAX) {
  Subposet v = Subposet::whole(p);
  require_locally_geometric(v);
  ChainWitness w;
  w.tm = false;
  uint64_t budget = step_budget;
  if (!detail::supersolvable_chain(v, false, w, &budget)) return std::nullopt;
  return w;
}

inline std::optional<ChainWitness> is_strictly_supersolvable(const Poset& p,
                                                             uint64_t step_budget = UINT64_MAX) {
  Subposet v = Subposet::whole(p);
  require_locally_geometric(v);
  ChainWitness w;
  w.tm = true;
  uint64_t budget = step_budget;
  if (!detail::supersolvable_chain(v, true, w, &budget)) return std::nullopt;
  return w;
}

}  // namespace layercraft
