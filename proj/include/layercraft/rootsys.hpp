#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "layercraft/arrangement.hpp"

namespace layercraft {

/// Positive systems live in an ambient Z^l in the orthonormal basis. Type A
/// with parameter l is the subsystem A_{l-1} of B_l generated below
/// e1 - e_l, so the ambient dimension is always l.
enum class RootSystemType { A, B, C };
enum class LatticeChoice { root_lattice, integer_lattice };

inline const char* type_name(RootSystemType t) {
  switch (t) {
    case RootSystemType::A: return "A";
    case RootSystemType::B: return "B";
    case RootSystemType::C: return "C";
  }
  return "?";
}

struct Root {
  IntVec eps;     // coordinates in the orthonormal basis
  IntVec simple;  // coordinates in the base Delta of the ambient B/C system
  int height = 0;

  bool operator==(const Root& o) const { return eps == o.eps; }
};

inline std::string root_name(const Root& r) {
  // eps coordinates of positive roots have at most two nonzero entries
  std::string s;
  for (size_t i = 0; i < r.eps.size(); ++i) {
    if (r.eps[i] == 0) continue;
    std::string coef;
    if (r.eps[i] == -1) coef = "-";
    else if (r.eps[i] != 1) coef = r.eps[i].get_str();
    if (!s.empty() && r.eps[i] > 0) s += "+";
    s += coef + "e" + std::to_string(i + 1);
  }
  return s;
}

namespace detail {

inline Root make_root(RootSystemType type, int l, const IntVec& eps) {
  // change of basis: simple coordinates against Delta(B_l) or Delta(C_l)
  Root r;
  r.eps = eps;
  r.simple.assign(size_t(l), Int(0));
  // For B (and the A subsystem): alpha_i = e_i - e_{i+1} (i < l), alpha_l = e_l
  // so the simple coordinates are the partial sums from the left.
  // For C: alpha_l = 2 e_l, every other alpha as in B.
  Int acc = 0;
  for (int i = 0; i < l; ++i) {
    acc += eps[size_t(i)];
    r.simple[size_t(i)] = acc;
  }
  if (type == RootSystemType::C) {
    check_internal(r.simple[size_t(l - 1)] % 2 == 0, "type C vectors have even last partial sum");
    r.simple[size_t(l - 1)] /= 2;
  }
  r.height = 0;
  for (const auto& c : r.simple) {
    check_internal(c >= 0, "positive roots have nonnegative simple coordinates");
    r.height += int(c.get_si());
  }
  return r;
}

inline bool canonical_root_less(const Root& a, const Root& b) {
  if (a.height != b.height) return a.height < b.height;
  return b.simple < a.simple;  // within a height, descending simple order
}

}  // namespace detail

/// The exact positive systems of types A/B/C (A_{l-1} embedded in B_l).
inline std::vector<Root> positive_system(RootSystemType type, int l) {
  if (l < 1) fail(errc::invalid_input, "rank must be at least 1");
  std::vector<Root> out;
  IntVec e(size_t(l), Int(0));
  auto unit = [&](int i, long c) {
    IntVec v(size_t(l), Int(0));
    v[size_t(i)] = c;
    return v;
  };
  auto pair_vec = [&](int i, int j, long cj) {
    IntVec v(size_t(l), Int(0));
    v[size_t(i)] = 1;
    v[size_t(j)] = cj;
    return v;
  };
  for (int i = 0; i < l; ++i)
    for (int j = i + 1; j < l; ++j) out.push_back(detail::make_root(type == RootSystemType::C ? RootSystemType::C : RootSystemType::B, l, pair_vec(i, j, -1)));
  switch (type) {
    case RootSystemType::A:
      break;  // negative edges only
    case RootSystemType::B:
      for (int i = 0; i < l; ++i) out.push_back(detail::make_root(type, l, unit(i, 1)));
      for (int i = 0; i < l; ++i)
        for (int j = i + 1; j < l; ++j) out.push_back(detail::make_root(type, l, pair_vec(i, j, 1)));
      break;
    case RootSystemType::C:
      for (int i = 0; i < l; ++i) out.push_back(detail::make_root(type, l, unit(i, 2)));
      for (int i = 0; i < l; ++i)
        for (int j = i + 1; j < l; ++j) out.push_back(detail::make_root(type, l, pair_vec(i, j, 1)));
      break;
  }
  std::sort(out.begin(), out.end(), detail::canonical_root_less);
  return out;
}

/// beta1 <= beta2 in the root order: the difference has all-nonnegative
/// simple coordinates.
inline bool root_leq(const Root& b1, const Root& b2) {
  check_internal(b1.simple.size() == b2.simple.size(), "roots from different systems");
  for (size_t i = 0; i < b1.simple.size(); ++i)
    if (b2.simple[i] - b1.simple[i] < 0) return false;
  return true;
}

struct RootIdeal {
  RootSystemType type = RootSystemType::B;
  int rank = 0;                 // ambient l
  std::vector<Root> roots;      // downward closed, canonical order
  std::vector<Root> generators; // as supplied

  bool contains(const IntVec& eps) const {
    for (const auto& r : roots)
      if (r.eps == eps) return true;
    return false;
  }
};

inline std::optional<Root> find_root(const std::vector<Root>& system, const IntVec& eps) {
  for (const auto& r : system)
    if (r.eps == eps) return r;
  return std::nullopt;
}

/// Downward closure of the generators inside the chosen positive system.
inline RootIdeal ideal_closure(RootSystemType type, int l, const std::vector<Root>& generators) {
  auto system = positive_system(type, l);
  RootIdeal out;
  out.type = type;
  out.rank = l;
  out.generators = generators;
  for (const auto& g : generators)
    if (!find_root(system, g.eps)) fail(errc::not_a_positive_root, "generator " + root_name(g) + " is not a positive root");
  for (const auto& r : system)
    for (const auto& g : generators)
      if (root_leq(r, g)) {
        out.roots.push_back(r);
        break;
      }
  return out;
}

inline RootIdeal full_ideal(RootSystemType type, int l) {
  RootIdeal out;
  out.type = type;
  out.rank = l;
  out.roots = positive_system(type, l);
  return out;
}

/// Verifies downward closure of a subset under the root order.
inline bool is_ideal(RootSystemType type, int l, const std::vector<Root>& subset) {
  auto system = positive_system(type, l);
  for (const auto& r : subset)
    if (!find_root(system, r.eps)) fail(errc::not_a_positive_root, root_name(r) + " is not a positive root");
  for (const auto& s : system)
    for (const auto& r : subset)
      if (root_leq(s, r)) {
        bool in = false;
        for (const auto& q : subset)
          if (q.eps == s.eps) in = true;
        if (!in) return false;
      }
  return true;
}

// ---------------------------------------------------------------------------
// Extensions (type B): replace eps_i by 2 eps_i for i >= p
// ---------------------------------------------------------------------------

inline void check_extension_parameter(const RootIdeal& ideal, int p) {
  const int l = ideal.rank;
  if (p < 1 || p > l + 1) fail(errc::invalid_extension_parameter, "p must lie in [1, l+1]");
  if (p == l + 1) return;
  if (ideal.type != RootSystemType::B)
    fail(errc::invalid_extension_parameter, "extensions are defined for type B ideals");
  for (int i = p; i <= l; ++i) {
    IntVec e(size_t(l), Int(0));
    e[size_t(i - 1)] = 1;
    if (!ideal.contains(e))
      fail(errc::invalid_extension_parameter, "e" + std::to_string(i) + " is not in the ideal");
  }
}

/// Character vectors of the extended ideal I(p) (p = l+1 leaves I untouched).
/// The 2 eps_i replacements are lattice vectors, not roots, so the result is
/// a plain vector list with names.
struct CharacterVectors {
  std::vector<IntVec> eps;     // T-matrix columns
  std::vector<IntVec> simple;  // S-matrix columns
  std::vector<std::string> names;
};

inline CharacterVectors extended_vectors(const RootIdeal& ideal, int p) {
  check_extension_parameter(ideal, p);
  const int l = ideal.rank;
  CharacterVectors out;
  auto push = [&](const IntVec& eps) {
    Root r = detail::make_root(ideal.type == RootSystemType::C ? RootSystemType::C : RootSystemType::B, l, eps);
    out.eps.push_back(r.eps);
    out.simple.push_back(r.simple);
    out.names.push_back(root_name(r));
  };
  for (const auto& r : ideal.roots) {
    bool replaced = false;
    if (p <= l) {
      for (int i = p; i <= l && !replaced; ++i) {
        IntVec e(size_t(l), Int(0));
        e[size_t(i - 1)] = 1;
        replaced = (r.eps == e);
      }
    }
    if (!replaced) push(r.eps);
  }
  for (int i = p; i <= l; ++i) {
    IntVec e2(size_t(l), Int(0));
    e2[size_t(i - 1)] = 2;
    push(e2);
  }
  return out;
}

/// The extension presented as a RootIdeal-shaped vector set; the doubled
/// entries are not roots of B_l.
inline RootIdeal extension(const RootIdeal& ideal, int p) {
  check_extension_parameter(ideal, p);
  RootIdeal out = ideal;
  if (p == ideal.rank + 1) return out;
  auto vecs = extended_vectors(ideal, p);
  out.roots.clear();
  for (size_t i = 0; i < vecs.eps.size(); ++i) {
    Root r;
    r.eps = vecs.eps[i];
    r.simple = vecs.simple[i];
    r.height = 0;
    for (const auto& c : r.simple) r.height += int(c.get_si());
    out.roots.push_back(r);
  }
  std::sort(out.roots.begin(), out.roots.end(), detail::canonical_root_less);
  return out;
}

// ---------------------------------------------------------------------------
// Coefficient matrices
// ---------------------------------------------------------------------------

/// Change of basis P with T = P * S: bidiagonal with -1 below the diagonal;
/// the last diagonal entry is 2 for type C (det 2) and 1 otherwise (det 1).
inline IntMatrix change_of_basis(RootSystemType type, int l) {
  IntMatrix p(l, l);
  for (int i = 0; i < l; ++i) {
    p(i, i) = (i == l - 1 && type == RootSystemType::C) ? 2 : 1;
    if (i + 1 < l) p(i + 1, i) = -1;
  }
  return p;
}

struct CoefficientMatrices {
  IntMatrix s;  // simple coordinates, l x m
  IntMatrix t;  // orthonormal coordinates, l x m
  IntMatrix p;  // T = P * S
};

inline CoefficientMatrices coefficient_matrices(RootSystemType type, int l,
                                                const std::vector<Root>& subset) {
  const int m = int(subset.size());
  CoefficientMatrices out{IntMatrix(l, m), IntMatrix(l, m), change_of_basis(type, l)};
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < l; ++i) {
      out.s(i, j) = subset[size_t(j)].simple[size_t(i)];
      out.t(i, j) = subset[size_t(j)].eps[size_t(i)];
    }
  check_internal(out.p * out.s == out.t, "T = P*S failed");
  return out;
}

// ---------------------------------------------------------------------------
// Ideal statistics
// ---------------------------------------------------------------------------

struct IdealStats {
  std::vector<int> height_distribution;  // t_1 .. t_M
  Multiset dual_partition;               // DP(I): exactly l entries
  std::vector<int> b_plus, b_minus, b;   // indexed 1..l (entry 0 unused)
  // Parameters of the exponent theorems (l+1 encodes "undefined"):
  int n = 0;          // first row touched by the ideal
  int n_edges = 0;    // first row with an edge (the theorems' literal n)
  int a = 0;          // first diagonal row (intended reading)
  int a_literal = 0;  // the literal definition: eps_i in I and E_i^+ empty
  int s = 0;          // type C: first 2eps_i; type B: first positive edge >= a
  int t = 0;          // type B with extension parameter p
  std::vector<int> m; // m(i): partner of the highest positive edge in row i (0 if none)
  int p = 0;
  bool parameter_discrepancy = false;  // intended a differs from the literal one
};

inline IdealStats stats(const RootIdeal& ideal, int p = -1) {
  const int l = ideal.rank;
  if (p < 0) p = l + 1;
  check_extension_parameter(ideal, p);
  IdealStats st;
  st.p = p;

  int max_h = 0;
  for (const auto& r : ideal.roots) max_h = std::max(max_h, r.height);
  st.height_distribution.assign(size_t(max_h), 0);
  for (const auto& r : ideal.roots) st.height_distribution[size_t(r.height - 1)]++;
  for (size_t k = 0; k + 1 < st.height_distribution.size(); ++k)
    check_internal(st.height_distribution[k] >= st.height_distribution[k + 1],
                   "height distribution of an ideal must be a partition");
  // DP(I) = {0^{l-t1}, 1^{t1-t2}, ..., M^{tM}}
  int t1 = st.height_distribution.empty() ? 0 : st.height_distribution[0];
  for (int z = 0; z < l - t1; ++z) st.dual_partition.push_back(0);
  for (size_t k = 0; k < st.height_distribution.size(); ++k) {
    int cur = st.height_distribution[k];
    int next = k + 1 < st.height_distribution.size() ? st.height_distribution[k + 1] : 0;
    for (int c = 0; c < cur - next; ++c) st.dual_partition.push_back(int64_t(k + 1));
  }
  st.dual_partition = sorted(std::move(st.dual_partition));
  check_internal(int(st.dual_partition.size()) == l, "DP must have exactly l entries");

  st.b_plus.assign(size_t(l) + 1, 0);
  st.b_minus.assign(size_t(l) + 1, 0);
  st.b.assign(size_t(l) + 1, 0);
  st.m.assign(size_t(l) + 1, 0);
  std::vector<int> diag(size_t(l) + 1, 0);
  for (const auto& r : ideal.roots) {
    int nz = 0, i = -1, j = -1;
    for (int k = 0; k < l; ++k)
      if (r.eps[size_t(k)] != 0) {
        ++nz;
        if (i < 0) i = k;
        else j = k;
      }
    if (nz == 1) {
      diag[size_t(i + 1)] = 1;
    } else {
      check_internal(nz == 2, "positive roots touch at most two coordinates");
      if (r.eps[size_t(j)] > 0) {
        st.b_plus[size_t(i + 1)]++;
        if (st.m[size_t(i + 1)] == 0) st.m[size_t(i + 1)] = j + 1;
        else st.m[size_t(i + 1)] = std::min(st.m[size_t(i + 1)], j + 1);
      } else {
        st.b_minus[size_t(i + 1)]++;
      }
    }
  }
  for (int i = 1; i <= l; ++i) st.b[size_t(i)] = st.b_plus[size_t(i)] + st.b_minus[size_t(i)];

  auto first_such = [&](auto pred) {
    for (int i = 1; i <= l; ++i)
      if (pred(i)) return i;
    return l + 1;
  };
  st.n_edges = first_such([&](int i) { return st.b[size_t(i)] > 0; });
  st.a = first_such([&](int i) { return diag[size_t(i)] == 1; });
  st.a_literal = first_such([&](int i) { return diag[size_t(i)] == 1 && st.b_plus[size_t(i)] == 0; });
  st.parameter_discrepancy = (st.a != st.a_literal);
  if (ideal.type == RootSystemType::C) {
    st.s = st.a;  // diagonal entries of C are the 2 eps_i
  } else {
    st.s = first_such([&](int i) { return i >= st.a && st.b_plus[size_t(i)] > 0; });
  }
  st.n = std::min(st.n_edges, st.s == l + 1 ? st.a : st.s);
  st.n = std::min(st.n, st.a);
  // t: first row at/after s whose highest positive edge already clears p
  st.t = l + 1;
  for (int i = st.s; i <= l; ++i)
    if (st.b_plus[size_t(i)] == 0 || st.m[size_t(i)] < p) {
      st.t = i;
      break;
    }
  return st;
}

// ---------------------------------------------------------------------------
// Arrangements from ideals
// ---------------------------------------------------------------------------

inline Arrangement build_arrangement_from_ideal(const RootIdeal& ideal, LatticeChoice lattice,
                                                GroupKind group, int p = -1) {
  if (p < 0) p = ideal.rank + 1;
  auto vecs = extended_vectors(ideal, p);
  const auto& cols = lattice == LatticeChoice::integer_lattice ? vecs.eps : vecs.simple;
  return make_arrangement(group, ideal.rank, cols, vecs.names);
}

// ---------------------------------------------------------------------------
// Predicted exponents
// ---------------------------------------------------------------------------

struct Predicted {
  std::optional<Multiset> exponents;
  std::string not_covered_reason;
  bool parameter_discrepancy = false;
};

/// The exponent multisets promised by the classification theorems for ideal
/// arrangements of types A/B/C. Refuses (NotCovered) instead of extrapolating
/// when a theorem's hypotheses do not apply.
inline Predicted predicted_exponents(const RootIdeal& ideal, LatticeChoice lattice, int p = -1) {
  const int l = ideal.rank;
  if (p < 0) p = l + 1;
  check_extension_parameter(ideal, p);
  IdealStats st = stats(ideal, p);
  Predicted out;
  out.parameter_discrepancy = st.parameter_discrepancy;

  if (ideal.roots.empty()) {
    out.exponents = Multiset(size_t(l), 0);
    return out;
  }

  auto total_atoms = [&]() {
    Int count = 0;
    auto vecs = extended_vectors(ideal, p);
    const auto& cols = lattice == LatticeChoice::integer_lattice ? vecs.eps : vecs.simple;
    for (const auto& v : cols) count += content_and_primitive(v).first;
    return count;
  };
  auto finish = [&](Multiset e) {
    e = sorted(std::move(e));
    Int sum = 0;
    for (auto d : e) sum += d;
    if (int(e.size()) != l || sum != total_atoms()) {
      out.not_covered_reason = "formula output fails the exponent-sum sanity check";
      return;
    }
    out.exponents = std::move(e);
  };

  switch (ideal.type) {
    case RootSystemType::A:
      // strictly supersolvable with exponents DP(I), either lattice
      finish(st.dual_partition);
      return out;

    case RootSystemType::C: {
      if (p != l + 1) {
        out.not_covered_reason = "extensions are a type-B construction";
        return out;
      }
      Multiset e;
      for (int z = 0; z < st.n - 1; ++z) e.push_back(0);
      for (int i = st.n; i <= std::min(l, st.s - 1); ++i) e.push_back(st.b[size_t(i)]);
      if (lattice == LatticeChoice::integer_lattice) {
        for (int i = st.s; i <= l; ++i) e.push_back(2 * (l - i + 1));
      } else {
        for (int i = st.s; i <= l - 1; ++i) e.push_back(2 * (l - i));
        if (st.s <= l) e.push_back(l - st.s + 1);
      }
      finish(std::move(e));
      return out;
    }

    case RootSystemType::B: {
      if (st.a == l + 1) {
        // no diagonal roots: an A-type ideal
        if (p != l + 1) {
          out.not_covered_reason = "extension of an ideal without diagonal roots";
          return out;
        }
        finish(st.dual_partition);
        return out;
      }
      bool positive_edges = false;
      for (int i = 1; i <= l; ++i) positive_edges |= st.b_plus[size_t(i)] > 0;
      if (!positive_edges) {
        // negative edges and diagonals only: the character matrix is totally
        // unimodular, so the layer poset equals the hyperplane lattice and
        // the ideal-freeness exponents DP(I) apply
        if (p != l + 1) {
          out.not_covered_reason = "extension of an ideal without positive edges";
          return out;
        }
        finish(st.dual_partition);
        return out;
      }
      if (p < st.s) {
        out.not_covered_reason = "theorem requires s <= p <= l+1";
        return out;
      }
      if (st.t == l + 1) {
        out.not_covered_reason = "parameter t is undefined for this (ideal, p)";
        return out;
      }
      if (p < st.t) {
        // the proof recurses on an extension with parameter p-t+1 >= 1, so the
        // exponent formula only covers p >= t (checked: it is wrong below that)
        out.not_covered_reason = "extension parameter below t is not covered by the theorem";
        return out;
      }
      Multiset e;
      for (int z = 0; z < st.n - 1; ++z) e.push_back(0);
      e.push_back(2 * l - p - st.t + 2);
      for (int i = st.a; i <= st.t - 1; ++i) e.push_back(st.b[size_t(i)] + 1);
      for (int i = st.n; i <= l - 1; ++i)
        if (i < st.a || i > st.t - 1) e.push_back(st.b[size_t(i)]);
      finish(std::move(e));
      return out;
    }
  }
  out.not_covered_reason = "unsupported type";
  return out;
}

// ---------------------------------------------------------------------------
// Guided chains (the TM-chains behind the classification theorems)
// ---------------------------------------------------------------------------

/// Atom groups, top-down, for the guided classifier: each group is the set of
/// layer keys removed by one TM-ideal step of the theorem's chain. The peel
/// verifier re-checks every step on the actual poset, so a wrong hint can
/// only shrink the peeled part, never produce a wrong answer.
inline std::vector<std::vector<std::string>> guided_chain(const RootIdeal& ideal,
                                                          LatticeChoice lattice, GroupKind group,
                                                          int p = -1) {
  const int l = ideal.rank;
  if (p < 0) p = l + 1;
  check_extension_parameter(ideal, p);
  IdealStats st = stats(ideal, p);

  auto key_of = [&](const IntVec& vec, int torsion_num, int torsion_den) {
    Rat want(torsion_num, torsion_den);
    want.canonicalize();
    auto ls = layers_from_generators(group, l, IntMatrix::from_rows({vec}), {Rat(0)});
    for (const auto& layer : ls) {
      auto val = layer.value_at(content_and_primitive(vec).second);
      if (val && *val == want) return layer.key();
    }
    fail(errc::internal_inconsistency, "torsion selector matched no atom layer");
  };
  auto row_edges = [&](int i) {  // edge characters of row i, in the chosen lattice
    std::vector<IntVec> out;
    for (const auto& r : ideal.roots) {
      int nz = 0, fi = -1;
      for (int k = 0; k < l; ++k)
        if (r.eps[size_t(k)] != 0) {
          ++nz;
          if (fi < 0) fi = k;
        }
      if (nz == 2 && fi == i - 1)
        out.push_back(lattice == LatticeChoice::integer_lattice ? r.eps : r.simple);
    }
    return out;
  };
  auto diag_vec = [&](int i, long c) {
    IntVec v(size_t(l), Int(0));
    v[size_t(i - 1)] = c;
    Root r = detail::make_root(ideal.type == RootSystemType::C ? RootSystemType::C : RootSystemType::B, l, v);
    return lattice == LatticeChoice::integer_lattice ? r.eps : r.simple;
  };

  std::vector<std::vector<std::string>> groups;
  auto add_group = [&](const std::vector<IntVec>& edge_vecs, const std::vector<IntVec>& full_vecs) {
    std::vector<std::string> g;
    for (const auto& v : edge_vecs) g.push_back(key_of(v, 0, 1));
    for (const auto& v : full_vecs) {
      Int d = content_and_primitive(v).first;
      for (long k = 0; k < d.get_si(); ++k) g.push_back(key_of(v, int(k), int(d.get_si())));
    }
    if (!g.empty()) groups.push_back(std::move(g));
  };

  switch (ideal.type) {
    case RootSystemType::A:
      for (int i = 1; i <= l; ++i) add_group(row_edges(i), {});
      break;
    case RootSystemType::C:
      if (lattice == LatticeChoice::integer_lattice) {
        for (int i = 1; i <= l; ++i) {
          std::vector<IntVec> diag;
          if (i >= st.s && st.s <= l) diag.push_back(diag_vec(i, 2));
          add_group(row_edges(i), diag);
        }
      } else {
        // peel the E_i groups above the full C_{l-s+1} base
        for (int i = st.n; i <= std::min(l, st.s - 1); ++i) add_group(row_edges(i), {});
      }
      break;
    case RootSystemType::B: {
      int stop = std::min(st.t - 1, l);
      for (int i = st.n; i <= stop; ++i) {
        std::vector<IntVec> diag;
        if (i >= st.a && i < p) {
          IntVec e(size_t(l), Int(0));
          e[size_t(i - 1)] = 1;
          if (ideal.contains(e)) diag.push_back(diag_vec(i, 1));
        }
        add_group(row_edges(i), diag);
      }
      break;
    }
  }
  return groups;
}

}  // namespace layercraft
