#pragma once

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "layercraft/classify.hpp"
#include "layercraft/lattice.hpp"
#include "layercraft/poset.hpp"

namespace layercraft {

/// Both supported groups have real dimension 1, so ranks of layers equal
/// codimensions and chi_A(t) = t^(l - rk A) * chi_L(t). For a general abelian
/// Lie group of dimension g the arrangement polynomial is
/// t^{g(l - rk A)} * chi_L(t^g) and the induction steps factor as (t^g - d);
/// only g = 1 is built here, and no claim is made for g >= 2.
enum class GroupKind { real, torus };

inline const char* group_name(GroupKind g) { return g == GroupKind::real ? "real" : "torus"; }

struct Character {
  IntVec vector;     // nonzero
  Int content;       // gcd of the entries
  IntVec primitive;  // vector / content
  std::string label;
};

/// A connected component of an intersection: a saturated sublattice in HNF
/// plus the torsion character as rationals in [0,1) on that basis. The pair
/// is a canonical form, so key() decides layer equality.
struct Layer {
  Sublattice lattice;
  RatVec values;  // one per basis row; all zero for the real group

  int rank() const { return lattice.rank(); }

  std::string key() const {
    std::string k = std::to_string(lattice.rank());
    for (int i = 0; i < lattice.basis().rows(); ++i)
      for (int j = 0; j < lattice.basis().cols(); ++j)
        k += "," + lattice.basis()(i, j).get_str();
    k += "|";
    for (const auto& v : values) k += to_string(v) + ",";
    return k;
  }

  /// chi_X(v) for v in the lattice; empty when v is not in the lattice.
  std::optional<Rat> value_at(const IntVec& v) const {
    auto c = express_in_basis(v, lattice);
    if (!c) return std::nullopt;
    Rat acc(0);
    for (size_t i = 0; i < c->size(); ++i) {
      if (!is_integer((*c)[i])) return std::nullopt;
      acc += (*c)[i] * values[i];
    }
    return mod1(acc);
  }
};

/// X <= Y in the poset of layers (reverse inclusion): the lattice contains
/// and the character restricts.
inline bool layer_leq(const Layer& x, const Layer& y) {
  if (x.rank() > y.rank()) return false;
  for (int i = 0; i < x.lattice.basis().rows(); ++i) {
    auto val = y.value_at(x.lattice.basis_row(i));
    if (!val || *val != mod1(x.values[size_t(i)])) return false;
  }
  return true;
}

struct Arrangement {
  GroupKind group = GroupKind::torus;
  int dim = 0;
  std::vector<Character> characters;
  int rank = 0;  // rank of the character matrix
  std::vector<std::string> warnings;

  bool essential() const { return rank == dim; }
};

inline Arrangement make_arrangement(GroupKind group, int dim,
                                    const std::vector<IntVec>& vectors,
                                    std::vector<std::string> labels = {}) {
  Arrangement a;
  a.group = group;
  a.dim = dim;
  std::map<IntVec, int> seen;
  for (size_t i = 0; i < vectors.size(); ++i) {
    const IntVec& v = vectors[i];
    if (int(v.size()) != dim) fail(errc::invalid_input, "character length mismatch");
    if (is_zero(v)) fail(errc::zero_character, "characters must be nonzero");
    std::string label = i < labels.size() ? labels[i] : "";
    if (seen.count(v)) {
      a.warnings.push_back("duplicate character " + (label.empty() ? "#" + std::to_string(i + 1) : label) +
                           " ignored");
      continue;
    }
    seen[v] = int(i);
    auto [d, prim] = content_and_primitive(v);
    a.characters.push_back({v, d, prim, label});
  }
  std::vector<IntVec> rows;
  for (const auto& c : a.characters) rows.push_back(c.vector);
  a.rank = rows.empty() ? 0 : Sublattice::span_rows(dim, rows).rank();
  return a;
}

// ---------------------------------------------------------------------------
// Layer construction
// ---------------------------------------------------------------------------

/// All layers cut out by the equations chi(g_i) = values_i on the span of the
/// given generators: checks consistency of the assignment, saturates, and
/// enumerates the torsion extensions via the Smith decomposition. The real
/// group carries no torsion, so it yields at most one layer.
inline std::vector<Layer> layers_from_generators(GroupKind group, int dim, const IntMatrix& gens,
                                                 const RatVec& vals) {
  check_internal(gens.rows() == int(vals.size()), "generator/value mismatch");
  if (gens.rows() == 0) return {Layer{Sublattice(dim), {}}};

  auto hf = hermite_normal_form(gens);
  const int k = hf.rank;
  // transported values: w = U * vals; rows beyond the rank are relations and
  // must evaluate to integers, otherwise the equations are inconsistent
  RatVec w(size_t(gens.rows()), Rat(0));
  for (int i = 0; i < gens.rows(); ++i) {
    Rat acc(0);
    for (int j = 0; j < gens.rows(); ++j) acc += Rat(hf.u(i, j)) * vals[size_t(j)];
    acc.canonicalize();
    w[size_t(i)] = acc;
  }
  for (int i = k; i < gens.rows(); ++i)
    if (!is_integer(w[size_t(i)])) return {};

  std::vector<IntVec> mrows;
  for (int i = 0; i < k; ++i) mrows.push_back(hf.h.row(i));
  Sublattice m = Sublattice::span_rows(dim, mrows);
  check_internal(m.basis() == IntMatrix::from_rows(mrows), "HNF rows expected to be canonical");

  auto [sat, index] = saturate(m);
  if (group == GroupKind::real) {
    RatVec zeros(size_t(sat.rank()), Rat(0));
    return {Layer{sat, zeros}};
  }
  if (index > 1000000)
    fail(errc::budget_exceeded, "intersection has " + index.get_str() + " components");

  if (index == 1) {
    RatVec mv(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) mv[size_t(i)] = mod1(w[size_t(i)]);
    return {Layer{sat, mv}};
  }

  // Express the sublattice in the saturation basis and solve D z = U_R x
  // (mod 1) through the Smith form; every solution is one torsion extension.
  IntMatrix r(k, k);
  for (int i = 0; i < k; ++i) {
    auto c = express_in_basis(m.basis_row(i), sat);
    check_internal(c.has_value(), "sublattice must sit inside its saturation");
    for (int j = 0; j < k; ++j) {
      check_internal(is_integer((*c)[size_t(j)]), "saturation coordinates must be integral");
      r(i, j) = (*c)[size_t(j)].get_num();
    }
  }
  SmithForm sf = smith_normal_form(r);
  check_internal(sf.rank == k && sf.torsion_order() == index, "Smith data disagrees with the index");

  RatVec rhs(size_t(k), Rat(0));
  for (int i = 0; i < k; ++i) {
    Rat acc(0);
    for (int j = 0; j < k; ++j) acc += Rat(sf.u(i, j)) * w[size_t(j)];
    acc.canonicalize();
    rhs[size_t(i)] = acc;
  }

  std::vector<Layer> out;
  std::vector<long> counter(size_t(k), 0);
  while (true) {
    RatVec z(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) {
      Rat zi = (rhs[size_t(i)] + Rat(counter[size_t(i)])) / Rat(sf.diagonal[size_t(i)]);
      zi.canonicalize();
      z[size_t(i)] = zi;
    }
    RatVec y(size_t(k), Rat(0));
    for (int i = 0; i < k; ++i) {
      Rat acc(0);
      for (int j = 0; j < k; ++j) acc += Rat(sf.v(i, j)) * z[size_t(j)];
      acc.canonicalize();
      y[size_t(i)] = mod1(acc);
    }
    out.push_back(Layer{sat, y});
    int pos = k - 1;
    while (pos >= 0) {
      if (++counter[size_t(pos)] < sf.diagonal[size_t(pos)].get_si()) break;
      counter[size_t(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  check_internal(Int(long(out.size())) == index, "extension count must equal the index");
  return out;
}

/// Connected components of the hypertorus/hyperplane of one character.
inline std::vector<Layer> atom_layers(const Character& c, GroupKind group, int dim) {
  if (is_zero(c.vector)) fail(errc::zero_character, "zero character has no layers");
  return layers_from_generators(group, dim, IntMatrix::from_rows({c.vector}), {Rat(0)});
}

/// Components of the intersection of two layers.
inline std::vector<Layer> join_layers(const Layer& x, const Layer& y, GroupKind group) {
  check_internal(x.lattice.ambient_rank() == y.lattice.ambient_rank(), "ambient mismatch");
  IntMatrix gens = x.lattice.basis().vstack(y.lattice.basis());
  RatVec vals = x.values;
  vals.insert(vals.end(), y.values.begin(), y.values.end());
  return layers_from_generators(group, x.lattice.ambient_rank(), gens, vals);
}

// ---------------------------------------------------------------------------
// Layer labels
// ---------------------------------------------------------------------------

inline std::string unity_root_str(const Rat& q) {
  if (q == 0) return "1";
  if (q == Rat(1, 2)) return "-1";
  return "e(" + to_string(q) + ")";
}

inline std::string equation_label(const IntVec& row, const Rat& value, GroupKind group) {
  std::string lhs;
  if (group == GroupKind::torus) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (row[i] == 0) continue;
      lhs += "t" + std::to_string(i + 1);
      if (row[i] != 1) lhs += "^" + row[i].get_str();
    }
    return lhs + "=" + unity_root_str(value);
  }
  for (size_t i = 0; i < row.size(); ++i) {
    if (row[i] == 0) continue;
    std::string coef = row[i].get_str();
    if (coef == "1") coef = "";
    else if (coef == "-1") coef = "-";
    if (!lhs.empty() && row[i] > 0) lhs += "+";
    lhs += coef + "x" + std::to_string(i + 1);
  }
  return lhs + "=0";
}

inline std::string layer_label(const Layer& x, GroupKind group, int dim) {
  if (x.rank() == 0) return group == GroupKind::torus ? "T^" + std::to_string(dim) : "R^" + std::to_string(dim);
  if (group == GroupKind::torus && x.rank() == dim) {
    // 0-dimensional layer: torsion-point coordinates
    std::string s = "(";
    for (int j = 0; j < dim; ++j) {
      IntVec e(size_t(dim), Int(0));
      e[size_t(j)] = 1;
      auto val = x.value_at(e);
      check_internal(val.has_value(), "point layer must assign all coordinates");
      s += (j ? "," : "") + unity_root_str(*val);
    }
    return s + ")";
  }
  std::string s;
  for (int i = 0; i < x.lattice.basis().rows(); ++i) {
    if (i) s += "; ";
    s += equation_label(x.lattice.basis_row(i), x.values[size_t(i)], group);
  }
  return s;
}

// ---------------------------------------------------------------------------
// The poset of layers
// ---------------------------------------------------------------------------

struct LayerPoset {
  Poset poset;
  std::vector<Layer> layers;  // indexed by poset id
  GroupKind group = GroupKind::torus;
  int dim = 0;

  int find_layer(const Layer& x) const {
    for (size_t i = 0; i < layers.size(); ++i)
      if (layers[i].key() == x.key()) return int(i);
    return -1;
  }
};

/// Breadth-first closure from the atoms, deduplicated on the canonical layer
/// form, then ordered by reverse inclusion. Atom labels prefer user-supplied
/// character labels when the character is connected.
inline LayerPoset build_layer_poset(const Arrangement& a, uint64_t max_elements = 200000) {
  std::vector<Layer> layers;
  std::unordered_map<std::string, int> index;
  auto intern = [&](const Layer& x) {
    auto it = index.find(x.key());
    if (it != index.end()) return it->second;
    if (layers.size() >= max_elements)
      fail(errc::budget_exceeded, "layer budget exceeded at " + std::to_string(layers.size()));
    layers.push_back(x);
    index[x.key()] = int(layers.size()) - 1;
    return int(layers.size()) - 1;
  };

  intern(Layer{Sublattice(a.dim), {}});  // the bottom layer
  std::vector<int> atom_ids;
  std::vector<std::string> atom_labels;
  for (const auto& c : a.characters) {
    auto al = atom_layers(c, a.group, a.dim);
    for (size_t k = 0; k < al.size(); ++k) {
      int before = int(layers.size());
      int id = intern(al[k]);
      if (id == before) {  // fresh
        atom_ids.push_back(id);
        std::string label = layer_label(al[k], a.group, a.dim);
        if (!c.label.empty() && al.size() == 1) label = c.label;
        atom_labels.push_back(label);
      }
    }
  }
  std::vector<Layer> atoms_only;
  for (int id : atom_ids) atoms_only.push_back(layers[size_t(id)]);

  for (size_t head = 0; head < layers.size(); ++head) {
    Layer x = layers[head];  // copy: the vector may grow
    for (const Layer& h : atoms_only)
      for (const Layer& z : join_layers(x, h, a.group)) intern(z);
  }

  // canonical element order: rank, then the canonical key
  std::vector<int> order(layers.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = int(i);
  std::vector<std::string> keys(layers.size());
  for (size_t i = 0; i < layers.size(); ++i) keys[i] = layers[i].key();
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    if (layers[size_t(i)].rank() != layers[size_t(j)].rank())
      return layers[size_t(i)].rank() < layers[size_t(j)].rank();
    return keys[size_t(i)] < keys[size_t(j)];
  });
  std::vector<int> to_new(layers.size());
  for (size_t i = 0; i < order.size(); ++i) to_new[size_t(order[i])] = int(i);

  LayerPoset lp;
  lp.group = a.group;
  lp.dim = a.dim;
  lp.layers.resize(layers.size());
  std::vector<std::string> labels(layers.size());
  std::vector<int> ranks(layers.size());
  for (size_t i = 0; i < layers.size(); ++i) {
    lp.layers[size_t(to_new[i])] = layers[i];
    ranks[size_t(to_new[i])] = layers[i].rank();
    labels[size_t(to_new[i])] = layer_label(layers[i], a.group, a.dim);
  }
  for (size_t k = 0; k < atom_ids.size(); ++k) labels[size_t(to_new[size_t(atom_ids[k])])] = atom_labels[k];

  // atom supports, then covers between adjacent ranks
  const int n = int(layers.size());
  std::vector<int> atom_new_ids;
  for (int id : atom_ids) atom_new_ids.push_back(to_new[size_t(id)]);
  std::sort(atom_new_ids.begin(), atom_new_ids.end());
  std::vector<Bits> support(size_t(n), Bits(int(atom_new_ids.size())));
  for (int y = 0; y < n; ++y)
    for (size_t ai = 0; ai < atom_new_ids.size(); ++ai)
      if (layer_leq(lp.layers[size_t(atom_new_ids[ai])], lp.layers[size_t(y)]))
        support[size_t(y)].set(int(ai));

  std::vector<std::vector<int>> by_rank;
  for (int i = 0; i < n; ++i) {
    int r = ranks[size_t(i)];
    if (int(by_rank.size()) <= r) by_rank.resize(size_t(r) + 1);
    by_rank[size_t(r)].push_back(i);
  }
  std::vector<std::pair<int, int>> covers;
  for (size_t r = 0; r + 1 < by_rank.size(); ++r)
    for (int y : by_rank[r + 1])
      for (int x : by_rank[r]) {
        if (!support[size_t(x)].subset_of(support[size_t(y)])) continue;
        if (layer_leq(lp.layers[size_t(x)], lp.layers[size_t(y)])) covers.emplace_back(x, y);
      }

  lp.poset = Poset::from_graded_covers(std::move(labels), std::move(ranks), covers);
  lp.poset.set_structure_hints(true, true);  // layer posets are geometric posets
  return lp;
}

// ---------------------------------------------------------------------------
// Arrangement-level operations
// ---------------------------------------------------------------------------

inline PolyZ char_poly_arrangement(const Arrangement& a, const LayerPoset& lp) {
  return char_poly(lp.poset).shifted(a.dim - a.rank);
}

inline std::optional<Multiset> arrangement_exponents(const Arrangement& a, const LayerPoset& lp) {
  auto e = factor_positive_integer_roots(char_poly(lp.poset));
  if (!e) return std::nullopt;
  return pad_exponents(*e, a.dim);
}

/// Localization at a layer: the central real arrangement of the primitive
/// parts of all characters with a component through X (equivalently, with an
/// atom layer below X in the poset).
inline Arrangement localization(const Arrangement& a, const LayerPoset& lp, int element) {
  if (element < 0 || element >= lp.poset.size()) fail(errc::layer_not_found, "no such layer");
  const Layer& x = lp.layers[size_t(element)];
  std::vector<IntVec> vectors;
  std::vector<std::string> labels;
  for (const auto& c : a.characters) {
    auto val = x.value_at(c.vector);
    if (val && *val == 0) {
      vectors.push_back(c.primitive);
      labels.push_back(c.label);
    }
  }
  return make_arrangement(GroupKind::real, a.dim, vectors, labels);
}

/// Restriction to an atom: the upper set of the layer poset at it.
inline Poset restriction_poset(const LayerPoset& lp, int atom) {
  if (atom < 0 || atom >= lp.poset.size() || lp.poset.rank_of(atom) != 1)
    fail(errc::atom_not_found, "restriction needs an atom of the layer poset");
  return upper_set(lp.poset, atom);
}

/// TM condition of the arrangement-level ideal definition: X cap H connected,
/// i.e. exactly one join component.
inline bool check_arrangement_TM_condition(const LayerPoset& lp, int x_element, int h_atom) {
  if (h_atom < 0 || h_atom >= lp.poset.size() || lp.poset.rank_of(h_atom) != 1)
    fail(errc::atom_not_found, "H must be an atom layer");
  if (x_element < 0 || x_element >= lp.poset.size()) fail(errc::layer_not_found, "no such layer");
  return join_layers(lp.layers[size_t(x_element)], lp.layers[size_t(h_atom)], lp.group).size() == 1;
}

struct ArrangementReport {
  ClassificationReport classification;
  PolyZ arrangement_char_poly;             // degree = dim
  std::optional<Multiset> exponents;       // zero-padded to dim
  int layer_count = 0;
  int rank = 0;
  bool essential = false;
};

/// Builds the poset of layers and delegates to the poset classifier; the
/// arrangement-level verdicts are the poset verdicts by definition.
inline ArrangementReport classify_arrangement(const Arrangement& a, const LayerPoset& lp,
                                              const EffortLimits& effort = {}) {
  ArrangementReport rep;
  rep.classification = classification_report(lp.poset, effort);
  rep.arrangement_char_poly = char_poly_arrangement(a, lp);
  rep.exponents = arrangement_exponents(a, lp);
  rep.layer_count = lp.poset.size();
  rep.rank = a.rank;
  rep.essential = a.essential();
  return rep;
}

}  // namespace layercraft
