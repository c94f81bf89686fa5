#pragma once

#include "layercraft/poset.hpp"

namespace layercraft::fixtures {

/// Poset of layers of the B2 toric arrangement: four hypertori, two torsion
/// points, ten cover edges.
inline Poset b2_layer_poset() {
  std::vector<std::string> labels = {"0",      "t1=1",  "t2=1",    "t1t2=1",
                                     "t1t2^-1=1", "(1,1)", "(-1,-1)"};
  std::vector<std::pair<int, int>> covers = {
      {0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 5}, {2, 5}, {3, 5}, {4, 5}, {3, 6}, {4, 6}};
  Poset p = Poset::validate(labels, covers);
  p.set_structure_hints(true, true);
  return p;
}

/// Weighted partition poset Pi_3^w: six atoms, two three-atom coatoms and one
/// six-atom coatom. chi = (t-3)^2. (Sometimes described as a rank-3 object;
/// the Hasse data itself is rank 2, which is what we encode.)
inline Poset pi3w_poset() {
  std::vector<std::string> labels = {"0", "a1", "a2", "a3", "a4", "a5", "a6", "u", "v", "w"};
  std::vector<std::pair<int, int>> covers = {
      {0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}, {0, 6},
      {1, 7}, {2, 7}, {3, 7},                          // u over a1,a2,a3
      {4, 9}, {5, 9}, {6, 9},                          // w over a4,a5,a6
      {1, 8}, {2, 8}, {3, 8}, {4, 8}, {5, 8}, {6, 8},  // v over all six
  };
  Poset p = Poset::validate(labels, covers);
  p.set_structure_hints(true, false);
  return p;
}

/// The inductive-but-not-geometric poset: atoms x,a2,a3,a4; u over {x,a2};
/// y and w both over {a3,a4}. Inductive with exponents {1,3}.
inline Poset ind_not_geo_poset() {
  std::vector<std::string> labels = {"0", "x", "a2", "a3", "a4", "u", "y", "w"};
  std::vector<std::pair<int, int>> covers = {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 5},
                                             {2, 5}, {3, 6}, {4, 6}, {3, 7}, {4, 7}};
  Poset p = Poset::validate(labels, covers);
  p.set_structure_hints(true, false);
  return p;
}

/// Lattice of the uniform matroid U_{3,4}: four generic points in rank 3.
inline Poset u34_lattice() {
  std::vector<std::string> labels = {"0", "a", "b", "c", "d", "ab", "ac", "ad",
                                     "bc", "bd", "cd", "1"};
  std::vector<std::pair<int, int>> covers;
  for (int a = 1; a <= 4; ++a) covers.emplace_back(0, a);
  int id = 5;
  for (int a = 1; a <= 4; ++a)
    for (int b = a + 1; b <= 4; ++b) {
      covers.emplace_back(a, id);
      covers.emplace_back(b, id);
      ++id;
    }
  for (int f = 5; f <= 10; ++f) covers.emplace_back(f, 11);
  Poset p = Poset::validate(labels, covers);
  p.set_structure_hints(true, true);
  return p;
}

/// Boolean lattice of subsets of {1..k}.
inline Poset boolean_lattice(int k) {
  int n = 1 << k;
  std::vector<std::string> labels(n);
  std::vector<std::pair<int, int>> covers;
  for (int s = 0; s < n; ++s) {
    labels[s] = "S" + std::to_string(s);
    for (int b = 0; b < k; ++b)
      if (!(s & (1 << b))) covers.emplace_back(s, s | (1 << b));
  }
  Poset p = Poset::validate(labels, covers);
  p.set_structure_hints(true, true);
  return p;
}

/// Chain 0 < x1 < ... < xk.
inline Poset chain(int k) {
  std::vector<std::string> labels;
  std::vector<std::pair<int, int>> covers;
  for (int i = 0; i <= k; ++i) {
    labels.push_back("c" + std::to_string(i));
    if (i) covers.emplace_back(i - 1, i);
  }
  return Poset::validate(labels, covers);
}

/// D2 poset: the subposet of the B2 layer poset generated by the atoms
/// t1t2=1 and t1t2^-1=1. Supersolvable but neither inductive nor factorable.
inline Poset d2_poset() {
  Poset b2 = b2_layer_poset();
  return generated_subposet(b2, {b2.find_label("t1t2=1"), b2.find_label("t1t2^-1=1")});
}

}  // namespace layercraft::fixtures
