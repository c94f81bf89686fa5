#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "layercraft/int_matrix.hpp"

namespace layercraft {

/// Sublattice of Z^ambient, stored as its unique row-HNF basis (no zero
/// rows). Structural equality therefore decides lattice equality.
class Sublattice {
public:
  Sublattice() = default;
  explicit Sublattice(int ambient) : ambient_(ambient), basis_(0, ambient) {}

  /// Canonicalize an arbitrary generating set.
  static Sublattice span(int ambient, const IntMatrix& generators) {
    check_internal(generators.cols() == ambient || generators.rows() == 0,
                   "generator width mismatch");
    auto hf = hermite_normal_form(generators.rows() ? generators : IntMatrix(0, ambient));
    Sublattice s(ambient);
    IntMatrix b(hf.rank, ambient);
    for (int i = 0; i < hf.rank; ++i)
      for (int j = 0; j < ambient; ++j) b(i, j) = hf.h(i, j);
    s.basis_ = std::move(b);
    return s;
  }

  static Sublattice span_rows(int ambient, const std::vector<IntVec>& rows) {
    return span(ambient, IntMatrix::from_rows(rows));
  }

  static Sublattice full(int ambient) {
    Sublattice s(ambient);
    s.basis_ = IntMatrix::identity(ambient);
    return s;
  }

  int ambient_rank() const { return ambient_; }
  int rank() const { return basis_.rows(); }
  const IntMatrix& basis() const { return basis_; }
  IntVec basis_row(int i) const { return basis_.row(i); }

  bool operator==(const Sublattice& o) const {
    return ambient_ == o.ambient_ && basis_ == o.basis_;
  }
  bool operator!=(const Sublattice& o) const { return !(*this == o); }

  std::string str() const { return basis_.str(); }

private:
  int ambient_ = 0;
  IntMatrix basis_;  // rank x ambient, row HNF
};

/// Rational coordinates of v in L's basis, when v lies in the rational span;
/// absent otherwise. Coefficients are integers exactly when v is in L.
inline std::optional<RatVec> express_in_basis(const IntVec& v, const Sublattice& l) {
  check_internal(int(v.size()) == l.ambient_rank(), "vector/ambient mismatch");
  RatVec residue(v.size());
  for (size_t i = 0; i < v.size(); ++i) residue[i] = Rat(v[i]);
  RatVec coeff(l.rank(), Rat(0));
  // HNF rows form a staircase; peel pivots left to right.
  for (int i = 0; i < l.rank(); ++i) {
    int p = 0;
    while (p < l.ambient_rank() && l.basis()(i, p) == 0) ++p;
    Rat c = residue[p] / Rat(l.basis()(i, p));
    c.canonicalize();
    coeff[i] = c;
    if (c != 0)
      for (int j = p; j < l.ambient_rank(); ++j) {
        residue[j] -= c * Rat(l.basis()(i, j));
        residue[j].canonicalize();
      }
  }
  for (const auto& r : residue)
    if (r != 0) return std::nullopt;
  return coeff;
}

inline bool lattice_contains(const Sublattice& l, const IntVec& v) {
  auto c = express_in_basis(v, l);
  if (!c) return false;
  for (const auto& x : *c)
    if (!is_integer(x)) return false;
  return true;
}

/// L1 subset of L2 (as lattices).
inline bool lattice_subset(const Sublattice& l1, const Sublattice& l2) {
  if (l1.rank() > l2.rank()) return false;
  for (int i = 0; i < l1.rank(); ++i)
    if (!lattice_contains(l2, l1.basis_row(i))) return false;
  return true;
}

inline Sublattice lattice_sum(const Sublattice& a, const Sublattice& b) {
  check_internal(a.ambient_rank() == b.ambient_rank(), "ambient mismatch");
  return Sublattice::span(a.ambient_rank(), a.basis().vstack(b.basis()));
}

struct Saturation {
  Sublattice sat;
  Int index;  // |sat / L|, the number of torsion points of Z^l / L
};

/// Smallest saturated sublattice containing L: {v : n*v in L for some n>0}.
/// Computed from the Smith decomposition U*B*V = D, whose V^{-1} top rows span
/// the saturation; the index is the product of the invariant factors.
inline Saturation saturate(const Sublattice& l) {
  const int k = l.rank();
  if (k == 0) return {Sublattice(l.ambient_rank()), Int(1)};
  SmithForm sf = smith_normal_form(l.basis());
  check_internal(sf.rank == k, "basis rows were not independent");
  IntMatrix gen(k, l.ambient_rank());
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < l.ambient_rank(); ++j) gen(i, j) = sf.v_inv(i, j);
  return {Sublattice::span(l.ambient_rank(), gen), sf.torsion_order()};
}

}  // namespace layercraft
