#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "layercraft/errors.hpp"
#include "layercraft/numbers.hpp"

namespace layercraft {

/// Dense matrix over Z with arbitrary-precision entries. Row-major; no
/// floating point anywhere in the lattice layer.
class IntMatrix {
public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), e_(size_t(rows) * cols, Int(0)) {}
  IntMatrix(int rows, int cols, std::vector<Int> entries)
      : rows_(rows), cols_(cols), e_(std::move(entries)) {
    check_internal(e_.size() == size_t(rows_) * cols_, "IntMatrix shape mismatch");
  }

  static IntMatrix identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static IntMatrix from_rows(const std::vector<IntVec>& rows) {
    int r = int(rows.size());
    int c = r == 0 ? 0 : int(rows[0].size());
    IntMatrix m(r, c);
    for (int i = 0; i < r; ++i) {
      check_internal(int(rows[i].size()) == c, "ragged rows");
      for (int j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static IntMatrix from_int_rows(const std::vector<std::vector<long>>& rows) {
    std::vector<IntVec> v;
    v.reserve(rows.size());
    for (const auto& r : rows) v.emplace_back(r.begin(), r.end());
    return from_rows(v);
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Int& operator()(int i, int j) { return e_[size_t(i) * cols_ + j]; }
  const Int& operator()(int i, int j) const { return e_[size_t(i) * cols_ + j]; }

  IntVec row(int i) const {
    IntVec v(cols_);
    for (int j = 0; j < cols_; ++j) v[j] = (*this)(i, j);
    return v;
  }
  IntVec col(int j) const {
    IntVec v(rows_);
    for (int i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  bool row_is_zero(int i) const {
    for (int j = 0; j < cols_; ++j)
      if ((*this)(i, j) != 0) return false;
    return true;
  }

  bool operator==(const IntMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
  }
  bool operator!=(const IntMatrix& o) const { return !(*this == o); }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    check_internal(a.cols_ == b.rows_, "matrix product shape mismatch");
    IntMatrix r(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int k = 0; k < a.cols_; ++k) {
        if (a(i, k) == 0) continue;
        for (int j = 0; j < b.cols_; ++j) r(i, j) += a(i, k) * b(k, j);
      }
    return r;
  }

  IntMatrix vstack(const IntMatrix& o) const {
    if (rows_ == 0) return o;
    check_internal(cols_ == o.cols_, "vstack width mismatch");
    IntMatrix r(rows_ + o.rows_, cols_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r(i, j) = (*this)(i, j);
    for (int i = 0; i < o.rows_; ++i)
      for (int j = 0; j < cols_; ++j) r(rows_ + i, j) = o(i, j);
    return r;
  }

  std::string str() const {
    std::string s = "[";
    for (int i = 0; i < rows_; ++i) {
      s += i ? "; " : "";
      for (int j = 0; j < cols_; ++j) s += (j ? "," : "") + (*this)(i, j).get_str();
    }
    return s + "]";
  }

private:
  int rows_ = 0, cols_ = 0;
  std::vector<Int> e_;
};

namespace detail {

// Row operation helpers that mirror every step into the unimodular transform.
inline void row_swap(IntMatrix& m, IntMatrix& u, int i, int j) {
  for (int c = 0; c < m.cols(); ++c) std::swap(m(i, c), m(j, c));
  for (int c = 0; c < u.cols(); ++c) std::swap(u(i, c), u(j, c));
}
inline void row_negate(IntMatrix& m, IntMatrix& u, int i) {
  for (int c = 0; c < m.cols(); ++c) m(i, c) = -m(i, c);
  for (int c = 0; c < u.cols(); ++c) u(i, c) = -u(i, c);
}
// row_i += q * row_j
inline void row_axpy(IntMatrix& m, IntMatrix& u, int i, int j, const Int& q) {
  if (q == 0) return;
  for (int c = 0; c < m.cols(); ++c) m(i, c) += q * m(j, c);
  for (int c = 0; c < u.cols(); ++c) u(i, c) += q * u(j, c);
}

}  // namespace detail

struct HermiteForm {
  IntMatrix h;  // U * input, in row Hermite normal form
  IntMatrix u;  // unimodular
  int rank = 0;
};

/// Row-style Hermite normal form: pivots positive, entries above each pivot
/// reduced into [0, pivot), zero rows at the bottom. The nonzero rows are the
/// unique canonical basis of the input's row lattice, which is what makes
/// structural equality decide lattice equality.
inline HermiteForm hermite_normal_form(const IntMatrix& m0) {
  IntMatrix h = m0;
  IntMatrix u = IntMatrix::identity(h.rows());
  int r = 0;
  for (int col = 0; col < h.cols() && r < h.rows(); ++col) {
    // Euclidean elimination below row r on this column.
    while (true) {
      int piv = -1;
      for (int i = r; i < h.rows(); ++i) {
        if (h(i, col) == 0) continue;
        if (piv < 0 || mpz_cmpabs(h(i, col).get_mpz_t(), h(piv, col).get_mpz_t()) < 0) piv = i;
      }
      if (piv < 0) break;
      if (piv != r) detail::row_swap(h, u, r, piv);
      bool clean = true;
      for (int i = r + 1; i < h.rows(); ++i) {
        if (h(i, col) == 0) continue;
        Int q;
        mpz_tdiv_q(q.get_mpz_t(), h(i, col).get_mpz_t(), h(r, col).get_mpz_t());
        detail::row_axpy(h, u, i, r, -q);
        if (h(i, col) != 0) clean = false;
      }
      if (clean) break;
    }
    if (h(r, col) == 0) continue;
    if (h(r, col) < 0) detail::row_negate(h, u, r);
    for (int i = 0; i < r; ++i) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), h(i, col).get_mpz_t(), h(r, col).get_mpz_t());
      detail::row_axpy(h, u, i, r, -q);
    }
    ++r;
  }
  return {std::move(h), std::move(u), r};
}

struct SmithForm {
  IntVec diagonal;        // d_1 | d_2 | ... , nonnegative, length min(rows,cols)
  IntMatrix u, u_inv;     // row transform and its inverse
  IntMatrix v, v_inv;     // column transform and its inverse
  int rank = 0;           // number of nonzero diagonal entries

  Int torsion_order() const {  // product of nontrivial invariant factors
    Int p = 1;
    for (int i = 0; i < rank; ++i) p *= diagonal[size_t(i)];
    return p;
  }
};

/// Elementary-operation Smith normal form with all four transforms:
/// u * input * v = diag(d), u_inv and v_inv exact inverses. Pivot choice is
/// the minimal nonzero absolute value; fine for the <=~10x25 matrices here.
inline SmithForm smith_normal_form(const IntMatrix& m0) {
  IntMatrix d = m0;
  const int m = d.rows(), n = d.cols();
  IntMatrix u = IntMatrix::identity(m), uinv = IntMatrix::identity(m);
  IntMatrix v = IntMatrix::identity(n), vinv = IntMatrix::identity(n);

  auto row_swap = [&](int i, int j) {
    if (i == j) return;
    for (int c = 0; c < n; ++c) std::swap(d(i, c), d(j, c));
    for (int c = 0; c < m; ++c) std::swap(u(i, c), u(j, c));
    for (int r = 0; r < m; ++r) std::swap(uinv(r, i), uinv(r, j));
  };
  auto col_swap = [&](int i, int j) {
    if (i == j) return;
    for (int r = 0; r < m; ++r) std::swap(d(r, i), d(r, j));
    for (int r = 0; r < n; ++r) std::swap(v(r, i), v(r, j));
    for (int c = 0; c < n; ++c) std::swap(vinv(i, c), vinv(j, c));
  };
  auto row_axpy = [&](int i, int j, const Int& q) {  // row_i += q*row_j
    if (q == 0) return;
    for (int c = 0; c < n; ++c) d(i, c) += q * d(j, c);
    for (int c = 0; c < m; ++c) u(i, c) += q * u(j, c);
    for (int r = 0; r < m; ++r) uinv(r, j) -= q * uinv(r, i);
  };
  auto col_axpy = [&](int i, int j, const Int& q) {  // col_i += q*col_j
    if (q == 0) return;
    for (int r = 0; r < m; ++r) d(r, i) += q * d(r, j);
    for (int r = 0; r < n; ++r) v(r, i) += q * v(r, j);
    for (int c = 0; c < n; ++c) vinv(j, c) -= q * vinv(i, c);
  };
  auto row_negate = [&](int i) {
    for (int c = 0; c < n; ++c) d(i, c) = -d(i, c);
    for (int c = 0; c < m; ++c) u(i, c) = -u(i, c);
    for (int r = 0; r < m; ++r) uinv(r, i) = -uinv(r, i);
  };

  const int t = std::min(m, n);
  for (int k = 0; k < t; ++k) {
    while (true) {
      int pi = -1, pj = -1;
      for (int i = k; i < m; ++i)
        for (int j = k; j < n; ++j) {
          if (d(i, j) == 0) continue;
          if (pi < 0 || mpz_cmpabs(d(i, j).get_mpz_t(), d(pi, pj).get_mpz_t()) < 0) pi = i, pj = j;
        }
      if (pi < 0) break;  // block is zero
      row_swap(k, pi);
      col_swap(k, pj);
      bool clean = true;
      for (int i = k + 1; i < m; ++i) {
        Int q;
        mpz_tdiv_q(q.get_mpz_t(), d(i, k).get_mpz_t(), d(k, k).get_mpz_t());
        row_axpy(i, k, -q);
        if (d(i, k) != 0) clean = false;
      }
      for (int j = k + 1; j < n; ++j) {
        Int q;
        mpz_tdiv_q(q.get_mpz_t(), d(k, j).get_mpz_t(), d(k, k).get_mpz_t());
        col_axpy(j, k, -q);
        if (d(k, j) != 0) clean = false;
      }
      if (!clean) continue;
      // Divisibility fixup: fold any non-multiple into this pivot's column.
      bool recurse = false;
      for (int i = k + 1; i < m && !recurse; ++i)
        for (int j = k + 1; j < n && !recurse; ++j)
          if (d(i, j) % d(k, k) != 0) {
            row_axpy(k, i, Int(1));
            recurse = true;
          }
      if (!recurse) break;
    }
    if (d(k, k) < 0) row_negate(k);
  }

  SmithForm out;
  out.diagonal.resize(t);
  for (int k = 0; k < t; ++k) {
    out.diagonal[size_t(k)] = d(k, k);
    if (d(k, k) != 0) out.rank = k + 1;
  }
  out.u = std::move(u);
  out.u_inv = std::move(uinv);
  out.v = std::move(v);
  out.v_inv = std::move(vinv);
  return out;
}

/// gcd of the entries plus the primitive vector it scales.
inline std::pair<Int, IntVec> content_and_primitive(const IntVec& v) {
  if (is_zero(v)) fail(errc::zero_character, "zero vector has no primitive part");
  Int g = 0;
  for (const auto& x : v) g = int_gcd(g, x);
  IntVec p(v.size());
  for (size_t i = 0; i < v.size(); ++i) p[i] = v[i] / g;
  return {g, p};
}

}  // namespace layercraft
