#include <functional>
#include <random>

#include "doctest.h"
#include "layercraft/int_matrix.hpp"
#include "layercraft/lattice.hpp"

using namespace layercraft;

namespace {

IntMatrix rows(const std::vector<std::vector<long>>& r) { return IntMatrix::from_int_rows(r); }

Int det(const IntMatrix& m) {  // fraction-free Gaussian elimination (Bareiss)
  REQUIRE(m.rows() == m.cols());
  int n = m.rows();
  IntMatrix a = m;
  Int prev = 1, sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a(k, k) == 0) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (a(i, k) != 0) {
          p = i;
          break;
        }
      if (p < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

bool same_row_lattice(const IntMatrix& a, const IntMatrix& b) {
  // mutual membership of all basis rows, with integer coefficients
  Sublattice la = Sublattice::span(a.cols(), a);
  Sublattice lb = Sublattice::span(b.cols(), b);
  for (int i = 0; i < a.rows(); ++i)
    if (!a.row_is_zero(i) && !lattice_contains(lb, a.row(i))) return false;
  for (int i = 0; i < b.rows(); ++i)
    if (!b.row_is_zero(i) && !lattice_contains(la, b.row(i))) return false;
  return true;
}

IntMatrix random_matrix(std::mt19937& rng, int maxdim, int lo, int hi) {
  std::uniform_int_distribution<int> dim(1, maxdim), entry(lo, hi);
  IntMatrix m(dim(rng), dim(rng));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) m(i, j) = entry(rng);
  return m;
}

// The matrix S: columns are the six characters of the running toric example.
IntMatrix matrix_s() {
  return rows({{1, 0, 1, 0, 1, 0}, {0, 1, 1, 0, 0, 1}, {0, 0, 0, 1, -1, -1}});
}

}  // namespace

TEST_CASE("hermite normal form: pinned examples") {
  auto idty = IntMatrix::identity(2);
  auto hf = hermite_normal_form(idty);
  CHECK(hf.h == idty);
  CHECK(hf.u == idty);
  CHECK(hf.rank == 2);

  auto diag = rows({{2, 0}, {0, 2}});
  CHECK(hermite_normal_form(diag).h == diag);

  // oracle: {(1,1),(1,-1)} and {(1,1),(0,2)} generate the same row lattice,
  // and the latter is the canonical representative
  auto m = rows({{1, 1}, {1, -1}});
  auto h = hermite_normal_form(m).h;
  CHECK(h == rows({{1, 1}, {0, 2}}));
  CHECK(same_row_lattice(m, h));
}

TEST_CASE("hermite normal form: transform and idempotence on random inputs") {
  std::mt19937 rng(12345);
  for (int trial = 0; trial < 300; ++trial) {
    IntMatrix m = random_matrix(rng, 4, -5, 5);
    auto hf = hermite_normal_form(m);
    CHECK(hf.u * m == hf.h);
    CHECK(det(hf.u) * det(hf.u) == 1);
    CHECK(same_row_lattice(m, hf.h));
    auto again = hermite_normal_form(hf.h);
    CHECK(again.h == hf.h);
  }
}

TEST_CASE("smith normal form: pinned examples") {
  auto d22 = smith_normal_form(rows({{2, 0}, {0, 2}}));
  CHECK(d22.diagonal == IntVec{2, 2});

  // oracle: d1 = gcd of entries = 1, d1*d2 = gcd of 2x2 minors = 2
  auto s = smith_normal_form(rows({{1, 1}, {1, -1}}));
  CHECK(s.diagonal == IntVec{1, 2});

  // first, second and fourth columns of S form an identity block, so all d=1
  auto ms = smith_normal_form(matrix_s());
  CHECK(ms.diagonal == IntVec{1, 1, 1});
}

TEST_CASE("smith normal form: divisibility, transforms, minor-gcd oracle") {
  std::mt19937 rng(999);
  for (int trial = 0; trial < 300; ++trial) {
    IntMatrix m = random_matrix(rng, 3, -4, 4);
    auto sf = smith_normal_form(m);
    for (size_t i = 0; i + 1 < sf.diagonal.size(); ++i) {
      CHECK(sf.diagonal[i] >= 0);
      if (sf.diagonal[i] != 0) CHECK(sf.diagonal[i + 1] % sf.diagonal[i] == 0);
      else CHECK(sf.diagonal[i + 1] == 0);
    }
    // u * m * v == diag
    IntMatrix d = sf.u * m * sf.v;
    for (int i = 0; i < d.rows(); ++i)
      for (int j = 0; j < d.cols(); ++j)
        CHECK(d(i, j) == ((i == j && i < int(sf.diagonal.size())) ? sf.diagonal[size_t(i)] : Int(0)));
    CHECK(sf.u * sf.u_inv == IntMatrix::identity(m.rows()));
    CHECK(sf.v * sf.v_inv == IntMatrix::identity(m.cols()));

    // product of diagonal equals gcd of maximal minors up to sign (rank <= 3)
    int k = std::min(m.rows(), m.cols());
    Int prod = 1;
    for (auto& x : sf.diagonal) prod *= x;
    Int g = 0;
    std::vector<int> rsel(k), csel(k);
    std::function<void(int, int)> loop_rows = [&](int start, int depth) {
      if (depth == k) {
        std::function<void(int, int)> loop_cols = [&](int cstart, int cdepth) {
          if (cdepth == k) {
            IntMatrix sub(k, k);
            for (int i = 0; i < k; ++i)
              for (int j = 0; j < k; ++j) sub(i, j) = m(rsel[i], csel[j]);
            g = int_gcd(g, det(sub));
            return;
          }
          for (int c = cstart; c < m.cols(); ++c) {
            csel[cdepth] = c;
            loop_cols(c + 1, cdepth + 1);
          }
        };
        loop_cols(0, 0);
        return;
      }
      for (int r = start; r < m.rows(); ++r) {
        rsel[depth] = r;
        loop_rows(r + 1, depth + 1);
      }
    };
    loop_rows(0, 0);
    if (g < 0) g = -g;
    if (prod < 0) prod = -prod;
    CHECK(prod == g);
  }
}

TEST_CASE("saturation: pinned examples and double-saturation") {
  auto l1 = Sublattice::span_rows(2, {{2, 0}});
  auto s1 = saturate(l1);
  CHECK(s1.sat == Sublattice::span_rows(2, {{1, 0}}));
  CHECK(s1.index == 2);

  auto l2 = Sublattice::span_rows(2, {{1, 1}, {1, -1}});
  auto s2 = saturate(l2);
  CHECK(s2.sat == Sublattice::full(2));
  CHECK(s2.index == 2);

  CHECK(saturate(Sublattice::full(3)).index == 1);
  CHECK(saturate(Sublattice(3)).index == 1);  // zero lattice

  std::mt19937 rng(777);
  for (int trial = 0; trial < 200; ++trial) {
    IntMatrix m = random_matrix(rng, 3, -4, 4);
    Sublattice l = Sublattice::span(m.cols(), m);
    auto s = saturate(l);
    CHECK(s.sat.rank() == l.rank());
    CHECK(lattice_subset(l, s.sat));
    CHECK(saturate(s.sat).index == 1);
  }
}

TEST_CASE("saturation index equals brute-force torsion count (rank <= 2)") {
  // Count solutions of the defining congruences B*x = 0 (mod 1) over the grid
  // of rationals with denominator = index; the group exponent divides the
  // index, so the grid is fine enough.
  std::mt19937 rng(4242);
  int checked = 0;
  while (checked < 60) {
    IntMatrix m = random_matrix(rng, 2, -4, 4);
    if (m.rows() != 2 || m.cols() != 2) continue;
    Sublattice l = Sublattice::span(2, m);
    if (l.rank() != 2) continue;
    auto s = saturate(l);
    if (s.index > 8) continue;
    long q = s.index.get_si();
    long count = 0;
    for (long a = 0; a < q; ++a)
      for (long b = 0; b < q; ++b) {
        bool ok = true;
        for (int i = 0; i < l.rank() && ok; ++i) {
          Rat val = Rat(l.basis()(i, 0)) * Rat(a, q) + Rat(l.basis()(i, 1)) * Rat(b, q);
          val.canonicalize();
          ok = is_integer(val);
        }
        if (ok) ++count;
      }
    CHECK(count == q);
    ++checked;
  }
}

TEST_CASE("express_in_basis") {
  auto l = Sublattice::span_rows(2, {{0, 1}});
  auto c = express_in_basis({Int(0), Int(2)}, l);
  REQUIRE(c.has_value());
  CHECK(*c == RatVec{Rat(2)});

  auto l2 = Sublattice::span_rows(2, {{1, 1}, {0, 2}});
  auto c2 = express_in_basis({Int(1), Int(0)}, l2);
  REQUIRE(c2.has_value());
  CHECK((*c2)[0] == Rat(1));
  CHECK((*c2)[1] == Rat(-1, 2));

  auto l3 = Sublattice::span_rows(3, {{1, 0, 0}});
  CHECK(!express_in_basis({Int(0), Int(0), Int(1)}, l3).has_value());
}

TEST_CASE("content and primitive part") {
  auto [d1, v1] = content_and_primitive({Int(0), Int(2)});
  CHECK(d1 == 2);
  CHECK(v1 == IntVec{0, 1});
  auto [d2, v2] = content_and_primitive({Int(1), Int(1)});
  CHECK(d2 == 1);
  CHECK(v2 == IntVec{1, 1});
  auto [d3, v3] = content_and_primitive({Int(2), Int(4), Int(6)});
  CHECK(d3 == 2);
  CHECK(v3 == IntVec{1, 2, 3});
  CHECK_THROWS_AS(content_and_primitive(IntVec{Int(0), Int(0)}), error);
}
