#include <random>

#include "doctest.h"
#include "layercraft/poly.hpp"

using namespace layercraft;

TEST_CASE("polynomial arithmetic and exact division") {
  PolyZ a({-4, 0, 1});                      // t^2 - 4
  PolyZ b = PolyZ::linear_root(2);          // t - 2
  auto q = divide_exact(a, b);
  REQUIRE(q.has_value());
  CHECK(*q == PolyZ({2, 1}));               // t + 2
  CHECK(!divide_exact(a, PolyZ::linear_root(3)).has_value());
  CHECK(divide_exact(PolyZ(), b).has_value());

  PolyZ p = poly_from_roots({1, 2, 2});
  CHECK(p == PolyZ({-4, 8, -5, 1}));
  CHECK(p.eval(1) == 0);
  CHECK(p.eval(3) == 2);
  CHECK(p.shifted(2) == PolyZ({0, 0, -4, 8, -5, 1}));
}

TEST_CASE("factor_positive_integer_roots") {
  CHECK(*factor_positive_integer_roots(PolyZ({4, -4, 1})) == Multiset{2, 2});
  CHECK(!factor_positive_integer_roots(PolyZ({7, -5, 1})).has_value());   // irreducible quadratic
  CHECK(!factor_positive_integer_roots(PolyZ({2, -2, 1})).has_value());   // negative discriminant
  CHECK(*factor_positive_integer_roots(PolyZ::one()) == Multiset{});
  CHECK(!factor_positive_integer_roots(PolyZ({0, 1})).has_value());       // zero root
  CHECK_THROWS_AS(factor_positive_integer_roots(PolyZ({1, 2})), error);   // not monic

  std::mt19937 rng(31337);
  std::uniform_int_distribution<int> deg(0, 5), root(1, 9);
  for (int trial = 0; trial < 200; ++trial) {
    Multiset roots;
    int d = deg(rng);
    for (int i = 0; i < d; ++i) roots.push_back(root(rng));
    roots = sorted(std::move(roots));
    auto back = factor_positive_integer_roots(poly_from_roots(roots));
    REQUIRE(back.has_value());
    CHECK(*back == roots);
  }
}
