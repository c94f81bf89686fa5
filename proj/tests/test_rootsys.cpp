#include "doctest.h"
#include "layercraft/fixtures.hpp"
#include "layercraft/rootsys.hpp"

using namespace layercraft;

namespace {

IntVec eps(std::vector<long> v) { return IntVec(v.begin(), v.end()); }

Root root_of(RootSystemType t, int l, std::vector<long> v) {
  auto sys = positive_system(t, l);
  auto r = find_root(sys, eps(std::move(v)));
  REQUIRE(r.has_value());
  return *r;
}

}  // namespace

TEST_CASE("positive systems and their coefficient matrices") {
  auto b2 = positive_system(RootSystemType::B, 2);
  REQUIRE(b2.size() == 4);
  CHECK(b2[0].eps == eps({1, -1}));
  CHECK(b2[1].eps == eps({0, 1}));
  CHECK(b2[2].eps == eps({1, 0}));
  CHECK(b2[3].eps == eps({1, 1}));
  auto mb = coefficient_matrices(RootSystemType::B, 2, b2);
  CHECK(mb.s == IntMatrix::from_int_rows({{1, 0, 1, 1}, {0, 1, 1, 2}}));
  CHECK(mb.t == IntMatrix::from_int_rows({{1, 0, 1, 1}, {-1, 1, 0, 1}}));

  auto c2 = positive_system(RootSystemType::C, 2);
  REQUIRE(c2.size() == 4);
  auto mc = coefficient_matrices(RootSystemType::C, 2, c2);
  CHECK(mc.t == IntMatrix::from_int_rows({{1, 0, 1, 2}, {-1, 2, 1, 0}}));
  CHECK(mc.s == IntMatrix::from_int_rows({{1, 0, 1, 2}, {0, 1, 1, 1}}));

  auto a2 = positive_system(RootSystemType::A, 3);
  REQUIRE(a2.size() == 3);
  CHECK(a2[0].eps == eps({1, -1, 0}));
  CHECK(a2[1].eps == eps({0, 1, -1}));
  CHECK(a2[2].eps == eps({1, 0, -1}));

  CHECK_THROWS_AS(positive_system(RootSystemType::B, 0), error);

  // determinant of the change of basis: +-1 for B, +-2 for C
  for (int l = 1; l <= 5; ++l) {
    auto sb = smith_normal_form(change_of_basis(RootSystemType::B, l));
    CHECK(sb.torsion_order() == 1);
    auto sc = smith_normal_form(change_of_basis(RootSystemType::C, l));
    CHECK(sc.torsion_order() == 2);
  }
}

TEST_CASE("root order") {
  Root e2 = root_of(RootSystemType::B, 2, {0, 1});
  Root e1 = root_of(RootSystemType::B, 2, {1, 0});
  Root e12 = root_of(RootSystemType::B, 2, {1, -1});
  CHECK(root_leq(e2, e2));
  CHECK(root_leq(e2, e1));        // difference is alpha_1
  CHECK(!root_leq(e1, e2));
  CHECK(!root_leq(e12, e2));      // incomparable
  CHECK(!root_leq(e2, e12));
}

TEST_CASE("ideal closure: the reference C5 ideal") {
  std::vector<Root> gens = {root_of(RootSystemType::C, 5, {1, 0, 0, 0, -1}),
                            root_of(RootSystemType::C, 5, {0, 1, 1, 0, 0})};
  RootIdeal ideal = ideal_closure(RootSystemType::C, 5, gens);
  CHECK(ideal.roots.size() == 19);
  CHECK(is_ideal(RootSystemType::C, 5, ideal.roots));

  IdealStats st = stats(ideal);
  CHECK(st.b[1] == 4);
  CHECK(st.b_plus[1] == 0);
  CHECK(st.b[2] == 6);
  CHECK(st.n == 1);
  CHECK(st.s == 3);
  CHECK(ideal.contains(eps({0, 0, 2, 0, 0})));
  CHECK(ideal.contains(eps({0, 0, 0, 0, 2})));
  CHECK(!ideal.contains(eps({0, 2, 0, 0, 0})));

  CHECK(is_ideal(RootSystemType::B, 3, positive_system(RootSystemType::B, 3)));
  CHECK(ideal_closure(RootSystemType::C, 5, {}).roots.empty());
  CHECK_THROWS_AS(ideal_closure(RootSystemType::C, 5, {root_of(RootSystemType::B, 5, {0, 0, 0, 0, 1})}),
                  error);
}

TEST_CASE("ideal statistics") {
  IdealStats b2 = stats(full_ideal(RootSystemType::B, 2));
  CHECK(b2.height_distribution == std::vector<int>{2, 1, 1});
  CHECK(b2.dual_partition == Multiset{1, 3});

  IdealStats c5 = stats(full_ideal(RootSystemType::C, 5));
  for (int i = 1; i <= 5; ++i) CHECK(c5.b[size_t(i)] == 2 * (5 - i));
  CHECK(c5.n == 1);
  CHECK(c5.s == 1);

  // empty ideal
  RootIdeal empty;
  empty.type = RootSystemType::C;
  empty.rank = 3;
  CHECK(stats(empty).dual_partition == Multiset{0, 0, 0});
}

TEST_CASE("type-B extension") {
  RootIdeal b2 = full_ideal(RootSystemType::B, 2);
  CHECK(extension(b2, 3).roots.size() == 4);  // p = l+1: unchanged
  CHECK(extension(b2, 3).roots == b2.roots);

  RootIdeal ext = extension(b2, 2);
  CHECK(ext.roots.size() == 4);
  bool has_2e2 = false, has_e2 = false;
  for (const auto& r : ext.roots) {
    has_2e2 |= r.eps == eps({0, 2});
    has_e2 |= r.eps == eps({0, 1});
  }
  CHECK(has_2e2);
  CHECK(!has_e2);

  CHECK_THROWS_AS(extension(b2, 0), error);
  CHECK_THROWS_AS(extension(full_ideal(RootSystemType::C, 2), 1), error);

  // the B5 table: extension with p = 4 replaces e4 and e5
  RootIdeal b5 = ideal_closure(RootSystemType::B, 5,
                               {root_of(RootSystemType::B, 5, {1, 0, 0, 1, 0}),
                                root_of(RootSystemType::B, 5, {0, 1, 1, 0, 0})});
  CHECK(b5.roots.size() == 23);
  IdealStats st = stats(b5, 4);
  CHECK(st.b[1] == 6);
  CHECK(st.b[2] == 6);
  CHECK(st.b[3] == 4);
  CHECK(st.b[4] == 2);
  CHECK(st.n == 1);
  CHECK(st.a == 1);
  CHECK(st.s == 1);
  CHECK(st.t == 2);
  CHECK(st.m[2] == 3);
  CHECK(st.a_literal == 5);          // the literal definition disagrees ...
  CHECK(st.parameter_discrepancy);   // ... and the discrepancy is flagged

  auto vecs = extended_vectors(b5, 4);
  CHECK(vecs.eps.size() == 23);
  int doubled = 0;
  for (const auto& n : vecs.names) doubled += (n == "2e4" || n == "2e5");
  CHECK(doubled == 2);
  for (const auto& n : vecs.names) CHECK(n != "e4");
}

TEST_CASE("coefficient matrices of a single root") {
  Root a1 = root_of(RootSystemType::B, 2, {1, -1});
  auto m = coefficient_matrices(RootSystemType::B, 2, {a1});
  CHECK(m.s == IntMatrix::from_int_rows({{1}, {0}}));
  CHECK(m.t == IntMatrix::from_int_rows({{1}, {-1}}));
}

TEST_CASE("predicted exponents: reference values") {
  RootIdeal c5 = ideal_closure(RootSystemType::C, 5,
                               {root_of(RootSystemType::C, 5, {1, 0, 0, 0, -1}),
                                root_of(RootSystemType::C, 5, {0, 1, 1, 0, 0})});
  auto pi = predicted_exponents(c5, LatticeChoice::integer_lattice);
  REQUIRE(pi.exponents.has_value());
  CHECK(*pi.exponents == sorted({4, 6, 6, 4, 2}));
  auto pr = predicted_exponents(c5, LatticeChoice::root_lattice);
  REQUIRE(pr.exponents.has_value());
  CHECK(*pr.exponents == sorted({4, 6, 4, 2, 3}));

  // full B3 / C3 with respect to the root lattice share {3,2,4}
  auto pb3 = predicted_exponents(full_ideal(RootSystemType::B, 3), LatticeChoice::root_lattice);
  REQUIRE(pb3.exponents.has_value());
  CHECK(*pb3.exponents == sorted({3, 2, 4}));
  auto pc3 = predicted_exponents(full_ideal(RootSystemType::C, 3), LatticeChoice::root_lattice);
  REQUIRE(pc3.exponents.has_value());
  CHECK(*pc3.exponents == sorted({3, 4, 2}));
  auto pc3i = predicted_exponents(full_ideal(RootSystemType::C, 3), LatticeChoice::integer_lattice);
  REQUIRE(pc3i.exponents.has_value());
  CHECK(*pc3i.exponents == sorted({6, 4, 2}));

  // the B5 table ideal, extended with p = 4
  RootIdeal b5 = ideal_closure(RootSystemType::B, 5,
                               {root_of(RootSystemType::B, 5, {1, 0, 0, 1, 0}),
                                root_of(RootSystemType::B, 5, {0, 1, 1, 0, 0})});
  auto pb5 = predicted_exponents(b5, LatticeChoice::integer_lattice, 4);
  REQUIRE(pb5.exponents.has_value());
  CHECK(*pb5.exponents == sorted({6, 7, 6, 4, 2}));
  CHECK(pb5.parameter_discrepancy);

  // empty ideal: all zeros
  RootIdeal empty;
  empty.type = RootSystemType::A;
  empty.rank = 4;
  CHECK(*predicted_exponents(empty, LatticeChoice::root_lattice).exponents == Multiset{0, 0, 0, 0});
}

TEST_CASE("predicted exponents across every B2/B3 ideal and extension parameter") {
  int covered = 0;
  for (int rank : {2, 3}) {
    auto system = positive_system(RootSystemType::B, rank);
    const int n = int(system.size());
    for (uint64_t mask = 0; mask < (uint64_t(1) << n); ++mask) {
      std::vector<Root> subset;
      for (int i = 0; i < n; ++i)
        if (mask & (uint64_t(1) << i)) subset.push_back(system[size_t(i)]);
      if (!is_ideal(RootSystemType::B, rank, subset)) continue;
      RootIdeal ideal;
      ideal.type = RootSystemType::B;
      ideal.rank = rank;
      ideal.roots = subset;
      for (int p = 1; p <= rank + 1; ++p) {
        try {
          check_extension_parameter(ideal, p);
        } catch (const error&) {
          continue;  // the replaced diagonals must exist in the ideal
        }
        Predicted pred = predicted_exponents(ideal, LatticeChoice::integer_lattice, p);
        if (!pred.exponents) continue;  // honest refusal outside the theorem
        ++covered;
        Arrangement a = build_arrangement_from_ideal(ideal, LatticeChoice::integer_lattice,
                                                     GroupKind::torus, p);
        auto computed = arrangement_exponents(a, build_layer_poset(a));
        REQUIRE(computed.has_value());
        INFO("rank ", rank, " mask ", mask, " p ", p);
        CHECK(*computed == *pred.exponents);
      }
    }
  }
  CHECK(covered >= 30);  // the theorem covers a substantial slice

  // below t the formula is not the theorem's territory: full B2 with p=1 is
  // the C2 arrangement, and the prediction correctly refuses
  auto refused = predicted_exponents(full_ideal(RootSystemType::B, 2),
                                     LatticeChoice::integer_lattice, 1);
  CHECK(!refused.exponents.has_value());
  Arrangement c2ish = build_arrangement_from_ideal(full_ideal(RootSystemType::B, 2),
                                                   LatticeChoice::integer_lattice, GroupKind::torus, 1);
  CHECK(*arrangement_exponents(c2ish, build_layer_poset(c2ish)) == Multiset{2, 4});
}

TEST_CASE("arrangements from ideals") {
  // the B2 integer-lattice torus arrangement gives the reference layer poset
  Arrangement b2 = build_arrangement_from_ideal(full_ideal(RootSystemType::B, 2),
                                                LatticeChoice::integer_lattice, GroupKind::torus);
  LayerPoset lp = build_layer_poset(b2);
  CHECK(lp.poset.size() == 7);
  CHECK(is_isomorphic(lp.poset, fixtures::b2_layer_poset()).has_value());

  // C2 integer lattice: contents 1,2,1,2 give six atoms
  Arrangement c2 = build_arrangement_from_ideal(full_ideal(RootSystemType::C, 2),
                                                LatticeChoice::integer_lattice, GroupKind::torus);
  LayerPoset lc2 = build_layer_poset(c2);
  CHECK(lc2.poset.atoms().size() == 6);

  // braid A2 as a real arrangement over the root lattice
  Arrangement a2 = build_arrangement_from_ideal(full_ideal(RootSystemType::A, 3),
                                                LatticeChoice::root_lattice, GroupKind::real);
  CHECK(a2.characters.size() == 3);
  LayerPoset la2 = build_layer_poset(a2);
  CHECK(char_poly(la2.poset) == PolyZ({2, -3, 1}));

  // type B: root- and integer-lattice posets are isomorphic (unimodular P)
  for (int l = 1; l <= 2; ++l) {
    Arrangement ai = build_arrangement_from_ideal(full_ideal(RootSystemType::B, l),
                                                  LatticeChoice::integer_lattice, GroupKind::torus);
    Arrangement ar = build_arrangement_from_ideal(full_ideal(RootSystemType::B, l),
                                                  LatticeChoice::root_lattice, GroupKind::torus);
    CHECK(is_isomorphic(build_layer_poset(ai).poset, build_layer_poset(ar).poset).has_value());
  }

  // hyperplane side: the real B2 arrangement has exponents DP(I) = {1,3}
  Arrangement br = build_arrangement_from_ideal(full_ideal(RootSystemType::B, 2),
                                                LatticeChoice::integer_lattice, GroupKind::real);
  LayerPoset lbr = build_layer_poset(br);
  CHECK(*arrangement_exponents(br, lbr) == Multiset{1, 3});
}

TEST_CASE("guided chain classifies C2 integer as strictly supersolvable") {
  RootIdeal c2 = full_ideal(RootSystemType::C, 2);
  Arrangement a = build_arrangement_from_ideal(c2, LatticeChoice::integer_lattice, GroupKind::torus);
  LayerPoset lp = build_layer_poset(a);
  auto keys = guided_chain(c2, LatticeChoice::integer_lattice, GroupKind::torus);
  REQUIRE(keys.size() == 2);

  EffortLimits eff;
  eff.guided = true;
  for (const auto& group : keys) {
    std::vector<int> ids;
    for (const auto& k : group) {
      int found = -1;
      for (int i = 0; i < lp.poset.size(); ++i)
        if (lp.layers[size_t(i)].key() == k) found = i;
      REQUIRE(found >= 0);
      ids.push_back(found);
    }
    eff.chain_groups.push_back(ids);
  }
  auto rep = classification_report(lp.poset, eff);
  CHECK(rep.strictly_supersolvable == Flag::yes);
  CHECK(rep.inductive == Flag::yes);
  CHECK(rep.exponents == Multiset{2, 4});
  REQUIRE(rep.induction_table.has_value());
  CHECK(verify_induction_table(lp.poset, *rep.induction_table).ok);
}
