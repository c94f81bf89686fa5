// Acceptance suite: one criterion per function, one PASS/FAIL line each.
// Everything is exact integer/rational arithmetic; "tolerance" is equality.

#include <chrono>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <vector>

#include "layercraft/analyze.hpp"
#include "layercraft/fixtures.hpp"
#include "layercraft/verify.hpp"

using namespace layercraft;

namespace {

struct Checker {
  std::vector<std::string> failures;
  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

int find_atom(const LayerPoset& lp, const std::string& label) {
  int id = lp.poset.find_label(label);
  if (id < 0) fail(errc::internal_inconsistency, "no atom labelled " + label);
  return id;
}

Arrangement matrix_s(GroupKind g) {
  return make_arrangement(
      g, 3, {{1, 0, 0}, {0, 1, 0}, {1, 1, 0}, {0, 0, 1}, {1, 0, -1}, {0, 1, -1}},
      {"H1", "H2", "H3", "H4", "H5", "H6"});
}

EffortLimits chain_effort(const RootIdeal& ideal, LatticeChoice lat, const LayerPoset& lp,
                          int p = -1) {
  EffortLimits eff;
  eff.guided = true;
  for (const auto& group : guided_chain(ideal, lat, GroupKind::torus, p)) {
    std::vector<int> ids;
    for (const auto& key : group)
      for (int i = 0; i < lp.poset.size(); ++i)
        if (lp.layers[size_t(i)].key() == key) {
          ids.push_back(i);
          break;
        }
    eff.chain_groups.push_back(std::move(ids));
  }
  return eff;
}

// --- criterion 1: B2 toric, integer lattice --------------------------------
void criterion1(Checker& c) {
  RootIdeal b2 = full_ideal(RootSystemType::B, 2);
  Arrangement a = build_arrangement_from_ideal(b2, LatticeChoice::integer_lattice, GroupKind::torus);
  LayerPoset lp = build_layer_poset(a);
  // seven layers: the bottom, four hypertori and two torsion points
  c.expect(lp.poset.size() == 7, "layer poset has 7 elements");
  c.expect(char_poly(lp.poset) == PolyZ({4, -4, 1}), "chi_L = t^2 - 4t + 4");
  auto table = is_inductive(lp.poset);
  c.expect(table.has_value() && table->exponents() == Multiset{2, 2}, "inductive with {2,2}");
  c.expect(is_supersolvable(lp.poset).has_value(), "supersolvable");
  c.expect(!is_strictly_supersolvable(lp.poset).has_value(), "not strictly supersolvable");
}

// --- criterion 2: matrix S, torus -------------------------------------------
void criterion2(Checker& c) {
  Arrangement a = matrix_s(GroupKind::torus);
  LayerPoset lp = build_layer_poset(a);
  c.expect(lp.poset.size() == 18, "18-layer poset");
  auto table = is_inductive(lp.poset);
  c.expect(table.has_value() && table->exponents() == Multiset{2, 2, 2}, "inductive with {2,2,2}");

  // a valid induction table with the atom order H1,H2,H3,H4,H6,H5
  std::vector<int> order = {find_atom(lp, "H1"), find_atom(lp, "H2"), find_atom(lp, "H3"),
                            find_atom(lp, "H4"), find_atom(lp, "H6"), find_atom(lp, "H5")};
  auto guided = is_inductive_guided(lp.poset, order);
  c.expect(guided.table.has_value(), "guided order H1,H2,H3,H4,H6,H5 yields a table");
  if (guided.table)
    c.expect(verify_induction_table(lp.poset, *guided.table).ok, "guided table replays");

  // the reference row sequence, zero-padded arrangement style
  InductionTable reference;
  auto row = [&](Multiset del, const std::string& atom, Multiset res) {
    reference.rows.push_back({std::move(del), find_atom(lp, atom), atom, std::move(res)});
  };
  row({0, 0, 0}, "H1", {0, 0});
  row({0, 0, 1}, "H2", {0, 1});
  row({0, 1, 1}, "H3", {0, 1});
  row({0, 1, 2}, "H4", {1, 2});
  row({1, 1, 2}, "H6", {1, 2});
  row({1, 2, 2}, "H5", {2, 2});
  reference.final_exponents = {2, 2, 2};
  auto replay = verify_induction_table(lp.poset, reference, 3);
  c.expect(replay.ok, "reference row sequence accepted: " + replay.reason);
}

// --- criterion 3: matrix S, real --------------------------------------------
void criterion3(Checker& c) {
  Arrangement ar = matrix_s(GroupKind::real);
  LayerPoset lr = build_layer_poset(ar);
  c.expect(char_poly_arrangement(ar, lr) == PolyZ::linear_root(1) * PolyZ({7, -5, 1}),
           "chi = (t-1)(t^2-5t+7)");
  EffortLimits eff;
  auto rep = classification_report(lr.poset, eff);
  c.expect(rep.factorable == Flag::no, "factorable false");
  c.expect(rep.divisional == Flag::no, "divisional false");

  Arrangement at = matrix_s(GroupKind::torus);
  LayerPoset lt = build_layer_poset(at);
  int identity = lt.poset.find_label("(1,1,1)");
  c.expect(identity >= 0, "torus poset has the layer (1,1,1)");
  Arrangement loc = localization(at, lt, identity);
  LayerPoset lloc = build_layer_poset(loc);
  c.expect(is_isomorphic(lloc.poset, lr.poset).has_value(),
           "localization at (1,1,1) reproduces the real poset");
}

// --- criterion 4: Pi_3^w -----------------------------------------------------
void criterion4(Checker& c) {
  Poset p = fixtures::pi3w_poset();
  c.expect(char_poly(p) == PolyZ({9, -6, 1}), "chi = (t-3)^2");
  auto exps = factor_positive_integer_roots(char_poly(p));
  c.expect(exps.has_value() && *exps == Multiset{3, 3}, "factorable with {3,3}");
  c.expect(!is_divisional(p).has_value(), "not divisional");
  for (int a : p.atoms())
    c.expect(char_poly(upper_set(p, a)) == PolyZ({-2, 1}),
             "upper set at " + p.label(a) + " has chi = t-2");
}

// --- criterion 5: D2 ---------------------------------------------------------
void criterion5(Checker& c) {
  Poset b2 = fixtures::b2_layer_poset();
  Poset d2 = generated_subposet(b2, {b2.find_label("t1t2=1"), b2.find_label("t1t2^-1=1")});
  c.expect(is_supersolvable(d2).has_value(), "supersolvable");
  c.expect(!is_inductive(d2).has_value(), "not inductive");
  c.expect(!factor_positive_integer_roots(char_poly(d2)).has_value(), "not factorable");
}

// --- criterion 6: the inductive-not-geometric poset -------------------------
void criterion6(Checker& c) {
  Poset p = fixtures::ind_not_geo_poset();
  Poset plain = p;
  plain.set_structure_hints(false, false);
  c.expect(!is_geometric_poset(plain), "not a geometric poset");
  auto table = is_inductive(p);
  c.expect(table.has_value() && table->exponents() == Multiset{1, 3}, "inductive with {1,3}");
}

// --- criterion 7: B3 toric ---------------------------------------------------
void criterion7(Checker& c) {
  RootIdeal b3 = full_ideal(RootSystemType::B, 3);
  Arrangement ai = build_arrangement_from_ideal(b3, LatticeChoice::integer_lattice, GroupKind::torus);
  LayerPoset li = build_layer_poset(ai);
  auto table = is_inductive(li.poset);
  c.expect(table.has_value() && table->exponents() == sorted({3, 2, 4}), "inductive with {3,2,4}");
  c.expect(!is_supersolvable(li.poset).has_value(), "not supersolvable");
  Arrangement arr = build_arrangement_from_ideal(b3, LatticeChoice::root_lattice, GroupKind::torus);
  LayerPoset lr = build_layer_poset(arr);
  c.expect(is_isomorphic(li.poset, lr.poset).has_value(), "root- and integer-lattice posets isomorphic");
}

// --- criterion 8: full C2 and C3 ---------------------------------------------
void criterion8(Checker& c) {
  struct Case {
    int rank;
    Multiset integer_exps, root_exps;
  };
  for (const Case& k : {Case{2, {4, 2}, {2, 2}}, Case{3, {6, 4, 2}, {3, 4, 2}}}) {
    RootIdeal ideal = full_ideal(RootSystemType::C, k.rank);
    Arrangement ai = build_arrangement_from_ideal(ideal, LatticeChoice::integer_lattice, GroupKind::torus);
    LayerPoset li = build_layer_poset(ai);
    auto sss = is_strictly_supersolvable(li.poset);
    c.expect(sss.has_value(), "C" + std::to_string(k.rank) + " integer strictly supersolvable");
    if (sss)
      c.expect(sss->exponents() == sorted(Multiset(k.integer_exps)),
               "C" + std::to_string(k.rank) + " integer exponents");
    Arrangement arr = build_arrangement_from_ideal(ideal, LatticeChoice::root_lattice, GroupKind::torus);
    LayerPoset lr = build_layer_poset(arr);
    auto table = is_inductive(lr.poset);
    c.expect(table.has_value(), "C" + std::to_string(k.rank) + " root inductive");
    if (table)
      c.expect(table->exponents() == sorted(Multiset(k.root_exps)),
               "C" + std::to_string(k.rank) + " root exponents");
  }
}

// --- criterion 9: the C5 ideal (extended tier) -------------------------------
void criterion9(Checker& c) {
  auto sys = positive_system(RootSystemType::C, 5);
  RootIdeal ideal = ideal_closure(
      RootSystemType::C, 5,
      {*find_root(sys, {Int(1), Int(0), Int(0), Int(0), Int(-1)}),
       *find_root(sys, {Int(0), Int(1), Int(1), Int(0), Int(0)})});

  auto pi = predicted_exponents(ideal, LatticeChoice::integer_lattice);
  c.expect(pi.exponents.has_value() && *pi.exponents == sorted({4, 6, 6, 4, 2}),
           "predicted integer exponents {4,6,6,4,2}");
  auto pr = predicted_exponents(ideal, LatticeChoice::root_lattice);
  c.expect(pr.exponents.has_value() && *pr.exponents == sorted({4, 6, 4, 2, 3}),
           "predicted root exponents {4,6,4,2,3}");

  Arrangement ai = build_arrangement_from_ideal(ideal, LatticeChoice::integer_lattice, GroupKind::torus);
  LayerPoset li = build_layer_poset(ai);
  auto repi = classification_report(li.poset, chain_effort(ideal, LatticeChoice::integer_lattice, li));
  c.expect(repi.strictly_supersolvable == Flag::yes, "guided: integer lattice strictly supersolvable");
  c.expect(repi.exponents == sorted({4, 6, 6, 4, 2}), "guided: integer exponents match");

  Arrangement arr = build_arrangement_from_ideal(ideal, LatticeChoice::root_lattice, GroupKind::torus);
  LayerPoset lr = build_layer_poset(arr);
  auto repr = classification_report(lr.poset, chain_effort(ideal, LatticeChoice::root_lattice, lr));
  c.expect(repr.inductive == Flag::yes, "guided: root lattice inductive");
  c.expect(repr.exponents == sorted({4, 6, 4, 2, 3}), "guided: root exponents match");
  if (repr.induction_table)
    c.expect(verify_induction_table(lr.poset, *repr.induction_table).ok, "root induction table replays");
}

// --- criterion 10: the B5 table's extension with p = 4 (extended tier) -------
void criterion10(Checker& c) {
  auto sys = positive_system(RootSystemType::B, 5);
  RootIdeal ideal = ideal_closure(
      RootSystemType::B, 5,
      {*find_root(sys, {Int(1), Int(0), Int(0), Int(1), Int(0)}),
       *find_root(sys, {Int(0), Int(1), Int(1), Int(0), Int(0)})});
  Arrangement a = build_arrangement_from_ideal(ideal, LatticeChoice::integer_lattice,
                                               GroupKind::torus, 4);
  LayerPoset lp = build_layer_poset(a);
  auto rep = classification_report(lp.poset,
                                   chain_effort(ideal, LatticeChoice::integer_lattice, lp, 4));
  c.expect(rep.exponents == sorted({6, 7, 6, 4, 2}),
           "computed exponent multiset equals {6,7,6,4,2}");
  c.expect(rep.inductive == Flag::yes, "guided chain certifies inductiveness");
  if (rep.induction_table)
    c.expect(verify_induction_table(lp.poset, *rep.induction_table).ok, "induction table replays");
}

// --- criterion 11: property suites -------------------------------------------
void criterion11(Checker& c, const std::string& suite) {
  VerifyOptions opt;
  opt.count = 200;
  opt.seed = 20240801;
  opt.suites = {suite};
  auto results = run_verify(opt);
  for (const auto& r : results) {
    c.expect(r.checked > 0, suite + ": no checks ran");
    c.expect(r.failures == 0, suite + ": " + std::to_string(r.failures) + " failures" +
                                  (r.failure_details.empty() ? "" : "; first: " + r.failure_details[0]));
  }
}

struct Criterion {
  int number;
  std::string summary;
  double limit_seconds;
  std::function<void(Checker&)> fn;
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<Criterion> criteria = {
      {1, "B2 toric integer lattice: 7 layers, chi, {2,2}, SS but not SSS", 1.0, criterion1},
      {2, "matrix S torus: 18 layers, inductive {2,2,2}, reference table replay", 10.0, criterion2},
      {3, "matrix S real: (t-1)(t^2-5t+7), not factorable/divisional, localization", 5.0, criterion3},
      {4, "Pi_3^w: (t-3)^2, factorable {3,3}, not divisional, upper sets t-2", 1.0, criterion4},
      {5, "D2: supersolvable, not inductive, not factorable", 1.0, criterion5},
      {6, "inductive-not-geometric poset: not geometric, inductive {1,3}", 1.0, criterion6},
      {7, "B3 toric: inductive {3,2,4}, not supersolvable, root = integer", 120.0, criterion7},
      {8, "full C2/C3: integer SSS {4,2}/{6,4,2}, root inductive {2,2}/{3,4,2}", 120.0, criterion8},
      {9, "C5 ideal: predictions and guided classification (extended tier)", 600.0, criterion9},
      {10, "B5 ideal extension p=4: exponents {6,7,6,4,2} via guided mode (extended tier)", 600.0,
       criterion10},
      {11, "property suites over fixtures plus 200 random arrangements", 300.0,
       [](Checker& c) {
         for (const char* s : {"deletion-restriction", "sign-alternation", "inclusions",
                               "tm-factor", "exponent-sum", "predicted"})
           criterion11(c, s);
       }},
  };

  std::set<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));

  int failed = 0;
  double total = 0;
  for (const auto& cr : criteria) {
    if (!wanted.empty() && !wanted.count(cr.number)) continue;
    Checker ck;
    auto start = std::chrono::steady_clock::now();
    try {
      cr.fn(ck);
    } catch (const std::exception& e) {
      ck.failures.push_back(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    total += secs;
    if (secs > cr.limit_seconds)
      ck.failures.push_back("runtime " + std::to_string(secs) + " s exceeds the " +
                            std::to_string(cr.limit_seconds) + " s limit");
    std::ostringstream line;
    line.precision(2);
    line << (ck.failures.empty() ? "PASS" : "FAIL") << " criterion " << cr.number << " ["
         << std::fixed << secs << " s]: " << cr.summary;
    std::cout << line.str() << "\n";
    for (const auto& f : ck.failures) std::cout << "      " << f << "\n";
    failed += !ck.failures.empty();
  }
  std::cout << (failed ? "ACCEPTANCE: FAILED" : "ACCEPTANCE: OK") << " (" << total << " s)\n";
  return failed ? 1 : 0;
}
