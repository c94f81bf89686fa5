#pragma once

#include <atomic>
#include <random>
#include <thread>

#include "layercraft/analyze.hpp"
#include "layercraft/fixtures.hpp"
#include "layercraft/rootsys.hpp"

namespace layercraft {

struct VerifyOptions {
  uint64_t seed = 20240801;
  int count = 200;  // random arrangements on top of the fixtures
  int jobs = 1;
  std::vector<std::string> suites;  // empty = all
  uint64_t max_elements = 200000;
  uint64_t step_budget = 20000000;
};

struct SuiteResult {
  std::string name;
  int checked = 0;
  int failures = 0;
  std::vector<std::string> failure_details;
};

inline const std::vector<std::string>& verify_suite_names() {
  static const std::vector<std::string> names = {"deletion-restriction", "sign-alternation",
                                                 "inclusions", "tm-factor", "exponent-sum",
                                                 "predicted"};
  return names;
}

namespace detail {

struct CorpusInstance {
  std::string name;
  Poset poset;
};

/// Deterministic random arrangement: dim <= 3, at most 4 characters, entries
/// in [-2,2]; an even index gives a torus, an odd one a real arrangement.
inline Arrangement random_arrangement(uint64_t seed, int index) {
  std::mt19937_64 rng(seed * 1000003ULL + uint64_t(index) * 7919ULL + 17);
  std::uniform_int_distribution<int> dim_d(1, 3), count_d(1, 4), entry_d(-2, 2);
  int dim = dim_d(rng);
  int count = count_d(rng);
  std::vector<IntVec> chars;
  while (int(chars.size()) < count) {
    IntVec v(static_cast<size_t>(dim));
    bool zero = true;
    for (int i = 0; i < dim; ++i) {
      long e = entry_d(rng);
      v[size_t(i)] = e;
      zero &= e == 0;
    }
    if (!zero) chars.push_back(std::move(v));
  }
  return make_arrangement(index % 2 == 0 ? GroupKind::torus : GroupKind::real, dim, chars);
}

inline std::string arrangement_str(const Arrangement& a) {
  std::string s = std::string(group_name(a.group)) + " dim=" + std::to_string(a.dim) + " chars=[";
  for (size_t i = 0; i < a.characters.size(); ++i) {
    s += i ? " " : "";
    s += "(";
    for (size_t j = 0; j < a.characters[i].vector.size(); ++j)
      s += (j ? "," : "") + a.characters[i].vector[j].get_str();
    s += ")";
  }
  return s + "]";
}

inline std::vector<CorpusInstance> fixture_corpus() {
  std::vector<CorpusInstance> out;
  out.push_back({"B2 toric layer poset", fixtures::b2_layer_poset()});
  out.push_back({"Pi_3^w", fixtures::pi3w_poset()});
  out.push_back({"inductive-not-geometric", fixtures::ind_not_geo_poset()});
  out.push_back({"U_{3,4}", fixtures::u34_lattice()});
  out.push_back({"boolean rank 3", fixtures::boolean_lattice(3)});
  out.push_back({"D2 poset", fixtures::d2_poset()});
  Arrangement s_torus = make_arrangement(
      GroupKind::torus, 3, {{1, 0, 0}, {0, 1, 0}, {1, 1, 0}, {0, 0, 1}, {1, 0, -1}, {0, 1, -1}},
      {"H1", "H2", "H3", "H4", "H5", "H6"});
  out.push_back({"matrix-S torus", build_layer_poset(s_torus).poset});
  Arrangement s_real = make_arrangement(
      GroupKind::real, 3, {{1, 0, 0}, {0, 1, 0}, {1, 1, 0}, {0, 0, 1}, {1, 0, -1}, {0, 1, -1}});
  out.push_back({"matrix-S real", build_layer_poset(s_real).poset});
  Arrangement b2i = build_arrangement_from_ideal(full_ideal(RootSystemType::B, 2),
                                                 LatticeChoice::integer_lattice, GroupKind::torus);
  out.push_back({"B2 integer toric", build_layer_poset(b2i).poset});
  Arrangement c2i = build_arrangement_from_ideal(full_ideal(RootSystemType::C, 2),
                                                 LatticeChoice::integer_lattice, GroupKind::torus);
  out.push_back({"C2 integer toric", build_layer_poset(c2i).poset});
  return out;
}

struct SuiteSink {
  std::vector<SuiteResult>* results;
  bool wants(const std::string& suite) const {
    for (const auto& r : *results)
      if (r.name == suite) return true;
    return false;
  }
  void record(const std::string& suite, bool ok, const std::string& detail) {
    for (auto& r : *results)
      if (r.name == suite) {
        ++r.checked;
        if (!ok) {
          ++r.failures;
          if (r.failure_details.size() < 20) r.failure_details.push_back(detail);
        }
        return;
      }
  }
};

/// All per-poset property checks; each maps directly to one acceptance suite.
inline void check_instance(const CorpusInstance& inst, const VerifyOptions& opt, SuiteSink& sink,
                           bool is_d2_fixture) {
  const Poset& p = inst.poset;
  auto want = [&](const std::string& n) { return sink.wants(n); };
  bool lg = p.assume_locally_geometric() || is_locally_geometric(p);

  if (want("deletion-restriction") && lg) {
    bool ok = true;
    std::string detail;
    for (int a : p.atoms())
      if (!deletion_restriction_residual(p, a).is_zero()) {
        ok = false;
        detail = inst.name + ": nonzero residual at atom " + p.label(a);
        break;
      }
    sink.record("deletion-restriction", ok, detail);
  }

  if (want("sign-alternation") && lg) {
    PolyZ chi = char_poly(p);
    bool ok = true;
    int r = chi.degree();
    for (int i = 0; i <= r; ++i)
      if (((r - i) % 2 == 0 ? chi[i] : -chi[i]) <= 0) ok = false;
    sink.record("sign-alternation", ok, inst.name + ": chi = " + chi.str());
  }

  if (want("inclusions") && lg) {
    EffortLimits eff;
    eff.max_elements = opt.max_elements;
    eff.step_budget = opt.step_budget;
    bool ok = true;
    std::string detail;
    try {
      ClassificationReport rep = classification_report(p, eff);  // throws on chain violations
      auto yes = [](Flag f) { return f == Flag::yes; };
      auto no = [](Flag f) { return f == Flag::no; };
      if (yes(rep.strictly_supersolvable) && (no(rep.inductive) || no(rep.supersolvable))) ok = false;
      if (yes(rep.inductive) && no(rep.divisional)) ok = false;
      if (yes(rep.divisional) && no(rep.factorable)) ok = false;
      if (is_d2_fixture) {
        // the expected non-inclusion SS !=> IP, witnessed by D2
        if (!(yes(rep.supersolvable) && no(rep.inductive))) {
          ok = false;
          detail = "D2 must be supersolvable but not inductive";
        }
      }
    } catch (const error& e) {
      ok = false;
      detail = inst.name + ": " + e.what();
    }
    sink.record("inclusions", ok, detail.empty() ? inst.name : detail);
  }

  if (want("tm-factor") && lg && p.atoms().size() <= 10) {
    bool ok = true;
    std::string detail;
    Subposet whole = Subposet::whole(p);
    const auto atoms = p.atoms();
    for (uint64_t mask = 0; mask < (uint64_t(1) << atoms.size()) && ok; ++mask) {
      std::vector<int> sub;
      for (size_t i = 0; i < atoms.size(); ++i)
        if (mask & (uint64_t(1) << i)) sub.push_back(atoms[i]);
      Subposet q = generated_view(whole, sub);
      if (q.rank() != p.rank() - 1) continue;
      auto m_ideal = check_ideal(whole, q.members, false);
      if (m_ideal && !whole.is_pure()) {  // a corank-1 M-ideal forces purity
        ok = false;
        detail = inst.name + ": M-ideal accepted in a non-pure poset";
        break;
      }
      if (m_ideal) {
        // a in A(P)\A(Q) iff y ^ a = {0} for every y in max(Q)
        Bits q_atoms(p.size());
        for (int a : q.atoms()) q_atoms.set(a);
        for (int a : atoms) {
          bool outside = !q_atoms.test(a);
          bool all_bottom = true;
          for (int y : q.maximal()) {
            auto mm = meets(whole, y, a);
            all_bottom &= (mm.size() == 1 && mm[0] == 0);
          }
          if (outside != all_bottom) {
            ok = false;
            detail = inst.name + ": meet-characterization of outside atoms failed";
            break;
          }
        }
      }
      auto w = check_ideal(whole, q.members, true);
      if (!w) continue;
      int64_t d = int64_t(atoms.size() - sub.size());
      if (char_poly(whole) != PolyZ::linear_root(d) * char_poly(q)) {
        ok = false;
        detail = inst.name + ": TM-ideal without the (t-d) factor";
        break;
      }
      Poset qmat = materialize(q);
      for (int a : atoms) {
        if (std::find(sub.begin(), sub.end(), a) != sub.end()) continue;
        if (!is_isomorphic(qmat, materialize(whole.upper_set(a))).has_value()) {
          ok = false;
          detail = inst.name + ": TM-ideal not isomorphic to an upper set";
          break;
        }
      }
    }
    sink.record("tm-factor", ok, detail.empty() ? inst.name : detail);
  }

  if (want("exponent-sum") && lg) {
    bool ok = true;
    std::string detail;
    try {
      auto chain = is_divisional(p, opt.step_budget);
      if (chain) {
        int64_t sum = 0;
        for (auto d : chain->step_exponents) sum += d;
        if (sum != int64_t(p.atoms().size())) {
          ok = false;
          detail = inst.name + ": divisional exponents sum to " + std::to_string(sum) +
                   ", atoms " + std::to_string(p.atoms().size());
        }
      }
    } catch (const error&) {
      // budget exhaustion: skip, do not fail
    }
    sink.record("exponent-sum", ok, detail.empty() ? inst.name : detail);
  }
}

inline void check_predicted_suite(const VerifyOptions& opt, SuiteSink& sink) {
  (void)opt;
  // full enumeration of the order ideals of the 9-root posets of B3 and C3,
  // checked against the classification of the built arrangements; plus the
  // hyperplane-side cross-check exp(real) = DP(I) for B3/C3/A3 ideals
  for (RootSystemType type : {RootSystemType::B, RootSystemType::C, RootSystemType::A}) {
    int rank = type == RootSystemType::A ? 4 : 3;
    auto system = positive_system(type, rank);
    const int n = int(system.size());
    for (uint64_t mask = 0; mask < (uint64_t(1) << n); ++mask) {
      std::vector<Root> subset;
      for (int i = 0; i < n; ++i)
        if (mask & (uint64_t(1) << i)) subset.push_back(system[size_t(i)]);
      if (!is_ideal(type, rank, subset)) continue;
      RootIdeal ideal;
      ideal.type = type;
      ideal.rank = rank;
      ideal.roots = subset;

      std::string iname = std::string(type_name(type)) + std::to_string(rank) + " ideal mask " +
                          std::to_string(mask);
      // hyperplane side: exponents equal DP(I) (cross-check of the DP code)
      {
        Arrangement real = build_arrangement_from_ideal(ideal, LatticeChoice::root_lattice,
                                                        GroupKind::real);
        auto ex = arrangement_exponents(real, build_layer_poset(real));
        bool ok = ex.has_value() && *ex == stats(ideal).dual_partition;
        sink.record("predicted", ok, iname + ": real exponents differ from DP");
      }
      if (type == RootSystemType::A) continue;  // toric prediction = DP, same check
      for (LatticeChoice lat : {LatticeChoice::integer_lattice, LatticeChoice::root_lattice}) {
        Predicted pred = predicted_exponents(ideal, lat);
        bool ok = pred.exponents.has_value();
        std::string detail = iname + (lat == LatticeChoice::integer_lattice ? " integer" : " root");
        if (ok) {
          Arrangement a = build_arrangement_from_ideal(ideal, lat, GroupKind::torus);
          LayerPoset lp = build_layer_poset(a);
          // atoms of a toric arrangement = sum of the character contents
          Int content_sum = 0;
          for (const auto& ch : a.characters) content_sum += ch.content;
          if (Int(long(lp.poset.atoms().size())) != content_sum) {
            ok = false;
            detail += ": atom count differs from the content sum";
          }
          auto computed = arrangement_exponents(a, lp);
          ok = ok && computed.has_value() && *computed == *pred.exponents;
          if (ok) {
            int64_t s = 0;
            for (auto d : *computed) s += d;
            ok = (s == content_sum.get_si());  // divisional exponent sum
          }
          if (!ok && computed)
            detail += ": predicted " + multiset_str(*pred.exponents) + " computed " +
                      multiset_str(*computed);
        } else {
          detail += ": not covered (" + pred.not_covered_reason + ")";
        }
        sink.record("predicted", ok, detail);
      }
    }
  }
}

}  // namespace detail

/// Runs the named property suites over the built-in fixtures plus `count` random
/// arrangements. Results are deterministic for a fixed seed; --jobs only
/// changes the schedule.
inline std::vector<SuiteResult> run_verify(const VerifyOptions& opt) {
  std::vector<SuiteResult> results;
  for (const auto& n : verify_suite_names())
    if (opt.suites.empty() || std::find(opt.suites.begin(), opt.suites.end(), n) != opt.suites.end())
      results.push_back({n, 0, 0, {}});
  auto wanted = [&](const std::string& n) {
    for (const auto& r : results)
      if (r.name == n) return true;
    return false;
  };

  // fixtures first, sequentially (they are few)
  auto fixtures_list = detail::fixture_corpus();
  detail::SuiteSink sink{&results};
  for (const auto& inst : fixtures_list)
    detail::check_instance(inst, opt, sink, inst.name == "D2 poset");

  // random corpus, optionally in parallel; results land in per-index slots
  std::vector<std::vector<SuiteResult>> slots(size_t(std::max(0, opt.count)));
  auto work = [&](int index) {
    std::vector<SuiteResult> local;
    for (const auto& r : results) local.push_back({r.name, 0, 0, {}});
    detail::SuiteSink lsink{&local};
    Arrangement a = detail::random_arrangement(opt.seed, index);
    detail::CorpusInstance inst{"random #" + std::to_string(index) + " (" +
                                    detail::arrangement_str(a) + ")",
                                build_layer_poset(a, opt.max_elements).poset};
    detail::check_instance(inst, opt, lsink, false);
    slots[size_t(index)] = std::move(local);
  };
  int jobs = std::max(1, opt.jobs);
  if (jobs == 1) {
    for (int i = 0; i < opt.count; ++i) work(i);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t)
      pool.emplace_back([&]() {
        for (int i = next.fetch_add(1); i < opt.count; i = next.fetch_add(1)) work(i);
      });
    for (auto& t : pool) t.join();
  }
  for (const auto& local : slots)
    for (const auto& lr : local)
      for (auto& r : results)
        if (r.name == lr.name) {
          r.checked += lr.checked;
          r.failures += lr.failures;
          for (const auto& d : lr.failure_details)
            if (r.failure_details.size() < 20) r.failure_details.push_back(d);
        }

  if (wanted("predicted")) detail::check_predicted_suite(opt, sink);
  return results;
}

}  // namespace layercraft
