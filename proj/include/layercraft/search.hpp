#pragma once

#include <string>
#include <vector>

#include "layercraft/fixtures.hpp"
#include "layercraft/rootsys.hpp"

namespace layercraft {

/// Exploratory hunt for a divisional-but-not-inductive non-lattice poset
/// (open per the class hierarchy discussion). Enumerates small central toric
/// arrangements plus the hand-entered fixtures; everything examined so far is
/// expected to be excluded, so the candidate log should come back empty.
struct SearchOptions {
  int max_atoms = 3;
  int dim_lo = 2;
  int dim_hi = 3;
  uint64_t max_elements = 200000;
  uint64_t step_budget = 20000000;
};

struct SearchLog {
  int examined = 0;
  std::vector<std::string> candidates;   // the hunted witnesses
  std::vector<std::string> exclusions;   // fixture name -> why it is excluded
};

namespace detail {

inline void search_examine(const std::string& name, const Poset& p, const SearchOptions& opt,
                           SearchLog& log, bool log_exclusion) {
  ++log.examined;
  if (!(p.assume_locally_geometric() || is_locally_geometric(p))) {
    if (log_exclusion) log.exclusions.push_back(name + ": not locally geometric");
    return;
  }
  if (is_lattice(p)) {
    if (log_exclusion) log.exclusions.push_back(name + ": lattice");
    return;
  }
  std::optional<DivisionalChain> div;
  try {
    div = is_divisional(p, opt.step_budget);
  } catch (const error&) {
    if (log_exclusion) log.exclusions.push_back(name + ": divisional search over budget");
    return;
  }
  if (!div) {
    if (log_exclusion) log.exclusions.push_back(name + ": not divisional");
    return;
  }
  std::optional<InductionTable> ind;
  try {
    ind = is_inductive(p, opt.step_budget);
  } catch (const error&) {
    log.candidates.push_back(name + ": divisional, inductiveness undecided (budget)");
    return;
  }
  if (!ind) log.candidates.push_back(name + ": divisional but NOT inductive, non-lattice");
  else if (log_exclusion) log.exclusions.push_back(name + ": inductive");
}

inline std::vector<IntVec> search_pool(int dim) {
  // primitive sign-normalized vectors with entries in [-1,1], plus the
  // doubled units (the smallest characters with disconnected hypertori)
  std::vector<IntVec> pool;
  std::vector<long> v(size_t(dim), -1);
  while (true) {
    bool zero = true, lead_ok = false, first = true;
    for (long e : v) {
      if (e != 0 && first) {
        lead_ok = e > 0;
        first = false;
      }
      zero &= e == 0;
    }
    if (!zero && lead_ok) pool.push_back(IntVec(v.begin(), v.end()));
    int i = dim - 1;
    while (i >= 0 && v[size_t(i)] == 1) v[size_t(i--)] = -1;
    if (i < 0) break;
    ++v[size_t(i)];
  }
  for (int i = 0; i < dim; ++i) {
    IntVec u(size_t(dim), Int(0));
    u[size_t(i)] = 2;
    pool.push_back(std::move(u));
  }
  return pool;
}

inline std::string arrangement_str_short(const Arrangement& a) {
  std::string s = "torus dim=" + std::to_string(a.dim) + " [";
  for (size_t i = 0; i < a.characters.size(); ++i) {
    s += i ? " " : "";
    s += "(";
    for (size_t j = 0; j < a.characters[i].vector.size(); ++j)
      s += (j ? "," : "") + a.characters[i].vector[j].get_str();
    s += ")";
  }
  return s + "]";
}

}  // namespace detail

inline SearchLog run_search(const SearchOptions& opt) {
  SearchLog log;
  detail::search_examine("Pi_3^w", fixtures::pi3w_poset(), opt, log, true);
  detail::search_examine("inductive-not-geometric", fixtures::ind_not_geo_poset(), opt, log, true);
  detail::search_examine("D2", fixtures::d2_poset(), opt, log, true);
  detail::search_examine("B2 toric", fixtures::b2_layer_poset(), opt, log, true);
  Arrangement s_real = make_arrangement(
      GroupKind::real, 3, {{1, 0, 0}, {0, 1, 0}, {1, 1, 0}, {0, 0, 1}, {1, 0, -1}, {0, 1, -1}});
  detail::search_examine("matrix-S real", build_layer_poset(s_real).poset, opt, log, true);

  for (int dim = opt.dim_lo; dim <= opt.dim_hi; ++dim) {
    auto pool = detail::search_pool(dim);
    std::vector<int> pick;
    std::function<void(size_t)> rec = [&](size_t start) {
      if (!pick.empty() && int(pick.size()) <= opt.max_atoms) {
        std::vector<IntVec> chars;
        for (int i : pick) chars.push_back(pool[size_t(i)]);
        Arrangement a = make_arrangement(GroupKind::torus, dim, chars);
        std::string name = detail::arrangement_str_short(a);
        detail::search_examine(name, build_layer_poset(a, opt.max_elements).poset, opt, log, false);
      }
      if (int(pick.size()) == opt.max_atoms) return;
      for (size_t i = start; i < pool.size(); ++i) {
        pick.push_back(int(i));
        rec(i + 1);
        pick.pop_back();
      }
    };
    rec(0);
  }
  return log;
}

}  // namespace layercraft
