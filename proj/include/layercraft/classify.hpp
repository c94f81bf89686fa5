#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "layercraft/geometry.hpp"
#include "layercraft/poset.hpp"

namespace layercraft {

/// Deletion P' (subposet generated by the remaining atoms) and restriction
/// P'' (upper set at the distinguished atom).
struct Triple {
  Poset deleted;
  Poset restricted;
};

inline Triple triple(const Poset& p, int a) {
  if (a < 0 || a >= p.size() || p.rank_of(a) != 1) fail(errc::atom_not_found, "not an atom");
  std::vector<int> rest;
  for (int b : p.atoms())
    if (b != a) rest.push_back(b);
  return {generated_subposet(p, rest), upper_set(p, a)};
}

/// chi_P - (t^eps * chi_P' - chi_P''); identically zero for locally geometric
/// posets by the deletion-restriction theorem.
inline PolyZ deletion_restriction_residual(const Poset& p, int a) {
  if (a < 0 || a >= p.size() || p.rank_of(a) != 1) fail(errc::atom_not_found, "not an atom");
  if (!is_locally_geometric(p)) fail(errc::not_locally_geometric, "residual needs a locally geometric poset");
  Subposet whole = Subposet::whole(p);
  std::vector<int> rest;
  for (int b : p.atoms())
    if (b != a) rest.push_back(b);
  Subposet del = generated_view(whole, rest);
  Subposet res = whole.upper_set(a);
  int eps = p.rank() - del.rank();
  return char_poly(whole) - (char_poly(del).shifted(eps) - char_poly(res));
}

// ---------------------------------------------------------------------------
// Divisional posets
// ---------------------------------------------------------------------------

/// Chain 0 = x_0 < x_1 < ... < x_r with rk(x_i) = i and exact divisibility
/// chi(P_{>= x_i}) | chi(P_{>= x_{i-1}}) at every step.
struct DivisionalChain {
  std::vector<int> elements;      // x_0 .. x_r (ids in the ambient poset)
  Multiset step_exponents;        // d_i = |A(Q_{i-1})| - |A(Q_i)|, i = 1..r

  Multiset exponents() const {
    Multiset m = step_exponents;
    return sorted(std::move(m));
  }
};

/// Depth-first search per the divisional-chain theorem, memoized on the base
/// element; deterministic first witness in ascending cover order.
inline std::optional<DivisionalChain> is_divisional(const Poset& p, uint64_t step_budget = UINT64_MAX) {
  if (!is_locally_geometric(p)) fail(errc::not_locally_geometric, "is_divisional needs a locally geometric poset");
  const int r = p.rank();
  std::map<int, std::optional<std::vector<int>>> memo;  // x -> chain tail above x
  uint64_t budget = step_budget;

  std::function<std::optional<std::vector<int>>(int)> from = [&](int x) -> std::optional<std::vector<int>> {
    auto it = memo.find(x);
    if (it != memo.end()) return it->second;
    if (budget == 0) fail(errc::budget_exceeded, "divisional search budget exhausted");
    --budget;
    std::optional<std::vector<int>> result;
    if (p.rank_of(x) == r) {
      result = std::vector<int>{x};
    } else {
      PolyZ cur = char_poly(Subposet::whole(p).upper_set(x));
      for (int y : p.upper_covers(x)) {
        PolyZ up = char_poly(Subposet::whole(p).upper_set(y));
        if (!divides(up, cur)) continue;
        auto tail = from(y);
        if (!tail) continue;
        result = std::vector<int>{x};
        result->insert(result->end(), tail->begin(), tail->end());
        break;
      }
    }
    memo[x] = result;
    return result;
  };

  auto chain = from(0);
  if (!chain) return std::nullopt;
  DivisionalChain out;
  out.elements = *chain;
  for (size_t i = 1; i < chain->size(); ++i) {
    Subposet prev = Subposet::whole(p).upper_set((*chain)[i - 1]);
    Subposet cur = Subposet::whole(p).upper_set((*chain)[i]);
    out.step_exponents.push_back(int64_t(prev.atoms().size()) - int64_t(cur.atoms().size()));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Inductive posets
// ---------------------------------------------------------------------------

/// One addition step: the exponents of the deleted poset, the atom added, and
/// the exponents of the restriction. Exponent multisets are poset-level (no
/// zero padding); pad_exponents() converts to the arrangement convention.
struct InductionRow {
  Multiset deleted_exponents;
  int atom = -1;
  std::string atom_label;
  Multiset restricted_exponents;
};

struct InductionTable {
  std::vector<InductionRow> rows;  // in addition order
  Multiset final_exponents;

  Multiset exponents() const {
    Multiset m = final_exponents;
    return sorted(std::move(m));
  }
};

inline Multiset pad_exponents(const Multiset& m, int width) {
  Multiset out(size_t(std::max<int>(0, width - int(m.size()))), 0);
  out.insert(out.end(), m.begin(), m.end());
  return sorted(std::move(out));
}

namespace detail {

struct InductionSearch {
  const Poset* p;
  uint64_t budget;
  std::vector<int> preference;  // optional atom trial order (ids tried first)
  std::map<std::pair<int, std::vector<int>>, std::optional<InductionTable>> memo;

  void spend() {
    if (budget == 0) fail(errc::budget_exceeded, "induction search budget exhausted");
    --budget;
  }

  std::vector<int> trial_order(const std::vector<int>& atoms) const {
    if (preference.empty()) return atoms;
    std::vector<int> out;
    for (int a : preference)
      if (std::find(atoms.begin(), atoms.end(), a) != atoms.end()) out.push_back(a);
    for (int a : atoms)
      if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(a);
    return out;
  }

  std::optional<InductionTable> run(const Subposet& v) {
    std::vector<int> atoms = v.atoms();
    std::pair<int, std::vector<int>> key{v.base, atoms};
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    spend();

    std::optional<InductionTable> result;
    if (v.rank() == 0) {
      result = InductionTable{};
    } else {
      auto exps = factor_positive_integer_roots(char_poly(v));
      // inductive => divisional => factorable with exponents summing to |A|
      bool viable = exps.has_value();
      if (viable) {
        int64_t s = 0;
        for (auto d : *exps) s += d;
        viable = (s == int64_t(atoms.size()));
      }
      if (viable) {
        for (int a : trial_order(atoms)) {
          std::vector<int> rest;
          for (int b : atoms)
            if (b != a) rest.push_back(b);
          Subposet del = generated_view(v, rest);
          Subposet res = v.upper_set(a);
          PolyZ chi_del = char_poly(del), chi_res = char_poly(res);
          if (!divides(chi_res, chi_del)) continue;
          auto res_exps = factor_positive_integer_roots(chi_res);
          if (!res_exps) continue;
          auto res_table = run(res);
          if (!res_table) continue;
          auto del_table = run(del);
          if (!del_table) continue;
          auto del_exps = factor_positive_integer_roots(chi_del);
          check_internal(del_exps.has_value(), "inductive deletion must be factorable");
          InductionTable t = std::move(*del_table);
          t.rows.push_back({*del_exps, a, v.p->label(a), *res_exps});
          t.final_exponents = *exps;
          result = std::move(t);
          break;
        }
      }
    }
    memo[key] = result;
    return result;
  }
};

}  // namespace detail

/// Exhaustive inductiveness search with memoization keyed by (base element,
/// atom set) inside the one materialized ambient poset. Deterministic first
/// table in ascending atom order (or the preference order when given).
inline std::optional<InductionTable> is_inductive(const Poset& p, uint64_t step_budget = UINT64_MAX,
                                                  std::vector<int> preference = {}) {
  if (!is_locally_geometric(p)) fail(errc::not_locally_geometric, "is_inductive needs a locally geometric poset");
  detail::InductionSearch s{&p, step_budget, std::move(preference), {}};
  return s.run(Subposet::whole(p));
}

struct GuidedResult {
  std::optional<InductionTable> table;
  int failed_step = -1;  // 0-based index into the ordering when divisibility fails
  std::string reason;
};

/// Guided mode: add atoms in the given order; every step must satisfy
/// chi(P'') | chi(P') on the actual subposets, with P'' checked inductive by
/// the exhaustive search at its (smaller) rank.
inline GuidedResult is_inductive_guided(const Poset& p, const std::vector<int>& order,
                                        uint64_t step_budget = UINT64_MAX) {
  if (!is_locally_geometric(p)) fail(errc::not_locally_geometric, "guided mode needs a locally geometric poset");
  {
    std::vector<int> sorted_order = order, all = p.atoms();
    std::sort(sorted_order.begin(), sorted_order.end());
    std::sort(all.begin(), all.end());
    if (sorted_order != all) fail(errc::atom_not_found, "guided ordering must list every atom exactly once");
  }
  detail::InductionSearch sub{&p, step_budget, {}, {}};
  Subposet whole = Subposet::whole(p);
  InductionTable table;
  std::vector<int> added;
  Subposet prev = generated_view(whole, {});
  for (size_t k = 0; k < order.size(); ++k) {
    added.push_back(order[k]);
    Subposet cur = generated_view(whole, added);
    Subposet res = cur.upper_set(order[k]);
    PolyZ chi_del = char_poly(prev), chi_res = char_poly(res);
    if (!divides(chi_res, chi_del))
      return {std::nullopt, int(k),
              std::string(errc_name(errc::divisibility_failed)) + "(step " + std::to_string(k) +
                  "): chi(P'') does not divide chi(P') when adding " + p.label(order[k])};
    auto del_exps = factor_positive_integer_roots(chi_del);
    auto res_exps = factor_positive_integer_roots(chi_res);
    if (!del_exps || !res_exps)
      return {std::nullopt, int(k), "non-factorable step polynomial when adding " + p.label(order[k])};
    if (!sub.run(res))
      return {std::nullopt, int(k), "restriction is not inductive when adding " + p.label(order[k])};
    table.rows.push_back({*del_exps, order[k], p.label(order[k]), *res_exps});
    prev = cur;
  }
  auto final_exps = factor_positive_integer_roots(char_poly(whole));
  if (!final_exps) return {std::nullopt, int(order.size()) - 1, "full poset is not factorable"};
  table.final_exponents = *final_exps;
  return {std::move(table), -1, ""};
}

// ---------------------------------------------------------------------------
// Induction table replay
// ---------------------------------------------------------------------------

struct ReplayResult {
  bool ok = false;
  int failed_row = -1;
  std::string reason;
};

/// Replays a table bottom-up against the actual poset: every row's triple is
/// recomputed, the declared exponent multisets must match, chi(P'') must
/// divide chi(P'), and the exponent update must follow the addition rule
/// (uniform in the zero-padded form: remove one d, re-insert d+1).
/// `ambient_pad` = rank used for padding; pass the ambient dimension for
/// arrangement-style tables, or -1 for rk(P).
inline ReplayResult verify_induction_table(const Poset& p, const InductionTable& table,
                                           int ambient_pad = -1) {
  const int pad = ambient_pad < 0 ? p.rank() : ambient_pad;
  auto fail_row = [](int row, const std::string& why) { return ReplayResult{false, row, why}; };
  {
    std::vector<int> listed, all = p.atoms();
    for (const auto& r : table.rows) listed.push_back(r.atom);
    std::sort(listed.begin(), listed.end());
    std::sort(all.begin(), all.end());
    if (listed != all) return fail_row(-1, "table must add every atom exactly once");
  }
  Subposet whole = Subposet::whole(p);
  std::vector<int> added;
  Multiset running = pad_exponents({}, pad);  // exponents of the empty subposet
  for (size_t k = 0; k < table.rows.size(); ++k) {
    const auto& row = table.rows[k];
    if (p.rank_of(row.atom) != 1) return fail_row(int(k), "row atom is not an atom");
    Subposet prev = generated_view(whole, added);
    added.push_back(row.atom);
    Subposet cur = generated_view(whole, added);
    Subposet res = cur.upper_set(row.atom);

    PolyZ chi_del = char_poly(prev), chi_res = char_poly(res);
    auto del_exps = factor_positive_integer_roots(chi_del);
    auto res_exps = factor_positive_integer_roots(chi_res);
    if (!del_exps || !res_exps) return fail_row(int(k), "step polynomial does not factor");
    if (pad_exponents(*del_exps, pad) != pad_exponents(row.deleted_exponents, pad))
      return fail_row(int(k), "declared deleted-poset exponents do not match");
    if (pad_exponents(*res_exps, pad - 1) != pad_exponents(row.restricted_exponents, pad - 1))
      return fail_row(int(k), "declared restriction exponents do not match");
    if (!divides(chi_res, chi_del)) return fail_row(int(k), "chi(P'') does not divide chi(P')");

    // addition rule on padded multisets: running = declared', leftover d
    // against the restriction, then bump d -> d+1
    Multiset d_pad = pad_exponents(*del_exps, pad);
    Multiset r_pad = pad_exponents(*res_exps, pad - 1);
    if (running != d_pad) return fail_row(int(k), "row does not continue the previous exponents");
    Multiset leftover = d_pad;
    for (auto e : r_pad) {
      auto it = std::find(leftover.begin(), leftover.end(), e);
      if (it == leftover.end()) return fail_row(int(k), "restriction exponents are not contained in the deletion's");
      leftover.erase(it);
    }
    if (leftover.size() != 1) return fail_row(int(k), "exponent bookkeeping mismatch");
    r_pad.push_back(leftover[0] + 1);
    running = sorted(std::move(r_pad));
  }
  auto final_exps = factor_positive_integer_roots(char_poly(whole));
  if (!final_exps) return fail_row(int(table.rows.size()) - 1, "full poset is not factorable");
  if (pad_exponents(*final_exps, pad) != running)
    return fail_row(int(table.rows.size()) - 1, "final exponents do not match the replay");
  if (pad_exponents(table.final_exponents, pad) != running)
    return fail_row(int(table.rows.size()) - 1, "declared final exponents do not match");
  return {true, -1, ""};
}

// ---------------------------------------------------------------------------
// TM-chain peeling (used by guided classification)
// ---------------------------------------------------------------------------

struct PeelStep {
  std::vector<int> atoms;  // atoms removed at this step (A(P) \ A(Q))
  IdealWitness witness;    // the verified TM-ideal Q inside the level above
};

struct PeelResult {
  std::vector<PeelStep> steps;  // top-down
  Subposet base;                // what is left after peeling
};

/// Peels TM-ideals off the top of the poset along the supplied atom groups
/// (top-down). Each step is verified on the actual poset; peeling stops at
/// the first group that fails, leaving the remainder as the base.
inline PeelResult peel_tm_chain(const Poset& p, const std::vector<std::vector<int>>& groups_top_down) {
  Subposet cur = Subposet::whole(p);
  PeelResult out{.steps = {}, .base = cur};
  for (const auto& group : groups_top_down) {
    std::vector<int> rest;
    Bits drop(p.size());
    for (int a : group) drop.set(a);
    for (int a : cur.atoms())
      if (!drop.test(a)) rest.push_back(a);
    if (rest.size() + group.size() != cur.atoms().size()) break;  // group not inside the level
    Subposet q = generated_view(cur, rest);
    if (q.rank() != cur.rank() - 1) break;
    auto w = check_ideal(cur, q.members, true);
    if (!w) break;
    out.steps.push_back({group, std::move(*w)});
    cur = q;
  }
  out.base = cur;
  return out;
}

/// Assembles a full induction table from an inductive base plus TM-chain
/// peels: chain atoms are
/// added one at a time on top of the base, each row verified on the actual
/// poset. Returns nothing if some chain row fails (which would indicate the
/// peel was not a genuine TM-chain).
inline std::optional<InductionTable> extend_table_with_peels(const Poset& p,
                                                             InductionTable base_table,
                                                             const std::vector<PeelStep>& steps,
                                                             const Subposet& base) {
  Subposet whole = Subposet::whole(p);
  std::vector<int> added = base.atoms();
  InductionTable table = std::move(base_table);
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) {  // bottom-up
    for (int a : it->atoms) {
      Subposet prev = generated_view(whole, added);
      added.push_back(a);
      Subposet cur = generated_view(whole, added);
      Subposet res = cur.upper_set(a);
      auto del_exps = factor_positive_integer_roots(char_poly(prev));
      auto res_exps = factor_positive_integer_roots(char_poly(res));
      if (!del_exps || !res_exps) return std::nullopt;
      if (!divides(poly_from_roots(*res_exps), poly_from_roots(*del_exps))) return std::nullopt;
      table.rows.push_back({*del_exps, a, p.label(a), *res_exps});
    }
  }
  auto final_exps = factor_positive_integer_roots(char_poly(whole));
  if (!final_exps) return std::nullopt;
  table.final_exponents = *final_exps;
  return table;
}

// ---------------------------------------------------------------------------
// Classification report
// ---------------------------------------------------------------------------

enum class Flag { yes, no, skipped };

inline const char* flag_name(Flag f) {
  switch (f) {
    case Flag::yes: return "true";
    case Flag::no: return "false";
    case Flag::skipped: return "skipped";
  }
  return "?";
}

struct EffortLimits {
  uint64_t max_elements = 200000;   // layer/poset element cap
  uint64_t step_budget = 20000000;  // shared cap for exhaustive searches
  bool guided = false;
  std::vector<std::vector<int>> chain_groups;  // guided hint, top-down
  std::vector<int> atom_order;                 // guided hint without chain structure
};

struct ClassificationReport {
  Flag lattice = Flag::skipped;
  Flag locally_geometric = Flag::skipped;
  Flag geometric = Flag::skipped;
  Flag factorable = Flag::skipped;
  Flag divisional = Flag::skipped;
  Flag inductive = Flag::skipped;
  Flag supersolvable = Flag::skipped;
  Flag strictly_supersolvable = Flag::skipped;
  PolyZ poset_char_poly;
  std::optional<Multiset> exponents;
  std::optional<InductionTable> induction_table;
  std::optional<DivisionalChain> divisional_chain;
  std::optional<ChainWitness> m_chain;
  std::optional<ChainWitness> tm_chain;
  std::vector<std::string> notes;
};

namespace detail {

inline void imply(Flag& weaker, Flag stronger_is_yes) {
  if (stronger_is_yes == Flag::yes && weaker == Flag::skipped) weaker = Flag::yes;
}
inline void imply_not(Flag& stronger, Flag weaker_is_no) {
  if (weaker_is_no == Flag::no && stronger == Flag::skipped) stronger = Flag::no;
}

}  // namespace detail

/// Runs every predicate within the configured budgets; anything exceeding a
/// budget reports `skipped`, never a wrong answer. The implication chain
/// SSS => IP => DP => FR (and SSS => SS) is used to fill undecided flags and
/// finally asserted over the decided ones; a violation throws
/// InternalInconsistency since it would mean a library bug.
inline ClassificationReport classification_report(const Poset& p, const EffortLimits& effort = {}) {
  ClassificationReport rep;
  if (uint64_t(p.size()) > effort.max_elements)
    fail(errc::budget_exceeded, "poset exceeds the element budget");

  rep.poset_char_poly = char_poly(p);
  auto exps = factor_positive_integer_roots(rep.poset_char_poly);
  rep.factorable = exps ? Flag::yes : Flag::no;
  if (exps) rep.exponents = sorted(Multiset(*exps));

  // structural predicates: the definitional checks are only run on posets
  // small enough for their cost (cubic for local geometricity, an atom-subset
  // sweep for geometricity); arrangement-built posets carry both answers.
  uint64_t n2 = uint64_t(p.size()) * uint64_t(p.size());
  if (p.assume_locally_geometric()) rep.locally_geometric = Flag::yes;
  else if (n2 * uint64_t(p.size()) <= effort.step_budget)
    rep.locally_geometric = is_locally_geometric(p) ? Flag::yes : Flag::no;
  else
    rep.notes.push_back("locally_geometric: poset too large for the definitional check");
  if (p.assume_geometric()) rep.geometric = Flag::yes;
  else if (rep.locally_geometric == Flag::yes && p.size() <= 64 && p.atoms().size() <= 16)
    rep.geometric = is_geometric_poset(p) ? Flag::yes : Flag::no;
  if (n2 <= effort.step_budget) rep.lattice = is_lattice(p) ? Flag::yes : Flag::no;

  if (rep.locally_geometric == Flag::no) {
    // the four classes live inside locally geometric posets
    rep.divisional = rep.inductive = rep.supersolvable = rep.strictly_supersolvable = Flag::no;
    return rep;
  }
  if (rep.locally_geometric != Flag::yes) return rep;

  // divisional
  try {
    auto chain = is_divisional(p, effort.step_budget);
    rep.divisional = chain ? Flag::yes : Flag::no;
    if (chain) rep.divisional_chain = std::move(chain);
  } catch (const error& e) {
    if (e.code() != errc::budget_exceeded) throw;
    rep.notes.push_back("divisional: step budget exhausted");
  }

  // inductive
  try {
    if (effort.guided && !effort.chain_groups.empty()) {
      PeelResult peel = peel_tm_chain(p, effort.chain_groups);
      detail::InductionSearch search{&p, effort.step_budget, {}, {}};
      auto base_table = search.run(peel.base);
      if (base_table) {
        auto table = extend_table_with_peels(p, std::move(*base_table), peel.steps, peel.base);
        check_internal(table.has_value(), "verified TM-peel failed to extend the table");
        rep.inductive = Flag::yes;
        rep.induction_table = std::move(table);
      } else {
        rep.inductive = Flag::skipped;
        rep.notes.push_back("inductive: guided base search failed below the peeled chain");
      }
      if (peel.base.rank() == 0 && !peel.steps.empty()) {
        ChainWitness cw;
        cw.tm = true;
        for (auto& s : peel.steps) {
          cw.ideals.push_back(s.witness);
          cw.step_atom_counts.push_back(int64_t(s.atoms.size()));
        }
        rep.tm_chain = std::move(cw);
        rep.strictly_supersolvable = Flag::yes;
      }
    } else if (effort.guided && !effort.atom_order.empty()) {
      auto guided = is_inductive_guided(p, effort.atom_order, effort.step_budget);
      if (guided.table) {
        rep.inductive = Flag::yes;
        rep.induction_table = std::move(guided.table);
      } else {
        rep.notes.push_back("inductive (guided): " + guided.reason);
        rep.inductive = Flag::skipped;  // a bad ordering does not disprove inductiveness
      }
    } else {
      auto table = is_inductive(p, effort.step_budget);
      rep.inductive = table ? Flag::yes : Flag::no;
      if (table) rep.induction_table = std::move(table);
    }
  } catch (const error& e) {
    if (e.code() != errc::budget_exceeded) throw;
    rep.notes.push_back("inductive: step budget exhausted");
  }

  // supersolvable / strictly supersolvable (exhaustive only when affordable:
  // the subset sweep costs about 2^atoms closures of ~n*atoms*n/64 words each)
  uint64_t atom_count = p.atoms().size();
  bool chain_feasible = atom_count <= 24;
  if (chain_feasible) {
    long double sweep = powl(2.0L, (long double)atom_count) *
                        (long double)(uint64_t(p.size()) * atom_count * (uint64_t(p.size()) / 64 + 1));
    chain_feasible = sweep <= (long double)effort.step_budget;
  }
  if (rep.strictly_supersolvable != Flag::yes) {
    if (chain_feasible) {
      try {
        auto tm = is_strictly_supersolvable(p, effort.step_budget);
        rep.strictly_supersolvable = tm ? Flag::yes : Flag::no;
        if (tm) rep.tm_chain = std::move(tm);
      } catch (const error& e) {
        if (e.code() != errc::budget_exceeded) throw;
        rep.notes.push_back("strictly_supersolvable: step budget exhausted");
      }
    } else {
      rep.notes.push_back("strictly_supersolvable: atom count above exhaustive-search budget");
    }
  }
  if (chain_feasible) {
    try {
      auto m = is_supersolvable(p, effort.step_budget);
      rep.supersolvable = m ? Flag::yes : Flag::no;
      if (m) rep.m_chain = std::move(m);
    } catch (const error& e) {
      if (e.code() != errc::budget_exceeded) throw;
      rep.notes.push_back("supersolvable: step budget exhausted");
    }
  } else {
    rep.notes.push_back("supersolvable: atom count above exhaustive-search budget");
  }

  // implication fill: SSS => SS, SSS => IP => DP => FR, and contrapositives
  detail::imply(rep.supersolvable, rep.strictly_supersolvable);
  detail::imply(rep.inductive, rep.strictly_supersolvable);
  detail::imply(rep.divisional, rep.inductive);
  detail::imply(rep.factorable, rep.divisional);
  detail::imply_not(rep.divisional, rep.factorable);
  detail::imply_not(rep.inductive, rep.divisional);
  detail::imply_not(rep.strictly_supersolvable, rep.inductive);
  detail::imply_not(rep.strictly_supersolvable, rep.supersolvable);

  // consistency over decided flags (a violation is a bug, not a report)
  auto decided = [](Flag f) { return f != Flag::skipped; };
  auto violates = [&](Flag strong, Flag weak) {
    return decided(strong) && decided(weak) && strong == Flag::yes && weak == Flag::no;
  };
  check_internal(!violates(rep.strictly_supersolvable, rep.supersolvable),
                 "SSS poset reported non-supersolvable");
  check_internal(!violates(rep.strictly_supersolvable, rep.inductive),
                 "SSS poset reported non-inductive");
  check_internal(!violates(rep.inductive, rep.divisional), "inductive poset reported non-divisional");
  check_internal(!violates(rep.divisional, rep.factorable), "divisional poset reported non-factorable");

  // exponent cross-checks between certificates and the factorization
  if (rep.exponents) {
    if (rep.induction_table)
      check_internal(rep.induction_table->exponents() == *rep.exponents,
                     "induction table exponents disagree with the factorization");
    if (rep.divisional_chain)
      check_internal(rep.divisional_chain->exponents() == *rep.exponents,
                     "divisional chain exponents disagree with the factorization");
    if (rep.tm_chain)
      check_internal(rep.tm_chain->exponents() == *rep.exponents,
                     "TM-chain exponents disagree with the factorization");
  }
  return rep;
}

}  // namespace layercraft
