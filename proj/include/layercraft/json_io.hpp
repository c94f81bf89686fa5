#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "layercraft/classify.hpp"
#include "layercraft/rootsys.hpp"

namespace layercraft {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Root-expression parser:  expr := term | term ('+'|'-') term
//                          term := [digit] 'e' index          (index >= 1)
// ---------------------------------------------------------------------------

inline IntVec parse_root_expr(const std::string& s, int rank) {
  size_t pos = 0;
  auto parse_fail = [&](const std::string& why) {
    fail(errc::parse_error, "'" + s + "' at offset " + std::to_string(pos) + ": " + why);
  };
  auto term = [&]() -> std::pair<long, long> {  // (coefficient, index)
    long coef = 1;
    if (pos < s.size() && isdigit(s[pos])) {
      coef = s[pos] - '0';
      ++pos;
    }
    if (pos >= s.size() || s[pos] != 'e') parse_fail("expected 'e'");
    ++pos;
    if (pos >= s.size() || !isdigit(s[pos])) parse_fail("expected an index");
    long idx = 0;
    while (pos < s.size() && isdigit(s[pos])) idx = idx * 10 + (s[pos++] - '0');
    if (idx < 1 || idx > rank) parse_fail("index out of range 1.." + std::to_string(rank));
    return {coef, idx};
  };
  IntVec out(size_t(rank), Int(0));
  auto [c1, i1] = term();
  out[size_t(i1 - 1)] += c1;
  if (pos < s.size()) {
    long sign = 0;
    if (s[pos] == '+') sign = 1;
    else if (s[pos] == '-') sign = -1;
    else parse_fail("expected '+' or '-'");
    ++pos;
    auto [c2, i2] = term();
    out[size_t(i2 - 1)] += sign * c2;
  }
  if (pos != s.size()) parse_fail("trailing input");
  return out;
}

// ---------------------------------------------------------------------------
// Input specs
// ---------------------------------------------------------------------------

struct ArrangementSpec {
  GroupKind group;
  int dim;
  std::vector<IntVec> characters;
  std::vector<std::string> labels;
};

struct PosetSpec {
  std::vector<std::string> elements;
  std::vector<std::pair<int, int>> covers;
};

struct RootIdealSpec {
  RootSystemType type;
  int rank;
  LatticeChoice lattice;
  bool full = false;
  std::vector<std::string> generators;
  int extension_p = -1;  // -1: none
};

struct InputSpec {
  std::variant<ArrangementSpec, PosetSpec, RootIdealSpec> payload;
  Json echo;  // the validated input, for the report
};

namespace detail {

inline void reject_unknown_keys(const Json& j, const std::vector<std::string>& known,
                                const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (std::find(known.begin(), known.end(), it.key()) == known.end())
      fail(errc::invalid_input, "unknown key '" + it.key() + "' in " + where);
}

inline const Json& need(const Json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key)) fail(errc::invalid_input, "missing key '" + key + "' in " + where);
  return j.at(key);
}

}  // namespace detail

inline InputSpec parse_input(const Json& j) {
  if (!j.is_object() || j.size() != 1)
    fail(errc::invalid_input, "input must be an object with exactly one of: arrangement, poset, root_ideal");
  InputSpec out;
  out.echo = j;
  if (j.contains("arrangement")) {
    const Json& a = j.at("arrangement");
    detail::reject_unknown_keys(a, {"group", "dim", "characters", "labels"}, "arrangement");
    ArrangementSpec spec;
    std::string g = detail::need(a, "group", "arrangement").get<std::string>();
    if (g == "real") spec.group = GroupKind::real;
    else if (g == "torus") spec.group = GroupKind::torus;
    else fail(errc::invalid_input, "group must be 'real' or 'torus'");
    spec.dim = detail::need(a, "dim", "arrangement").get<int>();
    if (spec.dim < 1) fail(errc::invalid_input, "dim must be positive");
    for (const auto& row : detail::need(a, "characters", "arrangement")) {
      IntVec v;
      for (const auto& e : row) v.push_back(Int(e.get<long>()));
      spec.characters.push_back(std::move(v));
    }
    if (a.contains("labels")) {
      for (const auto& l : a.at("labels")) spec.labels.push_back(l.get<std::string>());
      if (spec.labels.size() != spec.characters.size())
        fail(errc::invalid_input, "labels must match characters one to one");
    }
    out.payload = std::move(spec);
    return out;
  }
  if (j.contains("poset")) {
    const Json& p = j.at("poset");
    detail::reject_unknown_keys(p, {"elements", "covers"}, "poset");
    PosetSpec spec;
    for (const auto& e : detail::need(p, "elements", "poset")) spec.elements.push_back(e.get<std::string>());
    {
      std::vector<std::string> names = spec.elements;
      std::sort(names.begin(), names.end());
      if (std::adjacent_find(names.begin(), names.end()) != names.end())
        fail(errc::invalid_input, "poset element names must be distinct");
    }
    auto index_of = [&](const std::string& name) {
      for (size_t i = 0; i < spec.elements.size(); ++i)
        if (spec.elements[i] == name) return int(i);
      fail(errc::invalid_input, "cover references unknown element '" + name + "'");
    };
    for (const auto& c : detail::need(p, "covers", "poset")) {
      if (!c.is_array() || c.size() != 2) fail(errc::invalid_input, "covers must be [lower, upper] pairs");
      spec.covers.emplace_back(index_of(c.at(0).get<std::string>()), index_of(c.at(1).get<std::string>()));
    }
    out.payload = std::move(spec);
    return out;
  }
  if (j.contains("root_ideal")) {
    const Json& r = j.at("root_ideal");
    detail::reject_unknown_keys(r, {"type", "rank", "lattice", "ideal", "extension_p"}, "root_ideal");
    RootIdealSpec spec;
    std::string t = detail::need(r, "type", "root_ideal").get<std::string>();
    if (t == "A") spec.type = RootSystemType::A;
    else if (t == "B") spec.type = RootSystemType::B;
    else if (t == "C") spec.type = RootSystemType::C;
    else fail(errc::unsupported_type, "root system type must be A, B or C");
    spec.rank = detail::need(r, "rank", "root_ideal").get<int>();
    if (spec.rank < 1) fail(errc::invalid_input, "rank must be positive");
    std::string lat = detail::need(r, "lattice", "root_ideal").get<std::string>();
    if (lat == "root") spec.lattice = LatticeChoice::root_lattice;
    else if (lat == "integer") spec.lattice = LatticeChoice::integer_lattice;
    else fail(errc::invalid_input, "lattice must be 'root' or 'integer'");
    const Json& ideal = detail::need(r, "ideal", "root_ideal");
    if (ideal.is_string() && ideal.get<std::string>() == "full") spec.full = true;
    else if (ideal.is_object()) {
      detail::reject_unknown_keys(ideal, {"generators"}, "ideal");
      for (const auto& g : detail::need(ideal, "generators", "ideal"))
        spec.generators.push_back(g.get<std::string>());
    } else {
      fail(errc::invalid_input, "ideal must be \"full\" or {\"generators\": [...]}");
    }
    if (r.contains("extension_p")) spec.extension_p = r.at("extension_p").get<int>();
    out.payload = std::move(spec);
    return out;
  }
  fail(errc::invalid_input, "input must contain one of: arrangement, poset, root_ideal");
}

inline InputSpec parse_input_text(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(errc::parse_error, e.what());
  }
  return parse_input(j);
}

inline RootIdeal resolve_ideal(const RootIdealSpec& spec) {
  if (spec.full) return full_ideal(spec.type, spec.rank);
  auto system = positive_system(spec.type, spec.rank);
  std::vector<Root> gens;
  for (const auto& g : spec.generators) {
    IntVec v = parse_root_expr(g, spec.rank);
    auto r = find_root(system, v);
    if (!r) fail(errc::not_a_positive_root, "'" + g + "' is not a positive root of the chosen system");
    gens.push_back(*r);
  }
  return ideal_closure(spec.type, spec.rank, gens);
}

// ---------------------------------------------------------------------------
// Report serialization (schema v1)
// ---------------------------------------------------------------------------

inline Json poly_json(const PolyZ& p) {  // constant-coefficient-first
  Json arr = Json::array();
  for (auto c : p.coeffs()) arr.push_back(c);
  return arr;
}

inline Json multiset_json(const Multiset& m) {
  Json arr = Json::array();
  for (auto d : m) arr.push_back(d);
  return arr;
}

inline Json table_json(const Poset& p, const InductionTable& t) {
  (void)p;
  Json rows = Json::array();
  for (const auto& r : t.rows) {
    Json row;
    row["deleted_exponents"] = multiset_json(r.deleted_exponents);
    row["atom"] = r.atom_label;
    row["restricted_exponents"] = multiset_json(r.restricted_exponents);
    rows.push_back(std::move(row));
  }
  Json out;
  out["rows"] = std::move(rows);
  out["final_exponents"] = multiset_json(t.final_exponents);
  return out;
}

inline Json chain_json(const Poset& p, const ChainWitness& c) {
  Json steps = Json::array();
  for (const auto& w : c.ideals) {
    Json step;
    Json atoms = Json::array();
    for (int a : w.atom_ids) atoms.push_back(p.label(a));
    step["ideal_atoms"] = std::move(atoms);
    Json partners = Json::array();
    for (auto [x, y] : w.modular_partners) {
      Json pr;
      pr["max_element"] = p.label(x);
      pr["modular_partner"] = p.label(y);
      partners.push_back(std::move(pr));
    }
    step["modular_partners"] = std::move(partners);
    steps.push_back(std::move(step));
  }
  Json out;
  out["kind"] = c.tm ? "tm_chain" : "m_chain";
  out["ideals_top_down"] = std::move(steps);
  out["step_atom_counts"] = multiset_json(c.step_atom_counts);
  return out;
}

inline Json divisional_json(const Poset& p, const DivisionalChain& c) {
  Json elems = Json::array();
  for (int x : c.elements) elems.push_back(p.label(x));
  Json out;
  out["chain"] = std::move(elems);
  out["step_exponents"] = multiset_json(c.step_exponents);
  return out;
}

inline Json flags_json(const ClassificationReport& r) {
  Json f;
  f["lattice"] = flag_name(r.lattice);
  f["locally_geometric"] = flag_name(r.locally_geometric);
  f["geometric"] = flag_name(r.geometric);
  f["factorable"] = flag_name(r.factorable);
  f["divisional"] = flag_name(r.divisional);
  f["inductive"] = flag_name(r.inductive);
  f["supersolvable"] = flag_name(r.supersolvable);
  f["strictly_supersolvable"] = flag_name(r.strictly_supersolvable);
  return f;
}

inline Json poset_summary_json(const Poset& p) {
  Json s;
  s["elements"] = p.size();
  s["rank"] = p.rank();
  std::vector<int> per_rank(size_t(p.rank()) + 1, 0);
  for (int i = 0; i < p.size(); ++i) per_rank[size_t(p.rank_of(i))]++;
  Json arr = Json::array();
  for (int c : per_rank) arr.push_back(c);
  s["elements_per_rank"] = std::move(arr);
  s["atoms"] = int(p.atoms().size());
  return s;
}

inline Json poset_export_json(const Poset& p) {
  Json out;
  Json elems = Json::array();
  for (int i = 0; i < p.size(); ++i) elems.push_back(p.label(i));
  out["elements"] = std::move(elems);
  Json covers = Json::array();
  for (int x = 0; x < p.size(); ++x)
    for (int y : p.upper_covers(x)) covers.push_back(Json::array({p.label(x), p.label(y)}));
  out["covers"] = std::move(covers);
  return out;
}

}  // namespace layercraft
