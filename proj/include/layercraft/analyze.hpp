#pragma once

#include <chrono>
#include <optional>
#include <string>

#include "layercraft/json_io.hpp"

namespace layercraft {

struct AnalyzeOptions {
  uint64_t max_elements = 200000;
  uint64_t step_budget = 20000000;
  std::optional<bool> guided;  // default: guided for root-ideal inputs, exhaustive otherwise
  bool timing = false;
  bool emit_poset = false;
};

namespace detail {

inline int atom_by_key(const LayerPoset& lp, const std::string& key) {
  for (int i = 0; i < lp.poset.size(); ++i)
    if (lp.layers[size_t(i)].key() == key) return i;
  fail(errc::internal_inconsistency, "guided chain referenced an unknown atom layer");
}

/// Atom ids of the layer poset in input-column order (torsion layers of one
/// character ordered by their value); the guided ordering for arrangements.
inline std::vector<int> input_atom_order(const Arrangement& a, const LayerPoset& lp) {
  std::vector<int> order;
  for (const auto& c : a.characters) {
    auto ls = atom_layers(c, a.group, a.dim);
    std::sort(ls.begin(), ls.end(), [](const Layer& x, const Layer& y) { return x.key() < y.key(); });
    for (const auto& l : ls) {
      int id = atom_by_key(lp, l.key());
      if (std::find(order.begin(), order.end(), id) == order.end()) order.push_back(id);
    }
  }
  return order;
}

inline void attach_classification(Json& report, const Poset& p, const ClassificationReport& rep) {
  report["poset"] = poset_summary_json(p);
  report["char_poly"] = poly_json(rep.poset_char_poly);
  report["flags"] = flags_json(rep);
  if (rep.exponents) report["exponents"] = multiset_json(*rep.exponents);
  Json certs = Json::object();
  if (rep.induction_table) certs["induction_table"] = table_json(p, *rep.induction_table);
  if (rep.divisional_chain) certs["divisional_chain"] = divisional_json(p, *rep.divisional_chain);
  if (rep.tm_chain) certs["tm_chain"] = chain_json(p, *rep.tm_chain);
  if (rep.m_chain) certs["m_chain"] = chain_json(p, *rep.m_chain);
  report["certificates"] = std::move(certs);
  if (!rep.notes.empty()) {
    Json notes = Json::array();
    for (const auto& n : rep.notes) notes.push_back(n);
    report["notes"] = std::move(notes);
  }
}

}  // namespace detail

/// The poset an input denotes (shared by `analyze` and `hasse`).
inline Poset poset_for_input(const InputSpec& spec, uint64_t max_elements = 200000) {
  if (const auto* ps = std::get_if<PosetSpec>(&spec.payload)) {
    return Poset::validate(ps->elements, ps->covers);
  }
  if (const auto* as = std::get_if<ArrangementSpec>(&spec.payload)) {
    Arrangement a = make_arrangement(as->group, as->dim, as->characters, as->labels);
    return build_layer_poset(a, max_elements).poset;
  }
  const auto& rs = std::get<RootIdealSpec>(spec.payload);
  RootIdeal ideal = resolve_ideal(rs);
  Arrangement a = build_arrangement_from_ideal(ideal, rs.lattice, GroupKind::torus, rs.extension_p);
  return build_layer_poset(a, max_elements).poset;
}

inline Json run_analyze(const InputSpec& spec, const AnalyzeOptions& opt = {}) {
  auto start = std::chrono::steady_clock::now();
  Json report;
  report["schema_version"] = 1;
  report["input"] = spec.echo;

  EffortLimits effort;
  effort.max_elements = opt.max_elements;
  effort.step_budget = opt.step_budget;

  if (const auto* ps = std::get_if<PosetSpec>(&spec.payload)) {
    report["kind"] = "poset";
    Poset p = Poset::validate(ps->elements, ps->covers);
    effort.guided = opt.guided.value_or(false);
    if (effort.guided) effort.atom_order = p.atoms();
    detail::attach_classification(report, p, classification_report(p, effort));
    if (opt.emit_poset) report["poset_data"] = poset_export_json(p);
  } else if (const auto* as = std::get_if<ArrangementSpec>(&spec.payload)) {
    report["kind"] = "arrangement";
    Arrangement a = make_arrangement(as->group, as->dim, as->characters, as->labels);
    LayerPoset lp = build_layer_poset(a, opt.max_elements);
    effort.guided = opt.guided.value_or(false);
    if (effort.guided) effort.atom_order = detail::input_atom_order(a, lp);
    ArrangementReport rep = classify_arrangement(a, lp, effort);
    detail::attach_classification(report, lp.poset, rep.classification);
    report["arrangement"] = Json{{"group", group_name(a.group)},
                                 {"dim", a.dim},
                                 {"rank", a.rank},
                                 {"essential", a.essential()},
                                 {"char_poly", poly_json(rep.arrangement_char_poly)}};
    if (rep.exponents) report["arrangement"]["exponents"] = multiset_json(*rep.exponents);
    if (!a.warnings.empty()) {
      Json w = Json::array();
      for (const auto& s : a.warnings) w.push_back(s);
      report["warnings"] = std::move(w);
    }
    if (opt.emit_poset) report["poset_data"] = poset_export_json(lp.poset);
  } else {
    report["kind"] = "root_ideal";
    const auto& rs = std::get<RootIdealSpec>(spec.payload);
    RootIdeal ideal = resolve_ideal(rs);
    int p_param = rs.extension_p;
    Arrangement a = build_arrangement_from_ideal(ideal, rs.lattice, GroupKind::torus, p_param);
    LayerPoset lp = build_layer_poset(a, opt.max_elements);
    effort.guided = opt.guided.value_or(true);
    if (effort.guided) {
      for (const auto& group : guided_chain(ideal, rs.lattice, GroupKind::torus, p_param)) {
        std::vector<int> ids;
        for (const auto& key : group) ids.push_back(detail::atom_by_key(lp, key));
        effort.chain_groups.push_back(std::move(ids));
      }
    }
    ArrangementReport rep = classify_arrangement(a, lp, effort);
    detail::attach_classification(report, lp.poset, rep.classification);
    report["arrangement"] = Json{{"group", "torus"},
                                 {"dim", a.dim},
                                 {"rank", a.rank},
                                 {"essential", a.essential()},
                                 {"char_poly", poly_json(rep.arrangement_char_poly)}};
    if (rep.exponents) report["arrangement"]["exponents"] = multiset_json(*rep.exponents);

    Predicted pred = predicted_exponents(ideal, rs.lattice, p_param);
    Json pj;
    if (pred.exponents) {
      pj["exponents"] = multiset_json(*pred.exponents);
      if (rep.exponents) pj["match"] = (*pred.exponents == *rep.exponents);
      else pj["match"] = "unknown";
    } else {
      pj["not_covered"] = pred.not_covered_reason;
    }
    if (pred.parameter_discrepancy)
      pj["parameter_discrepancy"] =
          "two readings of the type-B parameter 'a' disagree for this ideal; the reading "
          "consistent with the exponent formulas is used";
    report["predicted"] = std::move(pj);
    if (opt.emit_poset) report["poset_data"] = poset_export_json(lp.poset);
  }

  if (opt.timing) {
    auto stop = std::chrono::steady_clock::now();
    report["timing_ms"] = std::chrono::duration<double, std::milli>(stop - start).count();
  }
  return report;
}

/// Plain-text rendering of an analysis report.
inline std::string render_text(const Json& report) {
  std::string out;
  out += "kind: " + report.at("kind").get<std::string>() + "\n";
  const Json& ps = report.at("poset");
  out += "poset: " + std::to_string(ps.at("elements").get<int>()) + " elements, rank " +
         std::to_string(ps.at("rank").get<int>()) + ", " +
         std::to_string(ps.at("atoms").get<int>()) + " atoms\n";
  auto poly_str = [](const Json& arr) {
    std::vector<int64_t> c;
    for (const auto& v : arr) c.push_back(v.get<int64_t>());
    return PolyZ(std::move(c)).str();
  };
  out += "chi_L(t) = " + poly_str(report.at("char_poly")) + "\n";
  if (report.contains("arrangement"))
    out += "chi_A(t) = " + poly_str(report.at("arrangement").at("char_poly")) + "\n";
  for (const auto& [key, value] : report.at("flags").items())
    out += "  " + key + ": " + value.get<std::string>() + "\n";
  if (report.contains("exponents")) out += "exponents: " + report.at("exponents").dump() + "\n";
  if (report.contains("arrangement") && report.at("arrangement").contains("exponents"))
    out += "arrangement exponents: " + report.at("arrangement").at("exponents").dump() + "\n";
  if (report.contains("predicted")) {
    const Json& p = report.at("predicted");
    if (p.contains("exponents"))
      out += "predicted exponents: " + p.at("exponents").dump() + " (match: " + p.at("match").dump() + ")\n";
    else
      out += "predicted exponents: not covered (" + p.at("not_covered").get<std::string>() + ")\n";
  }
  if (report.contains("notes"))
    for (const auto& n : report.at("notes")) out += "note: " + n.get<std::string>() + "\n";
  if (report.contains("warnings"))
    for (const auto& w : report.at("warnings")) out += "warning: " + w.get<std::string>() + "\n";
  if (report.contains("timing_ms")) out += "time: " + report.at("timing_ms").dump() + " ms\n";
  return out;
}

}  // namespace layercraft
