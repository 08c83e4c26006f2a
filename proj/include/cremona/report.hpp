#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "cremona/pipeline.hpp"

namespace cremona {

using Json = nlohmann::ordered_json;

inline Json dim_degree_json(const DimDegree& dd) {
  Json j;
  j["dim"] = dd.dim;
  j["degree"] = dd.degree;
  return j;
}

inline Json point_report_json(const SingularPointReport& r) {
  Json j;
  j["point"] = r.point.to_string();
  j["multiplicity"] = r.multiplicity;
  j["rank"] = r.rank;
  j["corank"] = r.corank();
  j["class"] = r.tag();
  j["milnor"] = r.milnor ? Json(*r.milnor) : Json(nullptr);
  j["verdict"] = verdict_name(r.verdict);
  return j;
}

inline Json singular_points_json(const std::optional<SurfaceAnalysis>& a) {
  Json arr = Json::array();
  if (a)
    for (const auto& r : a->reports) arr.push_back(point_report_json(r));
  return arr;
}

inline Json locus_json(const SingularLocus& locus) {
  Json j = dim_degree_json(locus.dd);
  Json comps = Json::array();
  for (const auto& c : locus.components) {
    Json cj;
    cj["kind"] = c.kind == ComponentKind::kLine ? "LINE" : "OTHER";
    cj["degree"] = c.degree;
    Json gens = Json::array();
    for (const auto& g : c.ideal.generators()) gens.push_back(g.to_string());
    cj["ideal"] = gens;
    comps.push_back(cj);
  }
  j["components"] = comps;
  Json pts = Json::array();
  for (const auto& p : locus.points) pts.push_back(p.to_string());
  j["points"] = pts;
  j["unaccounted_degree"] = locus.unaccounted_degree;
  return j;
}

inline std::string birational_type_of(const CremonaCertificate& c) {
  if (c.analysis) return birational_type_name(c.analysis->type);
  if (c.sigma && c.input.total_degree() <= 2) return birational_type_name(BirationalType::kRational);
  return birational_type_name(BirationalType::kUndetermined);
}

inline Json map_step_json(const MapStep& s) {
  Json j;
  j["label"] = s.label;
  j["degree_before"] = s.source_dd.degree;
  j["degree_after"] = s.image_dd.degree;
  j["source"] = dim_degree_json(s.source_dd);
  j["image"] = dim_degree_json(s.image_dd);
  j["map_degree"] = s.map.degree();
  j["map_forms"] = s.map.form_strings();
  j["notes"] = s.notes;
  return j;
}

inline Json chain_json(const std::vector<MapStep>& chain) {
  Json arr = Json::array();
  for (const auto& s : chain) arr.push_back(map_step_json(s));
  return arr;
}

inline Json routes_json(const std::vector<Route>& routes) {
  Json arr = Json::array();
  for (auto r : routes) arr.push_back(route_name(r));
  return arr;
}

inline Json certificate_json(const CremonaCertificate& c, std::uint64_t seed) {
  Json j;
  j["input"] = c.input.to_string();
  j["seed"] = seed;
  if (c.sigma) j["sigma"] = *c.sigma;
  if (!c.route.empty()) j["route"] = routes_json(c.route);
  j["chain"] = chain_json(c.chain);
  j["singular_points"] = singular_points_json(c.analysis);
  j["birational_type"] = birational_type_of(c);
  j["caveats"] = c.caveats;
  return j;
}

inline Json analysis_json(const SurfaceAnalysis& a, std::uint64_t seed) {
  Json j;
  j["input"] = a.form.to_string();
  j["seed"] = seed;
  j["squarefree"] = a.squarefree;
  j["singular_locus"] = locus_json(a.locus);
  if (a.cone_vertex) j["cone_vertex"] = a.cone_vertex->to_string();
  if (a.cone_genus) j["cone_sectional_genus"] = *a.cone_genus;
  j["singular_points"] = singular_points_json(a);
  j["birational_type"] = birational_type_name(a.type);
  j["caveats"] = a.caveats;
  return j;
}

inline Json stabilizer_json(const StabilizerCertificate& s) {
  Json j;
  j["kind"] = s.kind;
  j["constructive"] = s.constructive;
  if (s.model) j["model"] = s.model->to_string();
  if (s.map) {
    j["map_degree"] = s.map->degree();
    j["map_forms"] = s.map->form_strings();
  }
  j["preserves_model"] = s.preserves_model;
  j["moved_points"] = s.moved_points;
  j["notes"] = s.notes;
  return j;
}

inline Json cluster_json(const Cluster& c) {
  Json arr = Json::array();
  for (const auto& p : c.points) {
    Json j;
    j["level"] = p.level;
    if (p.parent < 0) {
      j["point"] = p.origin.to_string();
    } else {
      j["parent"] = p.parent;
      j["direction"] = p.chart == ChartKind::kVertical ? std::string("vertical") : p.slope.get_str();
    }
    j["multiplicity"] = p.multiplicity;
    arr.push_back(j);
  }
  return arr;
}

namespace detail {

inline std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

inline void render(const Json& v, const std::string& key, int indent, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  if (v.is_object()) {
    if (!key.empty()) out += pad + key + ":\n";
    for (auto it = v.begin(); it != v.end(); ++it)
      render(it.value(), it.key(), key.empty() ? indent : indent + 1, out);
    return;
  }
  if (v.is_array()) {
    bool flat = std::all_of(v.begin(), v.end(), [](const Json& e) { return e.is_primitive(); });
    if (v.empty()) {
      out += pad + key + ": (none)\n";
    } else if (flat) {
      out += pad + key + ":\n";
      for (const auto& e : v) out += pad + "  - " + scalar_text(e) + "\n";
    } else {
      out += pad + key + ":\n";
      int i = 0;
      for (const auto& e : v) render(e, "[" + std::to_string(i++) + "]", indent + 1, out);
    }
    return;
  }
  out += pad + key + ": " + scalar_text(v) + "\n";
}

}  // namespace detail

/// Indented "key: value" rendering of a report.
inline std::string render_text(const Json& report) {
  std::string out;
  detail::render(report, "", 0, out);
  return out;
}

/// One line of compact JSON with the insertion order of the keys.
inline std::string render_json_line(const Json& report) { return report.dump() + "\n"; }

}  // namespace cremona
