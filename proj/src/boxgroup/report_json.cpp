#include "boxprod/analysis.hpp"

namespace boxprod {

using nlohmann::json;

namespace {

json properties_json(const GroupProperties& p) {
  return {{"transitive", p.transitive},
          {"primitive", p.primitive},
          {"regular", p.regular},
          {"semiregular", p.semiregular},
          {"generated_by_point_stabilisers", p.generated_by_point_stabilisers}};
}

json addresses(const TruncatedTree& t, const std::vector<VertexId>& vs) {
  json out = json::array();
  for (VertexId v : vs) out.push_back(t.address(v));
  return out;
}

json edges_json(const FiniteGraph& g) {
  json out = json::array();
  for (const auto& [u, v] : g.edges()) out.push_back({u, v});
  return out;
}

}  // namespace

json to_json(const QuotientGraph& q) {
  return {{"x_orbits", q.x_orbits},
          {"y_orbits", q.y_orbits},
          {"graph", "K_{" + std::to_string(q.y_orbits) + "," + std::to_string(q.x_orbits) + "}"},
          {"edge_orbits", q.graph.edge_count()}};
}

json to_json(const AnalysisReport& r) {
  json verdicts = json::object();
  for (const Verdict& v : r.verdicts) {
    json entry = {{"value", v.value ? json(*v.value) : json(nullptr)},
                  {"display", v.display},
                  {"theorem_citation", v.citation},
                  {"witness_ref", v.evidence.empty() ? json(nullptr) : json(v.evidence)}};
    if (!v.note.empty()) entry["note"] = v.note;
    verdicts[v.name] = std::move(entry);
  }
  json suborbits = json::array();
  for (const SuborbitRow& row : r.suborbits)
    suborbits.push_back({{"distance", row.distance}, {"sizes", row.sizes}});
  return {{"M", {{"spec", r.m_spec}, {"order", r.m_order}, {"properties", properties_json(r.m)}}},
          {"N", {{"spec", r.n_spec}, {"order", r.n_order}, {"properties", properties_json(r.n)}}},
          {"verdicts", std::move(verdicts)},
          {"quotient", to_json(r.quotient)},
          {"suborbits", std::move(suborbits)}};
}

json to_json(const Witness& w, const TruncatedTree& t, const LegalColouring* c) {
  json out = {{"kind", to_string(w.kind)}, {"construction", w.construction}};
  if (w.partition) {
    json blocks = json::array();
    for (const auto& block : w.partition->blocks()) {
      json members = json::array();
      for (std::size_t i : block) members.push_back(t.address(w.vertices[i]));
      blocks.push_back(std::move(members));
    }
    out["vertex_count"] = w.vertices.size();
    out["blocks"] = std::move(blocks);
  }
  if (w.graph)
    out["graph"] = {{"vertices", w.graph->vertex_count()}, {"edges", edges_json(*w.graph)}};
  if (w.element) {
    out["element"] = w.element->to_json(c);
    out["fixed"] = addresses(t, w.fixed);
  }
  return out;
}

json to_json(const PrimitivityCertificate& cert, const TruncatedTree& t) {
  json steps = json::array();
  for (const CertificateStep& s : cert.steps) {
    json images = json::array();
    for (const ImageClaim& claim : s.images)
      images.push_back({{"element", claim.element},
                        {"from", t.address(claim.from)},
                        {"to", t.address(claim.to)}});
    json related = json::array();
    for (const auto& [a, b] : s.related) related.push_back({t.address(a), t.address(b)});
    json elements = json::array();
    for (const Portrait& g : s.elements)
      elements.push_back({{"base", t.address(g.base())},
                          {"base_image", t.address(g.base_image())},
                          {"radius", g.radius()}});
    json step = {{"kind", to_string(s.kind)},
                 {"centre", t.address(s.centre)},
                 {"claim", s.claim},
                 {"elements", std::move(elements)},
                 {"images", std::move(images)},
                 {"related", std::move(related)}};
    if (s.block) step["block_count"] = s.block->block_count();
    steps.push_back(std::move(step));
  }
  return {{"w", t.address(cert.w)}, {"w2", t.address(cert.w2)}, {"steps", std::move(steps)}};
}

json to_json(const SuborbitTable& table, const TruncatedTree& t) {
  return {{"centre", t.address(table.centre)},
          {"distance", 2 * table.half_distance},
          {"sphere_size", table.sphere.size()},
          {"sizes", table.sizes}};
}

json to_json(const AmalgamReport& r) {
  auto counted = [](const std::optional<std::size_t>& n) { return n ? json(*n) : json(nullptr); };
  return {{"in_hypothesis", r.in_hypothesis},
          {"radius", r.radius},
          {"vertex_x", r.vertex_x.str()},
          {"vertex_y", r.vertex_y.str()},
          {"edge_on_x", r.edge_on_x.str()},
          {"edge_on_y", r.edge_on_y.str()},
          {"orbit_x", r.orbit_x},
          {"orbit_y", r.orbit_y},
          {"index_ok", r.index_ok},
          {"counted",
           {{"vertex_x", counted(r.counted_vertex_x)},
            {"vertex_y", counted(r.counted_vertex_y)},
            {"edge_on_x", counted(r.counted_edge_on_x)},
            {"edge_on_y", counted(r.counted_edge_on_y)}}},
          {"counts_match", r.counts_match}};
}

json to_json(const CrossCheck& check) {
  json out = {{"ok", check.ok}, {"compared", check.compared}};
  if (!check.detail.empty()) out["detail"] = check.detail;
  return out;
}

json to_json(const WitnessCheck& check) {
  json out = {{"ok", check.ok}};
  if (!check.detail.empty()) out["detail"] = check.detail;
  return out;
}

json to_json(const DiscretenessSearch& s, const TruncatedTree& t) {
  return {{"w", t.address(s.w)},
          {"w2", t.address(s.w2)},
          {"radius", s.radius},
          {"members_fixing_w", s.fixing_w},
          {"members_fixing_both", s.fixing_both},
          {"only_identity", s.only_identity}};
}

}  // namespace boxprod
