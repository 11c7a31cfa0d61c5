#include "boxprod/job.hpp"

#include <algorithm>
#include <random>
#include <optional>
#include <set>
#include <sstream>

#include "boxprod/analysis.hpp"
#include "boxprod/errors.hpp"
#include "boxprod/group_spec.hpp"

namespace boxprod {

using nlohmann::json;

namespace {

constexpr std::size_t kEnumerationLimit = 50'000;
constexpr std::size_t kNestedSets = 10;

const std::vector<std::string> kTargets = {"tree", "orbital", "quotient", "wreath-orbital"};

json job_json(const BoxContext& ctx, const JobSpec& job) {
  return {{"M", to_group_spec(ctx.M())},
          {"N", to_group_spec(ctx.N())},
          {"depth", ctx.depth()},
          {"margin", ctx.margin()},
          {"seed", job.seed},
          {"battery", job.battery}};
}

BoxContext make_context(const JobSpec& job) {
  ParsedJob parsed = validate(job);
  return BoxContext(parsed.M, parsed.N, job.depth, job.margin);
}

VertexId distance_two_partner(const BoxContext& ctx) {
  return ctx.colouring().neighbour_by_colour(ctx.tree().p(), 1);
}

/// Distinct pairs of inner Y-vertices, drawn from the seed.
std::vector<std::pair<VertexId, VertexId>> random_pairs(const BoxContext& ctx, std::size_t count,
                                                        std::mt19937_64& rng) {
  std::vector<VertexId> ys = ctx.inner(Part::Y);
  std::uniform_int_distribution<std::size_t> pick(0, ys.size() - 1);
  std::vector<std::pair<VertexId, VertexId>> out;
  while (out.size() < count) {
    VertexId a = ys[pick(rng)], b = ys[pick(rng)];
    if (a != b) out.emplace_back(a, b);
  }
  return out;
}

std::size_t certificate_count(const JobSpec& job) {
  return std::max<std::size_t>(1, job.battery / 5);
}

json orbit_checks(const BoxContext& ctx, const FiniteApprox& approx, bool& passed) {
  std::size_t non_members = 0;
  for (const Portrait& g : approx.generators)
    if (!is_member(g, ctx.groups(), ctx.colouring())) ++non_members;
  CrossCheck vertices = check_vertex_orbits(ctx, approx);
  CrossCheck edges = check_edge_orbits(ctx, approx);
  CrossCheck quotient = check_quotient(ctx);
  passed = passed && non_members == 0 && vertices.ok && edges.ok && quotient.ok;
  return {{"generators", approx.generators.size()},
          {"generators_are_members", {{"ok", non_members == 0}, {"failures", non_members}}},
          {"vertex_orbits", to_json(vertices)},
          {"edge_orbits", to_json(edges)},
          {"quotient", to_json(quotient)}};
}

json closure_check(const BoxContext& ctx, const FiniteApprox& approx, bool& passed) {
  const std::size_t radius = std::min<std::size_t>(2, ctx.inner_radius());
  try {
    CrossCheck check =
        check_stabiliser_closure(ctx, approx, ctx.tree().p(), radius, kEnumerationLimit);
    passed = passed && check.ok;
    json out = to_json(check);
    out["radius"] = radius;
    return out;
  } catch (const ResourceError& e) {
    return {{"ok", true}, {"skipped", e.what()}};
  }
}

json suborbit_checks(const BoxContext& ctx, bool& passed) {
  const TruncatedTree& t = ctx.tree();
  json rows = json::array();
  for (std::size_t k = 1; 2 * k <= ctx.inner_radius(); ++k) {
    SuborbitTable local = suborbits_box(ctx, t.q(), k);
    json row = to_json(local, t);
    try {
      SuborbitTable brute = suborbits_bruteforce(ctx, t.q(), k, kEnumerationLimit);
      bool ok = brute.sizes == local.sizes && brute.vertex_size == local.vertex_size;
      passed = passed && ok;
      row["bruteforce_sizes"] = brute.sizes;
      row["ok"] = ok;
    } catch (const ResourceError& e) {
      row["ok"] = true;
      row["skipped"] = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

json imprimitivity_json(const BoxContext& ctx, const FiniteApprox& approx, bool& passed) {
  ImprimitivityResult result = imprimitivity_witness(ctx);
  if (!result.witness)
    return {{"ok", true}, {"delegated", true}, {"reason", result.reason}};
  WitnessCheck check = check_partition_witness(*result.witness, approx);
  passed = passed && check.ok;
  return {{"ok", check.ok},
          {"check", to_json(check)},
          {"reason", result.reason},
          {"witness", to_json(*result.witness, ctx.tree())}};
}

json certificates_json(const BoxContext& ctx, std::size_t count, std::mt19937_64& rng,
                       bool& passed, bool all) {
  json certs = json::array();
  std::size_t ok = 0;
  json first_failure;
  for (const auto& [w, w2] : random_pairs(ctx, count, rng)) {
    PrimitivityCertificate cert = primitivity_certificate(ctx, w, w2);
    WitnessCheck check = check_certificate(ctx, cert);
    if (check.ok)
      ++ok;
    else if (first_failure.is_null())
      first_failure = {{"w", ctx.tree().address(w)},
                       {"w2", ctx.tree().address(w2)},
                       {"detail", check.detail}};
    if (all || certs.empty()) {
      json entry = to_json(cert, ctx.tree());
      entry["check"] = to_json(check);
      certs.push_back(std::move(entry));
    }
  }
  passed = passed && ok == count;
  json out = {{"ok", ok == count}, {"pairs", count}, {"passing", ok}};
  out[all ? "certificates" : "example"] = all ? certs : certs.front();
  if (!first_failure.is_null()) out["first_failure"] = first_failure;
  return out;
}

json primitivity_checks(const BoxContext& ctx, const AnalysisReport& prediction,
                        const FiniteApprox& approx, const JobSpec& job, std::mt19937_64& rng,
                        bool& passed, bool all_certificates) {
  const std::optional<bool> primitive = prediction.verdict("primitive").value;
  if (!primitive) return {{"ok", true}, {"skipped", "no verdict"}};
  if (*primitive)
    return {{"certificates",
             certificates_json(ctx, certificate_count(job), rng, passed, all_certificates)}};
  return {{"imprimitivity", imprimitivity_json(ctx, approx, passed)}};
}

/// Nested sets of Y-vertices around q, growing to the ball of radius 4.
std::vector<std::vector<VertexId>> nested_sets(const BoxContext& ctx) {
  const TruncatedTree& t = ctx.tree();
  std::vector<VertexId> ys;
  for (VertexId v : t.ball(t.q(), std::min<std::size_t>(4, ctx.inner_radius())))
    if (t.part(v) == Part::Y) ys.push_back(v);
  std::vector<std::vector<VertexId>> out;
  for (std::size_t i = 1; i <= kNestedSets; ++i) {
    std::size_t size = std::max<std::size_t>(1, (i * ys.size() + kNestedSets - 1) / kNestedSets);
    out.emplace_back(ys.begin(), ys.begin() + static_cast<std::ptrdiff_t>(size));
  }
  return out;
}

json discreteness_checks(const BoxContext& ctx, bool& passed) {
  const TruncatedTree& t = ctx.tree();
  if (ctx.m_props().semiregular && ctx.n_props().semiregular) {
    try {
      DiscretenessSearch search =
          discreteness_search(ctx, t.q(), distance_two_partner(ctx), kEnumerationLimit);
      passed = passed && search.only_identity;
      json out = to_json(search, t);
      out["ok"] = search.only_identity;
      return {{"discreteness_search", std::move(out)}};
    } catch (const ResourceError& e) {
      return {{"discreteness_search", {{"ok", true}, {"skipped", e.what()}}}};
    }
  }
  json sets = json::array();
  bool all_ok = true;
  for (const auto& phi : nested_sets(ctx)) {
    std::optional<Witness> witness = nondiscreteness_witness(ctx, phi);
    WitnessCheck check = witness ? check_fixing_witness(ctx, *witness)
                                 : WitnessCheck{false, "no witness although not semiregular"};
    all_ok = all_ok && check.ok;
    json entry = {{"fixed_count", phi.size()}, {"check", to_json(check)}};
    if (witness) entry["construction"] = witness->construction;
    sets.push_back(std::move(entry));
  }
  passed = passed && all_ok;
  json example;
  if (auto witness = nondiscreteness_witness(ctx, {t.q()}))
    example = to_json(*witness, t, &ctx.colouring());
  return {{"nondiscreteness", {{"ok", all_ok}, {"nested_sets", sets}, {"example", example}}}};
}

json member_battery(const BoxContext& ctx, const JobSpec& job, std::mt19937_64& rng,
                    bool& passed) {
  const TruncatedTree& t = ctx.tree();
  const LegalColouring& c = ctx.colouring();
  VertexOrbits labels = vertex_orbits(c, ctx.groups());
  std::vector<VertexId> targets;
  for (VertexId y : ctx.inner(Part::Y))
    if (labels.label[y] == labels.label[t.q()]) targets.push_back(y);
  std::vector<VertexId> inner = t.inner_vertices(ctx.inner_radius());
  std::uniform_int_distribution<std::size_t> pick_target(0, targets.size() - 1);
  std::uniform_int_distribution<std::size_t> pick_inner(0, inner.size() - 1);

  std::size_t member_failures = 0, path_failures = 0;
  std::string first_failure;
  for (std::size_t i = 0; i < job.battery; ++i) {
    VertexId image = targets[pick_target(rng)];
    Portrait g = random_member(c, ctx.groups(), t.q(), image, rng);
    if (!is_member(g, ctx.groups(), c) || g.evaluate(t.q()) != image ||
        !compose(inverse(g), g).is_identity())
      ++member_failures;

    std::vector<VertexId> path = t.path(t.q(), inner[pick_inner(rng)]);
    Portrait h = random_path_stabiliser(c, ctx.groups(), path, rng);
    std::vector<Portrait> factors = path_decompose(h, path);
    bool ok = is_member(h, ctx.groups(), c);
    for (VertexId v : path) ok = ok && h.evaluate(v) == v;
    for (std::size_t a = 0; a < factors.size() && ok; ++a) {
      ok = is_member(factors[a], ctx.groups(), c);
      for (std::size_t b = a + 1; b < factors.size() && ok; ++b)
        ok = compose(factors[a], factors[b]) == compose(factors[b], factors[a]);
    }
    if (ok) {
      Portrait product = Portrait::identity(ctx.tree_ptr());
      for (const Portrait& f : factors) product = compose(product, f);
      ok = product.agrees_with(h) && product.defined_count() == h.defined_count();
    }
    if (!ok) {
      ++path_failures;
      if (first_failure.empty()) first_failure = "path to " + t.address(path.back());
    }
  }
  passed = passed && member_failures == 0 && path_failures == 0;
  json out = {{"members", {{"count", job.battery}, {"failures", member_failures},
                           {"ok", member_failures == 0}}},
              {"path_stabilisers", {{"count", job.battery}, {"failures", path_failures},
                                    {"ok", path_failures == 0}}}};
  if (!first_failure.empty()) out["path_stabilisers"]["first_failure"] = first_failure;
  return out;
}

json amalgam_check(const BoxContext& ctx, bool& passed) {
  AmalgamReport report =
      amalgam_structure(ctx, std::min<std::size_t>(2, ctx.inner_radius()), true, kEnumerationLimit);
  json out = to_json(report);
  bool ok = !report.in_hypothesis || (report.index_ok && report.counts_match);
  passed = passed && ok;
  out["ok"] = ok;
  return out;
}

JobResult run_analyze(const JobSpec& job) { return analyze_context(make_context(job), job); }

JobResult run_orbits(const JobSpec& job) {
  BoxContext ctx = make_context(job);
  const TruncatedTree& t = ctx.tree();
  FiniteApprox approx = finite_approx(ctx);
  VertexOrbits labels = vertex_orbits(ctx.colouring(), ctx.groups());
  json vertices = json::array();
  for (VertexId v : t.inner_vertices(ctx.inner_radius()))
    vertices.push_back({{"address", t.address(v)},
                        {"part", t.part(v) == Part::X ? "X" : "Y"},
                        {"orbit", labels.label[v]}});
  JobResult r;
  r.report = {{"job", job_json(ctx, job)},
              {"x_orbits", labels.x_orbits},
              {"y_orbits", labels.y_orbits},
              {"vertices", std::move(vertices)},
              {"checks", orbit_checks(ctx, approx, r.passed)}};
  r.report["passed"] = r.passed;
  return r;
}

JobResult run_suborbits(const JobSpec& job) {
  BoxContext ctx = make_context(job);
  JobResult r;
  r.report = {{"job", job_json(ctx, job)}, {"suborbits", suborbit_checks(ctx, r.passed)}};
  r.report["passed"] = r.passed;
  return r;
}

JobResult run_witness(const JobSpec& job) {
  BoxContext ctx = make_context(job);
  AnalysisReport prediction = predict(ctx.M(), ctx.N());
  FiniteApprox approx = finite_approx(ctx);
  JobResult r;
  json imprimitivity;
  if (prediction.verdict("primitive").value == false)
    imprimitivity = imprimitivity_json(ctx, approx, r.passed);
  else
    imprimitivity = {{"ok", true}, {"skipped", "primitivity is not refuted"}};
  r.report = {{"job", job_json(ctx, job)},
              {"imprimitivity", std::move(imprimitivity)},
              {"discreteness", discreteness_checks(ctx, r.passed)}};
  r.report["passed"] = r.passed;
  return r;
}

JobResult run_certificate(const JobSpec& job) {
  BoxContext ctx = make_context(job);
  AnalysisReport prediction = predict(ctx.M(), ctx.N());
  if (prediction.verdict("primitive").value != true)
    throw PreconditionError("certificates need M primitive and not regular and N transitive");
  std::mt19937_64 rng(job.seed);
  JobResult r;
  r.report = {{"job", job_json(ctx, job)},
              {"certificates",
               certificates_json(ctx, certificate_count(job), rng, r.passed, true)}};
  r.report["passed"] = r.passed;
  return r;
}

JobResult run_quotient(const JobSpec& job) {
  BoxContext ctx = make_context(job);
  QuotientGraph quotient = quotient_graph(ctx.groups());
  CrossCheck check = check_quotient(ctx);
  JobResult r;
  r.passed = check.ok;
  json edges = json::array();
  for (const auto& [u, v] : quotient.graph.edges())
    edges.push_back({quotient.labels[u], quotient.labels[v]});
  r.report = {{"job", job_json(ctx, job)},
              {"quotient", to_json(quotient)},
              {"labels", quotient.labels},
              {"edges", std::move(edges)},
              {"check", to_json(check)},
              {"passed", r.passed}};
  return r;
}

std::string function_label(std::size_t f, std::size_t m, std::size_t n) {
  std::string out = "(";
  for (std::size_t y = 0; y < n; ++y, f /= m) out += (y ? "," : "") + std::to_string(f % m + 1);
  return out + ")";
}

JobResult run_export_dot(const JobSpec& job) {
  BoxContext ctx = make_context(job);
  const TruncatedTree& t = ctx.tree();
  JobResult r;
  r.report = {{"job", job_json(ctx, job)}, {"target", job.target}};
  if (job.target == "tree") {
    const LegalColouring& c = ctx.colouring();
    r.dot = t.to_dot([&](VertexId u, VertexId v) { return std::to_string(c.colour(u, v) + 1); });
    r.report["vertices"] = t.vertex_count();
  } else if (job.target == "orbital") {
    BoxOrbitalGraph g =
        orbital_graph_box(ctx, t.q(), distance_two_partner(ctx), ctx.inner_radius());
    std::vector<std::string> labels;
    for (VertexId v : g.vertices) labels.push_back(t.address(v));
    r.dot = g.graph.to_dot("orbital", labels);
    r.report["vertices"] = g.graph.vertex_count();
    r.report["edges"] = g.graph.edge_count();
  } else if (job.target == "quotient") {
    QuotientGraph q = quotient_graph(ctx.groups());
    r.dot = q.graph.to_dot("quotient", q.labels);
    r.report["vertices"] = q.graph.vertex_count();
    r.report["edges"] = q.graph.edge_count();
  } else {
    PermGroup W = wreath_product_action(ctx.M(), ctx.N());
    FiniteGraph g = orbital_graph(W, 0, 1);
    std::vector<std::string> labels;
    for (std::size_t f = 0; f < W.degree(); ++f) labels.push_back(function_label(f, t.m(), t.n()));
    r.dot = g.to_dot("wreath_orbital", labels);
    r.report["vertices"] = g.vertex_count();
    r.report["edges"] = g.edge_count();
  }
  return r;
}

json graph_summary(const FiniteGraph& g, const std::vector<bool>* interior = nullptr) {
  std::vector<std::size_t> degrees = g.degrees();
  std::vector<std::size_t> triangles = g.triangles_per_vertex();
  std::set<std::size_t> degree_set, triangle_set;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (interior && !(*interior)[v]) continue;
    degree_set.insert(degrees[v]);
    triangle_set.insert(triangles[v]);
  }
  return {{"vertices", g.vertex_count()},
          {"edges", g.edge_count()},
          {"degrees", degree_set},
          {"triangles_per_vertex", triangle_set},
          {"triangles", g.triangle_count()},
          {"cycle_rank", g.cycle_rank()},
          {"connected", g.is_connected()}};
}

JobResult run_compare_wreath(const JobSpec& job) {
  BoxContext ctx = make_context(job);
  const TruncatedTree& t = ctx.tree();
  PermGroup W = wreath_product_action(ctx.M(), ctx.N());
  GroupProperties w_props = classify(W);
  Order expected = ctx.N().order();
  for (std::size_t y = 0; y < t.n(); ++y) expected *= ctx.M().order();
  AnalysisReport prediction = predict(ctx.M(), ctx.N());
  BoxOrbitalGraph box =
      orbital_graph_box(ctx, t.q(), distance_two_partner(ctx), ctx.inner_radius());
  auto display = [&](const char* name) { return prediction.verdict(name).display; };

  JobResult r;
  r.passed = W.order() == expected;
  r.report = {{"job", job_json(ctx, job)},
              {"wreath",
               {{"degree", W.degree()},
                {"order", W.order().str()},
                {"order_check", {{"ok", r.passed}, {"expected", expected.str()}}},
                {"transitive", w_props.transitive},
                {"primitive", w_props.primitive},
                {"orbital_graph", graph_summary(orbital_graph(W, 0, 1))}}},
              {"box",
               {{"transitive", display("transitive")},
                {"primitive", display("primitive")},
                {"discrete", display("discrete")},
                {"orbital_graph", graph_summary(box.graph, &box.interior)}}},
              {"passed", r.passed}};
  return r;
}

void render_value(const json& j, const std::string& indent, std::ostringstream& out);

bool is_scalar(const json& j) { return !j.is_object() && !j.is_array(); }

std::string scalar_text(const json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

void render_entry(const std::string& key, const json& j, const std::string& indent,
                  std::ostringstream& out) {
  if (is_scalar(j)) {
    out << indent << key << ": " << scalar_text(j) << "\n";
  } else if (j.is_array() && std::all_of(j.begin(), j.end(), is_scalar)) {
    out << indent << key << ": [";
    for (std::size_t i = 0; i < j.size(); ++i) out << (i ? ", " : "") << scalar_text(j[i]);
    out << "]\n";
  } else {
    out << indent << key << ":\n";
    render_value(j, indent + "  ", out);
  }
}

void render_value(const json& j, const std::string& indent, std::ostringstream& out) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) render_entry(key, value, indent, out);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i)
      render_entry("- " + std::to_string(i), j[i], indent, out);
  } else {
    out << indent << scalar_text(j) << "\n";
  }
}

}  // namespace

ParsedJob validate(const JobSpec& job) {
  if (job.format != "json" && job.format != "text")
    throw InputError("unknown format '" + job.format + "'");
  if (std::find(kTargets.begin(), kTargets.end(), job.target) == kTargets.end())
    throw InputError("unknown export target '" + job.target + "'");
  if (job.depth < 2 * job.margin)
    throw InputError("depth " + std::to_string(job.depth) + " is below twice the margin " +
                     std::to_string(job.margin));
  if (job.depth <= job.margin) throw InputError("depth must exceed the margin");
  ParsedJob parsed{parse_group_any(job.m_spec), parse_group_any(job.n_spec)};
  if (parsed.M.degree() < 2 || parsed.N.degree() < 2)
    throw InputError("both local groups need degree at least 2");
  return parsed;
}

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names = {"analyze",   "orbits",      "suborbits",
                                                 "witness",   "certificate", "quotient",
                                                 "export-dot", "compare-wreath"};
  return names;
}

JobResult run_job(const std::string& command, const JobSpec& job) {
  if (command == "analyze") return run_analyze(job);
  if (command == "orbits") return run_orbits(job);
  if (command == "suborbits") return run_suborbits(job);
  if (command == "witness") return run_witness(job);
  if (command == "certificate") return run_certificate(job);
  if (command == "quotient") return run_quotient(job);
  if (command == "export-dot") return run_export_dot(job);
  if (command == "compare-wreath") return run_compare_wreath(job);
  throw InputError("unknown subcommand '" + command + "'");
}

JobResult analyze_context(const BoxContext& ctx, const JobSpec& job) {
  AnalysisReport prediction = predict(ctx.M(), ctx.N());
  std::mt19937_64 rng(job.seed);
  JobResult r;
  // A construction that fails its own preconditions counts as a failed check.
  auto guarded = [&](const auto& step) -> json {
    try {
      return step();
    } catch (const PreconditionError& e) {
      r.passed = false;
      return {{"ok", false}, {"error", e.what()}};
    } catch (const DomainError& e) {
      r.passed = false;
      return {{"ok", false}, {"error", e.what()}};
    }
  };
  std::optional<FiniteApprox> approx;
  json verification;
  verification["approximation"] = guarded([&]() -> json {
    approx = finite_approx(ctx);
    return {{"ok", true}, {"generators", approx->generators.size()}};
  });
  auto with_approx = [&](const auto& step) {
    return guarded([&]() -> json {
      if (!approx) throw PreconditionError("no approximation");
      return step(*approx);
    });
  };
  verification["orbits"] =
      with_approx([&](const FiniteApprox& a) { return orbit_checks(ctx, a, r.passed); });
  verification["stabiliser_closure"] =
      with_approx([&](const FiniteApprox& a) { return closure_check(ctx, a, r.passed); });
  verification["suborbits"] = guarded([&] { return suborbit_checks(ctx, r.passed); });
  verification["primitivity"] = with_approx([&](const FiniteApprox& a) {
    return primitivity_checks(ctx, prediction, a, job, rng, r.passed, false);
  });
  verification["discreteness"] = guarded([&] { return discreteness_checks(ctx, r.passed); });
  verification["battery"] = guarded([&] { return member_battery(ctx, job, rng, r.passed); });
  verification["amalgam"] = guarded([&] { return amalgam_check(ctx, r.passed); });
  r.report = {{"job", job_json(ctx, job)},
              {"prediction", to_json(prediction)},
              {"verification", std::move(verification)},
              {"passed", r.passed}};
  return r;
}

std::string render_text(const json& j) {
  std::ostringstream out;
  render_value(j, "", out);
  return out.str();
}

std::string render(const JobResult& result, const JobSpec& job) {
  if (!result.dot.empty()) return result.dot;
  return job.format == "text" ? render_text(result.report) : result.report.dump(2) + "\n";
}

}  // namespace boxprod
