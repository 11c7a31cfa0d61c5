#include <doctest.h>

#include "boxprod/errors.hpp"
#include "boxprod/group_spec.hpp"
#include "boxprod/job.hpp"

using namespace boxprod;

namespace {

JobSpec job(const char* m, const char* n) {
  JobSpec j;
  j.m_spec = m;
  j.n_spec = n;
  return j;
}

const char* const kSym3 = "3; (1 2); (1 2 3)";
const char* const kSym2 = "2; (1 2)";

}  // namespace

TEST_CASE("job validation") {
  CHECK_NOTHROW(validate(job(kSym3, kSym2)));
  JobSpec shallow = job(kSym3, kSym2);
  shallow.depth = 3;
  CHECK_THROWS_AS(validate(shallow), InputError);
  CHECK_THROWS_AS(validate(job("1; ()", kSym2)), InputError);
  CHECK_THROWS_AS(validate(job("3; (1 4)", kSym2)), ParseError);
  JobSpec format = job(kSym3, kSym2);
  format.format = "xml";
  CHECK_THROWS_AS(validate(format), InputError);
  CHECK_THROWS_AS(run_job("unknown", job(kSym3, kSym2)), InputError);
}

TEST_CASE("analyze Sym(3) box Sym(2)") {
  JobResult r = run_job("analyze", job(kSym3, kSym2));
  CHECK(r.passed);
  const auto& verdicts = r.report["prediction"]["verdicts"];
  CHECK(verdicts["primitive"]["value"] == true);
  CHECK(verdicts["discrete"]["value"] == false);
  CHECK(verdicts["cardinality"]["display"] == "2^aleph_0");
  CHECK(r.report["verification"]["primitivity"]["certificates"]["passing"] == 20);
  CHECK(r.report["verification"]["suborbits"][0]["sizes"] == nlohmann::json::array({4}));
}

TEST_CASE("analyze C3 box Sym(2) finds it discrete") {
  JobSpec j = job("3; (1 2 3)", kSym2);
  j.depth = 8;
  JobResult r = run_job("analyze", j);
  CHECK(r.passed);
  CHECK(r.report["prediction"]["verdicts"]["discrete"]["value"] == true);
  CHECK(r.report["prediction"]["verdicts"]["cardinality"]["display"] == "<= aleph_0");
  CHECK(r.report["verification"]["discreteness"]["discreteness_search"]["only_identity"] == true);
}

TEST_CASE("reports are reproducible") {
  JobSpec j = job("4; (1 2 3); (2 3 4)", kSym3);
  j.battery = 30;
  CHECK(render(run_job("analyze", j), j) == render(run_job("analyze", j), j));
  j.seed = 2;
  JobResult other = run_job("analyze", j);
  CHECK(other.passed);
}

TEST_CASE("a broken colouring fails verification") {
  auto tree = std::make_shared<const TruncatedTree>(TreeParams{3, 2, 6});
  LegalColouring c = LegalColouring::canonical(tree);
  VertexId v = *tree->find("p.0.0");
  VertexId a = tree->neighbour(v, 1), b = tree->neighbour(v, 2);
  LegalColouring broken =
      c.with_colour(v, a, c.colour(v, b)).with_colour(v, b, c.colour(v, a));
  REQUIRE_FALSE(broken.validate().ok);
  BoxContext ctx(broken, LocalGroups(parse_group_spec(kSym3), parse_group_spec(kSym2)), 2);
  JobSpec j = job(kSym3, kSym2);
  JobResult r = analyze_context(ctx, j);
  CHECK_FALSE(r.passed);
  CHECK(r.report["passed"] == false);
  CHECK(r.report["verification"]["approximation"]["ok"] == false);
}

TEST_CASE("other subcommands") {
  JobSpec j = job(kSym3, kSym2);
  for (const std::string& name : subcommands()) {
    CAPTURE(name);
    JobResult r = run_job(name, j);
    CHECK(r.passed);
  }
  CHECK_THROWS_AS(run_job("certificate", job("3; (1 2 3)", kSym2)), PreconditionError);
  CHECK(run_job("witness", job("3; (1 2)", kSym2)).report["imprimitivity"]["ok"] == true);
}

TEST_CASE("dot exports") {
  JobSpec j = job(kSym3, kSym2);
  j.target = "quotient";
  JobResult q = run_job("export-dot", j);
  CHECK(q.report["vertices"] == 2);
  CHECK(q.report["edges"] == 1);
  CHECK(q.dot.find("--") != std::string::npos);
  j.target = "wreath-orbital";
  CHECK(run_job("export-dot", j).report["vertices"] == 9);
  j.target = "orbital";
  JobResult o = run_job("export-dot", j);
  CHECK(o.dot == run_job("export-dot", j).dot);
  j.target = "tree";
  j.depth = 4;
  CHECK(run_job("export-dot", j).dot.rfind("digraph", 0) == 0);
  j.target = "pie";
  CHECK_THROWS_AS(run_job("export-dot", j), InputError);
}

TEST_CASE("compare-wreath") {
  JobResult r = run_job("compare-wreath", job(kSym3, kSym2));
  CHECK(r.report["wreath"]["order"] == "72");
  CHECK(r.report["wreath"]["primitive"] == true);
  CHECK(r.report["box"]["primitive"] == "true");
  CHECK(r.report["wreath"]["orbital_graph"]["vertices"] == 9);
}

TEST_CASE("text rendering") {
  nlohmann::json j = {{"a", 1}, {"b", {{"c", "x"}, {"d", {1, 2}}}}, {"e", {{{"f", true}}}}};
  CHECK(render_text(j) == "a: 1\nb:\n  c: x\n  d: [1, 2]\ne:\n  - 0:\n    f: true\n");
}
