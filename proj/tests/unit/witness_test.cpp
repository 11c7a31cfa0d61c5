#include <doctest.h>

#include <random>

#include "boxprod/analysis.hpp"
#include "boxprod/errors.hpp"
#include "boxprod/group_algorithms.hpp"
#include "boxprod/group_spec.hpp"
#include "oracles.hpp"

using namespace boxprod;

namespace {

const char* const kSym3 = "3; (1 2); (1 2 3)";
const char* const kSym2 = "2; (1 2)";

BoxContext context(const char* m, const char* n, std::size_t depth = 6, std::size_t margin = 2) {
  return BoxContext(parse_group_spec(m), parse_group_spec(n), depth, margin);
}

}  // namespace

TEST_CASE("predicted verdicts follow the local groups") {
  const std::vector<std::pair<const char*, const char*>> pairs = {
      {kSym3, kSym2},          {"3; (1 2 3)", kSym2},       {"3; (1 2)", kSym2},
      {kSym3, "3; (1 2)"},     {"4; (1 2 3); (2 3 4)", kSym3}, {"4; (1 2 3 4)", kSym2},
      {kSym2, kSym2},          {"3; (1 2 3)", "3; (1 2 3)"}, {"5; (1 2 3 4 5); (2 5)(3 4)", kSym2},
      {"4; (1 2)(3 4); (1 3)(2 4)", kSym3}};
  for (const auto& [ms, ns] : pairs) {
    CAPTURE(ms);
    CAPTURE(ns);
    PermGroup M = parse_group_spec(ms), N = parse_group_spec(ns);
    AnalysisReport r = predict(M, N);
    const bool m_transitive = oracle::orbits(M)[0].size() == M.degree();
    const bool n_transitive = oracle::orbits(N)[0].size() == N.degree();
    const bool m_regular = m_transitive && oracle::elements(M).size() == M.degree();
    CHECK(r.verdict("transitive").value == m_transitive);
    CHECK(r.verdict("primitive").value == (oracle::primitive(M) && !m_regular && n_transitive));
    const bool discrete = oracle::semiregular(M) && oracle::semiregular(N);
    CHECK(r.verdict("discrete").value == discrete);
    CHECK(r.verdict("cardinality").display == (discrete ? "<= aleph_0" : "2^aleph_0"));
    const bool hypotheses =
        oracle::point_stabiliser_span(M) == oracle::elements(M).size() &&
        oracle::point_stabiliser_span(N) == oracle::elements(N).size();
    if (hypotheses)
      CHECK(r.verdict("simple").value == (m_transitive || n_transitive));
    else
      CHECK_FALSE(r.verdict("simple").value.has_value());
  }
}

TEST_CASE("Sym(3) box Sym(2) report") {
  AnalysisReport r = predict(parse_group_spec(kSym3), parse_group_spec(kSym2));
  CHECK(r.verdict("primitive").display == "true");
  CHECK(r.verdict("discrete").display == "false");
  CHECK(r.verdict("simple").display == "no verdict");
  CHECK(r.suborbits.size() == 2);
  CHECK(r.suborbits[0].sizes == std::vector<std::size_t>{4});
  nlohmann::json j = to_json(r);
  CHECK(j["quotient"]["graph"] == "K_{1,1}");
  CHECK(j["verdicts"]["primitive"]["witness_ref"] == "certificates");
  CHECK(j["verdicts"]["cardinality"]["display"] == "2^aleph_0");
}

TEST_CASE("simplicity hypotheses") {
  SimplicityHypotheses h = simplicity_hypotheses(parse_group_spec(kSym3), parse_group_spec(kSym3));
  CHECK(h.hold());
  CHECK_FALSE(simplicity_hypotheses(parse_group_spec(kSym3), parse_group_spec(kSym2)).hold());
  CHECK(predict(parse_group_spec("3; (1 2)"), parse_group_spec("3; (1 2)"))
            .verdict("simple")
            .value == false);
}

TEST_CASE("imprimitivity witnesses pass the checker and tampering is caught") {
  struct Case {
    const char* m;
    const char* n;
    WitnessKind kind;
  };
  for (const Case& c : {Case{"3; (1 2)", kSym2, WitnessKind::InvariantPartition},
                        Case{kSym3, "3; (1 2)", WitnessKind::DisconnectedOrbitalGraph},
                        Case{"4; (1 2 3 4)", kSym2, WitnessKind::DisconnectedOrbitalGraph},
                        Case{kSym2, kSym2, WitnessKind::BlockSystem}}) {
    CAPTURE(c.m);
    CAPTURE(c.n);
    BoxContext ctx = context(c.m, c.n);
    FiniteApprox approx = finite_approx(ctx);
    ImprimitivityResult result = imprimitivity_witness(ctx);
    REQUIRE(result.witness.has_value());
    CHECK(result.witness->kind == c.kind);
    WitnessCheck check = check_partition_witness(*result.witness, approx);
    CHECK_MESSAGE(check.ok, check.detail);

    // move the last vertex into another block
    Witness tampered = *result.witness;
    std::vector<std::size_t> ids = tampered.partition->block_ids();
    std::size_t other = 0;
    while (ids[other] == ids.back()) ++other;
    ids.back() = ids[other];
    tampered.partition = Partition(ids);
    CHECK_FALSE(check_partition_witness(tampered, approx).ok);
  }
}

TEST_CASE("regular prime-degree case is delegated") {
  ImprimitivityResult r = imprimitivity_witness(context("3; (1 2 3)", kSym2));
  CHECK_FALSE(r.witness.has_value());
  CHECK_FALSE(r.reason.empty());
  CHECK_THROWS_AS(imprimitivity_witness(context(kSym3, kSym2)), PreconditionError);
}

TEST_CASE("primitivity certificates") {
  for (auto [m, n] : {std::pair{kSym3, kSym2}, std::pair{"4; (1 2 3); (2 3 4)", kSym3}}) {
    BoxContext ctx = context(m, n);
    std::vector<VertexId> ys = ctx.inner(Part::Y);
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
      VertexId w = ys[rng() % ys.size()], w2 = ys[rng() % ys.size()];
      if (w == w2) continue;
      PrimitivityCertificate cert = primitivity_certificate(ctx, w, w2);
      WitnessCheck check = check_certificate(ctx, cert);
      CHECK_MESSAGE(check.ok, check.detail);
    }
  }
  BoxContext ctx = context(kSym3, kSym2);
  const TruncatedTree& t = ctx.tree();
  PrimitivityCertificate cert = primitivity_certificate(ctx, t.q(), *t.find("p.0.0.0"));
  REQUIRE(check_certificate(ctx, cert).ok);
  for (CertificateStep& step : cert.steps)
    if (!step.images.empty()) {
      step.images.front().to = t.p();
      break;
    }
  CHECK_FALSE(check_certificate(ctx, cert).ok);
  CHECK_THROWS_AS(primitivity_certificate(ctx, t.q(), t.q()), PreconditionError);
}

TEST_CASE("nondiscreteness witnesses fix the given set") {
  BoxContext ctx = context(kSym3, kSym2);
  const TruncatedTree& t = ctx.tree();
  std::vector<VertexId> phi;
  for (VertexId v : t.ball(t.q(), 4))
    if (t.part(v) == Part::Y) phi.push_back(v);
  std::optional<Witness> w = nondiscreteness_witness(ctx, phi);
  REQUIRE(w.has_value());
  CHECK(w->kind == WitnessKind::FixingElement);
  CHECK(check_fixing_witness(ctx, *w).ok);
  CHECK_FALSE(w->element->is_identity());
  for (VertexId v : phi) CHECK(w->element->evaluate(v) == v);

  Witness moved = *w;
  std::mt19937_64 rng(1);
  moved.element = random_member(ctx.colouring(), ctx.groups(), t.q(), *t.find("p.1"), rng);
  CHECK_FALSE(check_fixing_witness(ctx, moved).ok);

  CHECK_FALSE(nondiscreteness_witness(context("3; (1 2 3)", kSym2), {t.q()}).has_value());
}

TEST_CASE("discreteness search") {
  BoxContext cyclic = context("3; (1 2 3)", kSym2, 8, 2);
  const TruncatedTree& t = cyclic.tree();
  DiscretenessSearch s =
      discreteness_search(cyclic, t.q(), cyclic.colouring().neighbour_by_colour(t.p(), 1));
  CHECK(s.only_identity);
  CHECK(s.fixing_both == 1);
  CHECK(s.fixing_w == 2);

  BoxContext sym = context(kSym3, kSym2, 6, 2);
  DiscretenessSearch d =
      discreteness_search(sym, sym.tree().q(),
                          sym.colouring().neighbour_by_colour(sym.tree().p(), 1));
  CHECK_FALSE(d.only_identity);
  CHECK(d.fixing_both > 1);
}
