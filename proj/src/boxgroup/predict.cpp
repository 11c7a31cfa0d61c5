#include "boxprod/analysis.hpp"
#include "boxprod/errors.hpp"
#include "boxprod/group_spec.hpp"

namespace boxprod {

const Verdict& AnalysisReport::verdict(const std::string& name) const {
  for (const Verdict& v : verdicts)
    if (v.name == name) return v;
  throw InputError("no verdict named " + name);
}

SimplicityHypotheses simplicity_hypotheses(const PermGroup& M, const PermGroup& N) {
  SimplicityHypotheses h;
  h.degrees_at_least_two = M.degree() >= 2 && N.degree() >= 2;
  h.generated_by_point_stabilisers =
      classify(M).generated_by_point_stabilisers && classify(N).generated_by_point_stabilisers;
  h.some_nontrivial = !M.is_trivial() || !N.is_trivial();
  return h;
}

AnalysisReport predict(const PermGroup& M, const PermGroup& N) {
  AnalysisReport r;
  r.m = classify(M);
  r.n = classify(N);
  r.m_spec = to_group_spec(M);
  r.n_spec = to_group_spec(N);
  r.m_order = M.order().str();
  r.n_order = N.order().str();
  const bool nontrivial = !M.is_trivial() && !N.is_trivial();
  const std::string needs_nontrivial = "requires M and N nontrivial";
  auto add = [&](std::string name, std::optional<bool> value, std::string citation,
                 std::string note = {}, std::string evidence = {}) {
    Verdict v;
    v.name = std::move(name);
    v.value = value;
    v.display = !value ? "no verdict" : *value ? "true" : "false";
    v.citation = std::move(citation);
    v.note = value ? std::move(note) : (note.empty() ? "outside the hypotheses" : note);
    v.evidence = std::move(evidence);
    r.verdicts.push_back(std::move(v));
  };

  const std::string perm_criterion =
      "transitivity and primitivity criterion for the box product";
  if (nontrivial) {
    add("transitive", r.m.transitive, perm_criterion + ": transitive iff M is transitive");
    const bool primitive = r.m.primitive && !r.m.regular && r.n.transitive;
    std::string evidence = primitive ? "certificates" : "imprimitivity";
    std::string note;
    if (!primitive && r.m.transitive && r.n.transitive && r.m.primitive && r.m.regular &&
        M.degree() >= 3) {
      evidence = "imprimitivity (delegated)";
      note = "M is regular of prime degree; the invariant relation comes from an external result";
    }
    add("primitive", primitive,
        perm_criterion + ": primitive iff M is primitive but not regular and N is transitive",
        note, evidence);
  } else {
    add("transitive", std::nullopt, perm_criterion, needs_nontrivial);
    add("primitive", std::nullopt, perm_criterion, needs_nontrivial);
  }

  SimplicityHypotheses h = simplicity_hypotheses(M, N);
  const std::string simple_criterion =
      "simplicity criterion: for groups of degree at least two, generated by point "
      "stabilisers, one nontrivial, simple iff M or N is transitive";
  if (h.hold()) {
    add("simple", r.m.transitive || r.n.transitive, simple_criterion,
        "hypotheses verified on M and N", "hypotheses");
  } else {
    std::string failed;
    if (!h.degrees_at_least_two) failed += "a degree is below two; ";
    if (!r.m.generated_by_point_stabilisers) failed += "M is not generated by point stabilisers; ";
    if (!r.n.generated_by_point_stabilisers) failed += "N is not generated by point stabilisers; ";
    if (!h.some_nontrivial) failed += "both groups are trivial; ";
    failed.resize(failed.size() - 2);
    add("simple", std::nullopt, simple_criterion, failed, "hypotheses");
  }

  const bool semiregular = r.m.semiregular && r.n.semiregular;
  add("discrete", semiregular,
      "discreteness criterion: discrete iff M and N are semiregular", {},
      semiregular ? "discreteness_search" : "nondiscreteness");

  const std::string subdegree_criterion =
      "subdegree-finiteness criterion: subdegree-finite iff M is subdegree-finite and N has "
      "finite orbits";
  if (nontrivial)
    add("subdegree_finite", true, subdegree_criterion, "M and N are finite", "suborbits");
  else
    add("subdegree_finite", std::nullopt, subdegree_criterion, needs_nontrivial);

  const std::string compact_criterion =
      "compact stabiliser criterion for closed M and N: point stabilisers are compact iff N is "
      "compact and point stabilisers of M are compact";
  if (nontrivial)
    add("compact_stabilisers", true, compact_criterion, "M and N are finite", "amalgam");
  else
    add("compact_stabilisers", std::nullopt, compact_criterion, needs_nontrivial);

  const std::string generation_criterion =
      "compact generation theorem: for transitive M and N with M compactly generated with "
      "compact point stabilisers and N compact";
  if (r.m.transitive && r.n.transitive)
    add("compactly_generated", true, generation_criterion, "M and N are finite and transitive",
        "amalgam");
  else
    add("compactly_generated", std::nullopt, generation_criterion,
        "the theorem assumes M and N transitive");

  add("cardinality", semiregular,
      "cardinality dichotomy for closed groups on countable sets: countable iff M and N are "
      "semiregular, otherwise of the continuum; uses Evans' theorem on closed permutation groups",
      {}, semiregular ? "discreteness_search" : "nondiscreteness");
  r.verdicts.back().display = semiregular ? "<= aleph_0" : "2^aleph_0";

  r.quotient = quotient_graph(LocalGroups(M, N));
  if (nontrivial) {
    BoxContext ctx(M, N, 4, 0);
    for (std::size_t k = 1; k <= 2; ++k)
      r.suborbits.push_back({2 * k, suborbits_box(ctx, ctx.tree().q(), k).sizes});
  }
  return r;
}

}  // namespace boxprod
