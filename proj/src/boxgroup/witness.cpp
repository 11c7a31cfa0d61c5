#include "boxprod/witness.hpp"

#include <algorithm>
#include <map>

#include "boxprod/errors.hpp"

namespace boxprod {

std::string to_string(WitnessKind kind) {
  switch (kind) {
    case WitnessKind::InvariantPartition: return "invariant-partition";
    case WitnessKind::DisconnectedOrbitalGraph: return "disconnected-orbital-graph";
    case WitnessKind::BlockSystem: return "block-system";
    case WitnessKind::FixingElement: return "fixing-element";
  }
  return "unknown";
}

std::string to_string(StepKind kind) {
  switch (kind) {
    case StepKind::Surgery: return "surgery";
    case StepKind::Collapse: return "collapse";
    case StepKind::Spread: return "spread";
  }
  return "unknown";
}

namespace {

/// Witness whose blocks are the components of the orbital graph of {q, w2},
/// w2 the neighbour of p coloured b.
Witness component_witness(const BoxContext& ctx, Colour b, std::string construction) {
  const TruncatedTree& t = ctx.tree();
  const VertexId w2 = ctx.colouring().neighbour_by_colour(t.p(), b);
  BoxOrbitalGraph whole = orbital_graph_box(ctx, t.q(), w2, t.depth());
  BoxOrbitalGraph inner = orbital_graph_box(ctx, t.q(), w2, ctx.inner_radius());
  Partition components = whole.graph.components();
  std::vector<std::size_t> ids;
  for (VertexId y : inner.vertices)
    ids.push_back(components.block_of(static_cast<std::size_t>(whole.index[y])));
  Witness out;
  out.kind = WitnessKind::DisconnectedOrbitalGraph;
  out.construction = std::move(construction);
  out.vertices = inner.vertices;
  out.partition = Partition(std::move(ids));
  out.graph = std::move(inner.graph);
  return out;
}

}  // namespace

ImprimitivityResult imprimitivity_witness(const BoxContext& ctx) {
  const TruncatedTree& t = ctx.tree();
  const LegalColouring& c = ctx.colouring();
  const GroupProperties& m = ctx.m_props();
  const GroupProperties& n = ctx.n_props();
  if (m.primitive && !m.regular && n.transitive)
    throw PreconditionError("the box product is primitive; no imprimitivity witness exists");
  ImprimitivityResult out;
  const std::vector<VertexId> ys = ctx.inner(Part::Y);

  if (!m.transitive) {
    VertexOrbits labels = vertex_orbits(c, ctx.groups());
    std::vector<std::size_t> ids;
    for (VertexId y : ys) ids.push_back(labels.label[y]);
    Witness w;
    w.kind = WitnessKind::InvariantPartition;
    w.construction = "orbits of the box product: in-colours grouped by M-orbit";
    w.vertices = ys;
    w.partition = Partition(std::move(ids));
    out.witness = std::move(w);
    out.reason = "M is intransitive";
    return out;
  }
  if (!n.transitive) {
    Colour b = c.colour(t.p(), std::size_t{1});
    out.witness = component_witness(
        ctx, b,
        "components of the orbital graph of {q, " + t.address(c.neighbour_by_colour(t.p(), b)) +
            "}");
    out.reason = "N is intransitive";
    return out;
  }
  if (!m.primitive) {
    const Colour a = c.colour(t.p(), t.q());
    for (Colour b = 0; b < t.m(); ++b) {
      if (b == a || minimal_block(ctx.M(), a, b).is_universal()) continue;
      out.witness = component_witness(
          ctx, b,
          "components of the orbital graph lifted from the M-block of {" + std::to_string(a + 1) +
              ", " + std::to_string(b + 1) + "}");
      out.reason = "M is imprimitive";
      return out;
    }
    throw PreconditionError("no nontrivial block found for an imprimitive M");
  }
  if (t.m() == 2) {
    std::vector<std::size_t> ids;
    for (VertexId y : ys) ids.push_back((t.distance(t.q(), y) / 2) % 2);
    Witness w;
    w.kind = WitnessKind::BlockSystem;
    w.construction = "bipartition of the distance-two graph on Y-vertices";
    w.vertices = ys;
    w.partition = Partition(std::move(ids));
    out.witness = std::move(w);
    out.reason = "M is regular on two points";
    return out;
  }
  out.reason = "M is regular of prime degree at least three; imprimitive (delegated), no "
               "partition constructed";
  return out;
}

WitnessCheck check_partition_witness(const Witness& witness, const FiniteApprox& approx) {
  WitnessCheck out;
  if (!witness.partition || witness.partition->size() != witness.vertices.size()) {
    out.ok = false;
    out.detail = "witness carries no partition of its vertices";
    return out;
  }
  const Partition& P = *witness.partition;
  const TruncatedTree& t = *approx.tree;
  if (P.is_discrete() || P.is_universal()) {
    out.ok = false;
    out.detail = P.is_discrete() ? "partition is discrete" : "partition is universal";
    return out;
  }
  std::vector<std::ptrdiff_t> index(t.vertex_count(), -1);
  for (std::size_t i = 0; i < witness.vertices.size(); ++i)
    index[witness.vertices[i]] = static_cast<std::ptrdiff_t>(i);
  auto blocks = P.blocks();
  for (const auto* list : {&approx.generators, &approx.inverses})
    for (std::size_t gi = 0; gi < list->size(); ++gi) {
      const Portrait& g = (*list)[gi];
      for (const auto& block : blocks) {
        std::ptrdiff_t target = -1;
        VertexId first = kNoVertex;
        for (std::size_t i : block) {
          VertexId image = g.image_or_none(witness.vertices[i]);
          if (image == kNoVertex || index[image] < 0) continue;
          auto b = static_cast<std::ptrdiff_t>(P.block_of(static_cast<std::size_t>(index[image])));
          if (target < 0) {
            target = b;
            first = witness.vertices[i];
          } else if (b != target) {
            out.ok = false;
            out.detail = approx.names[gi] + (list == &approx.inverses ? " (inverse)" : "") +
                         " separates " + t.address(first) + " and " +
                         t.address(witness.vertices[i]);
            return out;
          }
        }
      }
    }
  return out;
}

PrimitivityCertificate primitivity_certificate(const BoxContext& ctx, VertexId w, VertexId w2) {
  const TruncatedTree& t = ctx.tree();
  const LegalColouring& c = ctx.colouring();
  if (!(ctx.m_props().primitive && !ctx.m_props().regular && ctx.n_props().transitive))
    throw PreconditionError("certificate needs M primitive and not regular, and N transitive");
  if (w == w2 || t.part(w) != Part::Y || t.part(w2) != Part::Y || !ctx.is_inner(w) ||
      !ctx.is_inner(w2))
    throw PreconditionError("certificate needs two distinct inner Y-vertices");

  PrimitivityCertificate cert;
  cert.w = w;
  cert.w2 = w2;
  std::vector<VertexId> path = t.path(w, w2);
  const std::size_t d = path.size() - 1;
  VertexId a = w, b = w2, v = path[1];

  if (d > 2) {
    v = path[d - 1];
    const VertexId before = path[d - 2];
    const Colour keep = c.colour(v, before), move = c.colour(v, w2);
    std::optional<Perm> mu;
    for (const Perm& x : ctx.groups().stabiliser(Part::X, keep).elements())
      if (x.image(move) != move) {
        mu = x;
        break;
      }
    if (!mu) throw PreconditionError("colour stabiliser fixes another colour; M is not primitive");
    Portrait g = half_tree_surgery(rigid_element(*mu, v, c), {v, before});
    const VertexId image = g.evaluate(w2);
    CertificateStep step;
    step.kind = StepKind::Surgery;
    step.centre = v;
    step.claim = "g fixes the half-tree of " + t.address(before) + " away from " + t.address(v) +
                 ", so (" + t.address(w) + ", " + t.address(w2) + ") ~ (" + t.address(w) + ", " +
                 t.address(image) + ") and " + t.address(w2) + " ~ " + t.address(image);
    step.images = {{0, w, w}, {0, w2, image}};
    step.elements.push_back(std::move(g));
    step.related = {{w2, image}};
    cert.steps.push_back(std::move(step));
    a = w2;
    b = image;
  }

  CertificateStep collapse;
  collapse.kind = StepKind::Collapse;
  collapse.centre = v;
  collapse.block = minimal_block(ctx.M(), c.colour(v, a), c.colour(v, b));
  collapse.claim = "(" + t.address(a) + ", " + t.address(b) + ") generates the M-block " +
                   (collapse.block->is_universal() ? "of all colours" : "of some colours") +
                   " at " + t.address(v);
  for (std::size_t s = 1; s < t.slot_count(v); ++s)
    collapse.related.emplace_back(t.neighbour(v, 0), t.neighbour(v, s));
  cert.steps.push_back(std::move(collapse));

  CertificateStep spread;
  spread.kind = StepKind::Spread;
  spread.centre = v;
  spread.claim = "members carry " + t.address(v) + " to every X-vertex at distance two, so "
                 "every lobe is universal and the lobes connect all Y-vertices";
  for (VertexId u : t.ball(v, 2)) {
    if (t.distance(u, v) != 2) continue;
    auto g = same_orbit_with_element(v, u, c, ctx.groups());
    if (!g) throw PreconditionError("no member maps " + t.address(v) + " to " + t.address(u));
    spread.images.push_back({spread.elements.size(), v, u});
    spread.elements.push_back(std::move(*g));
    if (!t.is_leaf(u))
      for (std::size_t s = 1; s < t.slot_count(u); ++s)
        spread.related.emplace_back(t.neighbour(u, 0), t.neighbour(u, s));
  }
  cert.steps.push_back(std::move(spread));
  return cert;
}

WitnessCheck check_certificate(const BoxContext& ctx, const PrimitivityCertificate& cert) {
  const TruncatedTree& t = ctx.tree();
  const LegalColouring& c = ctx.colouring();
  WitnessCheck out;
  auto fail = [&](std::string why) {
    out.ok = false;
    out.detail = std::move(why);
    return out;
  };
  std::pair<VertexId, VertexId> current{cert.w, cert.w2};
  for (std::size_t i = 0; i < cert.steps.size(); ++i) {
    const CertificateStep& step = cert.steps[i];
    const std::string where = "step " + std::to_string(i + 1) + " (" + to_string(step.kind) + ")";
    for (const Portrait& g : step.elements)
      if (auto m = check_membership(g, ctx.groups(), c); !m.ok)
        return fail(where + ": element fails membership at " + t.address(m.vertex));
    for (const ImageClaim& claim : step.images) {
      if (claim.element >= step.elements.size()) return fail(where + ": dangling image claim");
      try {
        if (step.elements[claim.element].evaluate(claim.from) != claim.to)
          return fail(where + ": wrong image of " + t.address(claim.from));
      } catch (const DomainError& e) {
        return fail(where + ": " + e.what());
      }
    }
    switch (step.kind) {
      case StepKind::Surgery: {
        if (step.elements.size() != 1 || step.related.size() != 1)
          return fail(where + ": malformed");
        const Portrait& g = step.elements.front();
        std::vector<VertexId> path = t.path(cert.w, cert.w2);
        const VertexId v = path[path.size() - 2], before = path[path.size() - 3];
        if (step.centre != v) return fail(where + ": wrong centre");
        for (VertexId x : t.half_tree({before, v}))
          if (g.defined(x) && g.image_or_none(x) != x)
            return fail(where + ": element moves " + t.address(x));
        auto [x, y] = step.related.front();
        if (x != cert.w2 || g.image_or_none(cert.w2) != y || x == y || t.distance(x, y) != 2 ||
            !t.adjacent(v, y))
          return fail(where + ": derived pair is not at distance two through the centre");
        current = {x, y};
        break;
      }
      case StepKind::Collapse: {
        const VertexId v = step.centre;
        auto [a, b] = current;
        if (!t.adjacent(v, a) || !t.adjacent(v, b)) return fail(where + ": pair not on the star");
        Partition block = minimal_block(ctx.M(), c.colour(v, a), c.colour(v, b));
        if (!step.block || *step.block != block || !block.is_universal())
          return fail(where + ": generated block is not universal");
        break;
      }
      case StepKind::Spread: {
        std::vector<VertexId> reached;
        for (const ImageClaim& claim : step.images) {
          if (claim.from != step.centre) return fail(where + ": element does not start at centre");
          reached.push_back(claim.to);
        }
        std::sort(reached.begin(), reached.end());
        std::vector<VertexId> expected;
        for (VertexId u : t.ball(step.centre, 2))
          if (t.distance(u, step.centre) == 2) expected.push_back(u);
        std::sort(expected.begin(), expected.end());
        if (reached != expected) return fail(where + ": some lobes are not reached");
        break;
      }
    }
  }
  if (cert.steps.empty() || cert.steps.back().kind != StepKind::Spread)
    return fail("certificate does not end with a spread step");
  return out;
}

std::optional<Witness> nondiscreteness_witness(const BoxContext& ctx,
                                               const std::vector<VertexId>& phi) {
  const TruncatedTree& t = ctx.tree();
  const LegalColouring& c = ctx.colouring();
  for (VertexId f : phi) {
    if (f >= t.vertex_count() || t.part(f) != Part::Y)
      throw InputError("fixed set must consist of Y-vertices");
    if (!ctx.is_inner(f)) throw DomainError(t.address(f) + " lies outside the inner ball");
  }
  if (ctx.m_props().semiregular && ctx.n_props().semiregular) return std::nullopt;
  for (VertexId x = 0; x < t.vertex_count(); ++x) {
    if (t.is_leaf(x)) continue;
    if (std::any_of(phi.begin(), phi.end(), [&](VertexId f) { return t.in_subtree(f, x); }))
      continue;
    const VertexId y = t.up(x);
    const PermGroup& stab = ctx.groups().stabiliser(t.part(x), c.colour(x, y));
    auto mu = std::find_if(stab.generators().begin(), stab.generators().end(),
                           [](const Perm& s) { return !s.is_identity(); });
    if (mu == stab.generators().end()) continue;
    Witness out;
    out.kind = WitnessKind::FixingElement;
    out.construction = "rigid element at " + t.address(x) + " fixing the colour towards " +
                       t.address(y) + ", cut to the half-tree away from the fixed set";
    out.element = half_tree_surgery(rigid_element(*mu, x, c), {x, y});
    out.fixed = phi;
    return out;
  }
  throw DomainError("no arc with a nontrivial colour stabiliser lies away from the fixed set; "
                    "raise the ambient depth");
}

WitnessCheck check_fixing_witness(const BoxContext& ctx, const Witness& witness) {
  const TruncatedTree& t = ctx.tree();
  WitnessCheck out;
  if (!witness.element) {
    out.ok = false;
    out.detail = "witness carries no element";
    return out;
  }
  const Portrait& g = *witness.element;
  if (auto m = check_membership(g, ctx.groups(), ctx.colouring()); !m.ok) {
    out.ok = false;
    out.detail = "element fails membership at " + t.address(m.vertex);
  } else if (g.is_identity()) {
    out.ok = false;
    out.detail = "element is trivial";
  } else {
    for (VertexId f : witness.fixed)
      if (!g.defined(f) || g.image_or_none(f) != f) {
        out.ok = false;
        out.detail = "element moves " + t.address(f);
        break;
      }
  }
  return out;
}

DiscretenessSearch discreteness_search(const BoxContext& ctx, VertexId w, VertexId w2,
                                       std::size_t limit) {
  const TruncatedTree& t = ctx.tree();
  if (t.part(w) != Part::Y || t.part(w2) != Part::Y || t.distance(w, w2) != 2)
    throw InputError("discreteness search needs two Y-vertices at distance two");
  DiscretenessSearch out;
  out.w = w;
  out.w2 = w2;
  out.radius = t.depth() - t.depth(w);
  out.only_identity = true;
  for (const Portrait& g :
       enumerate_members(ctx.colouring(), ctx.groups(), w, w, out.radius, limit)) {
    ++out.fixing_w;
    if (g.image_or_none(w2) != w2) continue;
    ++out.fixing_both;
    if (!g.is_identity()) out.only_identity = false;
  }
  return out;
}

}  // namespace boxprod
