#include "boxprod/boxgroup.hpp"
#include "boxprod/errors.hpp"

namespace boxprod {

namespace {

/// Order of the stabiliser of `base` (and of `also`, if given) restricted to
/// B(base, radius): the root choice times the colour stabiliser towards base
/// at every other vertex of B(base, radius - 1).
Order tower_order(const BoxContext& ctx, VertexId base, std::optional<VertexId> also,
                  std::size_t radius) {
  const TruncatedTree& t = ctx.tree();
  const LegalColouring& c = ctx.colouring();
  const LocalGroups& groups = ctx.groups();
  Order order = also ? groups.stabiliser(t.part(base), c.colour(base, *also)).order()
                     : groups.group(t.part(base)).order();
  if (radius == 0) return 1;
  for (VertexId v : t.ball(base, radius - 1)) {
    if (v == base) continue;
    VertexId towards = t.path(v, base)[1];
    order *= groups.stabiliser(t.part(v), c.colour(v, towards)).order();
  }
  return order;
}

std::optional<std::size_t> count_members(const BoxContext& ctx, VertexId base,
                                         std::optional<VertexId> also, std::size_t radius,
                                         std::size_t limit) {
  try {
    std::size_t n = 0;
    for (const Portrait& g : enumerate_members(ctx.colouring(), ctx.groups(), base, base,
                                               radius, limit))
      if (!also || g.image_or_none(*also) == *also) ++n;
    return n;
  } catch (const ResourceError&) {
    return std::nullopt;
  }
}

}  // namespace

AmalgamReport amalgam_structure(const BoxContext& ctx, std::size_t radius, bool count,
                                std::size_t limit) {
  const TruncatedTree& t = ctx.tree();
  if (radius == 0 || radius > t.depth())
    throw DomainError("radius must lie between 1 and the ambient depth");
  const VertexId p = t.p(), q = t.q();
  const LegalColouring& c = ctx.colouring();
  AmalgamReport out;
  out.in_hypothesis = ctx.m_props().transitive && ctx.n_props().transitive;
  out.radius = radius;
  out.vertex_x = tower_order(ctx, p, std::nullopt, radius);
  out.vertex_y = tower_order(ctx, q, std::nullopt, radius);
  out.edge_on_x = tower_order(ctx, p, q, radius);
  out.edge_on_y = tower_order(ctx, q, p, radius);
  out.orbit_x = orbit(ctx.M(), c.colour(p, q)).size();
  out.orbit_y = orbit(ctx.N(), c.colour(q, p)).size();
  out.index_ok = out.vertex_x == out.edge_on_x * out.orbit_x &&
                 out.vertex_y == out.edge_on_y * out.orbit_y;
  if (count) {
    out.counted_vertex_x = count_members(ctx, p, std::nullopt, radius, limit);
    out.counted_vertex_y = count_members(ctx, q, std::nullopt, radius, limit);
    out.counted_edge_on_x = count_members(ctx, p, q, radius, limit);
    out.counted_edge_on_y = count_members(ctx, q, p, radius, limit);
    auto same = [](const std::optional<std::size_t>& n, const Order& expected) {
      return !n || Order(*n) == expected;
    };
    out.counts_match = same(out.counted_vertex_x, out.vertex_x) &&
                       same(out.counted_vertex_y, out.vertex_y) &&
                       same(out.counted_edge_on_x, out.edge_on_x) &&
                       same(out.counted_edge_on_y, out.edge_on_y);
  }
  return out;
}

}  // namespace boxprod
