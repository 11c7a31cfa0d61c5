#include <algorithm>
#include <set>

#include "boxprod/boxgroup.hpp"
#include "boxprod/errors.hpp"

namespace boxprod {

VertexOrbits vertex_orbits(const LegalColouring& c, const LocalGroups& groups) {
  const TruncatedTree& t = c.tree();
  Partition m_orbits = orbits(groups.M());
  Partition n_orbits = orbits(groups.N());
  VertexOrbits out;
  out.x_orbits = n_orbits.block_count();
  out.y_orbits = m_orbits.block_count();
  out.label.resize(t.vertex_count());
  for (VertexId v = 0; v < t.vertex_count(); ++v) {
    const Partition& by = t.part(v) == Part::X ? n_orbits : m_orbits;
    out.label[v] = by.block_of(c.in_colour(v));
  }
  return out;
}

std::optional<Portrait> same_orbit_with_element(VertexId v, VertexId v2, const LegalColouring& c,
                                                const LocalGroups& groups) {
  const TruncatedTree& t = c.tree();
  if (t.part(v) != t.part(v2))
    throw PreconditionError(t.address(v) + " and " + t.address(v2) + " lie in different parts");
  Part in_part = other(t.part(v));
  auto tau = transporter(groups.group(in_part), c.in_colour(v2), c.in_colour(v));
  if (!tau) return std::nullopt;
  return from_colour_pair(v, v2, ColourPerm::extend(*tau, in_part, t.m(), t.n()), c, c);
}

std::vector<std::size_t> edge_orbits(const TruncatedTree& tree, const VertexOrbits& orbits) {
  std::vector<std::size_t> out;
  out.reserve(tree.vertex_count() - 1);
  for (VertexId v = 1; v < tree.vertex_count(); ++v) {
    VertexId u = tree.up(v);
    VertexId x = tree.part(v) == Part::X ? v : u;
    VertexId y = tree.part(v) == Part::X ? u : v;
    out.push_back(orbits.label[x] * orbits.y_orbits + orbits.label[y]);
  }
  return out;
}

QuotientGraph quotient_graph(const LocalGroups& groups) {
  QuotientGraph out;
  out.x_orbits = orbits(groups.N()).block_count();
  out.y_orbits = orbits(groups.M()).block_count();
  out.graph = FiniteGraph(out.x_orbits + out.y_orbits);
  for (std::size_t i = 0; i < out.x_orbits; ++i) {
    out.labels.push_back("X" + std::to_string(i));
    for (std::size_t j = 0; j < out.y_orbits; ++j) out.graph.add_edge(i, out.x_orbits + j);
  }
  for (std::size_t j = 0; j < out.y_orbits; ++j) out.labels.push_back("Y" + std::to_string(j));
  return out;
}

std::vector<std::pair<Colour, Colour>> pair_orbit(const PermGroup& G, Colour a, Colour b) {
  if (a == b) throw InputError("pair_orbit needs two distinct colours");
  auto norm = [](Colour x, Colour y) { return std::make_pair(std::min(x, y), std::max(x, y)); };
  std::set<std::pair<Colour, Colour>> seen{norm(a, b)};
  std::vector<std::pair<Colour, Colour>> queue{norm(a, b)};
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (const Perm& s : G.generators()) {
      auto next = norm(s.image(queue[i].first), s.image(queue[i].second));
      if (seen.insert(next).second) queue.push_back(next);
    }
  return {seen.begin(), seen.end()};
}

BoxOrbitalGraph orbital_graph_box(const BoxContext& ctx, VertexId w, VertexId w2,
                                  std::size_t radius) {
  const TruncatedTree& t = ctx.tree();
  const LegalColouring& c = ctx.colouring();
  if (t.part(w) != Part::Y || t.part(w2) != Part::Y || t.distance(w, w2) != 2)
    throw InputError("orbital graph needs two Y-vertices at distance two");
  radius = std::min(radius, t.depth());
  const VertexId v = t.path(w, w2)[1];
  VertexOrbits labels = vertex_orbits(c, ctx.groups());
  auto pairs = pair_orbit(ctx.M(), c.colour(v, w), c.colour(v, w2));
  std::set<std::pair<Colour, Colour>> allowed(pairs.begin(), pairs.end());

  BoxOrbitalGraph out;
  out.w = w;
  out.w2 = w2;
  out.index.assign(t.vertex_count(), -1);
  for (VertexId y = 0; y < t.vertex_count() && t.depth(y) <= radius; ++y) {
    if (t.part(y) != Part::Y) continue;
    out.index[y] = static_cast<std::ptrdiff_t>(out.vertices.size());
    out.vertices.push_back(y);
    out.interior.push_back(t.depth(y) + 2 <= radius);
  }
  out.graph = FiniteGraph(out.vertices.size());
  for (VertexId u = 0; u < t.vertex_count() && t.depth(u) + 1 <= radius; ++u) {
    if (t.part(u) != Part::X || labels.label[u] != labels.label[v]) continue;
    for (std::size_t s1 = 0; s1 < t.slot_count(u); ++s1)
      for (std::size_t s2 = s1 + 1; s2 < t.slot_count(u); ++s2) {
        Colour a = c.colour(u, s1), b = c.colour(u, s2);
        if (!allowed.count({std::min(a, b), std::max(a, b)})) continue;
        out.graph.add_edge(static_cast<std::size_t>(out.index[t.neighbour(u, s1)]),
                           static_cast<std::size_t>(out.index[t.neighbour(u, s2)]));
      }
  }
  return out;
}

}  // namespace boxprod
