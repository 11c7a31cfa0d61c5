#include <map>
#include <tuple>

#include "boxprod/errors.hpp"
#include "boxprod/group_algorithms.hpp"
#include "boxprod/portrait.hpp"

namespace boxprod {

namespace {

/// Breadth-first extension from base. choose(v, gv, from, gfrom) gives the
/// local action at v, where `from` is v's neighbour towards base (kNoVertex at
/// base) and gfrom its image. The neighbour of v coloured x under c_src goes
/// to the neighbour of gv coloured choose(...)(x) under c_dst.
template <class Choose>
Portrait extend_by_locals(const LegalColouring& c_src, const LegalColouring& c_dst,
                          VertexId base, VertexId base_image, Choose&& choose) {
  const TruncatedTree& t = c_src.tree();
  if (&t != &c_dst.tree()) throw InputError("colourings live on different trees");
  if (t.part(base) != t.part(base_image))
    throw PreconditionError("base and its image lie in different parts");
  std::vector<VertexId> images(t.vertex_count(), kNoVertex);
  std::vector<VertexId> from(t.vertex_count(), kNoVertex);
  std::vector<VertexId> queue{base};
  images[base] = base_image;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    VertexId v = queue[i];
    VertexId gv = images[v];
    Perm sigma = choose(v, gv, from[v], from[v] == kNoVertex ? kNoVertex : images[from[v]]);
    for (std::size_t s = 0; s < t.slot_count(v); ++s) {
      VertexId w = t.neighbour(v, s);
      VertexId target = c_dst.neighbour_by_colour(gv, sigma.image(c_src.colour(v, s)));
      if (w == from[v]) {
        if (target != images[w])
          throw PreconditionError("local action at " + t.address(v) +
                                  " does not return towards the image of " + t.address(w));
        continue;
      }
      if (target == kNoVertex) continue;
      images[w] = target;
      from[w] = v;
      queue.push_back(w);
    }
  }
  return Portrait(c_src.tree_ptr(), base, std::move(images));
}

}  // namespace

Portrait from_local_actions(const LegalColouring& c, VertexId base, VertexId base_image,
                            const std::function<Perm(VertexId)>& local) {
  return extend_by_locals(c, c, base, base_image,
                          [&](VertexId v, VertexId, VertexId, VertexId) { return local(v); });
}

Portrait from_colour_pair(VertexId v, VertexId v2, const ColourPerm& sigma,
                          const LegalColouring& c, const LegalColouring& c2) {
  const TruncatedTree& t = c.tree();
  if (t.part(v) != t.part(v2))
    throw PreconditionError("colour-pair construction needs an even distance");
  Part in_part = other(t.part(v));
  if (sigma.on(in_part).image(c2.in_colour(v2)) != c.in_colour(v))
    throw PreconditionError("colour permutation does not match the in-colours at " +
                            t.address(v) + " and " + t.address(v2));
  ColourPerm back = sigma.inverse();
  return extend_by_locals(c, c2, v, v2, [&](VertexId u, VertexId, VertexId, VertexId) {
    return back.on(t.part(u));
  });
}

Portrait rigid_element(const Perm& mu, VertexId v, const LegalColouring& c) {
  const TruncatedTree& t = c.tree();
  if (mu.degree() != t.valency(t.part(v)))
    throw PreconditionError("permutation degree does not match the part of " + t.address(v));
  return from_colour_pair(v, v, ColourPerm::extend(mu, t.part(v), t.m(), t.n()), c, c);
}

Portrait half_tree_surgery(const Portrait& h, const Arc& a) {
  const TruncatedTree& t = h.tree();
  if (!t.adjacent(a.origin, a.terminus)) throw InputError("arc endpoints are not adjacent");
  if (h.image_or_none(a.origin) != a.origin || h.image_or_none(a.terminus) != a.terminus)
    throw PreconditionError("surgery needs an element fixing both ends of the arc");
  std::vector<VertexId> images(t.vertex_count());
  for (VertexId v = 0; v < t.vertex_count(); ++v)
    images[v] = t.in_half_tree(v, a) ? h.image_or_none(v) : v;
  return Portrait(h.tree_ptr(), a.origin, std::move(images));
}

VertexId path_projection(const TruncatedTree& tree, const std::vector<VertexId>& path,
                         VertexId v) {
  if (path.empty()) throw InputError("empty path");
  VertexId best = path.front();
  std::size_t best_distance = tree.distance(v, best);
  for (VertexId u : path) {
    std::size_t d = tree.distance(v, u);
    if (d < best_distance) best = u, best_distance = d;
  }
  return best;
}

std::vector<Portrait> path_decompose(const Portrait& g, const std::vector<VertexId>& path) {
  const TruncatedTree& t = g.tree();
  if (path.empty()) throw InputError("empty path");
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (g.image_or_none(path[i]) != path[i])
      throw PreconditionError("element does not fix " + t.address(path[i]));
    if (i > 0 && !t.adjacent(path[i - 1], path[i]))
      throw InputError("consecutive path vertices are not adjacent");
  }
  std::vector<Portrait> factors;
  for (std::size_t i = 0; i < path.size(); ++i) {
    Portrait factor = g;
    if (i > 0) factor = half_tree_surgery(factor, {path[i], path[i - 1]});
    if (i + 1 < path.size()) factor = half_tree_surgery(factor, {path[i], path[i + 1]});
    factors.push_back(std::move(factor));
  }
  return factors;
}

Portrait conjugating_element(const LegalColouring& c, const LegalColouring& c2) {
  const TruncatedTree& t = c.tree();
  if (&t != &c2.tree()) throw InputError("colourings live on different trees");
  VertexId p = t.p();
  for (VertexId v : t.ball(p, t.depth())) {
    if (t.part(v) == Part::X && c2.in_colour(v) == c.in_colour(p))
      return from_colour_pair(p, v, ColourPerm::identity(t.m(), t.n()), c, c2);
  }
  throw PreconditionError("no X-vertex carries the in-colour of p under the second colouring");
}

Portrait conjugate(const Portrait& g, const Portrait& x) {
  return compose(g, compose(x, inverse(g)));
}

Portrait random_member(const LegalColouring& c, const LocalGroups& groups, VertexId base,
                       VertexId base_image, std::mt19937_64& rng) {
  const TruncatedTree& t = c.tree();
  return extend_by_locals(c, c, base, base_image,
                          [&](VertexId v, VertexId gv, VertexId from, VertexId gfrom) {
    const Part part = t.part(v);
    if (from == kNoVertex) return random_element(groups.group(part), rng);
    Colour x = c.colour(v, from);
    Colour y = c.colour(gv, gfrom);
    auto tr = transporter(groups.group(part), x, y);
    if (!tr)
      throw PreconditionError("no member maps " + t.address(base) + " to " +
                              t.address(base_image));
    return compose(random_element(groups.stabiliser(part, y), rng), *tr);
  });
}

Portrait random_path_stabiliser(const LegalColouring& c, const LocalGroups& groups,
                                const std::vector<VertexId>& path, std::mt19937_64& rng) {
  const TruncatedTree& t = c.tree();
  if (path.empty()) throw InputError("empty path");
  std::vector<std::vector<Colour>> fixed(t.vertex_count());
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i > 0 && !t.adjacent(path[i - 1], path[i]))
      throw InputError("consecutive path vertices are not adjacent");
    if (i > 0) fixed[path[i]].push_back(c.colour(path[i], path[i - 1]));
    if (i + 1 < path.size()) fixed[path[i]].push_back(c.colour(path[i], path[i + 1]));
  }
  std::vector<bool> on_path(t.vertex_count(), false);
  for (VertexId v : path) on_path[v] = true;
  return extend_by_locals(c, c, path.front(), path.front(),
                          [&](VertexId v, VertexId gv, VertexId from, VertexId gfrom) {
    const Part part = t.part(v);
    if (on_path[v])
      return random_element(pointwise_stabiliser(groups.group(part), fixed[v]), rng);
    Colour x = c.colour(v, from);
    Colour y = c.colour(gv, gfrom);
    return compose(random_element(groups.stabiliser(part, y), rng),
                   *transporter(groups.group(part), x, y));
  });
}

std::vector<Portrait> enumerate_members(const LegalColouring& c, const LocalGroups& groups,
                                        VertexId base, VertexId base_image,
                                        std::size_t radius, std::size_t limit) {
  const TruncatedTree& t = c.tree();
  if (t.part(base) != t.part(base_image))
    throw PreconditionError("base and its image lie in different parts");
  if (t.depth(base) + radius > t.depth() || t.depth(base_image) + radius > t.depth())
    throw DomainError("ball of radius " + std::to_string(radius) +
                      " does not fit in the truncation");
  std::vector<VertexId> order = t.ball(base, radius == 0 ? 0 : radius - 1);
  std::vector<VertexId> from(t.vertex_count(), kNoVertex);
  for (VertexId v : order)
    for (std::size_t s = 0; s < t.slot_count(v); ++s) {
      VertexId w = t.neighbour(v, s);
      if (w != from[v] && w != base) from[w] = v;
    }

  std::map<std::tuple<Part, Colour, Colour>, std::vector<Perm>> cosets;
  auto admissible = [&](Part part, Colour x, Colour y) -> const std::vector<Perm>& {
    auto key = std::make_tuple(part, x, y);
    auto it = cosets.find(key);
    if (it == cosets.end()) it = cosets.emplace(key, groups.coset(part, x, y)).first;
    return it->second;
  };
  const std::vector<Perm> whole_M = groups.M().elements(limit);
  const std::vector<Perm> whole_N = groups.N().elements(limit);

  std::vector<VertexId> images(t.vertex_count(), kNoVertex);
  images[base] = base_image;
  std::vector<Portrait> out;
  std::function<void(std::size_t)> recurse = [&](std::size_t i) {
    if (radius == 0 || i == order.size()) {
      if (out.size() >= limit)
        throw ResourceError("member enumeration exceeds " + std::to_string(limit));
      out.emplace_back(c.tree_ptr(), base, images);
      return;
    }
    VertexId v = order[i];
    VertexId gv = images[v];
    Part part = t.part(v);
    const std::vector<Perm>* choices;
    if (v == base) {
      choices = part == Part::X ? &whole_M : &whole_N;
    } else {
      choices = &admissible(part, c.colour(v, from[v]), c.colour(gv, images[from[v]]));
    }
    for (const Perm& sigma : *choices) {
      for (std::size_t s = 0; s < t.slot_count(v); ++s) {
        VertexId w = t.neighbour(v, s);
        if (v != base && w == from[v]) continue;
        images[w] = c.neighbour_by_colour(gv, sigma.image(c.colour(v, s)));
      }
      recurse(i + 1);
    }
    for (std::size_t s = 0; s < t.slot_count(v); ++s) {
      VertexId w = t.neighbour(v, s);
      if (v == base || w != from[v]) images[w] = kNoVertex;
    }
  };
  recurse(0);
  return out;
}

}  // namespace boxprod
