#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <tuple>

#include "boxprod/boxgroup.hpp"
#include "boxprod/errors.hpp"

namespace boxprod {

namespace {

Sphere checked_sphere(const BoxContext& ctx, VertexId centre, std::size_t half_distance) {
  const TruncatedTree& t = ctx.tree();
  if (t.part(centre) != Part::Y) throw InputError("suborbits are taken around a Y-vertex");
  if (half_distance == 0) throw InputError("half distance must be positive");
  if (2 * half_distance > ctx.inner_radius())
    throw DomainError("distance " + std::to_string(2 * half_distance) +
                      " exceeds the inner radius " + std::to_string(ctx.inner_radius()));
  Sphere s = t.sphere(centre, 2 * half_distance);
  if (s.clipped)
    throw DomainError("sphere of radius " + std::to_string(2 * half_distance) + " around " +
                      t.address(centre) + " is clipped; raise the ambient depth");
  return s;
}

void collect_sizes(SuborbitTable& table) {
  std::map<std::size_t, std::size_t> count;
  for (std::size_t s : table.vertex_size) ++count[s];
  for (auto it = count.rbegin(); it != count.rend(); ++it) {
    if (it->second % it->first != 0)
      throw PreconditionError("orbit sizes are inconsistent with the sphere");
    table.sizes.insert(table.sizes.end(), it->second / it->first, it->first);
  }
}

}  // namespace

SuborbitTable suborbits_box(const BoxContext& ctx, VertexId centre, std::size_t half_distance) {
  const TruncatedTree& t = ctx.tree();
  const LegalColouring& c = ctx.colouring();
  Sphere sphere = checked_sphere(ctx, centre, half_distance);

  std::map<std::tuple<Part, Colour, Colour>, std::size_t> cache;
  auto step = [&](Part part, std::optional<Colour> fixed, Colour x) {
    auto key = std::make_tuple(part, fixed.value_or(static_cast<Colour>(-1)), x);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    const PermGroup& G = fixed ? ctx.groups().stabiliser(part, *fixed) : ctx.groups().group(part);
    return cache[key] = orbit(G, x).size();
  };

  SuborbitTable table;
  table.centre = centre;
  table.half_distance = half_distance;
  table.sphere = sphere.vertices;
  for (VertexId target : sphere.vertices) {
    std::vector<VertexId> path = t.path(centre, target);
    std::size_t size = step(t.part(path[0]), std::nullopt, c.colour(path[0], path[1]));
    for (std::size_t i = 1; i + 1 < path.size(); ++i)
      size *= step(t.part(path[i]), c.colour(path[i], path[i - 1]), c.colour(path[i], path[i + 1]));
    table.vertex_size.push_back(size);
  }
  collect_sizes(table);
  return table;
}

SuborbitTable suborbits_bruteforce(const BoxContext& ctx, VertexId centre,
                                   std::size_t half_distance, std::size_t limit) {
  Sphere sphere = checked_sphere(ctx, centre, half_distance);
  std::vector<std::ptrdiff_t> index(ctx.tree().vertex_count(), -1);
  for (std::size_t i = 0; i < sphere.vertices.size(); ++i)
    index[sphere.vertices[i]] = static_cast<std::ptrdiff_t>(i);

  std::vector<std::size_t> parent(sphere.vertices.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (const Portrait& g : enumerate_members(ctx.colouring(), ctx.groups(), centre, centre,
                                             2 * half_distance, limit))
    for (std::size_t i = 0; i < sphere.vertices.size(); ++i) {
      std::size_t a = find(i);
      std::size_t b = find(static_cast<std::size_t>(index[g.evaluate(sphere.vertices[i])]));
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }

  SuborbitTable table;
  table.centre = centre;
  table.half_distance = half_distance;
  table.sphere = sphere.vertices;
  std::map<std::size_t, std::size_t> block_size;
  for (std::size_t i = 0; i < parent.size(); ++i) ++block_size[find(i)];
  for (std::size_t i = 0; i < parent.size(); ++i) table.vertex_size.push_back(block_size[find(i)]);
  collect_sizes(table);
  return table;
}

}  // namespace boxprod
