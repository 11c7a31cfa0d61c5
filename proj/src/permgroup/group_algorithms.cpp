#include "boxprod/group_algorithms.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "boxprod/errors.hpp"

namespace boxprod {

namespace {

void check_point(const PermGroup& G, Point x) {
  if (x >= G.degree())
    throw InputError("point " + std::to_string(x) + " out of range for degree " +
                     std::to_string(G.degree()));
}

}  // namespace

std::vector<Point> orbit(const PermGroup& G, Point x) {
  check_point(G, x);
  std::vector<bool> seen(G.degree(), false);
  std::vector<Point> out{x};
  seen[x] = true;
  for (std::size_t i = 0; i < out.size(); ++i)
    for (const Perm& s : G.generators()) {
      Point y = s.image(out[i]);
      if (!seen[y]) {
        seen[y] = true;
        out.push_back(y);
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

Partition orbits(const PermGroup& G) {
  std::vector<std::size_t> parent(G.degree());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const Perm& s : G.generators())
    for (Point x = 0; x < G.degree(); ++x) {
      std::size_t a = find(x), b = find(s.image(x));
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  std::vector<std::size_t> ids(G.degree());
  for (std::size_t x = 0; x < ids.size(); ++x) ids[x] = find(x);
  return Partition(std::move(ids));
}

PermGroup pointwise_stabiliser(const PermGroup& G, const std::vector<Point>& points) {
  for (Point x : points) check_point(G, x);
  StabChain chain(G.degree(), G.generators(), points);
  if (chain.levels().size() <= points.size()) return PermGroup::trivial(G.degree());
  return PermGroup(G.degree(), chain.levels()[points.size()].generators);
}

PermGroup stabiliser(const PermGroup& G, Point x) { return pointwise_stabiliser(G, {x}); }

std::optional<Perm> transporter(const PermGroup& G, Point x, Point y) {
  check_point(G, x);
  check_point(G, y);
  constexpr std::size_t kUnseen = static_cast<std::size_t>(-1);
  std::vector<std::size_t> via(G.degree(), kUnseen);
  std::vector<Point> from(G.degree(), 0);
  std::vector<Point> queue{x};
  via[x] = G.generators().size();
  for (std::size_t i = 0; i < queue.size() && via[y] == kUnseen; ++i)
    for (std::size_t k = 0; k < G.generators().size(); ++k) {
      Point z = G.generators()[k].image(queue[i]);
      if (via[z] == kUnseen) {
        via[z] = k;
        from[z] = queue[i];
        queue.push_back(z);
      }
    }
  if (via[y] == kUnseen) return std::nullopt;
  Perm g = Perm::identity(G.degree());
  for (Point z = y; z != x; z = from[z]) g = compose(g, G.generators()[via[z]]);
  return g;
}

Perm random_element(const PermGroup& G, std::mt19937_64& rng) {
  Perm g = Perm::identity(G.degree());
  for (const auto& level : G.chain().levels())
    g = compose(g, *level.transversal[level.orbit[rng() % level.orbit.size()]]);
  return g;
}

Partition minimal_block(const PermGroup& G, Point a, Point b) {
  check_point(G, a);
  check_point(G, b);
  if (a == b) throw InputError("minimal_block needs two distinct points");
  if (orbit(G, a).size() != G.degree())
    throw PreconditionError("minimal_block needs a transitive group");
  std::vector<std::size_t> parent(G.degree());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<std::pair<Point, Point>> pending{{a, b}};
  parent[std::max(a, b)] = std::min(a, b);
  while (!pending.empty()) {
    auto [x, y] = pending.back();
    pending.pop_back();
    for (const Perm& s : G.generators()) {
      std::size_t u = find(s.image(x)), v = find(s.image(y));
      if (u == v) continue;
      parent[std::max(u, v)] = std::min(u, v);
      pending.emplace_back(static_cast<Point>(u), static_cast<Point>(v));
    }
  }
  std::vector<std::size_t> ids(G.degree());
  for (std::size_t x = 0; x < ids.size(); ++x) ids[x] = find(x);
  return Partition(std::move(ids));
}

GroupProperties classify(const PermGroup& G) {
  if (G.degree() == 0) throw InputError("cannot classify a group of degree 0");
  GroupProperties p;
  Partition orb = orbits(G);
  Order order = G.order();
  p.transitive = orb.block_count() == 1;
  p.regular = p.transitive && order == G.degree();
  p.semiregular = true;
  for (const auto& block : orb.blocks())
    if (order != block.size()) p.semiregular = false;
  if (p.transitive) {
    p.primitive = true;
    for (Point x = 1; x < G.degree() && p.primitive; ++x)
      if (!minimal_block(G, 0, x).is_universal()) p.primitive = false;
  }
  // Normal closure of the stabilisers of orbit representatives.
  std::vector<Perm> gens;
  for (const auto& block : orb.blocks()) {
    PermGroup stab = stabiliser(G, *block.begin());
    for (const Perm& s : stab.generators())
      if (!s.is_identity()) gens.push_back(s);
  }
  PermGroup closure(G.degree(), gens);
  for (std::size_t i = 0; i < gens.size() && closure.order() != order; ++i)
    for (const Perm& s : G.generators()) {
      Perm conj = s * gens[i] * s.inverse();
      if (closure.contains(conj)) continue;
      gens.push_back(conj);
      closure = PermGroup(G.degree(), gens);
    }
  p.generated_by_point_stabilisers = closure.order() == order;
  return p;
}

std::vector<std::vector<Point>> suborbits(const PermGroup& G, Point x) {
  check_point(G, x);
  std::vector<std::vector<Point>> out;
  for (const auto& block : orbits(stabiliser(G, x)).blocks())
    out.emplace_back(block.begin(), block.end());
  return out;
}

FiniteGraph orbital_graph(const PermGroup& G, Point a, Point b) {
  check_point(G, a);
  check_point(G, b);
  if (a == b) throw InputError("orbital_graph needs two distinct points");
  FiniteGraph graph(G.degree());
  std::vector<std::pair<Point, Point>> queue{{a, b}};
  graph.add_edge(a, b);
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (const Perm& s : G.generators()) {
      Point u = s.image(queue[i].first), v = s.image(queue[i].second);
      if (graph.add_edge(u, v)) queue.emplace_back(u, v);
    }
  return graph;
}

PermGroup wreath_product_action(const PermGroup& M, const PermGroup& N,
                                std::size_t degree_bound) {
  const std::size_t m = M.degree(), n = N.degree();
  std::size_t degree = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (degree > degree_bound / std::max<std::size_t>(m, 1))
      throw ResourceError("product action domain exceeds the configured bound " +
                          std::to_string(degree_bound));
    degree *= m;
  }
  auto digits = [&](std::size_t f) {
    std::vector<std::size_t> d(n);
    for (std::size_t y = 0; y < n; ++y, f /= m) d[y] = f % m;
    return d;
  };
  auto encode = [&](const std::vector<std::size_t>& d) {
    std::size_t f = 0;
    for (std::size_t y = n; y-- > 0;) f = f * m + d[y];
    return f;
  };
  std::vector<Perm> gens;
  for (std::size_t y = 0; y < n; ++y)
    for (const Perm& mu : M.generators()) {
      std::vector<Point> images(degree);
      for (std::size_t f = 0; f < degree; ++f) {
        auto d = digits(f);
        d[y] = mu.image(static_cast<Point>(d[y]));
        images[f] = static_cast<Point>(encode(d));
      }
      gens.emplace_back(std::move(images));
    }
  for (const Perm& nu : N.generators()) {
    std::vector<Point> images(degree);
    for (std::size_t f = 0; f < degree; ++f) {
      auto d = digits(f);
      std::vector<std::size_t> moved(n);
      for (std::size_t y = 0; y < n; ++y) moved[nu.image(static_cast<Point>(y))] = d[y];
      images[f] = static_cast<Point>(encode(moved));
    }
    gens.emplace_back(std::move(images));
  }
  return PermGroup(degree, std::move(gens), degree_bound);
}

}  // namespace boxprod
