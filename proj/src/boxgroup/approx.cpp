#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "boxprod/boxgroup.hpp"
#include "boxprod/errors.hpp"

namespace boxprod {

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a), b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }
  Partition partition() {
    std::vector<std::size_t> ids(parent_.size());
    for (std::size_t x = 0; x < ids.size(); ++x) ids[x] = find(x);
    return Partition(std::move(ids));
  }

 private:
  std::vector<std::size_t> parent_;
};

/// Index of the edge {a, b} as in edge_orbits.
std::size_t edge_index(const TruncatedTree& t, VertexId a, VertexId b) {
  return (t.up(a) == b && a != t.p() ? a : b) - 1;
}

/// Labels and brute-force blocks must determine each other.
CrossCheck compare_labellings(const std::vector<std::size_t>& items,
                              const std::function<std::size_t(std::size_t)>& label,
                              const std::function<std::size_t(std::size_t)>& block,
                              const std::function<std::string(std::size_t)>& name) {
  CrossCheck out;
  std::map<std::size_t, std::size_t> block_of_label, label_of_block;
  std::map<std::size_t, std::size_t> witness_of_label, witness_of_block;
  for (std::size_t i : items) {
    ++out.compared;
    std::size_t l = label(i), b = block(i);
    auto [it, fresh] = block_of_label.emplace(l, b);
    witness_of_label.emplace(l, i);
    if (!fresh && it->second != b) {
      out.ok = false;
      out.detail = name(i) + " and " + name(witness_of_label[l]) +
                   " share a label but the oracle separates them";
      return out;
    }
    auto [jt, fresh2] = label_of_block.emplace(b, l);
    witness_of_block.emplace(b, i);
    if (!fresh2 && jt->second != l) {
      out.ok = false;
      out.detail = name(i) + " and " + name(witness_of_block[b]) +
                   " have different labels but the oracle joins them";
      return out;
    }
  }
  return out;
}

}  // namespace

FiniteApprox finite_approx(const BoxContext& ctx, std::size_t generator_bound) {
  const TruncatedTree& t = ctx.tree();
  const LegalColouring& c = ctx.colouring();
  FiniteApprox out;
  out.tree = ctx.tree_ptr();
  out.margin = ctx.margin();
  auto add = [&](Portrait g, std::string name) {
    if (out.generators.size() >= generator_bound)
      throw ResourceError("finite approximation exceeds " + std::to_string(generator_bound) +
                          " generators");
    out.inverses.push_back(inverse(g));
    out.generators.push_back(std::move(g));
    out.names.push_back(std::move(name));
  };

  std::set<VertexId> centres{t.p(), t.q()};
  for (VertexId r : {t.p(), t.q()})
    for (VertexId w : t.neighbours(r)) centres.insert(w);
  for (VertexId v : centres) {
    if (t.is_leaf(v)) continue;
    for (const Perm& mu : ctx.groups().group(t.part(v)).generators())
      if (!mu.is_identity())
        add(rigid_element(mu, v, c), "rigid " + t.address(v) + " " + to_cycle_string(mu));
  }

  for (VertexId v : t.inner_vertices(ctx.inner_radius())) {
    if (t.is_leaf(v)) continue;
    const Part part = t.part(v);
    const PermGroup& stab = ctx.groups().stabiliser(part, c.colour(v, std::size_t{0}));
    for (const Perm& s : stab.generators()) {
      if (s.is_identity()) continue;
      add(half_tree_surgery(rigid_element(s.inverse(), v, c), {v, t.up(v)}),
          "twist " + t.address(v) + " " + to_cycle_string(s));
    }
  }

  if (!ctx.m_props().transitive && !ctx.n_props().transitive) {
    for (VertexId u : t.ball(t.p(), 6)) {
      if (u == t.p() || t.part(u) != Part::X || !ctx.is_inner(u)) continue;
      if (c.in_colour(u) != c.in_colour(t.p())) continue;
      add(from_colour_pair(t.p(), u, ColourPerm::identity(t.m(), t.n()), c, c),
          "translate p to " + t.address(u));
    }
  }
  return out;
}

std::vector<VertexId> orbit_bruteforce(const FiniteApprox& approx, VertexId v) {
  std::vector<bool> seen(approx.tree->vertex_count(), false);
  std::vector<VertexId> out{v};
  seen[v] = true;
  for (std::size_t i = 0; i < out.size(); ++i)
    for (const auto* list : {&approx.generators, &approx.inverses})
      for (const Portrait& g : *list) {
        VertexId w = g.image_or_none(out[i]);
        if (w == kNoVertex || seen[w]) continue;
        seen[w] = true;
        out.push_back(w);
      }
  std::sort(out.begin(), out.end());
  return out;
}

Partition vertex_partition_bruteforce(const FiniteApprox& approx) {
  UnionFind uf(approx.tree->vertex_count());
  for (const Portrait& g : approx.generators)
    for (VertexId v = 0; v < approx.tree->vertex_count(); ++v)
      if (g.defined(v)) uf.unite(v, g.image_or_none(v));
  return uf.partition();
}

Partition edge_partition_bruteforce(const FiniteApprox& approx) {
  const TruncatedTree& t = *approx.tree;
  UnionFind uf(t.vertex_count() - 1);
  for (const Portrait& g : approx.generators)
    for (VertexId v = 1; v < t.vertex_count(); ++v) {
      VertexId a = g.image_or_none(v), b = g.image_or_none(t.up(v));
      if (a == kNoVertex || b == kNoVertex) continue;
      uf.unite(v - 1, edge_index(t, a, b));
    }
  return uf.partition();
}

CrossCheck check_vertex_orbits(const BoxContext& ctx, const FiniteApprox& approx) {
  const TruncatedTree& t = ctx.tree();
  VertexOrbits labels = vertex_orbits(ctx.colouring(), ctx.groups());
  Partition brute = vertex_partition_bruteforce(approx);
  std::vector<std::size_t> items;
  for (VertexId v : t.inner_vertices(ctx.inner_radius())) items.push_back(v);
  return compare_labellings(
      items,
      [&](std::size_t v) {
        return labels.label[v] * 2 + (t.part(static_cast<VertexId>(v)) == Part::X ? 0 : 1);
      },
      [&](std::size_t v) { return brute.block_of(v); },
      [&](std::size_t v) { return t.address(static_cast<VertexId>(v)); });
}

CrossCheck check_edge_orbits(const BoxContext& ctx, const FiniteApprox& approx) {
  const TruncatedTree& t = ctx.tree();
  VertexOrbits labels = vertex_orbits(ctx.colouring(), ctx.groups());
  std::vector<std::size_t> edge_labels = edge_orbits(t, labels);
  Partition brute = edge_partition_bruteforce(approx);
  std::vector<std::size_t> items;
  for (VertexId v : t.inner_vertices(ctx.inner_radius()))
    if (v != t.p()) items.push_back(v - 1);
  return compare_labellings(
      items, [&](std::size_t e) { return edge_labels[e]; },
      [&](std::size_t e) { return brute.block_of(e); },
      [&](std::size_t e) {
        VertexId v = static_cast<VertexId>(e + 1);
        return "{" + t.address(v) + ", " + t.address(t.up(v)) + "}";
      });
}

CrossCheck check_quotient(const BoxContext& ctx) {
  const TruncatedTree& t = ctx.tree();
  QuotientGraph quotient = quotient_graph(ctx.groups());
  VertexOrbits labels = vertex_orbits(ctx.colouring(), ctx.groups());
  std::vector<std::size_t> edge_labels = edge_orbits(t, labels);
  std::set<std::size_t> x_seen, y_seen, e_seen;
  CrossCheck out;
  for (VertexId v : t.inner_vertices(ctx.inner_radius())) {
    ++out.compared;
    (t.part(v) == Part::X ? x_seen : y_seen).insert(labels.label[v]);
    if (v != t.p()) e_seen.insert(edge_labels[v - 1]);
  }
  const std::size_t m = quotient.y_orbits, n = quotient.x_orbits;
  if (x_seen.size() != n || y_seen.size() != m) {
    out.ok = false;
    out.detail = "observed " + std::to_string(x_seen.size()) + " X-orbits and " +
                 std::to_string(y_seen.size()) + " Y-orbits";
  } else if (e_seen.size() != m * n || quotient.graph.edge_count() != m * n) {
    out.ok = false;
    out.detail = "observed " + std::to_string(e_seen.size()) + " edge orbits, expected " +
                 std::to_string(m * n);
  }
  return out;
}

CrossCheck check_stabiliser_closure(const BoxContext& ctx, const FiniteApprox& approx,
                                    VertexId base, std::size_t radius, std::size_t limit) {
  const TruncatedTree& t = ctx.tree();
  std::vector<VertexId> ball = t.ball(base, radius);
  std::vector<std::vector<VertexId>> moves;
  for (const Portrait& g : approx.generators) {
    if (g.image_or_none(base) != base) continue;
    std::vector<VertexId> images;
    for (VertexId v : ball) images.push_back(g.image_or_none(v));
    if (std::find(images.begin(), images.end(), kNoVertex) != images.end())
      throw DomainError("generator " + std::to_string(moves.size()) +
                        " is undefined on the ball");
    std::vector<VertexId> table(t.vertex_count(), kNoVertex);
    for (std::size_t i = 0; i < ball.size(); ++i) table[ball[i]] = images[i];
    moves.push_back(std::move(table));
  }
  std::set<std::vector<VertexId>> closure{ball};
  std::vector<std::vector<VertexId>> queue{ball};
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (const auto& g : moves) {
      std::vector<VertexId> next(queue[i].size());
      for (std::size_t j = 0; j < next.size(); ++j) next[j] = g[queue[i][j]];
      if (closure.insert(next).second) {
        if (closure.size() > limit)
          throw ResourceError("stabiliser closure exceeds " + std::to_string(limit));
        queue.push_back(std::move(next));
      }
    }

  std::set<std::vector<VertexId>> enumerated;
  for (const Portrait& g : enumerate_members(ctx.colouring(), ctx.groups(), base, base, radius,
                                             limit)) {
    std::vector<VertexId> images;
    for (VertexId v : ball) images.push_back(g.image_or_none(v));
    enumerated.insert(std::move(images));
  }
  CrossCheck out;
  out.compared = enumerated.size();
  if (closure != enumerated) {
    out.ok = false;
    out.detail = "generated " + std::to_string(closure.size()) + " restrictions, enumerated " +
                 std::to_string(enumerated.size());
  }
  return out;
}

}  // namespace boxprod
