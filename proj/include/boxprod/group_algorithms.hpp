#pragma once

#include <optional>
#include <random>
#include <vector>

#include "boxprod/finite_graph.hpp"
#include "boxprod/perm_group.hpp"

namespace boxprod {

struct GroupProperties {
  bool transitive = false;
  bool primitive = false;
  bool regular = false;
  bool semiregular = false;
  bool generated_by_point_stabilisers = false;
};

/// Sorted orbit of x.
std::vector<Point> orbit(const PermGroup& G, Point x);
/// Orbit partition of the domain.
Partition orbits(const PermGroup& G);

PermGroup stabiliser(const PermGroup& G, Point x);
/// Pointwise stabiliser of several points.
PermGroup pointwise_stabiliser(const PermGroup& G, const std::vector<Point>& points);

/// Some element of G mapping x to y, if one exists.
std::optional<Perm> transporter(const PermGroup& G, Point x, Point y);

/// Uniform random element, drawn through the stabiliser chain.
Perm random_element(const PermGroup& G, std::mt19937_64& rng);

GroupProperties classify(const PermGroup& G);

/// Finest G-invariant partition with a and b in one block.
Partition minimal_block(const PermGroup& G, Point a, Point b);

/// Orbits of the stabiliser of x, ordered by smallest element.
std::vector<std::vector<Point>> suborbits(const PermGroup& G, Point x);

FiniteGraph orbital_graph(const PermGroup& G, Point a, Point b);

/// M Wr N in product action on functions Y -> X. A function f is encoded as
/// sum_y f(y) * |X|^y.
PermGroup wreath_product_action(const PermGroup& M, const PermGroup& N,
                                std::size_t degree_bound = kDefaultDegreeBound);

}  // namespace boxprod
