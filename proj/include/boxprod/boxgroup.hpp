#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "boxprod/colouring.hpp"
#include "boxprod/finite_graph.hpp"
#include "boxprod/group_algorithms.hpp"
#include "boxprod/portrait.hpp"
#include "boxprod/tree.hpp"

namespace boxprod {

/// A truncated tree, a legal colouring on it and the local groups, with the
/// margin that separates certified vertices from the cut.
class BoxContext {
 public:
  /// Canonical colouring unless a seed is given.
  BoxContext(PermGroup M, PermGroup N, std::size_t depth, std::size_t margin,
             std::optional<std::uint64_t> colouring_seed = std::nullopt);
  BoxContext(LegalColouring colouring, LocalGroups groups, std::size_t margin);

  const TruncatedTree& tree() const { return colouring_.tree(); }
  const std::shared_ptr<const TruncatedTree>& tree_ptr() const { return colouring_.tree_ptr(); }
  const LegalColouring& colouring() const { return colouring_; }
  const LocalGroups& groups() const { return groups_; }
  const PermGroup& M() const { return groups_.M(); }
  const PermGroup& N() const { return groups_.N(); }
  const GroupProperties& m_props() const { return m_props_; }
  const GroupProperties& n_props() const { return n_props_; }

  std::size_t depth() const { return tree().depth(); }
  std::size_t margin() const { return margin_; }
  /// Depth of the deepest certified vertex.
  std::size_t inner_radius() const { return depth() - margin_; }
  bool is_inner(VertexId v) const { return tree().depth(v) <= inner_radius(); }
  /// Inner vertices of one part, in id order.
  std::vector<VertexId> inner(Part part) const;

 private:
  LegalColouring colouring_;
  LocalGroups groups_;
  GroupProperties m_props_, n_props_;
  std::size_t margin_;
};

// ---------------------------------------------------------------------------
// Orbits

/// Orbit ids from in-colours: an X-vertex gets the N-orbit of its in-colour,
/// a Y-vertex the M-orbit of its in-colour. X and Y labels are numbered
/// separately.
struct VertexOrbits {
  std::vector<std::size_t> label;
  std::size_t x_orbits = 0;
  std::size_t y_orbits = 0;
};

VertexOrbits vertex_orbits(const LegalColouring& c, const LocalGroups& groups);

/// A member mapping v to v2, or nullopt if they lie in different orbits.
/// Throws PreconditionError if v and v2 lie in different parts.
std::optional<Portrait> same_orbit_with_element(VertexId v, VertexId v2, const LegalColouring& c,
                                                const LocalGroups& groups);

/// Edges are indexed by their deeper endpoint minus one: edge i joins vertex
/// i+1 to its root-ward neighbour, so edge 0 is {p, q}. The label of an edge
/// is (X-endpoint label) * y_orbits + (Y-endpoint label).
std::vector<std::size_t> edge_orbits(const TruncatedTree& tree, const VertexOrbits& orbits);

struct QuotientGraph {
  std::size_t x_orbits = 0;  ///< orbits on V_X, one per N-orbit
  std::size_t y_orbits = 0;  ///< orbits on V_Y, one per M-orbit
  /// Vertices 0..x_orbits-1 are the V_X orbits, the rest the V_Y orbits.
  FiniteGraph graph;
  std::vector<std::string> labels;
};

QuotientGraph quotient_graph(const LocalGroups& groups);

// ---------------------------------------------------------------------------
// Finite approximation

/// Explicit members used as an independent oracle: rigid elements at p, q and
/// their neighbours, one twist per inner vertex and generator of its
/// parent-colour stabiliser (a rigid element at that vertex cut down to its
/// subtree), and, when M and N are both intransitive, colour-preserving
/// translations of p.
struct FiniteApprox {
  std::shared_ptr<const TruncatedTree> tree;
  std::size_t margin = 0;
  std::vector<Portrait> generators;
  std::vector<Portrait> inverses;
  std::vector<std::string> names;

  bool is_inner(VertexId v) const { return tree->depth(v) <= tree->depth() - margin; }
};

FiniteApprox finite_approx(const BoxContext& ctx, std::size_t generator_bound = 50'000);

/// Closure of {v} under the generators and their inverses wherever defined,
/// sorted.
std::vector<VertexId> orbit_bruteforce(const FiniteApprox& approx, VertexId v);
/// Orbits of every vertex of the truncation at once.
Partition vertex_partition_bruteforce(const FiniteApprox& approx);
/// Edge orbits, indexed as in edge_orbits.
Partition edge_partition_bruteforce(const FiniteApprox& approx);

struct CrossCheck {
  bool ok = true;
  std::size_t compared = 0;
  std::string detail;
};

/// Orbit labels against the brute-force partition on inner vertices.
CrossCheck check_vertex_orbits(const BoxContext& ctx, const FiniteApprox& approx);
/// Edge labels against brute-force edge orbits on edges with both ends inner.
CrossCheck check_edge_orbits(const BoxContext& ctx, const FiniteApprox& approx);
/// Quotient counts against the labels observed on the inner ball.
CrossCheck check_quotient(const BoxContext& ctx);

/// The subgroup generated by the generators fixing `base`, restricted to
/// B(base, radius), compared with every member restriction found by
/// exhaustive enumeration.
CrossCheck check_stabiliser_closure(const BoxContext& ctx, const FiniteApprox& approx,
                                    VertexId base, std::size_t radius,
                                    std::size_t limit = 200'000);

// ---------------------------------------------------------------------------
// Suborbits

/// Orbits of the stabiliser of a Y-vertex on the Y-vertices at distance
/// 2 * half_distance.
struct SuborbitTable {
  VertexId centre = kNoVertex;
  std::size_t half_distance = 0;
  std::vector<VertexId> sphere;
  /// Orbit size of each sphere vertex.
  std::vector<std::size_t> vertex_size;
  /// One entry per orbit, descending.
  std::vector<std::size_t> sizes;
};

/// Sizes from local data along paths. Throws DomainError if the sphere is
/// clipped or 2 * half_distance exceeds the inner radius.
SuborbitTable suborbits_box(const BoxContext& ctx, VertexId centre, std::size_t half_distance);
/// Orbits of every enumerated member fixing the centre.
SuborbitTable suborbits_bruteforce(const BoxContext& ctx, VertexId centre,
                                   std::size_t half_distance, std::size_t limit = 200'000);

// ---------------------------------------------------------------------------
// Orbital graphs

/// The undirected orbital graph of {w, w2} (distance two) on Y-vertices of
/// depth at most `radius`.
struct BoxOrbitalGraph {
  VertexId w = kNoVertex, w2 = kNoVertex;
  std::vector<VertexId> vertices;
  /// Position of each tree vertex in `vertices`, or -1.
  std::vector<std::ptrdiff_t> index;
  FiniteGraph graph;
  /// Vertices whose whole distance-two neighbourhood lies in range.
  std::vector<bool> interior;
};

BoxOrbitalGraph orbital_graph_box(const BoxContext& ctx, VertexId w, VertexId w2,
                                  std::size_t radius);

/// Every unordered pair of M-colours in the M-orbit of {a, b}.
std::vector<std::pair<Colour, Colour>> pair_orbit(const PermGroup& G, Colour a, Colour b);

// ---------------------------------------------------------------------------
// Amalgam

struct AmalgamReport {
  bool in_hypothesis = false;
  std::size_t radius = 0;
  Order vertex_x;      ///< G_p on B(p, radius)
  Order vertex_y;      ///< G_q on B(q, radius)
  Order edge_on_x;     ///< G_{p,q} on B(p, radius)
  Order edge_on_y;     ///< G_{p,q} on B(q, radius)
  std::size_t orbit_x = 0;  ///< |M c(p,q)|
  std::size_t orbit_y = 0;  ///< |N c(q,p)|
  bool index_ok = false;
  std::optional<std::size_t> counted_vertex_x, counted_vertex_y, counted_edge_on_x,
      counted_edge_on_y;
  bool counts_match = true;
};

/// Orders of the vertex and edge stabilisers restricted to balls, from the
/// tower of local stabilisers. With `count`, also by exhaustive enumeration
/// (skipped above `limit`).
AmalgamReport amalgam_structure(const BoxContext& ctx, std::size_t radius, bool count,
                                std::size_t limit = 200'000);

}  // namespace boxprod
