#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace boxprod {

using VertexId = std::uint32_t;
inline constexpr VertexId kNoVertex = static_cast<VertexId>(-1);

enum class Part : std::uint8_t { X, Y };

inline Part other(Part part) { return part == Part::X ? Part::Y : Part::X; }

struct TreeParams {
  std::size_t m = 2;  ///< valency of X-vertices
  std::size_t n = 2;  ///< valency of Y-vertices
  std::size_t depth = 1;
};

struct Arc {
  VertexId origin;
  VertexId terminus;

  Arc reversed() const { return {terminus, origin}; }
  bool operator==(const Arc&) const = default;
};

struct Sphere {
  std::vector<VertexId> vertices;
  /// Some vertices at this distance would lie beyond the truncation.
  bool clipped = false;
};

/// The (m,n)-biregular tree cut at distance `depth` from the root edge {p,q},
/// p an X-vertex and q a Y-vertex. Vertices are stored breadth first, so the
/// children of a vertex are consecutive ids. Slot 0 of every vertex is its
/// neighbour towards the root edge (p and q are each other's slot 0); slots
/// 1.. are its children.
class TruncatedTree {
 public:
  static constexpr std::size_t kDefaultVertexBound = 5'000'000;

  explicit TruncatedTree(TreeParams params,
                         std::size_t vertex_bound = kDefaultVertexBound);

  /// Vertex count of the truncation without building it.
  static std::size_t closed_form_vertex_count(const TreeParams& params);

  const TreeParams& params() const { return params_; }
  std::size_t m() const { return params_.m; }
  std::size_t n() const { return params_.n; }
  std::size_t depth() const { return params_.depth; }
  std::size_t vertex_count() const { return depth_.size(); }
  std::size_t valency(Part part) const { return part == Part::X ? params_.m : params_.n; }

  VertexId p() const { return 0; }
  VertexId q() const { return 1; }

  Part part(VertexId v) const { return part_[v]; }
  std::size_t depth(VertexId v) const { return depth_[v]; }
  bool is_leaf(VertexId v) const { return depth_[v] == params_.depth; }
  /// p or q, whichever v descends from.
  VertexId root_of(VertexId v) const { return root_[v]; }
  /// Slot-0 neighbour.
  VertexId up(VertexId v) const { return up_[v]; }

  std::size_t slot_count(VertexId v) const { return is_leaf(v) ? 1 : valency(part_[v]); }
  VertexId neighbour(VertexId v, std::size_t slot) const;
  /// Slot of w among the neighbours of v, or nullopt if not adjacent.
  std::optional<std::size_t> slot_of(VertexId v, VertexId w) const;
  std::vector<VertexId> neighbours(VertexId v) const;
  std::vector<VertexId> children(VertexId v) const;
  bool adjacent(VertexId u, VertexId v) const { return slot_of(u, v).has_value(); }

  /// Vertices within distance r of the root edge.
  std::vector<VertexId> inner_vertices(std::size_t r) const;

  std::string address(VertexId v) const;
  std::optional<VertexId> find(std::string_view address) const;

  std::size_t distance(VertexId u, VertexId v) const;
  std::vector<VertexId> path(VertexId u, VertexId v) const;

  std::vector<VertexId> ball(VertexId v, std::size_t r) const;
  Sphere sphere(VertexId v, std::size_t r) const;

  /// True if v lies in the half-tree of the arc (x, up(x)), i.e. v is x or a
  /// descendant of x. For x = p this is p's side of the root edge.
  bool in_subtree(VertexId v, VertexId x) const;
  /// Vertices of the component containing a.origin once the edge of a is
  /// deleted.
  std::vector<VertexId> half_tree(const Arc& a) const;
  bool in_half_tree(VertexId v, const Arc& a) const;

  /// Every arc of the truncation, ordered by origin then slot.
  std::vector<Arc> arcs() const;

  std::string to_dot(
      const std::function<std::string(VertexId, VertexId)>& arc_label = {}) const;

 private:
  TreeParams params_;
  std::vector<VertexId> up_;
  std::vector<VertexId> first_child_;
  std::vector<VertexId> root_;
  std::vector<std::uint16_t> depth_;
  std::vector<Part> part_;
};

}  // namespace boxprod
