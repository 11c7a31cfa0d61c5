#pragma once

#include <cstdint>
#include <functional>
#include <json.hpp>
#include <memory>
#include <string>
#include <vector>

#include "boxprod/perm.hpp"
#include "boxprod/tree.hpp"

namespace boxprod {

using Colour = Point;

struct ColouringCheck {
  bool ok = true;
  /// 1: arcs out of an X-vertex are not a bijection onto X; 2: same for Y;
  /// 3: arcs into a vertex disagree. 0 when ok.
  int condition = 0;
  VertexId vertex = kNoVertex;
  std::string message;
};

/// Arc colouring of a truncated tree. Arcs leaving X-vertices take colours in
/// {0..m-1}, arcs leaving Y-vertices take colours in {0..n-1}. Leaves keep
/// their single arc towards the root edge.
class LegalColouring {
 public:
  /// Parent arcs carry the parent's in-colour; the remaining colours go to the
  /// children in increasing order. c(p,q) = c(q,p) = 0.
  static LegalColouring canonical(std::shared_ptr<const TruncatedTree> tree);
  /// As canonical, but the root colours and the order in which each vertex
  /// hands out its remaining colours are drawn from the seed.
  static LegalColouring random(std::shared_ptr<const TruncatedTree> tree,
                               std::uint64_t seed);

  /// slot_colour(v, s) colours the arc from v to its neighbour in slot s.
  static LegalColouring from_slots(
      std::shared_ptr<const TruncatedTree> tree,
      const std::function<Colour(VertexId, std::size_t)>& slot_colour);

  const TruncatedTree& tree() const { return *tree_; }
  const std::shared_ptr<const TruncatedTree>& tree_ptr() const { return tree_; }

  Colour colour(VertexId v, std::size_t slot) const { return colour_[offset_[v] + slot]; }
  /// c(o, t) for adjacent o, t.
  Colour colour(VertexId origin, VertexId terminus) const;
  Colour colour(const Arc& a) const { return colour(a.origin, a.terminus); }
  /// Colour of the arc from v's root-ward neighbour into v.
  Colour in_colour(VertexId v) const { return in_colour_[v]; }

  /// The neighbour w of v with c(v, w) = x, or kNoVertex if v is a leaf whose
  /// single arc has another colour.
  VertexId neighbour_by_colour(VertexId v, Colour x) const;

  /// Copy with one arc recoloured. The result need not be legal.
  LegalColouring with_colour(VertexId origin, VertexId terminus, Colour x) const;

  ColouringCheck validate() const;

  nlohmann::json to_json() const;
  static LegalColouring from_json(std::shared_ptr<const TruncatedTree> tree,
                                  const nlohmann::json& j);

  bool operator==(const LegalColouring& other) const {
    return tree_->params().m == other.tree_->params().m &&
           tree_->params().n == other.tree_->params().n &&
           tree_->depth() == other.tree_->depth() && colour_ == other.colour_;
  }

 private:
  explicit LegalColouring(std::shared_ptr<const TruncatedTree> tree);
  void refresh();

  std::shared_ptr<const TruncatedTree> tree_;
  std::vector<std::size_t> offset_;
  std::vector<Colour> colour_;
  std::vector<Colour> in_colour_;
  /// For non-leaf v: slot_by_colour_[offset_[v] + x] is the slot coloured x.
  std::vector<std::uint32_t> slot_by_colour_;
};

}  // namespace boxprod
