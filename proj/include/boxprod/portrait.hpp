#pragma once

#include <json.hpp>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <vector>

#include "boxprod/colouring.hpp"
#include "boxprod/perm_group.hpp"
#include "boxprod/tree.hpp"

namespace boxprod {

/// M acting on the colours of arcs out of X-vertices and N on those out of
/// Y-vertices, with colour stabilisers cached.
class LocalGroups {
 public:
  LocalGroups(PermGroup M, PermGroup N);

  const PermGroup& M() const { return M_; }
  const PermGroup& N() const { return N_; }
  const PermGroup& group(Part part) const { return part == Part::X ? M_ : N_; }
  /// Stabiliser of colour x in the group acting at vertices of `part`.
  const PermGroup& stabiliser(Part part, Colour x) const;
  /// Elements of group(part) sending x to y; empty if none.
  std::vector<Perm> coset(Part part, Colour x, Colour y) const;

 private:
  PermGroup M_, N_;
  std::vector<PermGroup> stab_M_, stab_N_;
};

/// A permutation of X together with one of Y, acting on all colours.
struct ColourPerm {
  Perm on_x;
  Perm on_y;

  static ColourPerm identity(std::size_t m, std::size_t n) {
    return {Perm::identity(m), Perm::identity(n)};
  }
  /// mu on the colours of `part`, identity on the other part.
  static ColourPerm extend(const Perm& mu, Part part, std::size_t m, std::size_t n);
  const Perm& on(Part part) const { return part == Part::X ? on_x : on_y; }
  ColourPerm inverse() const { return {on_x.inverse(), on_y.inverse()}; }
};

/// A partial automorphism of a truncated tree: the restriction of some tree
/// automorphism to a subtree containing `base`. Undefined vertices have no
/// image. Every vertex within distance radius() of base is defined.
class Portrait {
 public:
  static Portrait identity(std::shared_ptr<const TruncatedTree> tree);
  /// Takes ownership of an image table; radius is recomputed.
  Portrait(std::shared_ptr<const TruncatedTree> tree, VertexId base,
           std::vector<VertexId> images);

  const TruncatedTree& tree() const { return *tree_; }
  const std::shared_ptr<const TruncatedTree>& tree_ptr() const { return tree_; }
  VertexId base() const { return base_; }
  VertexId base_image() const { return images_[base_]; }
  std::size_t radius() const { return radius_; }

  bool defined(VertexId v) const { return images_[v] != kNoVertex; }
  /// Throws DomainError outside the domain.
  VertexId evaluate(VertexId v) const;
  VertexId image_or_none(VertexId v) const { return images_[v]; }
  const std::vector<VertexId>& images() const { return images_; }
  std::size_t defined_count() const;

  /// v, all its neighbours and its image have full valency in the domain.
  bool has_local(VertexId v) const;
  /// x -> c_dst(g v, g w) where w is the neighbour of v with c_src(v, w) = x.
  /// Throws DomainError unless has_local(v).
  Perm local_action(VertexId v, const LegalColouring& c_src,
                    const LegalColouring& c_dst) const;
  Perm local_action(VertexId v, const LegalColouring& c) const {
    return local_action(v, c, c);
  }

  /// g fixes every defined vertex.
  bool is_identity() const;
  /// Agree on every vertex where both are defined.
  bool agrees_with(const Portrait& other) const;
  /// Same domain and same images.
  bool operator==(const Portrait& other) const { return images_ == other.images_; }

  nlohmann::json to_json(const LegalColouring* c = nullptr) const;
  static Portrait from_json(std::shared_ptr<const TruncatedTree> tree,
                            const nlohmann::json& j);

 private:
  void compute_radius();

  std::shared_ptr<const TruncatedTree> tree_;
  VertexId base_ = 0;
  std::size_t radius_ = 0;
  std::vector<VertexId> images_;
};

/// g after h, defined where h is defined and g is defined at the image.
/// Throws DomainError if nothing is defined.
Portrait compose(const Portrait& g, const Portrait& h);
Portrait inverse(const Portrait& g);

struct MembershipCheck {
  bool ok = true;
  VertexId vertex = kNoVertex;  ///< first vertex whose local action fails
};

/// Local action lies in M at X-vertices and in N at Y-vertices, checked at
/// every vertex where it is defined.
MembershipCheck check_membership(const Portrait& g, const LocalGroups& groups,
                                 const LegalColouring& c);
inline bool is_member(const Portrait& g, const LocalGroups& groups,
                      const LegalColouring& c) {
  return check_membership(g, groups, c).ok;
}

/// The automorphism with g base = base_image whose local action at each
/// vertex v is local(v) (colours read through c). Throws PreconditionError if
/// a prescribed local action does not send the colour towards base to the
/// colour towards the image of base's side.
Portrait from_local_actions(const LegalColouring& c, VertexId base, VertexId base_image,
                            const std::function<Perm(VertexId)>& local);

/// The unique g with g v = v2 and c = sigma c2 g, as far as the truncation
/// allows. Throws PreconditionError on a part mismatch or if sigma does not
/// carry in_colour(v2) under c2 to in_colour(v) under c.
Portrait from_colour_pair(VertexId v, VertexId v2, const ColourPerm& sigma,
                          const LegalColouring& c, const LegalColouring& c2);

/// Fixes v, and c = mu^ c g where mu^ is mu on v's colours. Its local action is
/// mu^-1 at every vertex of v's part and trivial elsewhere.
Portrait rigid_element(const Perm& mu, VertexId v, const LegalColouring& c);

/// h on the half-tree of a containing a.origin, identity on the other half.
/// Throws PreconditionError unless h fixes both ends of a.
Portrait half_tree_surgery(const Portrait& h, const Arc& a);

/// Nearest vertex of the path to v.
VertexId path_projection(const TruncatedTree& tree, const std::vector<VertexId>& path,
                         VertexId v);

/// One factor per path vertex: the factor for path[i] agrees with g on the
/// vertices projecting to path[i] and fixes everything else.
std::vector<Portrait> path_decompose(const Portrait& g, const std::vector<VertexId>& path);

/// g with c = c2 g, mapping p to the nearest X-vertex whose c2-in-colour is the
/// c-in-colour of p. Throws PreconditionError if no such vertex exists.
Portrait conjugating_element(const LegalColouring& c, const LegalColouring& c2);

/// Conjugate x -> g x g^-1.
Portrait conjugate(const Portrait& g, const Portrait& x);

/// Uniform random member with base -> base_image, choosing each local action
/// uniformly from the admissible coset. Throws PreconditionError if no member
/// maps base to base_image.
Portrait random_member(const LegalColouring& c, const LocalGroups& groups,
                       VertexId base, VertexId base_image, std::mt19937_64& rng);

/// Uniform random member fixing every vertex of a path (path[0] is the base).
Portrait random_path_stabiliser(const LegalColouring& c, const LocalGroups& groups,
                                const std::vector<VertexId>& path, std::mt19937_64& rng);

/// Every distinct restriction to B(base, radius) of members sending base to
/// base_image. Throws ResourceError above `limit` results.
std::vector<Portrait> enumerate_members(const LegalColouring& c, const LocalGroups& groups,
                                        VertexId base, VertexId base_image,
                                        std::size_t radius, std::size_t limit = 200'000);

/// Random automorphism of the truncation fixing p and q: the children of each
/// vertex go to the children of its image in a random order.
Portrait random_automorphism(std::shared_ptr<const TruncatedTree> tree, std::mt19937_64& rng);

/// A legal colouring under which every generator is a member, following the
/// generators' own local structure: the generators fixing p (resp. q) must
/// act on the neighbours of p (resp. q) transitively and permutation
/// isomorphically to M (resp. N). Throws PreconditionError otherwise.
/// Vertices too close to the cut for the construction are coloured by the
/// canonical rule.
LegalColouring recover_colouring(const std::vector<Portrait>& generators, const PermGroup& M,
                                 const PermGroup& N);

}  // namespace boxprod
