#include "boxprod/portrait.hpp"

#include <algorithm>

#include "boxprod/errors.hpp"
#include "boxprod/group_algorithms.hpp"

namespace boxprod {

LocalGroups::LocalGroups(PermGroup M, PermGroup N) : M_(std::move(M)), N_(std::move(N)) {
  for (Point x = 0; x < M_.degree(); ++x) stab_M_.push_back(boxprod::stabiliser(M_, x));
  for (Point y = 0; y < N_.degree(); ++y) stab_N_.push_back(boxprod::stabiliser(N_, y));
}

const PermGroup& LocalGroups::stabiliser(Part part, Colour x) const {
  const auto& table = part == Part::X ? stab_M_ : stab_N_;
  if (x >= table.size()) throw InputError("colour out of range");
  return table[x];
}

std::vector<Perm> LocalGroups::coset(Part part, Colour x, Colour y) const {
  auto t = transporter(group(part), x, y);
  if (!t) return {};
  std::vector<Perm> out;
  for (const Perm& s : stabiliser(part, y).elements()) out.push_back(compose(s, *t));
  std::sort(out.begin(), out.end());
  return out;
}

ColourPerm ColourPerm::extend(const Perm& mu, Part part, std::size_t m, std::size_t n) {
  ColourPerm sigma = identity(m, n);
  if (mu.degree() != (part == Part::X ? m : n))
    throw InputError("permutation degree does not match the colour set");
  (part == Part::X ? sigma.on_x : sigma.on_y) = mu;
  return sigma;
}

Portrait Portrait::identity(std::shared_ptr<const TruncatedTree> tree) {
  std::vector<VertexId> images(tree->vertex_count());
  for (VertexId v = 0; v < images.size(); ++v) images[v] = v;
  return Portrait(std::move(tree), 0, std::move(images));
}

Portrait::Portrait(std::shared_ptr<const TruncatedTree> tree, VertexId base,
                   std::vector<VertexId> images)
    : tree_(std::move(tree)), base_(base), images_(std::move(images)) {
  if (!tree_ || images_.size() != tree_->vertex_count())
    throw InputError("image table does not match the tree");
  if (base_ >= images_.size() || images_[base_] == kNoVertex)
    throw DomainError("portrait base is undefined");
  compute_radius();
}

void Portrait::compute_radius() {
  const TruncatedTree& t = *tree_;
  std::size_t r = t.depth() - t.depth(base_);
  for (VertexId v = 0; v < images_.size(); ++v)
    if (images_[v] == kNoVertex) r = std::min(r, t.distance(base_, v) - 1);
  radius_ = r;
}

VertexId Portrait::evaluate(VertexId v) const {
  if (v >= images_.size() || images_[v] == kNoVertex)
    throw DomainError("vertex " + (v < images_.size() ? tree_->address(v) : std::to_string(v)) +
                      " lies outside the portrait's domain; raise the ambient depth");
  return images_[v];
}

std::size_t Portrait::defined_count() const {
  return static_cast<std::size_t>(
      std::count_if(images_.begin(), images_.end(), [](VertexId w) { return w != kNoVertex; }));
}

bool Portrait::has_local(VertexId v) const {
  const TruncatedTree& t = *tree_;
  if (!defined(v) || t.is_leaf(v) || t.is_leaf(images_[v])) return false;
  for (std::size_t s = 0; s < t.slot_count(v); ++s)
    if (!defined(t.neighbour(v, s))) return false;
  return true;
}

Perm Portrait::local_action(VertexId v, const LegalColouring& c_src,
                            const LegalColouring& c_dst) const {
  if (!has_local(v))
    throw DomainError("local action at " + tree_->address(v) + " needs its whole star");
  const TruncatedTree& t = *tree_;
  std::size_t k = t.slot_count(v);
  std::vector<Point> images(k);
  for (Colour x = 0; x < k; ++x) {
    VertexId w = c_src.neighbour_by_colour(v, x);
    images[x] = c_dst.colour(images_[v], images_[w]);
  }
  return Perm(std::move(images));
}

bool Portrait::is_identity() const {
  for (VertexId v = 0; v < images_.size(); ++v)
    if (images_[v] != kNoVertex && images_[v] != v) return false;
  return true;
}

bool Portrait::agrees_with(const Portrait& other) const {
  if (images_.size() != other.images_.size()) return false;
  for (VertexId v = 0; v < images_.size(); ++v)
    if (images_[v] != kNoVertex && other.images_[v] != kNoVertex &&
        images_[v] != other.images_[v])
      return false;
  return true;
}

nlohmann::json Portrait::to_json(const LegalColouring* c) const {
  const TruncatedTree& t = *tree_;
  nlohmann::json images = nlohmann::json::object();
  nlohmann::json locals = nlohmann::json::object();
  for (VertexId v = 0; v < images_.size(); ++v) {
    if (images_[v] == kNoVertex) continue;
    images[t.address(v)] = t.address(images_[v]);
    if (c && has_local(v)) {
      Perm sigma = local_action(v, *c);
      locals[t.address(v)] = std::vector<Point>(sigma.images().begin(), sigma.images().end());
    }
  }
  nlohmann::json j = {{"base", t.address(base_)},
                      {"base_image", t.address(base_image())},
                      {"radius", radius_},
                      {"images", std::move(images)}};
  if (c) j["local"] = std::move(locals);
  return j;
}

Portrait Portrait::from_json(std::shared_ptr<const TruncatedTree> tree,
                             const nlohmann::json& j) {
  auto lookup = [&](const std::string& address) {
    auto v = tree->find(address);
    if (!v) throw InputError("address " + address + " is not in the tree");
    return *v;
  };
  std::vector<VertexId> images(tree->vertex_count(), kNoVertex);
  for (const auto& [from, to] : j.at("images").items())
    images[lookup(from)] = lookup(to.get<std::string>());
  VertexId base = lookup(j.at("base").get<std::string>());
  return Portrait(std::move(tree), base, std::move(images));
}

Portrait compose(const Portrait& g, const Portrait& h) {
  if (&g.tree() != &h.tree()) throw InputError("portraits live on different trees");
  const auto& gi = g.images();
  const auto& hi = h.images();
  std::vector<VertexId> images(hi.size(), kNoVertex);
  VertexId first = kNoVertex;
  for (VertexId v = 0; v < hi.size(); ++v) {
    if (hi[v] == kNoVertex) continue;
    images[v] = gi[hi[v]];
    if (images[v] != kNoVertex && first == kNoVertex) first = v;
  }
  if (first == kNoVertex) throw DomainError("composite has an empty domain");
  VertexId base = images[h.base()] != kNoVertex ? h.base() : first;
  return Portrait(h.tree_ptr(), base, std::move(images));
}

Portrait inverse(const Portrait& g) {
  std::vector<VertexId> images(g.images().size(), kNoVertex);
  for (VertexId v = 0; v < images.size(); ++v)
    if (g.defined(v)) images[g.image_or_none(v)] = v;
  return Portrait(g.tree_ptr(), g.base_image(), std::move(images));
}

MembershipCheck check_membership(const Portrait& g, const LocalGroups& groups,
                                 const LegalColouring& c) {
  const TruncatedTree& t = g.tree();
  for (VertexId v = 0; v < t.vertex_count(); ++v) {
    if (!g.has_local(v)) continue;
    if (!groups.group(t.part(v)).contains(g.local_action(v, c))) return {false, v};
  }
  return {};
}

}  // namespace boxprod
