#include "boxprod/colouring.hpp"

#include <random>

#include "boxprod/errors.hpp"

namespace boxprod {

namespace {

constexpr std::uint32_t kNoSlot = static_cast<std::uint32_t>(-1);

template <class Shuffle>
void assign_breadth_first(const TruncatedTree& tree, std::vector<Colour>& colour,
                          const std::vector<std::size_t>& offset, Colour root_p,
                          Colour root_q, Shuffle&& shuffle) {
  std::vector<Colour> in(tree.vertex_count());
  for (VertexId v = 0; v < tree.vertex_count(); ++v) {
    Colour forced;
    if (v == tree.p()) forced = root_q;  // c(p, q) = in(q)
    else if (v == tree.q()) forced = root_p;  // c(q, p) = in(p)
    else forced = in[tree.up(v)];
    colour[offset[v]] = forced;
    if (v == tree.p()) in[tree.q()] = forced;
    if (v == tree.q()) in[tree.p()] = forced;
    if (tree.is_leaf(v)) continue;
    std::vector<Colour> rest;
    for (Colour x = 0; x < tree.valency(tree.part(v)); ++x)
      if (x != forced) rest.push_back(x);
    shuffle(rest);
    for (std::size_t s = 1; s < tree.slot_count(v); ++s) {
      colour[offset[v] + s] = rest[s - 1];
      in[tree.neighbour(v, s)] = rest[s - 1];
    }
  }
}

}  // namespace

LegalColouring::LegalColouring(std::shared_ptr<const TruncatedTree> tree)
    : tree_(std::move(tree)) {
  if (!tree_) throw InputError("colouring needs a tree");
  offset_.resize(tree_->vertex_count() + 1);
  std::size_t total = 0;
  for (VertexId v = 0; v < tree_->vertex_count(); ++v) {
    offset_[v] = total;
    total += tree_->slot_count(v);
  }
  offset_[tree_->vertex_count()] = total;
  colour_.assign(total, 0);
}

void LegalColouring::refresh() {
  const TruncatedTree& t = *tree_;
  in_colour_.resize(t.vertex_count());
  slot_by_colour_.assign(colour_.size(), kNoSlot);
  for (VertexId v = 0; v < t.vertex_count(); ++v) {
    VertexId u = t.up(v);
    in_colour_[v] = colour_[offset_[u] + *t.slot_of(u, v)];
    if (t.is_leaf(v)) continue;
    for (std::size_t s = 0; s < t.slot_count(v); ++s) {
      Colour x = colour_[offset_[v] + s];
      if (x < t.slot_count(v)) slot_by_colour_[offset_[v] + x] = static_cast<std::uint32_t>(s);
    }
  }
}

LegalColouring LegalColouring::canonical(std::shared_ptr<const TruncatedTree> tree) {
  LegalColouring c(std::move(tree));
  assign_breadth_first(*c.tree_, c.colour_, c.offset_, 0, 0, [](std::vector<Colour>&) {});
  c.refresh();
  return c;
}

LegalColouring LegalColouring::random(std::shared_ptr<const TruncatedTree> tree,
                                      std::uint64_t seed) {
  LegalColouring c(std::move(tree));
  std::mt19937_64 rng(seed);
  // Fisher-Yates; std::shuffle output differs between standard libraries.
  auto shuffle = [&rng](std::vector<Colour>& xs) {
    for (std::size_t i = xs.size(); i > 1; --i) std::swap(xs[i - 1], xs[rng() % i]);
  };
  Colour root_p = static_cast<Colour>(rng() % c.tree_->n());
  Colour root_q = static_cast<Colour>(rng() % c.tree_->m());
  assign_breadth_first(*c.tree_, c.colour_, c.offset_, root_p, root_q, shuffle);
  c.refresh();
  return c;
}

LegalColouring LegalColouring::from_slots(
    std::shared_ptr<const TruncatedTree> tree,
    const std::function<Colour(VertexId, std::size_t)>& slot_colour) {
  LegalColouring c(std::move(tree));
  for (VertexId v = 0; v < c.tree_->vertex_count(); ++v)
    for (std::size_t s = 0; s < c.tree_->slot_count(v); ++s)
      c.colour_[c.offset_[v] + s] = slot_colour(v, s);
  c.refresh();
  return c;
}

Colour LegalColouring::colour(VertexId origin, VertexId terminus) const {
  auto slot = tree_->slot_of(origin, terminus);
  if (!slot) throw InputError("vertices " + tree_->address(origin) + " and " +
                              tree_->address(terminus) + " are not adjacent");
  return colour_[offset_[origin] + *slot];
}

VertexId LegalColouring::neighbour_by_colour(VertexId v, Colour x) const {
  if (tree_->is_leaf(v)) return colour_[offset_[v]] == x ? tree_->up(v) : kNoVertex;
  if (x >= tree_->slot_count(v)) throw InputError("colour out of range");
  std::uint32_t s = slot_by_colour_[offset_[v] + x];
  return s == kNoSlot ? kNoVertex : tree_->neighbour(v, s);
}

LegalColouring LegalColouring::with_colour(VertexId origin, VertexId terminus,
                                           Colour x) const {
  LegalColouring c = *this;
  auto slot = tree_->slot_of(origin, terminus);
  if (!slot) throw InputError("arc endpoints are not adjacent");
  c.colour_[offset_[origin] + *slot] = x;
  c.refresh();
  return c;
}

ColouringCheck LegalColouring::validate() const {
  const TruncatedTree& t = *tree_;
  auto fail = [&](int condition, VertexId v, std::string why) {
    return ColouringCheck{false, condition, v, t.address(v) + ": " + why};
  };
  for (VertexId v = 0; v < t.vertex_count(); ++v) {
    int condition = t.part(v) == Part::X ? 1 : 2;
    std::size_t range = t.valency(t.part(v));
    std::vector<bool> seen(range, false);
    for (std::size_t s = 0; s < t.slot_count(v); ++s) {
      Colour x = colour_[offset_[v] + s];
      if (x >= range) return fail(condition, v, "colour " + std::to_string(x) + " out of range");
      if (seen[x]) return fail(condition, v, "colour " + std::to_string(x) + " repeated");
      seen[x] = true;
    }
  }
  for (VertexId v = 0; v < t.vertex_count(); ++v) {
    Colour expected = colour(t.up(v), v);
    for (std::size_t s = 1; s < t.slot_count(v); ++s)
      if (colour(t.neighbour(v, s), v) != expected)
        return fail(3, v, "incoming arcs carry different colours");
  }
  return {};
}

nlohmann::json LegalColouring::to_json() const {
  const TruncatedTree& t = *tree_;
  nlohmann::json arcs = nlohmann::json::array();
  for (VertexId v = 0; v < t.vertex_count(); ++v)
    for (std::size_t s = 0; s < t.slot_count(v); ++s)
      arcs.push_back({{"origin", t.address(v)},
                      {"terminus", t.address(t.neighbour(v, s))},
                      {"colour", colour_[offset_[v] + s]}});
  return {{"m", t.m()}, {"n", t.n()}, {"depth", t.depth()}, {"arcs", std::move(arcs)}};
}

LegalColouring LegalColouring::from_json(std::shared_ptr<const TruncatedTree> tree,
                                         const nlohmann::json& j) {
  LegalColouring c(std::move(tree));
  const TruncatedTree& t = *c.tree_;
  if (!j.contains("arcs") || !j["arcs"].is_array())
    throw InputError("colouring JSON needs an \"arcs\" array");
  std::vector<bool> assigned(c.colour_.size(), false);
  for (const auto& arc : j["arcs"]) {
    auto o = t.find(arc.at("origin").get<std::string>());
    auto d = t.find(arc.at("terminus").get<std::string>());
    if (!o || !d) throw InputError("colouring JSON names a vertex outside the tree");
    auto slot = t.slot_of(*o, *d);
    if (!slot) throw InputError("colouring JSON names a non-arc");
    c.colour_[c.offset_[*o] + *slot] = arc.at("colour").get<Colour>();
    assigned[c.offset_[*o] + *slot] = true;
  }
  for (bool a : assigned)
    if (!a) throw InputError("colouring JSON does not cover every arc");
  c.refresh();
  return c;
}

}  // namespace boxprod
