#include <algorithm>
#include <map>
#include <numeric>

#include "boxprod/errors.hpp"
#include "boxprod/group_algorithms.hpp"
#include "boxprod/portrait.hpp"

namespace boxprod {

Portrait random_automorphism(std::shared_ptr<const TruncatedTree> tree, std::mt19937_64& rng) {
  const TruncatedTree& t = *tree;
  std::vector<VertexId> images(t.vertex_count(), kNoVertex);
  images[t.p()] = t.p();
  images[t.q()] = t.q();
  for (VertexId v = 0; v < t.vertex_count(); ++v) {
    if (t.is_leaf(v)) continue;
    std::vector<VertexId> targets = t.children(images[v]);
    for (std::size_t i = targets.size(); i > 1; --i) std::swap(targets[i - 1], targets[rng() % i]);
    std::vector<VertexId> kids = t.children(v);
    for (std::size_t i = 0; i < kids.size(); ++i) images[kids[i]] = targets[i];
  }
  return Portrait(std::move(tree), t.p(), std::move(images));
}

namespace {

/// Action on the slots of b of the generators that fix b and its star.
struct StarAction {
  VertexId base;
  std::vector<const Portrait*> elements;
  std::vector<Perm> on_slots;
};

StarAction star_action(const std::vector<Portrait>& generators, VertexId b) {
  const TruncatedTree& t = generators.front().tree();
  StarAction out{b, {}, {}};
  for (const Portrait& g : generators) {
    if (g.image_or_none(b) != b) continue;
    std::vector<Point> images(t.slot_count(b));
    bool whole = true;
    for (std::size_t s = 0; s < images.size() && whole; ++s) {
      VertexId w = g.image_or_none(t.neighbour(b, s));
      if (w == kNoVertex) whole = false;
      else images[s] = static_cast<Point>(*t.slot_of(b, w));
    }
    if (!whole) continue;
    out.elements.push_back(&g);
    out.on_slots.emplace_back(std::move(images));
  }
  return out;
}

/// First bijection phi (slot -> colour, lexicographic) with
/// phi K phi^-1 = G.
std::vector<Colour> find_labelling(const StarAction& star, const PermGroup& G,
                                   const char* which) {
  std::size_t k = G.degree();
  PermGroup K(k, star.on_slots);
  if (K.degree() != k) throw PreconditionError(std::string("valency mismatch at ") + which);
  if (orbit(K, 0).size() != k)
    throw PreconditionError(std::string("generators act intransitively around ") + which);
  if (k > 9) throw ResourceError("labelling search is limited to valency 9");
  std::vector<Colour> phi(k);
  std::iota(phi.begin(), phi.end(), Colour{0});
  const Order target = G.order();
  if (K.order() != target)
    throw PreconditionError(std::string("local group around ") + which +
                            " has the wrong order");
  do {
    Perm label(phi);
    Perm label_inv = label.inverse();
    bool inside = true;
    for (const Perm& x : star.on_slots)
      if (!G.contains(compose(label, compose(x, label_inv)))) {
        inside = false;
        break;
      }
    if (inside) return phi;
  } while (std::next_permutation(phi.begin(), phi.end()));
  throw PreconditionError(std::string("local group around ") + which +
                          " is not permutation isomorphic to the prescribed group");
}

class WordBuilder {
 public:
  WordBuilder(const StarAction& star, const TruncatedTree& tree)
      : star_(star), tree_(tree) {}

  /// Product of star generators sending slot s to slot u.
  const Portrait& element(std::size_t s, std::size_t u) {
    auto key = std::make_pair(s, u);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    std::size_t k = tree_.slot_count(star_.base);
    constexpr std::size_t kUnseen = static_cast<std::size_t>(-1);
    std::vector<std::size_t> via(k, kUnseen), from(k, 0);
    std::vector<std::size_t> queue{s};
    via[s] = star_.on_slots.size();
    for (std::size_t i = 0; i < queue.size(); ++i)
      for (std::size_t gi = 0; gi < star_.on_slots.size(); ++gi) {
        std::size_t z = star_.on_slots[gi].image(static_cast<Point>(queue[i]));
        if (via[z] == kUnseen) {
          via[z] = gi;
          from[z] = queue[i];
          queue.push_back(z);
        }
      }
    if (via[u] == kUnseen) throw PreconditionError("star generators are intransitive");
    Portrait word = Portrait::identity(star_.elements.front()->tree_ptr());
    for (std::size_t z = u; z != s; z = from[z]) word = compose(word, *star_.elements[via[z]]);
    return cache_.emplace(key, std::move(word)).first->second;
  }

 private:
  const StarAction& star_;
  const TruncatedTree& tree_;
  std::map<std::pair<std::size_t, std::size_t>, Portrait> cache_;
};

}  // namespace

LegalColouring recover_colouring(const std::vector<Portrait>& generators, const PermGroup& M,
                                 const PermGroup& N) {
  if (generators.empty()) throw PreconditionError("no generators given");
  const TruncatedTree& t = generators.front().tree();
  auto tree = generators.front().tree_ptr();
  if (M.degree() != t.m() || N.degree() != t.n())
    throw InputError("group degrees do not match the tree valencies");
  const VertexId p = t.p(), q = t.q();
  StarAction star_p = star_action(generators, p);
  StarAction star_q = star_action(generators, q);
  if (star_p.elements.empty() || star_q.elements.empty())
    throw PreconditionError("no generator fixes the star of p or of q");
  std::vector<Colour> phi = find_labelling(star_p, M, "p");
  std::vector<Colour> psi = find_labelling(star_q, N, "q");
  WordBuilder words_p(star_p, t), words_q(star_q, t);

  // h[v] sends p (X-vertices) or q (Y-vertices) to v.
  std::vector<std::optional<Portrait>> h(t.vertex_count());
  const Portrait id = Portrait::identity(tree);
  h[p] = id;
  const std::size_t q_slot = *t.slot_of(p, q);
  for (VertexId v : t.ball(p, t.depth() + 1)) {
    if (v == p) continue;
    VertexId v1 = t.up(v);
    if (v1 == p) {
      h[v] = words_p.element(q_slot, *t.slot_of(p, v));
      continue;
    }
    VertexId v2 = t.up(v1);
    if (!h[v1] || !h[v2]) continue;
    try {
      Portrait back = inverse(*h[v1]);
      VertexId from = back.image_or_none(v2), to = back.image_or_none(v);
      VertexId b = t.part(v1) == Part::X ? p : q;
      if (from == kNoVertex || to == kNoVertex) continue;
      WordBuilder& words = b == p ? words_p : words_q;
      const Portrait& k = words.element(*t.slot_of(b, from), *t.slot_of(b, to));
      Portrait hv = compose(*h[v1], compose(k, compose(back, *h[v2])));
      VertexId home = t.part(v) == Part::X ? p : q;
      if (hv.image_or_none(home) == v) h[v] = std::move(hv);
    } catch (const DomainError&) {
    }
  }

  std::vector<std::vector<Colour>> colours(t.vertex_count());
  for (VertexId v = 0; v < t.vertex_count(); ++v) {
    std::size_t k = t.slot_count(v);
    colours[v].assign(k, 0);
    bool recovered = false;
    if (h[v]) {
      Portrait back = inverse(*h[v]);
      VertexId home = t.part(v) == Part::X ? p : q;
      const auto& label = t.part(v) == Part::X ? phi : psi;
      recovered = true;
      for (std::size_t s = 0; s < k && recovered; ++s) {
        VertexId w = back.image_or_none(t.neighbour(v, s));
        auto slot = w == kNoVertex ? std::nullopt : t.slot_of(home, w);
        if (!slot) recovered = false;
        else colours[v][s] = label[*slot];
      }
    }
    if (recovered) continue;
    VertexId u = t.up(v);
    Colour forced = colours[t.up(u)][*t.slot_of(t.up(u), u)];
    colours[v][0] = forced;
    Colour next = 0;
    for (std::size_t s = 1; s < k; ++s, ++next) {
      if (next == forced) ++next;
      colours[v][s] = next;
    }
  }
  LegalColouring c = LegalColouring::from_slots(
      tree, [&](VertexId v, std::size_t s) { return colours[v][s]; });
  if (ColouringCheck check = c.validate(); !check.ok)
    throw PreconditionError("recovered colouring is not legal (" + check.message +
                            "); the generators are not locally-(M,N)");
  return c;
}

}  // namespace boxprod
