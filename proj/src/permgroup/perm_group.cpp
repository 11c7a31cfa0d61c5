#include "boxprod/perm_group.hpp"

#include <deque>
#include <mutex>

#include "boxprod/errors.hpp"

namespace boxprod {

StabChain::StabChain(std::size_t degree, const std::vector<Perm>& generators,
                     const std::vector<Point>& base_prefix)
    : degree_(degree) {
  for (Point b : base_prefix) {
    if (b >= degree) throw InputError("base point out of range");
    levels_.push_back(Level{b, {}, {}, {}});
  }
  std::vector<Perm> nontrivial;
  for (const Perm& g : generators)
    if (!g.is_identity()) nontrivial.push_back(g);

  // Every generator must move some base point.
  for (const Perm& g : nontrivial) {
    bool moves_base = false;
    for (const Level& level : levels_)
      if (g.image(level.base_point) != level.base_point) moves_base = true;
    if (!moves_base) levels_.push_back(Level{g.first_moved_point(), {}, {}, {}});
  }
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    for (const Perm& g : nontrivial) {
      bool fixes_prefix = true;
      for (std::size_t j = 0; j < i; ++j)
        if (g.image(levels_[j].base_point) != levels_[j].base_point)
          fixes_prefix = false;
      if (fixes_prefix) levels_[i].generators.push_back(g);
    }
    rebuild_orbit(levels_[i]);
  }
  schreier_sims();
  // Trailing levels with trivial orbits carry no information.
  while (!levels_.empty() && levels_.back().orbit.size() == 1 &&
         levels_.back().generators.empty())
    levels_.pop_back();
}

void StabChain::rebuild_orbit(Level& level) const {
  level.transversal.assign(degree_, std::nullopt);
  level.orbit.clear();
  level.transversal[level.base_point] = Perm::identity(degree_);
  level.orbit.push_back(level.base_point);
  for (std::size_t i = 0; i < level.orbit.size(); ++i) {
    Point x = level.orbit[i];
    for (const Perm& s : level.generators) {
      Point y = s.image(x);
      if (!level.transversal[y]) {
        level.transversal[y] = compose(s, *level.transversal[x]);
        level.orbit.push_back(y);
      }
    }
  }
}

std::pair<Perm, std::size_t> StabChain::sift(const Perm& g,
                                             std::size_t start) const {
  Perm h = g;
  for (std::size_t i = start; i < levels_.size(); ++i) {
    const Level& level = levels_[i];
    Point beta = h.image(level.base_point);
    if (!level.transversal[beta]) return {h, i};
    h = compose(level.transversal[beta]->inverse(), h);
  }
  return {h, levels_.size()};
}

void StabChain::schreier_sims() {
  if (levels_.empty()) return;
  std::size_t i = levels_.size();
  while (i-- > 0) {
    bool restart = false;
    for (std::size_t oi = 0; oi < levels_[i].orbit.size() && !restart; ++oi) {
      Point b = levels_[i].orbit[oi];
      for (std::size_t si = 0; si < levels_[i].generators.size(); ++si) {
        const Perm s = levels_[i].generators[si];
        const Perm& ub = *levels_[i].transversal[b];
        const Perm& usb = *levels_[i].transversal[s.image(b)];
        Perm schreier = compose(usb.inverse(), compose(s, ub));
        auto [residue, j] = sift(schreier, i + 1);
        if (residue.is_identity()) continue;
        if (j == levels_.size())
          levels_.push_back(Level{residue.first_moved_point(), {}, {}, {}});
        for (std::size_t l = i + 1; l <= j; ++l) {
          levels_[l].generators.push_back(residue);
          rebuild_orbit(levels_[l]);
        }
        i = j + 1;  // loop decrement lands on j
        restart = true;
        break;
      }
    }
  }
}

std::vector<Point> StabChain::base() const {
  std::vector<Point> b;
  for (const Level& level : levels_) b.push_back(level.base_point);
  return b;
}

Order StabChain::order() const {
  Order o = 1;
  for (const Level& level : levels_) o *= level.orbit.size();
  return o;
}

bool StabChain::contains(const Perm& g) const {
  if (g.degree() != degree_) return false;
  return sift(g).first.is_identity();
}

struct PermGroup::Lazy {
  std::once_flag once;
  std::unique_ptr<StabChain> chain;
};

PermGroup::PermGroup(std::size_t degree, std::vector<Perm> generators,
                     std::size_t degree_bound)
    : degree_(degree),
      generators_(std::move(generators)),
      lazy_(std::make_shared<Lazy>()) {
  if (degree > degree_bound)
    throw ResourceError("degree " + std::to_string(degree) +
                        " exceeds the configured bound " +
                        std::to_string(degree_bound));
  for (const Perm& g : generators_)
    if (g.degree() != degree)
      throw InputError("generator degree " + std::to_string(g.degree()) +
                       " differs from group degree " + std::to_string(degree));
}

PermGroup PermGroup::trivial(std::size_t degree) { return PermGroup(degree, {}); }

PermGroup PermGroup::symmetric(std::size_t degree) {
  std::vector<Perm> gens;
  if (degree >= 2) gens.push_back(Perm::from_cycles(degree, {{0, 1}}));
  if (degree >= 3) {
    std::vector<Point> cycle(degree);
    for (Point i = 0; i < degree; ++i) cycle[i] = i;
    gens.push_back(Perm::from_cycles(degree, {cycle}));
  }
  return PermGroup(degree, std::move(gens));
}

PermGroup PermGroup::alternating(std::size_t degree) {
  std::vector<Perm> gens;
  for (Point i = 2; i < degree; ++i)
    gens.push_back(Perm::from_cycles(degree, {{0, 1, i}}));
  return PermGroup(degree, std::move(gens));
}

PermGroup PermGroup::cyclic(std::size_t degree) {
  std::vector<Point> cycle(degree);
  for (Point i = 0; i < degree; ++i) cycle[i] = i;
  std::vector<Perm> gens;
  if (degree >= 2) gens.push_back(Perm::from_cycles(degree, {cycle}));
  return PermGroup(degree, std::move(gens));
}

const StabChain& PermGroup::chain() const {
  std::call_once(lazy_->once, [this] {
    // Base points are always the smallest moved point of whatever needs a
    // new level, so the chain is a deterministic function of the generators.
    lazy_->chain = std::make_unique<StabChain>(degree_, generators_);
  });
  return *lazy_->chain;
}

bool PermGroup::contains(const Perm& g) const {
  if (g.degree() != degree_) return false;
  return chain().contains(g);
}

bool PermGroup::is_trivial() const {
  for (const Perm& g : generators_)
    if (!g.is_identity()) return false;
  return true;
}

std::vector<Perm> PermGroup::elements(std::size_t limit) const {
  const StabChain& c = chain();
  if (c.order() > limit)
    throw ResourceError("group order exceeds enumeration limit " +
                        std::to_string(limit));
  std::vector<Perm> out{Perm::identity(degree_)};
  // Every element is u_0 u_1 ... u_k with u_i from the transversal of level i.
  for (auto it = c.levels().rbegin(); it != c.levels().rend(); ++it) {
    std::vector<Perm> next;
    next.reserve(out.size() * it->orbit.size());
    for (Point x : it->orbit)
      for (const Perm& rest : out) next.push_back(compose(*it->transversal[x], rest));
    out = std::move(next);
  }
  return out;
}

}  // namespace boxprod
