#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <memory>
#include <optional>
#include <vector>

#include "boxprod/perm.hpp"

namespace boxprod {

using Order = boost::multiprecision::cpp_int;

/// Degree bound applied to every group unless the caller overrides it.
inline constexpr std::size_t kDefaultDegreeBound = 10'000;

/// Stabiliser chain built by deterministic Schreier-Sims. Level i stabilises
/// base points 0..i-1; its transversal maps the base point of level i onto
/// each point of its basic orbit.
class StabChain {
 public:
  struct Level {
    Point base_point;
    std::vector<Perm> generators;
    /// transversal[x] maps base_point to x; empty optional if x is not in the
    /// basic orbit.
    std::vector<std::optional<Perm>> transversal;
    std::vector<Point> orbit;
  };

  /// base_prefix is used first; further base points are chosen as the
  /// smallest moved point of the sifted residue.
  StabChain(std::size_t degree, const std::vector<Perm>& generators,
            const std::vector<Point>& base_prefix = {});

  std::size_t degree() const { return degree_; }
  const std::vector<Level>& levels() const { return levels_; }
  std::vector<Point> base() const;
  Order order() const;

  /// Sifts g through the chain from `start`. Returns the residue and the
  /// level at which sifting stopped (levels().size() if it went through).
  std::pair<Perm, std::size_t> sift(const Perm& g, std::size_t start = 0) const;
  bool contains(const Perm& g) const;

 private:
  void rebuild_orbit(Level& level) const;
  void schreier_sims();

  std::size_t degree_;
  std::vector<Level> levels_;
};

class PermGroup {
 public:
  PermGroup(std::size_t degree, std::vector<Perm> generators,
            std::size_t degree_bound = kDefaultDegreeBound);

  static PermGroup trivial(std::size_t degree);
  static PermGroup symmetric(std::size_t degree);
  static PermGroup alternating(std::size_t degree);
  /// Regular cyclic group generated by (0 1 ... n-1).
  static PermGroup cyclic(std::size_t degree);

  std::size_t degree() const { return degree_; }
  const std::vector<Perm>& generators() const { return generators_; }

  /// Lazily built; concurrent first calls are safe and agree.
  const StabChain& chain() const;
  Order order() const { return chain().order(); }
  bool contains(const Perm& g) const;
  bool is_trivial() const;

  /// All elements, in chain order. Throws ResourceError above `limit`.
  std::vector<Perm> elements(std::size_t limit = 1'000'000) const;

 private:
  struct Lazy;

  std::size_t degree_;
  std::vector<Perm> generators_;
  std::shared_ptr<Lazy> lazy_;
};

}  // namespace boxprod
