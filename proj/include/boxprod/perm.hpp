#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace boxprod {

using Point = std::uint32_t;

/// A permutation of {0, ..., degree-1}. Acts from the left: compose(p, q)
/// sends x to p(q(x)).
class Perm {
 public:
  Perm() = default;
  explicit Perm(std::vector<Point> images);

  static Perm identity(std::size_t degree);
  /// Builds a permutation from 0-based disjoint cycles.
  static Perm from_cycles(std::size_t degree,
                          const std::vector<std::vector<Point>>& cycles);

  std::size_t degree() const { return images_.size(); }

  /// Range-checked application.
  Point operator()(Point x) const;
  /// Unchecked application for inner loops.
  Point image(Point x) const { return images_[x]; }

  std::span<const Point> images() const { return images_; }

  bool is_identity() const;
  Perm inverse() const;

  /// Non-trivial cycles, each starting at its smallest point, ordered by that
  /// point.
  std::vector<std::vector<Point>> cycles() const;

  /// Smallest moved point, or degree() if none.
  Point first_moved_point() const;

  auto operator<=>(const Perm&) const = default;
  bool operator==(const Perm&) const = default;

 private:
  std::vector<Point> images_;
};

Perm compose(const Perm& p, const Perm& q);
Perm operator*(const Perm& p, const Perm& q);

/// Disjoint-cycle notation, e.g. "(1 2 3)(4 5)"; "()" for the identity.
std::string to_cycle_string(const Perm& p, bool one_based = true);

struct PermHash {
  std::size_t operator()(const Perm& p) const noexcept;
};

}  // namespace boxprod
