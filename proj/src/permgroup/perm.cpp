#include "boxprod/perm.hpp"

#include <numeric>
#include <sstream>

#include "boxprod/errors.hpp"

namespace boxprod {

Perm::Perm(std::vector<Point> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (Point x : images_) {
    if (x >= images_.size() || seen[x])
      throw InputError("permutation images are not a bijection");
    seen[x] = true;
  }
}

Perm Perm::identity(std::size_t degree) {
  Perm p;
  p.images_.resize(degree);
  std::iota(p.images_.begin(), p.images_.end(), Point{0});
  return p;
}

Perm Perm::from_cycles(std::size_t degree,
                       const std::vector<std::vector<Point>>& cycles) {
  Perm p = identity(degree);
  std::vector<bool> used(degree, false);
  for (const auto& cycle : cycles) {
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      Point x = cycle[i];
      if (x >= degree)
        throw InputError("cycle point " + std::to_string(x) +
                         " out of range for degree " + std::to_string(degree));
      if (used[x]) throw InputError("cycles are not disjoint");
      used[x] = true;
      p.images_[x] = cycle[(i + 1) % cycle.size()];
    }
  }
  return p;
}

Point Perm::operator()(Point x) const {
  if (x >= images_.size())
    throw InputError("point " + std::to_string(x) + " out of range");
  return images_[x];
}

bool Perm::is_identity() const {
  for (Point i = 0; i < images_.size(); ++i)
    if (images_[i] != i) return false;
  return true;
}

Perm Perm::inverse() const {
  Perm r;
  r.images_.resize(images_.size());
  for (Point i = 0; i < images_.size(); ++i) r.images_[images_[i]] = i;
  return r;
}

std::vector<std::vector<Point>> Perm::cycles() const {
  std::vector<std::vector<Point>> out;
  std::vector<bool> seen(images_.size(), false);
  for (Point start = 0; start < images_.size(); ++start) {
    if (seen[start] || images_[start] == start) continue;
    std::vector<Point> cycle;
    for (Point x = start; !seen[x]; x = images_[x]) {
      seen[x] = true;
      cycle.push_back(x);
    }
    out.push_back(std::move(cycle));
  }
  return out;
}

Point Perm::first_moved_point() const {
  for (Point i = 0; i < images_.size(); ++i)
    if (images_[i] != i) return i;
  return static_cast<Point>(images_.size());
}

Perm compose(const Perm& p, const Perm& q) {
  if (p.degree() != q.degree())
    throw InputError("degree mismatch in compose: " +
                     std::to_string(p.degree()) + " vs " +
                     std::to_string(q.degree()));
  std::vector<Point> images(p.degree());
  for (Point x = 0; x < images.size(); ++x) images[x] = p.image(q.image(x));
  return Perm(std::move(images));
}

Perm operator*(const Perm& p, const Perm& q) { return compose(p, q); }

std::string to_cycle_string(const Perm& p, bool one_based) {
  auto cycles = p.cycles();
  if (cycles.empty()) return "()";
  std::ostringstream os;
  for (const auto& cycle : cycles) {
    os << '(';
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      if (i) os << ' ';
      os << cycle[i] + (one_based ? 1 : 0);
    }
    os << ')';
  }
  return os.str();
}

std::size_t PermHash::operator()(const Perm& p) const noexcept {
  std::size_t seed = p.degree();
  for (Point x : p.images())
    seed ^= x + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
  return seed;
}

}  // namespace boxprod
