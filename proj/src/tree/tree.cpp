#include "boxprod/tree.hpp"

#include <algorithm>
#include <sstream>

#include "boxprod/errors.hpp"

namespace boxprod {

std::size_t TruncatedTree::closed_form_vertex_count(const TreeParams& params) {
  // Level d on p's side has (m-1)(n-1)(m-1)... vertices, d factors
  // alternating from m-1; q's side alternates from n-1.
  const std::size_t limit = static_cast<std::size_t>(-1) / 4;
  std::size_t total = 0;
  std::size_t from_p = 1, from_q = 1;
  for (std::size_t d = 0; d <= params.depth; ++d) {
    total += from_p + from_q;
    if (total > limit) return limit;
    std::size_t fp = d % 2 == 0 ? params.m - 1 : params.n - 1;
    std::size_t fq = d % 2 == 0 ? params.n - 1 : params.m - 1;
    if (from_p > limit / std::max<std::size_t>(fp, 1) ||
        from_q > limit / std::max<std::size_t>(fq, 1))
      return limit;
    from_p *= fp;
    from_q *= fq;
  }
  return total;
}

TruncatedTree::TruncatedTree(TreeParams params, std::size_t vertex_bound)
    : params_(params) {
  if (params.m < 2 || params.n < 2) throw InputError("tree valencies must be at least 2");
  if (params.depth < 1) throw InputError("tree depth must be at least 1");
  if (params.depth > 60000) throw ResourceError("tree depth too large");
  std::size_t count = closed_form_vertex_count(params);
  if (count > vertex_bound)
    throw ResourceError("truncated tree would have " + std::to_string(count) +
                        " vertices, above the bound " + std::to_string(vertex_bound));
  up_.reserve(count);
  first_child_.reserve(count);
  root_.reserve(count);
  depth_.reserve(count);
  part_.reserve(count);

  auto add = [&](VertexId up, VertexId root, std::size_t depth, Part part) {
    up_.push_back(up);
    first_child_.push_back(kNoVertex);
    root_.push_back(root);
    depth_.push_back(static_cast<std::uint16_t>(depth));
    part_.push_back(part);
  };
  add(1, 0, 0, Part::X);
  add(0, 1, 0, Part::Y);
  for (VertexId v = 0; v < depth_.size(); ++v) {
    if (depth_[v] == params.depth) continue;
    first_child_[v] = static_cast<VertexId>(depth_.size());
    std::size_t kids = valency(part_[v]) - 1;
    for (std::size_t i = 0; i < kids; ++i)
      add(v, root_[v], depth_[v] + 1u, other(part_[v]));
  }
}

VertexId TruncatedTree::neighbour(VertexId v, std::size_t slot) const {
  if (slot >= slot_count(v))
    throw InputError("slot " + std::to_string(slot) + " out of range at " + address(v));
  if (slot == 0) return up_[v];
  return first_child_[v] + static_cast<VertexId>(slot - 1);
}

std::optional<std::size_t> TruncatedTree::slot_of(VertexId v, VertexId w) const {
  if (w == up_[v]) return 0;
  if (up_[w] != v) return std::nullopt;
  return static_cast<std::size_t>(w - first_child_[v]) + 1;
}

std::vector<VertexId> TruncatedTree::neighbours(VertexId v) const {
  std::vector<VertexId> out;
  out.reserve(slot_count(v));
  for (std::size_t s = 0; s < slot_count(v); ++s) out.push_back(neighbour(v, s));
  return out;
}

std::vector<VertexId> TruncatedTree::children(VertexId v) const {
  std::vector<VertexId> out;
  for (std::size_t s = 1; s < slot_count(v); ++s) out.push_back(neighbour(v, s));
  return out;
}

std::vector<VertexId> TruncatedTree::inner_vertices(std::size_t r) const {
  std::vector<VertexId> out;
  for (VertexId v = 0; v < vertex_count() && depth_[v] <= r; ++v) out.push_back(v);
  return out;
}

std::string TruncatedTree::address(VertexId v) const {
  std::vector<std::size_t> steps;
  while (depth_[v] > 0) {
    steps.push_back(v - first_child_[up_[v]]);
    v = up_[v];
  }
  std::string out = v == p() ? "p" : "q";
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) out += "." + std::to_string(*it);
  return out;
}

std::optional<VertexId> TruncatedTree::find(std::string_view address) const {
  if (address.empty()) return std::nullopt;
  VertexId v;
  if (address[0] == 'p') v = p();
  else if (address[0] == 'q') v = q();
  else return std::nullopt;
  std::size_t pos = 1;
  while (pos < address.size()) {
    if (address[pos] != '.' || pos + 1 >= address.size()) return std::nullopt;
    ++pos;
    std::size_t index = 0, start = pos;
    while (pos < address.size() && address[pos] >= '0' && address[pos] <= '9') {
      index = index * 10 + static_cast<std::size_t>(address[pos] - '0');
      if (index > 1'000'000) return std::nullopt;
      ++pos;
    }
    if (pos == start || is_leaf(v) || index + 1 >= slot_count(v)) return std::nullopt;
    v = first_child_[v] + static_cast<VertexId>(index);
  }
  return v;
}

std::size_t TruncatedTree::distance(VertexId u, VertexId v) const {
  if (root_[u] != root_[v]) return std::size_t{depth_[u]} + depth_[v] + 1;
  std::size_t d = 0;
  while (depth_[u] > depth_[v]) u = up_[u], ++d;
  while (depth_[v] > depth_[u]) v = up_[v], ++d;
  while (u != v) u = up_[u], v = up_[v], d += 2;
  return d;
}

std::vector<VertexId> TruncatedTree::path(VertexId u, VertexId v) const {
  std::vector<VertexId> head, tail;
  if (root_[u] != root_[v]) {
    for (; depth_[u] > 0; u = up_[u]) head.push_back(u);
    for (; depth_[v] > 0; v = up_[v]) tail.push_back(v);
    head.push_back(u);
    tail.push_back(v);
  } else {
    while (depth_[u] > depth_[v]) head.push_back(u), u = up_[u];
    while (depth_[v] > depth_[u]) tail.push_back(v), v = up_[v];
    while (u != v) head.push_back(u), tail.push_back(v), u = up_[u], v = up_[v];
    head.push_back(u);
  }
  head.insert(head.end(), tail.rbegin(), tail.rend());
  return head;
}

std::vector<VertexId> TruncatedTree::ball(VertexId v, std::size_t r) const {
  std::vector<VertexId> out{v};
  std::vector<std::size_t> dist{0};
  std::vector<VertexId> from{kNoVertex};
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (dist[i] == r) continue;
    for (std::size_t s = 0; s < slot_count(out[i]); ++s) {
      VertexId w = neighbour(out[i], s);
      if (w == from[i]) continue;
      out.push_back(w);
      dist.push_back(dist[i] + 1);
      from.push_back(out[i]);
    }
  }
  return out;
}

Sphere TruncatedTree::sphere(VertexId v, std::size_t r) const {
  Sphere s;
  for (VertexId w : ball(v, r))
    if (distance(v, w) == r) s.vertices.push_back(w);
  std::sort(s.vertices.begin(), s.vertices.end());
  s.clipped = depth_[v] + r > params_.depth;
  return s;
}

bool TruncatedTree::in_subtree(VertexId v, VertexId x) const {
  if (root_[v] != root_[x] || depth_[v] < depth_[x]) return false;
  while (depth_[v] > depth_[x]) v = up_[v];
  return v == x;
}

bool TruncatedTree::in_half_tree(VertexId v, const Arc& a) const {
  if (up_[a.origin] == a.terminus) return in_subtree(v, a.origin);
  if (up_[a.terminus] == a.origin) return !in_subtree(v, a.terminus);
  throw InputError("arc endpoints are not adjacent");
}

std::vector<VertexId> TruncatedTree::half_tree(const Arc& a) const {
  std::vector<VertexId> out;
  for (VertexId v = 0; v < vertex_count(); ++v)
    if (in_half_tree(v, a)) out.push_back(v);
  return out;
}

std::vector<Arc> TruncatedTree::arcs() const {
  std::vector<Arc> out;
  for (VertexId v = 0; v < vertex_count(); ++v)
    for (std::size_t s = 0; s < slot_count(v); ++s) out.push_back({v, neighbour(v, s)});
  return out;
}

std::string TruncatedTree::to_dot(
    const std::function<std::string(VertexId, VertexId)>& arc_label) const {
  std::ostringstream os;
  os << "digraph tree {\n";
  for (VertexId v = 0; v < vertex_count(); ++v)
    os << "  v" << v << " [label=\"" << address(v) << "\", style=filled, fillcolor="
       << (part_[v] == Part::X ? "lightblue" : "salmon") << "];\n";
  for (VertexId v = 0; v < vertex_count(); ++v) {
    for (std::size_t s = 0; s < slot_count(v); ++s) {
      VertexId w = neighbour(v, s);
      if (arc_label) {
        os << "  v" << v << " -> v" << w << " [label=\"" << arc_label(v, w) << "\"];\n";
      } else if (s > 0 || v == p()) {
        os << "  v" << v << " -> v" << w << " [dir=none];\n";
      }
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace boxprod
