#include "boxprod/finite_graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "boxprod/errors.hpp"

namespace boxprod {

Partition::Partition(std::vector<std::size_t> block_id) {
  std::map<std::size_t, std::size_t> renumber;
  block_id_.reserve(block_id.size());
  for (std::size_t id : block_id) {
    auto [it, inserted] = renumber.try_emplace(id, renumber.size());
    block_id_.push_back(it->second);
  }
  block_count_ = renumber.size();
}

Partition Partition::discrete(std::size_t size) {
  std::vector<std::size_t> ids(size);
  std::iota(ids.begin(), ids.end(), std::size_t{0});
  return Partition(std::move(ids));
}

Partition Partition::universal(std::size_t size) {
  return Partition(std::vector<std::size_t>(size, 0));
}

std::vector<std::vector<std::size_t>> Partition::blocks() const {
  std::vector<std::vector<std::size_t>> out(block_count_);
  for (std::size_t x = 0; x < block_id_.size(); ++x) out[block_id_[x]].push_back(x);
  return out;
}

bool Partition::invariant_under(const Perm& g) const {
  if (g.degree() != size()) throw InputError("partition/permutation size mismatch");
  std::vector<std::size_t> image_block(block_count_, size());
  std::vector<std::size_t> preimage_block(block_count_, size());
  for (std::size_t x = 0; x < size(); ++x) {
    std::size_t from = block_id_[x];
    std::size_t to = block_id_[g.image(static_cast<Point>(x))];
    if (image_block[from] == size()) image_block[from] = to;
    if (preimage_block[to] == size()) preimage_block[to] = from;
    if (image_block[from] != to || preimage_block[to] != from) return false;
  }
  return true;
}

FiniteGraph::Edge FiniteGraph::normalise(std::size_t u, std::size_t v) {
  return u < v ? Edge{u, v} : Edge{v, u};
}

bool FiniteGraph::add_edge(std::size_t u, std::size_t v) {
  if (u == v) throw InputError("loops are not permitted");
  if (u >= vertex_count_ || v >= vertex_count_) throw InputError("edge endpoint out of range");
  return edges_.insert(normalise(u, v)).second;
}

bool FiniteGraph::has_edge(std::size_t u, std::size_t v) const {
  return u != v && edges_.count(normalise(u, v)) > 0;
}

std::vector<std::vector<std::size_t>> FiniteGraph::adjacency() const {
  std::vector<std::vector<std::size_t>> adj(vertex_count_);
  for (auto [u, v] : edges_) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  for (auto& list : adj) std::sort(list.begin(), list.end());
  return adj;
}

std::vector<std::size_t> FiniteGraph::degrees() const {
  std::vector<std::size_t> deg(vertex_count_, 0);
  for (auto [u, v] : edges_) {
    ++deg[u];
    ++deg[v];
  }
  return deg;
}

Partition FiniteGraph::components() const {
  std::vector<std::size_t> parent(vertex_count_);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto [u, v] : edges_) {
    std::size_t a = find(u), b = find(v);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::size_t> ids(vertex_count_);
  for (std::size_t x = 0; x < vertex_count_; ++x) ids[x] = find(x);
  return Partition(std::move(ids));
}

bool FiniteGraph::is_connected() const { return components().block_count() <= 1; }

std::vector<std::size_t> FiniteGraph::triangles_per_edge() const {
  auto adj = adjacency();
  std::vector<std::size_t> out;
  out.reserve(edges_.size());
  for (auto [u, v] : edges_) {
    std::vector<std::size_t> common;
    std::set_intersection(adj[u].begin(), adj[u].end(), adj[v].begin(), adj[v].end(),
                          std::back_inserter(common));
    out.push_back(common.size());
  }
  return out;
}

std::vector<std::size_t> FiniteGraph::triangles_per_vertex() const {
  auto adj = adjacency();
  std::vector<std::size_t> count(vertex_count_, 0);
  for (std::size_t u = 0; u < vertex_count_; ++u)
    for (std::size_t i = 0; i < adj[u].size(); ++i)
      for (std::size_t j = i + 1; j < adj[u].size(); ++j)
        if (has_edge(adj[u][i], adj[u][j])) ++count[u];
  return count;
}

std::size_t FiniteGraph::triangle_count() const {
  auto per_vertex = triangles_per_vertex();
  return std::accumulate(per_vertex.begin(), per_vertex.end(), std::size_t{0}) / 3;
}

std::size_t FiniteGraph::cycle_rank() const {
  return edges_.size() + components().block_count() - vertex_count_;
}

bool FiniteGraph::invariant_under(const Perm& g) const {
  if (g.degree() != vertex_count_) throw InputError("graph/permutation size mismatch");
  for (auto [u, v] : edges_)
    if (!has_edge(g.image(static_cast<Point>(u)), g.image(static_cast<Point>(v))))
      return false;
  return true;
}

std::string FiniteGraph::to_dot(const std::string& name,
                                const std::vector<std::string>& labels) const {
  std::ostringstream os;
  os << "graph \"" << name << "\" {\n";
  for (std::size_t v = 0; v < vertex_count_; ++v) {
    os << "  n" << v << " [label=\""
       << (v < labels.size() ? labels[v] : std::to_string(v + 1)) << "\"];\n";
  }
  for (auto [u, v] : edges_) os << "  n" << u << " -- n" << v << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace boxprod
