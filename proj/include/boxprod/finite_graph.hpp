#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "boxprod/perm.hpp"

namespace boxprod {

/// A partition of {0, ..., size-1}. Block ids are normalised so that blocks
/// are numbered in order of their smallest element.
class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<std::size_t> block_id);

  static Partition discrete(std::size_t size);
  static Partition universal(std::size_t size);

  std::size_t size() const { return block_id_.size(); }
  std::size_t block_count() const { return block_count_; }
  std::size_t block_of(std::size_t x) const { return block_id_[x]; }
  const std::vector<std::size_t>& block_ids() const { return block_id_; }
  std::vector<std::vector<std::size_t>> blocks() const;

  bool is_discrete() const { return block_count_ == size(); }
  bool is_universal() const { return block_count_ <= 1; }

  /// g maps every block onto a block.
  bool invariant_under(const Perm& g) const;

  bool operator==(const Partition&) const = default;

 private:
  std::vector<std::size_t> block_id_;
  std::size_t block_count_ = 0;
};

/// Simple undirected graph on {0, ..., n-1}: no loops, no repeated edges.
class FiniteGraph {
 public:
  using Edge = std::pair<std::size_t, std::size_t>;

  explicit FiniteGraph(std::size_t vertex_count = 0) : vertex_count_(vertex_count) {}

  std::size_t vertex_count() const { return vertex_count_; }
  const std::set<Edge>& edges() const { return edges_; }
  std::size_t edge_count() const { return edges_.size(); }

  /// Returns false if the edge was already present. Loops are rejected.
  bool add_edge(std::size_t u, std::size_t v);
  bool has_edge(std::size_t u, std::size_t v) const;

  std::vector<std::vector<std::size_t>> adjacency() const;
  std::vector<std::size_t> degrees() const;
  Partition components() const;
  bool is_connected() const;

  /// Number of triangles containing each vertex.
  std::vector<std::size_t> triangles_per_vertex() const;
  /// Number of triangles containing each edge, in edges() order.
  std::vector<std::size_t> triangles_per_edge() const;
  std::size_t triangle_count() const;
  /// |E| - |V| + (number of components).
  std::size_t cycle_rank() const;

  bool invariant_under(const Perm& g) const;

  /// Deterministic DOT rendering; labels default to 1-based indices.
  std::string to_dot(const std::string& name,
                     const std::vector<std::string>& labels = {}) const;

 private:
  static Edge normalise(std::size_t u, std::size_t v);

  std::size_t vertex_count_;
  std::set<Edge> edges_;
};

}  // namespace boxprod
