#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "aniso/geometry.hpp"

namespace aniso {

using NodeId = std::int64_t;
inline constexpr NodeId kNoNode = -1;

struct ForestNode {
  Triangle triangle;
  NodeId parent = kNoNode;
  std::array<NodeId, 2> children{kNoNode, kNoNode};
  double error = 0.0;  // cached local error e_T(f)_p
  int level = 0;       // generation below the root
  int split_edge = -1;

  bool is_leaf() const { return children[0] == kNoNode; }
};

/// Append-only binary forest of triangles. The leaves form the current
/// triangulation; node ids are insertion order.
class RefinementForest {
 public:
  RefinementForest() = default;
  explicit RefinementForest(const std::vector<Triangle>& roots);

  NodeId add_root(const Triangle& t);
  /// Bisects leaf `id` along `edge`; returns the two child ids.
  std::pair<NodeId, NodeId> split(NodeId id, int edge);
  /// Attaches two explicit children to a leaf (used when loading meshes).
  std::pair<NodeId, NodeId> attach_children(NodeId id, const Triangle& c0, const Triangle& c1);

  const ForestNode& node(NodeId id) const { return nodes_.at(static_cast<std::size_t>(id)); }
  void set_error(NodeId id, double e) { nodes_.at(static_cast<std::size_t>(id)).error = e; }

  std::size_t size() const { return nodes_.size(); }
  std::size_t leaf_count() const { return leaf_count_; }
  std::size_t root_count() const { return root_count_; }
  std::size_t bisection_count() const { return (nodes_.size() - root_count_) / 2; }
  bool is_leaf(NodeId id) const { return node(id).is_leaf(); }

  std::vector<NodeId> roots() const;
  /// Leaf ids in increasing order.
  std::vector<NodeId> leaves() const;
  std::vector<Triangle> leaf_triangles() const;
  const std::vector<ForestNode>& nodes() const { return nodes_; }

 private:
  NodeId push(ForestNode n);

  std::vector<ForestNode> nodes_;
  std::size_t leaf_count_ = 0;
  std::size_t root_count_ = 0;
};

/// ((0,0), (1,0), (0,1)).
std::vector<Triangle> reference_triangle_mesh();
/// Unit square split along the main diagonal.
std::vector<Triangle> unit_square_mesh();

}  // namespace aniso
