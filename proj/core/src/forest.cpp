#include "aniso/forest.hpp"

#include <stdexcept>

namespace aniso {

RefinementForest::RefinementForest(const std::vector<Triangle>& roots) {
  for (const auto& t : roots) add_root(t);
}

NodeId RefinementForest::push(ForestNode n) {
  nodes_.push_back(std::move(n));
  return static_cast<NodeId>(nodes_.size() - 1);
}

NodeId RefinementForest::add_root(const Triangle& t) {
  if (root_count_ != nodes_.size())
    throw std::logic_error("roots must be added before any bisection");
  ++root_count_;
  ++leaf_count_;
  return push(ForestNode{t});
}

std::pair<NodeId, NodeId> RefinementForest::split(NodeId id, int edge) {
  const auto [c0, c1] = bisect(node(id).triangle, edge);
  auto ids = attach_children(id, c0, c1);
  nodes_[static_cast<std::size_t>(id)].split_edge = edge;
  return ids;
}

std::pair<NodeId, NodeId> RefinementForest::attach_children(NodeId id, const Triangle& c0,
                                                            const Triangle& c1) {
  if (!node(id).is_leaf()) throw std::logic_error("node already refined");
  const int level = node(id).level + 1;
  const NodeId a = push(ForestNode{c0, id, {kNoNode, kNoNode}, 0.0, level});
  const NodeId b = push(ForestNode{c1, id, {kNoNode, kNoNode}, 0.0, level});
  nodes_[static_cast<std::size_t>(id)].children = {a, b};
  ++leaf_count_;
  return {a, b};
}

std::vector<NodeId> RefinementForest::roots() const {
  std::vector<NodeId> out;
  for (std::size_t i = 0; i < root_count_; ++i) out.push_back(static_cast<NodeId>(i));
  return out;
}

std::vector<NodeId> RefinementForest::leaves() const {
  std::vector<NodeId> out;
  out.reserve(leaf_count_);
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].is_leaf()) out.push_back(static_cast<NodeId>(i));
  }
  return out;
}

std::vector<Triangle> RefinementForest::leaf_triangles() const {
  std::vector<Triangle> out;
  out.reserve(leaf_count_);
  for (const auto& n : nodes_) {
    if (n.is_leaf()) out.push_back(n.triangle);
  }
  return out;
}

std::vector<Triangle> reference_triangle_mesh() {
  return {Triangle({0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0})};
}

std::vector<Triangle> unit_square_mesh() {
  return {Triangle({0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}),
          Triangle({0.0, 0.0}, {1.0, 1.0}, {0.0, 1.0})};
}

}  // namespace aniso
