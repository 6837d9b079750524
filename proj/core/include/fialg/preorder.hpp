#pragma once

#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "fialg/errors.hpp"

namespace fialg {

/// Finite reflexive-transitive relation on {0, .., size()-1}.
/// Immutable once built; shared between elements and maps.
class Preorder {
 public:
  /// Reflexive-transitive closure of the generator pairs.
  static std::shared_ptr<const Preorder> from_generators(
      int n, std::span<const std::pair<int, int>> pairs);

  /// Takes the pairs as the whole relation (reflexivity is implied) and
  /// throws ValidationError naming a broken triple if not transitive.
  static std::shared_ptr<const Preorder> from_relation(
      int n, std::span<const std::pair<int, int>> pairs);

  int size() const { return n_; }
  bool leq(int x, int y) const { return leq_[idx(x, y)]; }
  /// x <= y with x != y.  Not antisymmetric: both directions hold
  /// whenever x and y are mutually comparable.
  bool strict(int x, int y) const { return x != y && leq(x, y); }
  /// x <= y and y <= x (true on the diagonal).
  bool equivalent(int x, int y) const { return leq(x, y) && leq(y, x); }
  bool comparable(int x, int y) const { return leq(x, y) || leq(y, x); }

  /// All pairs (x, y) with x <= y, x != y, in lexicographic order.
  const std::vector<std::pair<int, int>>& strict_edges() const {
    return strict_edges_;
  }

  /// Connected components of the comparability graph, labeled 0.. in
  /// first-seen vertex order.
  int component_count() const { return int(component_vertices_.size()); }
  int component_of(int x) const { return component_of_[check_vertex(x)]; }
  const std::vector<int>& component_vertices(int c) const;
  /// Every pair of the component is mutually comparable.
  bool is_full_component(int c) const;

  bool operator==(const Preorder& other) const {
    return n_ == other.n_ && leq_ == other.leq_;
  }

 private:
  Preorder(int n, std::vector<char> leq);
  int idx(int x, int y) const { return check_vertex(x) * n_ + check_vertex(y); }
  int check_vertex(int x) const;

  int n_ = 0;
  std::vector<char> leq_;  // n*n, row-major
  std::vector<std::pair<int, int>> strict_edges_;
  std::vector<int> component_of_;
  std::vector<std::vector<int>> component_vertices_;
};

/// Partition of the strict edges into cycle classes.  Two strict edges
/// share a class exactly when some simple cycle of the comparability
/// graph carries both of their vertex pairs; a mutually-comparable pair
/// x ~ y by itself forms the two-vertex cycle through its doubled edge.
/// Computed via biconnected blocks of the comparability multigraph (a
/// doubled edge per mutually-comparable pair): edges of one cyclic
/// block form one class, every bridge edge a singleton.
class EdgeClassification {
 public:
  explicit EdgeClassification(std::shared_ptr<const Preorder> carrier);

  const Preorder& carrier() const { return *carrier_; }
  const std::shared_ptr<const Preorder>& carrier_ptr() const {
    return carrier_;
  }

  int class_count() const { return int(class_edges_.size()); }
  /// Class of the strict edge (x, y); throws ValidationError otherwise.
  int class_of(int x, int y) const;
  /// Member edges, lexicographic.
  const std::vector<std::pair<int, int>>& class_edges(int cls) const;
  /// Lexicographically least member edge; classes are numbered by it.
  std::pair<int, int> representative(int cls) const;
  /// Sorted endpoints of the class's edges.
  const std::vector<int>& class_vertices(int cls) const;
  int class_component(int cls) const;
  /// Sorted ids of the classes whose vertex set contains x.
  const std::vector<int>& classes_at(int x) const;
  /// Sorted ids of the classes living inside component c.
  const std::vector<int>& component_classes(int c) const;

  /// {x} together with the class vertex set and everything reachable
  /// once a walk from x has stepped onto a class vertex other than x,
  /// never revisiting x.  Requires x to be a class vertex.
  std::vector<int> vertex_set(int x, int cls) const;

  /// Owner map for the class's host component: each class vertex x is
  /// paired with {x} plus the off-class vertices reachable from x
  /// without touching the class vertex set.  The sets partition the
  /// component.
  std::vector<std::pair<int, std::vector<int>>> vertex_partition(
      int cls) const;

 private:
  int check_class(int cls) const;

  std::shared_ptr<const Preorder> carrier_;
  std::vector<std::vector<std::pair<int, int>>> class_edges_;
  std::vector<std::vector<int>> class_vertices_;
  std::vector<int> class_component_;
  std::vector<std::vector<int>> classes_at_;       // per vertex
  std::vector<std::vector<int>> component_classes_;  // per component
  std::vector<int> edge_class_;  // parallel to carrier().strict_edges()
};

}  // namespace fialg
