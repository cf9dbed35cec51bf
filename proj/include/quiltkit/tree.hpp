#ifndef QUILTKIT_TREE_HPP
#define QUILTKIT_TREE_HPP

#include <compare>
#include <string>
#include <utility>
#include <vector>

#include "quiltkit/permutation.hpp"

namespace qk {

/// Planar rooted tree on the vertex labels 1..n.
///
/// `parent(v)` is 0 for the root. Children are listed left to right. The
/// vertical order u <_T v means u is a proper ancestor of v (root lowest);
/// the horizontal order u ⊴_T v means u lies left of v with neither an
/// ancestor of the other; their union is the preorder, a total order.
class PlanarTree {
 public:
  PlanarTree() = default;
  /// `children_of[0]` must be {root}; `children_of[v]` lists v's children.
  explicit PlanarTree(std::vector<std::vector<int>> children_of);

  /// Builds from a parent map (0 = root) and per-vertex ordered child lists
  /// indexed 1..n (index 0 ignored). Validates consistency.
  static PlanarTree from_parent_and_children(const std::vector<int>& parent,
                                             const std::vector<std::vector<int>>& children);

  static PlanarTree single();
  /// Chain root -> ... following the label sequence.
  static PlanarTree chain(const std::vector<int>& labels_from_root);
  /// Root with the given children, in order.
  static PlanarTree corolla(int root, const std::vector<int>& children);

  int size() const { return static_cast<int>(parent_.size()) - 1; }
  int root() const { return kids_[0][0]; }
  int parent(int v) const { return parent_[static_cast<std::size_t>(v)]; }
  const std::vector<int>& children(int v) const { return kids_[static_cast<std::size_t>(v)]; }
  int child_index(int v) const;

  bool below(int u, int v) const;    ///< u <_T v
  bool left_of(int u, int v) const;  ///< u ⊴_T v
  /// Vertices in preorder (the total order ↗_T).
  const std::vector<int>& preorder() const { return pre_; }
  int preorder_position(int v) const { return pos_[static_cast<std::size_t>(v)]; }

  /// (parent, child index) pairs listed by vertex label.
  std::vector<std::pair<int, int>> code() const;
  /// Bracket form, e.g. "1(2(3),4)".
  std::string encode() const;
  /// Inverse of encode(). Throws std::invalid_argument.
  static PlanarTree parse(const std::string& text);

  /// Right action: vertex v of the result carries what vertex s(v) carried.
  PlanarTree relabel_by_inverse(const Permutation& s) const;
  /// Vertex v is renamed to `new_label[v]`.
  PlanarTree renamed(const std::vector<int>& new_label) const;

  /// Relabels so that the preorder is 1, 2, ..., n. Returns the permutation s
  /// with standardized() == act(s).
  Permutation standardizing_permutation() const;
  bool in_standard_order() const;

  /// Removes a leaf and closes up the labels above it.
  PlanarTree remove_leaf(int v) const;

  friend bool operator==(const PlanarTree& a, const PlanarTree& b) { return a.code_ == b.code_; }
  friend std::strong_ordering operator<=>(const PlanarTree& a, const PlanarTree& b) {
    if (a.code_.size() != b.code_.size()) return a.code_.size() <=> b.code_.size();
    return a.code_ <=> b.code_;
  }

 private:
  void finish();

  std::vector<int> parent_;               // index 0 unused
  std::vector<std::vector<int>> kids_;    // kids_[0] = {root}
  std::vector<int> pre_;
  std::vector<int> pos_;                  // preorder position of v
  std::vector<int> subtree_end_;          // preorder position one past v's subtree
  std::vector<int> code_;                 // flattened (parent, child index) by label
};

int basis_arity(const PlanarTree& t);
int basis_degree(const PlanarTree& t);

/// All planar rooted trees on 1..n, sorted by canonical code.
std::vector<PlanarTree> enumerate_trees(int n);

/// Unlabelled planar shapes on n vertices as preorder parent-position arrays.
std::vector<std::vector<int>> planar_shapes(int n);

/// Ext(outer, inner, slot): trees on m+n-1 vertices containing the relabelled
/// inner tree at the slot, whose contraction gives back the outer tree. Inner
/// labels occupy slot..slot+n-1; outer labels above the slot shift by n-1.
std::vector<PlanarTree> tree_extensions(const PlanarTree& outer, const PlanarTree& inner, int slot);

/// Definitional test of U ∈ Ext(outer, inner, slot), used as an oracle.
bool is_tree_extension(const PlanarTree& u, const PlanarTree& outer, const PlanarTree& inner, int slot);

/// Restriction of a tree to a label interval [lo, hi] taken as a subtree,
/// relabelled to 1..hi-lo+1; fails (returns false) if those labels do not span
/// a subtree.
bool restrict_to_interval(const PlanarTree& u, int lo, int hi, PlanarTree& out);

}  // namespace qk

#endif  // QUILTKIT_TREE_HPP
