#ifndef QUILTKIT_BRACE_HPP
#define QUILTKIT_BRACE_HPP

#include <string>
#include <vector>

#include "quiltkit/element.hpp"
#include "quiltkit/tree.hpp"

namespace qk {

/// The operad of planar labelled rooted trees. Every composition coefficient
/// is +1 and the differential vanishes.
class BraceOperad {
 public:
  using Basis = PlanarTree;

  std::string name() const { return "brace"; }
  std::vector<PlanarTree> basis(int n) const { return enumerate_trees(n); }
  Element<PlanarTree> compose(const PlanarTree& x, int i, const PlanarTree& y) const;
  PlanarTree act(const PlanarTree& x, const Permutation& s) const { return x.relabel_by_inverse(s); }
  Element<PlanarTree> differential(const PlanarTree& x) const { return {x.size(), 1}; }
  PlanarTree unit() const { return PlanarTree::single(); }
  std::string encode(const PlanarTree& x) const { return x.encode(); }
};

/// C2 - C2^(12), with C2 the tree whose root 1 carries the child 2.
Element<PlanarTree> lie_generator();

}  // namespace qk

#endif  // QUILTKIT_BRACE_HPP
