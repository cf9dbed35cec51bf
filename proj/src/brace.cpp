#include "quiltkit/brace.hpp"

namespace qk {

Element<PlanarTree> BraceOperad::compose(const PlanarTree& x, int i, const PlanarTree& y) const {
  Element<PlanarTree> out(x.size() + y.size() - 1, 0);
  for (auto& u : tree_extensions(x, y, i)) out.add(u, 1);
  return out;
}

Element<PlanarTree> lie_generator() {
  const auto c2 = PlanarTree::chain({1, 2});
  auto l = Element<PlanarTree>::of(c2);
  l.add(c2.relabel_by_inverse(Permutation::transposition(2, 1, 2)), -1);
  return l;
}

}  // namespace qk
