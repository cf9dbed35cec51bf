#include "quiltkit/fsurj.hpp"

namespace qk {

Element<Word> FSurjOperad::compose(const Word& x, int i, const Word& y) const {
  Element<Word> out(x.arity() + y.arity() - 1, x.degree() + y.degree());
  for (const auto& e : word_extensions(x, y, i)) out.add(e.result, e.sign);
  return out;
}

Element<ComBasis> fsurj_to_com(const Word& w) {
  Element<ComBasis> out(w.arity(), w.degree());
  if (w.length() == w.arity()) out.add(ComBasis{w.arity()}, 1);
  return out;
}

}  // namespace qk
