#ifndef QUILTKIT_FSURJ_HPP
#define QUILTKIT_FSURJ_HPP

#include <string>
#include <vector>

#include "quiltkit/element.hpp"
#include "quiltkit/word.hpp"

namespace qk {

/// Admissible words with caesura-signed deletion as differential and signed
/// block substitution as composition.
class FSurjOperad {
 public:
  using Basis = Word;

  std::string name() const { return "fsurj"; }
  std::vector<Word> basis(int n) const { return enumerate_words(n); }
  Element<Word> compose(const Word& x, int i, const Word& y) const;
  Word act(const Word& x, const Permutation& s) const { return x.relabel_by_inverse(s); }
  Element<Word> differential(const Word& x) const { return boundary(x); }
  Word unit() const { return Word(1, {1}); }
  std::string encode(const Word& x) const { return x.encode(); }
};

/// The commutative operad: one basis element in each arity, degree 0.
struct ComBasis {
  int n = 1;
  friend auto operator<=>(const ComBasis&, const ComBasis&) = default;
};
inline int basis_arity(const ComBasis& b) { return b.n; }
inline int basis_degree(const ComBasis&) { return 0; }

class ComOperad {
 public:
  using Basis = ComBasis;

  std::string name() const { return "com"; }
  std::vector<ComBasis> basis(int n) const { return {ComBasis{n}}; }
  Element<ComBasis> compose(const ComBasis& x, int, const ComBasis& y) const {
    return Element<ComBasis>::of(ComBasis{x.n + y.n - 1});
  }
  ComBasis act(const ComBasis& x, const Permutation&) const { return x; }
  Element<ComBasis> differential(const ComBasis& x) const { return {x.n, 1}; }
  ComBasis unit() const { return ComBasis{1}; }
  std::string encode(const ComBasis& x) const { return "mu" + std::to_string(x.n); }
};

/// Sends a word of length n to the point and longer words to 0.
Element<ComBasis> fsurj_to_com(const Word& w);

}  // namespace qk

#endif  // QUILTKIT_FSURJ_HPP
