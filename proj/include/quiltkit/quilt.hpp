#ifndef QUILTKIT_QUILT_HPP
#define QUILTKIT_QUILT_HPP

#include <compare>
#include <string>
#include <vector>

#include "quiltkit/brace.hpp"
#include "quiltkit/chain_complex.hpp"
#include "quiltkit/complex_builder.hpp"
#include "quiltkit/fsurj.hpp"
#include "quiltkit/tree.hpp"
#include "quiltkit/word.hpp"

namespace qk {

/// A pair (W, T) with W quilting T.
struct Quilt {
  Word word;
  PlanarTree tree;

  int arity() const { return word.arity(); }
  int degree() const { return word.degree(); }
  std::string encode() const { return word.encode() + " " + tree.encode(); }

  friend bool operator==(const Quilt&, const Quilt&) = default;
  friend std::strong_ordering operator<=>(const Quilt& a, const Quilt& b) {
    if (auto c = a.tree <=> b.tree; c != 0) return c;
    return a.word <=> b.word;
  }
};

inline int basis_arity(const Quilt& q) { return q.arity(); }
inline int basis_degree(const Quilt& q) { return q.degree(); }

/// Horizontality (u <_T v implies u ⊴_W v) and verticality (u <_W v implies
/// v ⊴_T u).
bool is_quilt(const Word& w, const PlanarTree& t);

/// FWord(n), computed once per n.
const std::vector<Word>& cached_words(int n);

/// Words quilting T, sorted.
std::vector<Word> words_quilting(const PlanarTree& t);

/// All quilts of arity n, grouped by tree (trees in canonical order).
std::vector<Quilt> enumerate_quilts(int n);

class QuiltOperad {
 public:
  using Basis = Quilt;

  std::string name() const { return "quilt"; }
  std::vector<Quilt> basis(int n) const { return enumerate_quilts(n); }
  /// Hadamard composition. Throws std::logic_error if a term is not a quilt.
  Element<Quilt> compose(const Quilt& x, int i, const Quilt& y) const;
  Quilt act(const Quilt& x, const Permutation& s) const {
    return {x.word.relabel_by_inverse(s), x.tree.relabel_by_inverse(s)};
  }
  Element<Quilt> differential(const Quilt& x) const;
  Quilt unit() const { return {Word(1, {1}), PlanarTree::single()}; }
  std::string encode(const Quilt& x) const { return x.encode(); }
};

/// p(W, T) = T when |W| = n, else 0.
Element<PlanarTree> project_to_brace(const Quilt& q);
Element<PlanarTree> project_to_brace(const Element<Quilt>& x);

/// Relabels so the tree is in standard order.
Quilt standardize(const Quilt& q);
bool in_standard_order(const Quilt& q);

/// Removes every occurrence of the value n from a word over 1..n.
Word reduce_last(const Word& w);

/// Bidegree (deg_n, deg_not_n) with deg_n = -#occurrences of n.
std::pair<int, int> bidegree(const Word& w);

/// The part of the boundary deleting letters equal (resp. not equal) to n.
Element<Word> boundary_n(const Word& w);
Element<Word> boundary_not_n(const Word& w);

/// Blocks W_1 .. W_l cut at the first and last occurrences of the
/// <_W-minimal values, left to right.
std::vector<std::vector<int>> block_decompose(const Word& w);

/// Decomposition of W (quilting T minus its last vertex n) governing where n
/// may be inserted: the blocks of block_decompose, with every block up to the
/// last one holding an ancestor of n merged into the first. T must be in
/// standard order.
std::vector<std::vector<int>> fiber_blocks(const Word& w, const PlanarTree& t);

/// Words W' over 1..n with red_n(W') = W that quilt T: W'_0 n W'_1 ... n W'_{l'}
/// for each nonempty subset i_1 < ... < i_l' of {1..l} of fiber blocks, paired
/// with that subset.
std::vector<std::pair<std::vector<int>, Word>> fiber_words(const Word& w, const PlanarTree& t);

/// The fiber complex spanned by fiber_words with differential boundary_n.
BasedComplex<Word> fiber_complex(const Word& w, const PlanarTree& t);

/// Compares the fiber complex with the cellular complex of the (l-1)-simplex,
/// shifted by deg(W): dimensions, and boundary matrices up to a diagonal
/// change of basis by signs. Writes a reason on failure.
bool fiber_matches_simplex(const Word& w, const PlanarTree& t, std::string* why = nullptr);

/// Quilt(T): the span of words quilting T with the FSurj boundary.
BasedComplex<Word> quilt_tree_complex(const PlanarTree& t);
BettiTable quilt_tree_homology(const PlanarTree& t);

/// Quilt(n) as one complex (the direct sum over trees).
BasedComplex<Quilt> quilt_arity_complex(int n);

/// Diagram of a quilt: columns are letter positions of W, rows are leaves of T.
struct QuiltRect {
  int label = 0;
  int col_lo = 0, col_hi = 0;  // inclusive
  int row_lo = 0, row_hi = 0;  // inclusive
  int nominal_height = 1;      // max(#children in T, 1)
  int nominal_width = 1;       // max(#children in W, 1)
};

struct DoubleLine {
  int label = 0;       // the rectangle whose top edge carries the line
  int row = 0;         // edge between row-1 and row
  int col_lo = 0, col_hi = 0;
};

struct QuiltDiagram {
  int rows = 0, cols = 0;
  std::vector<QuiltRect> rects;            // by label
  std::vector<std::vector<int>> cells;     // label or 0 for shaded
  std::vector<DoubleLine> double_lines;
};

/// Throws std::invalid_argument if (w, t) is not a quilt.
QuiltDiagram layout_quilt(const Quilt& q);
/// Recovers the quilt from rectangle geometry alone.
Quilt parse_diagram(const QuiltDiagram& d);
std::string render_text(const QuiltDiagram& d);
std::string render_svg(const QuiltDiagram& d);

}  // namespace qk

#endif  // QUILTKIT_QUILT_HPP
