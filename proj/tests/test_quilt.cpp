#include <set>

#include "doctest.h"
#include "quiltkit/operad.hpp"
#include "quiltkit/quilt.hpp"

using namespace qk;

namespace {

std::vector<PlanarTree> standard_trees(int n) {
  std::vector<PlanarTree> out;
  for (const auto& t : enumerate_trees(n))
    if (t.in_standard_order()) out.push_back(t);
  return out;
}

}  // namespace

TEST_CASE("quilt conditions") {
  CHECK(is_quilt(Word::parse(2, "12"), PlanarTree::chain({1, 2})));
  CHECK_FALSE(is_quilt(Word::parse(2, "121"), PlanarTree::chain({1, 2})));
  CHECK(is_quilt(Word::parse(2, "121"), PlanarTree::chain({2, 1})) == false);
  bool found = false;
  for (const auto& t : enumerate_trees(4)) found = found || is_quilt(Word::parse(4, "12324"), t);
  CHECK(found);
}

TEST_CASE("quilt enumeration") {
  CHECK(enumerate_quilts(1).size() == 1);
  const auto q2 = enumerate_quilts(2);
  REQUIRE(q2.size() == 2);
  std::set<std::string> enc;
  for (const auto& q : q2) {
    enc.insert(q.encode());
    CHECK(q.degree() == 0);
  }
  CHECK(enc == std::set<std::string>{"12 1(2)", "21 2(1)"});
  for (const auto& t : enumerate_trees(3)) CHECK_FALSE(words_quilting(t).empty());
}

TEST_CASE("quilt composition stays inside Quilt") {
  QuiltOperad op;
  const Quilt c{Word::parse(2, "12"), PlanarTree::chain({1, 2})};
  const auto x = op.compose(c, 1, c);
  CHECK_FALSE(x.is_zero());
  for (const auto& [q, v] : x) CHECK(is_quilt(q.word, q.tree));
  for (int m = 1; m <= 3; ++m)
    for (int n = 1; n <= 3; ++n)
      for (const auto& a : enumerate_quilts(m))
        for (const auto& b : enumerate_quilts(n))
          for (int i = 1; i <= m; ++i) CHECK_NOTHROW(op.compose(a, i, b));
}

TEST_CASE("quilt axioms") {
  QuiltOperad op;
  AxiomOptions opt;
  opt.max_arity = 3;
  opt.triple_arity = 5;
  opt.random_samples = 200;
  const auto r = check_operad_axioms(op, opt);
  for (const auto& f : r.failures) MESSAGE(f);
  CHECK(r.passed);
}

TEST_CASE("projection is a morphism") {
  QuiltOperad src;
  BraceOperad dst;
  const auto r = check_morphism<QuiltOperad, BraceOperad>(
      [](const Quilt& q) { return project_to_brace(q); }, src, dst, 3);
  for (const auto& f : r.failures) MESSAGE(f);
  CHECK(r.passed);
  CHECK(project_to_brace(Quilt{Word::parse(2, "12"), PlanarTree::chain({1, 2})}) ==
        Element<PlanarTree>::of(PlanarTree::chain({1, 2})));
  for (const auto& q : enumerate_quilts(3))
    if (q.degree() < 0) CHECK(project_to_brace(q).is_zero());
}

TEST_CASE("standard order") {
  for (const auto& q : enumerate_quilts(3)) {
    const auto s = standardize(q);
    CHECK(in_standard_order(s));
    CHECK(is_quilt(s.word, s.tree));
  }
}

TEST_CASE("block decomposition") {
  const auto b = block_decompose(Word::parse(8, "152563436787"));
  CHECK(b == std::vector<std::vector<int>>{{1}, {5, 2, 5}, {6, 3, 4, 3, 6}, {7, 8, 7}});
  CHECK(block_decompose(Word::parse(2, "12")) == std::vector<std::vector<int>>{{1}, {2}});
  for (const auto& w : enumerate_words(3)) CHECK_NOTHROW(block_decompose(w));
  CHECK(block_decompose(Word::parse(3, "12131")).size() == 1);
}

TEST_CASE("reduction and fibers") {
  for (int n = 2; n <= 4; ++n)
    for (const auto& t : standard_trees(n)) {
      const auto small = t.remove_leaf(n);
      std::set<Word> quilting_small;
      for (const auto& w : words_quilting(small)) quilting_small.insert(w);
      std::set<Word> covered;
      for (const auto& w : words_quilting(t)) {
        const auto r = reduce_last(w);
        CHECK(is_admissible(r));
        CHECK(quilting_small.count(r) == 1);
        CHECK(w.degree() == r.degree() + 1 + bidegree(w).first);
        covered.insert(r);
      }
      CHECK(covered == quilting_small);
      for (const auto& w : quilting_small) {
        const auto fw = fiber_words(w, t);
        std::set<Word> expected;
        for (const auto& x : words_quilting(t))
          if (reduce_last(x) == w) expected.insert(x);
        std::set<Word> got;
        for (const auto& [s, x] : fw) {
          CHECK(is_quilt(x, t));
          CHECK(x.degree() == w.degree() + 1 - static_cast<int>(s.size()));
          got.insert(x);
        }
        CHECK(got == expected);
        std::string why;
        CHECK_MESSAGE(fiber_matches_simplex(w, t, &why), why);
        // total degree deg(W); its deg_not_n row index is deg(W) + 1
        BettiTable one{{w.degree(), 1}};
        CHECK(betti(fiber_complex(w, t).complex) == one);
      }
    }
  CHECK(reduce_last(Word::parse(3, "123")) == Word::parse(2, "12"));
}

TEST_CASE("double complex identities") {
  for (int n = 2; n <= 4; ++n)
    for (const auto& t : standard_trees(n))
      for (const auto& w : words_quilting(t)) {
        Element<Word> dn2(n, w.degree() + 2), mixed(n, w.degree() + 2);
        for (const auto& [x, c] : boundary_n(w)) {
          dn2.add_scaled(boundary_n(x), c);
          mixed.add_scaled(boundary_not_n(x), c);
        }
        for (const auto& [x, c] : boundary_not_n(w)) mixed.add_scaled(boundary_n(x), c);
        CHECK(dn2.is_zero());
        CHECK(mixed.is_zero());
        const auto [a, b] = bidegree(w);
        CHECK(a + b == w.degree());
        CHECK(a < 0);
        CHECK(b == reduce_last(w).degree() + 1);
        CHECK(b <= 1);
      }
}

TEST_CASE("homology per tree and per arity") {
  for (int n = 1; n <= 3; ++n)
    for (const auto& t : enumerate_trees(n)) CHECK(quilt_tree_homology(t) == BettiTable{{0, 1}});
  CHECK(betti(quilt_arity_complex(2).complex) == BettiTable{{0, 2}});
  CHECK(betti(quilt_arity_complex(3).complex) == BettiTable{{0, 12}});
}

TEST_CASE("drawing") {
  const Quilt unit{Word(1, {1}), PlanarTree::single()};
  const auto d1 = layout_quilt(unit);
  CHECK(d1.rows == 1);
  CHECK(d1.cols == 1);
  for (int n = 1; n <= 4; ++n)
    for (const auto& q : enumerate_quilts(n)) {
      const auto d = layout_quilt(q);
      CHECK(parse_diagram(d) == q);
    }
  const auto w = Word::parse(4, "12324");
  for (const auto& t : enumerate_trees(4))
    if (is_quilt(w, t)) {
      const auto d = layout_quilt({w, t});
      CHECK(d.rects.size() == 4);
      CHECK(d.cols == 5);
      const auto text = render_text(d);
      CHECK(text.find('1') != std::string::npos);
      CHECK(render_svg(d).find("<svg") == 0);
      break;
    }
}
