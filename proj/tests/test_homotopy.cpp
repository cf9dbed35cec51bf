#include "doctest.h"
#include "quiltkit/homotopy.hpp"

using namespace qk;

TEST_CASE("P2 and L2") {
  const auto p2 = build_P(2);
  const Quilt c{Word::parse(2, "12"), PlanarTree::chain({1, 2})};
  const Quilt c_rev{Word::parse(2, "21"), PlanarTree::chain({2, 1})};
  CHECK(p2 == Element<Quilt>::of(c));
  auto l2 = Element<Quilt>::of(c);
  l2.add(c_rev, -1);
  CHECK(build_L(2) == l2);
  CHECK(project_to_brace(build_L(2)) == lie_generator());
}

TEST_CASE("degrees and symmetry") {
  QuiltOperad op;
  for (int n = 2; n <= 4; ++n) {
    CHECK(build_P(n).degree() == 2 - n);
    CHECK(build_L(n).degree() == 2 - n);
    CHECK(build_PL(n).degree() == 2 - n);
    CHECK_FALSE(build_P(n).is_zero());
    for (const auto& s : Permutation::all(n)) {
      if (n <= 3) CHECK(act(op, build_L(n), s) == s.sign() * build_L(n));
      if (s(1) == 1) CHECK(act(op, build_PL(n), s) == s.sign() * build_PL(n));
    }
  }
}

TEST_CASE("relations") {
  for (int n = 2; n <= 4; ++n) {
    const auto pre = check_prelieinf_relation(n);
    for (const auto& f : pre.failures) MESSAGE(f);
    CHECK(pre.passed);
    const auto lin = check_linf_relation(n);
    for (const auto& f : lin.failures) MESSAGE(f);
    CHECK(lin.passed);
    CHECK(check_coset_identity(n).passed);
  }
  CHECK(quadratic_P_terms(2).is_zero());
}

TEST_CASE("P3 and P4 carry the interposed-order sign") {
  const auto q = [](int n, const char* w, PlanarTree t) { return Quilt{Word::parse(n, w), std::move(t)}; };
  Element<Quilt> p3(3, -1);
  p3.add(q(3, "1323", PlanarTree::corolla(1, {2, 3})), -1);
  CHECK(build_P(3) == p3);

  Element<Quilt> p4(4, -2);
  const auto flat = PlanarTree::corolla(1, {2, 3, 4});
  p4.add(q(4, "142434", flat), 1);
  p4.add(q(4, "143234", flat), -1);
  p4.add(q(4, "143424", flat), -1);
  p4.add(q(4, "142434", PlanarTree::parse("1(2(3),4)")), 1);
  CHECK(build_P(4) == p4);
}

TEST_CASE("relations at n = 5") {
  CHECK(check_prelieinf_relation(5).passed);
  CHECK(check_linf_relation(5).passed);
}

TEST_CASE("a uniform sign on P4 breaks the relation") {
  // Same support, one global sign: no choice of that sign satisfies it.
  QuiltOperad op;
  for (int s : {1, -1}) {
    Element<Quilt> p4(4, -2);
    for (const auto& [b, c] : build_P(4)) p4.add(b, s);
    Element<Quilt> rhs(4, -1);
    for (int k = 2; k <= 3; ++k) {
      const int l = 5 - k;
      for (int i = 1; i <= k; ++i)
        rhs.add_scaled(compose(op, build_P(k), i, build_P(l)), sign_scalar((k - 1) * l + (i - 1) * (l - 1)));
    }
    CHECK(differential(op, antisymmetrize(p4, true)) != antisymmetrize(rhs, true));
  }
}
