#include <algorithm>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "hochschild_oracle.hpp"
#include "quiltkit/gs.hpp"

using namespace qk;

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(QUILTKIT_DATA_DIR) + "/" + name);
  REQUIRE(in.good());
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

Prestack load(const std::string& name) { return prestack_from_json(slurp(name)); }

bool anticommute(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (const auto& [c, v] : a.row(r))
      if (b.at(r, c) != -v) return false;
    for (const auto& [c, v] : b.row(r))
      if (a.at(r, c) != -v) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("validation of the example prestacks") {
  for (const char* f : {"dual_numbers.json", "constant_arrow.json", "constant_chain.json", "triangular_to_diagonal.json",
                        "path_category.json"}) {
    const auto r = validate_prestack(load(f));
    CHECK_MESSAGE(r.valid, f);
    CHECK_MESSAGE(r.presheaf, f);
  }
  const auto r = validate_prestack(load("twisted_triangular.json"));
  CHECK(r.valid);
  CHECK_FALSE(r.presheaf);
}

TEST_CASE("validation catches broken data") {
  SUBCASE("incoherent twist") {
    auto p = load("twisted_triangular.json");
    for (auto& [uv, comps] : p.twists)
      if (p.base.arrows[static_cast<std::size_t>(uv.first)].name == "b")
        for (auto& x : comps[0]) x *= 2;
    const auto r = validate_prestack(p);
    CHECK_FALSE(r.valid);
    REQUIRE(r.problems.size() == 1);
    CHECK(r.problems[0].find("coherence fails on the triple (a, b, c)") != std::string::npos);
  }
  SUBCASE("unnatural twist") {
    auto p = load("twisted_triangular.json");
    p.twists.begin()->second[0][2] = 3;
    const auto r = validate_prestack(p);
    CHECK_FALSE(r.valid);
    CHECK(r.problems[0].find("not natural") != std::string::npos);
  }
  SUBCASE("restriction that is not a functor") {
    auto p = load("triangular_to_diagonal.json");
    p.restrictions[0].on_homs[{0, 0}][0][1] = 1;
    CHECK_FALSE(validate_prestack(p).valid);
  }
  SUBCASE("fiber with a wrong identity") {
    auto p = load("dual_numbers.json");
    p.fibers[0].product[{0, 0, 0}][0][1] = Vec{1, 0};
    const auto r = validate_prestack(p);
    CHECK_FALSE(r.valid);
    CHECK(r.problems[0].find("identity axiom") != std::string::npos);
  }
  SUBCASE("parse errors carry a location") {
    try {
      prestack_from_json(R"({"base": {"objects": ["U"], "arrows": [{"name": "u", "source": "U", "target": "V"}]}})");
      FAIL("no error");
    } catch (const PrestackError& e) {
      CHECK(e.where() == "/base/arrows/0/target");
    }
    CHECK_THROWS_AS(prestack_from_json("{"), PrestackError);
  }
}

TEST_CASE("prestack json round trip") {
  for (const char* f : {"dual_numbers.json", "twisted_triangular.json", "path_category.json"}) {
    const auto p = load(f);
    const auto text = prestack_to_json(p);
    CHECK(prestack_to_json(prestack_from_json(text)) == text);
  }
}

TEST_CASE("d0 squares to zero on a twisted prestack") {
  const GSComplex gs(load("twisted_triangular.json"));
  CHECK_FALSE(gs.is_presheaf());
  std::size_t checked = 0;
  for (int n = 0; n <= 3; ++n)
    for (int p = 0; p <= n; ++p) {
      const int q = n - p;
      CHECK((gs.d0_matrix(p, q + 1) * gs.d0_matrix(p, q)).is_zero());
      checked += gs.dim(p, q);
    }
  CHECK(checked > 300);
  CHECK_THROWS_AS(gs.d1(0, 0, Vec(gs.dim(0, 0), Scalar(0))), std::logic_error);
}

TEST_CASE("bicomplex identities on presheaves") {
  for (const char* f : {"triangular_to_diagonal.json", "path_category.json", "constant_chain.json"}) {
    const GSComplex gs(load(f));
    for (int n = 0; n <= 3; ++n)
      for (int p = 0; p <= n; ++p) {
        const int q = n - p;
        CHECK((gs.d0_matrix(p, q + 1) * gs.d0_matrix(p, q)).is_zero());
        CHECK((gs.d1_matrix(p + 1, q) * gs.d1_matrix(p, q)).is_zero());
        CHECK(anticommute(gs.d1_matrix(p, q + 1) * gs.d0_matrix(p, q), gs.d0_matrix(p + 1, q) * gs.d1_matrix(p, q)));
      }
    gs.total(4).check_square_zero();
  }
}

TEST_CASE("d0 on a one-object presheaf is the Hochschild differential") {
  // for the dual numbers the normalized cochains are spanned by f(eps, .., eps)
  const GSComplex gs(load("dual_numbers.json"));
  for (int q = 0; q <= 4; ++q) CHECK(gs.dim(0, q) == 2);
  // q = 0: d0(theta)(eps) = eps theta - theta eps = 0 in a commutative algebra
  CHECK(gs.d0_matrix(0, 0).is_zero());
  // q = 1: f(eps) = eps gives (d0 f)(eps, eps) = eps f(eps) - f(eps^2) + f(eps) eps = 0
  CHECK(gs.d0(0, 1, Vec{0, 1}) == Vec{0, 0});
  // f(eps) = 1 gives 2 eps
  CHECK(gs.d0(0, 1, Vec{1, 0}) == Vec{0, 2});
}

TEST_CASE("d1 of a constant presheaf is the simplicial coboundary") {
  const GSComplex gs(load("constant_chain.json"));
  const auto& base = gs.prestack().base;
  for (int p = 0; p <= 2; ++p) {
    const auto& src = gs.simplices(p);
    const auto& dst = gs.simplices(p + 1);
    const auto m = gs.d1_matrix(p, 0);
    REQUIRE(m.cols() == src.size());
    REQUIRE(m.rows() == dst.size());
    for (std::size_t r = 0; r < dst.size(); ++r) {
      // faces d_0 .. d_{p+1} of the chain of arrows
      SparseMatrix expect(1, src.size());
      const auto& s = dst[r];
      auto index = [&](const std::vector<int>& face) {
        return static_cast<std::size_t>(std::find(src.begin(), src.end(), face) - src.begin());
      };
      for (int i = 0; i <= p + 1; ++i) {
        std::vector<int> face;
        if (p == 0) {
          face = {i == 0 ? base.arrows[static_cast<std::size_t>(s[0])].target : base.arrows[static_cast<std::size_t>(s[0])].source};
        } else if (i == 0) {
          face.assign(s.begin() + 1, s.end());
        } else if (i == p + 1) {
          face.assign(s.begin(), s.end() - 1);
        } else {
          face.assign(s.begin(), s.begin() + i - 1);
          face.push_back(base.composite.at({s[static_cast<std::size_t>(i - 1)], s[static_cast<std::size_t>(i)]}));
          face.insert(face.end(), s.begin() + i + 1, s.end());
        }
        expect.add(0, index(face), (i % 2 ? -1 : 1) * ((p + 1) % 2 ? -1 : 1));
      }
      for (std::size_t c = 0; c < src.size(); ++c) CHECK(m.at(r, c) == expect.at(0, c));
    }
  }
}

TEST_CASE("normalized reduced dimensions") {
  const GSComplex chain(load("constant_chain.json"));
  // the longest chain in the base has three arrows
  CHECK(chain.dim(3, 0) == 1);
  CHECK(chain.dim(4, 0) == 0);
  CHECK(chain.dim(0, 1) == 0);
  const GSComplex tri(load("triangular_to_diagonal.json"));
  // (dim T_2 - 1)^q * dim T_2 over U1, plus (dim k^2 - 1)^q * 2 over U0
  CHECK(tri.dim(0, 2) == 4 * 3 + 1 * 2);
}

TEST_CASE("GS cohomology") {
  const auto dual = gs_cohomology(load("dual_numbers.json"), 4);
  CHECK(dual == BettiTable{{0, 2}, {1, 1}, {2, 1}, {3, 1}});
  const auto hh = oracle::hochschild_dims(oracle::dual_numbers(), 4);
  for (int n = 0; n <= 3; ++n) {
    const std::size_t got = dual.count(n) ? dual.at(n) : 0;
    CHECK(got == hh[static_cast<std::size_t>(n)]);
  }
  CHECK(hh == std::vector<std::size_t>{2, 1, 1, 1, 1});

  // two points joined by an arrow, fiber k: H^0 is the equalizer of the
  // restrictions, which is one-dimensional
  CHECK(gs_cohomology(load("constant_arrow.json"), 3) == BettiTable{{0, 1}});
  CHECK(gs_cohomology(load("constant_chain.json"), 4) == BettiTable{{0, 1}});

  Prestack empty = load("constant_arrow.json");
  for (auto& f : empty.fibers) f = LinearCategory{};
  empty.restrictions[0] = LinearFunctor{};
  CHECK(gs_cohomology(empty, 3).empty());
  CHECK_THROWS(gs_cohomology(load("twisted_triangular.json"), 2));
}
