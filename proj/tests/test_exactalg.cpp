#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "quiltkit/chain_complex.hpp"
#include "quiltkit/rational.hpp"
#include "quiltkit/sparse_matrix.hpp"

using namespace qk;

TEST_CASE("scalars stay in lowest terms") {
  CHECK(to_string(parse_scalar("-6/4")) == "-3/2");
  CHECK_THROWS_AS(parse_scalar("6/-4"), std::invalid_argument);
  CHECK(to_string(parse_scalar("10/5")) == "2");
  CHECK_THROWS_AS(parse_scalar("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_scalar("x"), std::invalid_argument);
  CHECK(factorial(5) == 120);
}

TEST_CASE("rank of small matrices") {
  SparseMatrix id(2, 2);
  id.set(0, 0, 1);
  id.set(1, 1, 1);
  CHECK(rank(id) == 2);
  CHECK(rank(SparseMatrix(3, 4)) == 0);

  SparseMatrix m(3, 3);
  m.set(0, 0, 2);
  m.set(0, 1, 4);
  m.set(1, 0, 1);
  m.set(1, 1, 2);
  m.set(2, 2, Scalar(1, 3));
  CHECK(rank(m) == 2);
  m.add(2, 2, Scalar(-1, 3));
  CHECK(m.nonzeros() == 4);
}

TEST_CASE("top boundary of the 2-simplex has rank 1") {
  const auto c = simplex_cellular_complex(2);
  CHECK(c.lowest_degree() == -2);
  CHECK(rank(c.differential(-2)) == 1);
  CHECK(rank(c.differential(-1)) == 2);
}

TEST_CASE("betti numbers") {
  ChainComplex flat(0, {2, 3});
  CHECK(betti(flat) == BettiTable{{0, 2}, {1, 3}});
  CHECK(betti(simplex_cellular_complex(2)) == BettiTable{{0, 1}});
  for (int k = 0; k <= 4; ++k) CHECK(betti(simplex_cellular_complex(k)) == BettiTable{{0, 1}});

  ChainComplex bad(0, {1, 1, 1});
  SparseMatrix one(1, 1);
  one.set(0, 0, 1);
  bad.set_differential(0, one);
  bad.set_differential(1, one);
  CHECK_THROWS_AS(betti(bad), std::domain_error);
  CHECK_THROWS(bad.set_differential(0, SparseMatrix(2, 1)));
}

TEST_CASE("betti table json round trip") {
  const BettiTable t{{-1, 3}, {2, 1}};
  CHECK(betti_from_json(betti_to_json(t)) == t);
}

TEST_CASE("rank is invariant under row and column permutations") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t r = 1 + rng() % 7, c = 1 + rng() % 7;
    SparseMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        if (rng() % 3 == 0) m.set(i, j, Scalar(static_cast<long>(rng() % 5) - 2, 1 + static_cast<long>(rng() % 3)));
    // force a dependency
    if (r > 1)
      for (const auto& [j, v] : m.row(0)) m.add(r - 1, j, 2 * v);
    std::vector<std::size_t> rp(r), cp(c);
    std::iota(rp.begin(), rp.end(), 0);
    std::iota(cp.begin(), cp.end(), 0);
    std::shuffle(rp.begin(), rp.end(), rng);
    std::shuffle(cp.begin(), cp.end(), rng);
    CHECK(rank(m) == rank(m.permuted(rp, cp)));
    CHECK(rank(m) == rank(m.transpose()));
  }
}

TEST_CASE("euler characteristic matches betti") {
  for (int k = 0; k <= 4; ++k) {
    const auto c = simplex_cellular_complex(k);
    const auto h = betti(c);
    std::map<int, std::size_t> b(h.begin(), h.end());
    CHECK(euler_characteristic(b) == euler_characteristic(c));
  }
}
