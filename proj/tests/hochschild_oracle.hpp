#ifndef QUILTKIT_TESTS_HOCHSCHILD_ORACLE_HPP
#define QUILTKIT_TESTS_HOCHSCHILD_ORACLE_HPP

// Brute-force Hochschild cohomology of a finite-dimensional algebra from
// structure constants, on the full (unnormalized) cochains Hom(A^n, A).
// Shares nothing with the GS module beyond exact rank.

#include <vector>

#include "quiltkit/chain_complex.hpp"
#include "quiltkit/sparse_matrix.hpp"

namespace oracle {

using qk::Scalar;

struct Algebra {
  int dim = 0;
  // mult[i][j][k]: coefficient of e_k in e_i e_j
  std::vector<std::vector<std::vector<Scalar>>> mult;
};

inline std::size_t power(std::size_t b, int e) {
  std::size_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Matrix of C^n -> C^{n+1}; a cochain f is indexed by (input tuple, output k)
// with the first input most significant.
inline qk::SparseMatrix hochschild_matrix(const Algebra& a, int n) {
  const std::size_t d = static_cast<std::size_t>(a.dim);
  const std::size_t cols = power(d, n) * d, rows = power(d, n + 1) * d;
  qk::SparseMatrix m(rows, cols);
  std::vector<std::size_t> t(static_cast<std::size_t>(n + 1));
  auto flat = [&](const std::vector<std::size_t>& v) {
    std::size_t f = 0;
    for (auto x : v) f = f * d + x;
    return f;
  };
  for (std::size_t in = 0; in < power(d, n + 1); ++in) {
    std::size_t r = in;
    for (int k = n; k >= 0; --k) {
      t[static_cast<std::size_t>(k)] = r % d;
      r /= d;
    }
    // (df)(a_0 .. a_n) = a_0 f(a_1..a_n) + sum (-1)^i f(.., a_{i-1} a_i, ..) + (-1)^{n+1} f(a_0..a_{n-1}) a_n
    for (std::size_t out = 0; out < d; ++out) {
      const std::size_t row = in * d + out;
      std::vector<std::size_t> tail(t.begin() + 1, t.end());
      for (std::size_t k = 0; k < d; ++k) {
        const Scalar c = a.mult[t[0]][k][out];
        if (c != 0) m.add(row, flat(tail) * d + k, c);
      }
      for (int i = 1; i <= n; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        for (std::size_t k = 0; k < d; ++k) {
          const Scalar c = a.mult[t[ui - 1]][t[ui]][k];
          if (c == 0) continue;
          std::vector<std::size_t> merged(t.begin(), t.begin() + i - 1);
          merged.push_back(k);
          merged.insert(merged.end(), t.begin() + i + 1, t.end());
          m.add(row, flat(merged) * d + out, (i % 2 ? -1 : 1) * c);
        }
      }
      std::vector<std::size_t> head(t.begin(), t.end() - 1);
      for (std::size_t k = 0; k < d; ++k) {
        const Scalar c = a.mult[k][t.back()][out];
        if (c != 0) m.add(row, flat(head) * d + k, ((n + 1) % 2 ? -1 : 1) * c);
      }
    }
  }
  return m;
}

// dim HH^n for n = 0 .. top.
inline std::vector<std::size_t> hochschild_dims(const Algebra& a, int top) {
  std::vector<std::size_t> ranks;
  for (int n = 0; n <= top; ++n) ranks.push_back(qk::rank(hochschild_matrix(a, n)));
  std::vector<std::size_t> out;
  for (int n = 0; n <= top; ++n) {
    const std::size_t dimc = power(static_cast<std::size_t>(a.dim), n) * static_cast<std::size_t>(a.dim);
    out.push_back(dimc - ranks[static_cast<std::size_t>(n)] - (n > 0 ? ranks[static_cast<std::size_t>(n - 1)] : 0));
  }
  return out;
}

inline Algebra dual_numbers() {
  Algebra a;
  a.dim = 2;
  a.mult.assign(2, std::vector<std::vector<Scalar>>(2, std::vector<Scalar>(2, Scalar(0))));
  a.mult[0][0][0] = 1;
  a.mult[0][1][1] = 1;
  a.mult[1][0][1] = 1;
  return a;
}

}  // namespace oracle

#endif  // QUILTKIT_TESTS_HOCHSCHILD_ORACLE_HPP
