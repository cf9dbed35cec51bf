#ifndef QUILTKIT_CHAIN_COMPLEX_HPP
#define QUILTKIT_CHAIN_COMPLEX_HPP

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "quiltkit/sparse_matrix.hpp"

namespace qk {

/// Per-degree homology dimensions; only nonzero degrees are stored.
using BettiTable = std::map<int, std::size_t>;

/// Cochain complex C^lo -> C^{lo+1} -> ... -> C^hi over Q with a degree +1
/// differential. `differential(d)` is the dims(d+1) x dims(d) matrix of
/// C^d -> C^{d+1}; differentials leaving the range are zero.
class ChainComplex {
 public:
  ChainComplex() = default;
  ChainComplex(int lowest_degree, std::vector<std::size_t> dims);

  int lowest_degree() const { return lo_; }
  int highest_degree() const { return lo_ + static_cast<int>(dims_.size()) - 1; }
  bool empty() const { return dims_.empty(); }

  std::size_t dim(int degree) const;
  const SparseMatrix& differential(int degree) const;
  void set_differential(int degree, SparseMatrix d);

  /// Throws std::domain_error naming the first degree with d∘d != 0.
  void check_square_zero() const;

 private:
  int lo_ = 0;
  std::vector<std::size_t> dims_;
  std::vector<SparseMatrix> diffs_;
  SparseMatrix zero_;
};

/// dim H^d = dims[d] - rank(d_d) - rank(d_{d-1}); rejects complexes with
/// d∘d != 0.
BettiTable betti(const ChainComplex& c);

/// Alternating sum of a table of dimensions.
long euler_characteristic(const std::map<int, std::size_t>& dims);
long euler_characteristic(const ChainComplex& c);

/// [{"degree": d, "dim": k}, ...] in increasing degree.
std::string betti_to_json(const BettiTable& table);
BettiTable betti_from_json(const std::string& text);

/// Cellular cochain complex of the simplex Δ^{k}, living in degrees -k..0:
/// faces with j+1 vertices sit in degree -j, boundary with the usual
/// alternating signs. Faces are ordered as increasing vertex subsets,
/// lexicographically within each degree.
ChainComplex simplex_cellular_complex(int k);

}  // namespace qk

#endif  // QUILTKIT_CHAIN_COMPLEX_HPP
