#ifndef QUILTKIT_COMPLEX_BUILDER_HPP
#define QUILTKIT_COMPLEX_BUILDER_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

#include "quiltkit/chain_complex.hpp"
#include "quiltkit/element.hpp"

namespace qk {

/// A chain complex together with the basis of every degree, in the order
/// used for the matrix columns.
template <class B>
struct BasedComplex {
  ChainComplex complex;
  std::map<int, std::vector<B>> basis;

  std::size_t index(int degree, const B& b) const {
    const auto& v = basis.at(degree);
    const auto it = std::lower_bound(v.begin(), v.end(), b);
    if (it == v.end() || !(*it == b)) throw std::out_of_range("basis element not in complex");
    return static_cast<std::size_t>(it - v.begin());
  }
};

/// Builds the complex spanned by `elements` (sorted within each degree) with
/// the given differential. Terms of a differential outside the span throw, so
/// the span must be closed under d.
template <class B>
BasedComplex<B> build_complex(std::vector<B> elements, const std::function<Element<B>(const B&)>& d) {
  BasedComplex<B> out;
  for (auto& b : elements) out.basis[basis_degree(b)].push_back(std::move(b));
  if (out.basis.empty()) return out;
  for (auto& [deg, v] : out.basis) std::sort(v.begin(), v.end());
  const int lo = out.basis.begin()->first, hi = out.basis.rbegin()->first;
  for (int k = lo; k <= hi; ++k) out.basis[k];
  std::vector<std::size_t> dims;
  for (int k = lo; k <= hi; ++k) dims.push_back(out.basis[k].size());
  out.complex = ChainComplex(lo, dims);
  for (int k = lo; k < hi; ++k) {
    const auto& src = out.basis[k];
    SparseMatrix m(out.basis[k + 1].size(), src.size());
    for (std::size_t c = 0; c < src.size(); ++c)
      for (const auto& [t, v] : d(src[c])) m.add(out.index(k + 1, t), c, v);
    out.complex.set_differential(k, std::move(m));
  }
  for (const auto& b : out.basis[hi])
    if (!d(b).is_zero()) throw std::logic_error("differential leaves the top degree of the span");
  return out;
}

}  // namespace qk

#endif  // QUILTKIT_COMPLEX_BUILDER_HPP
