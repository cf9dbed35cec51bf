#ifndef QUILTKIT_HOMOTOPY_HPP
#define QUILTKIT_HOMOTOPY_HPP

#include "quiltkit/operad.hpp"
#include "quiltkit/quilt.hpp"

namespace qk {

/// Sum of the standard-order quilts (W, T) of degree 2 - n, each with sign
/// (-1)^n times the sorting sign of int(W). The per-word factor matches the
/// caesura orientation used by the word differential; no sign uniform in
/// (W, T) satisfies the relations below at n = 4.
Element<Quilt> build_P(int n);
/// Antisymmetrization of P_n over S_n.
Element<Quilt> build_L(int n);
/// Antisymmetrization of P_n over the permutations fixing 1.
Element<Quilt> build_PL(int n);

/// Sum over sigma with sigma(1) = 1 (or over all of S_n) of (-1)^sigma x^sigma.
Element<Quilt> antisymmetrize(const Element<Quilt>& x, bool fix_first);

/// Sum over k + l = n + 1 (k, l >= 2) and 1 <= i <= k of
/// (-1)^((k-1)l + (i-1)(l-1)) P_k o_i P_l.
Element<Quilt> quadratic_P_terms(int n);

/// d(PL_n) against the fixed-first antisymmetrization of quadratic_P_terms.
CheckReport check_prelieinf_relation(int n);
/// d(L_n) against the full antisymmetrization of quadratic_P_terms.
CheckReport check_linf_relation(int n);
/// L_n = sum_j (-1)^(1j) PL_n^(1j).
CheckReport check_coset_identity(int n);

}  // namespace qk

#endif  // QUILTKIT_HOMOTOPY_HPP
