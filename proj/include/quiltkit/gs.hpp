#ifndef QUILTKIT_GS_HPP
#define QUILTKIT_GS_HPP

#include <array>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "quiltkit/chain_complex.hpp"
#include "quiltkit/rational.hpp"
#include "quiltkit/sparse_matrix.hpp"

namespace qk {

using Vec = std::vector<Scalar>;

/// Malformed prestack input. `where` is a JSON-pointer-like location.
class PrestackError : public std::runtime_error {
 public:
  PrestackError(std::string where, const std::string& what)
      : std::runtime_error(where + ": " + what), where_(std::move(where)) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

/// A k-linear category with finitely many objects and chosen bases of the
/// Hom spaces.
struct LinearCategory {
  std::vector<std::string> objects;
  /// dim[x][y] = dim Hom(x, y)
  std::vector<std::vector<int>> dim;
  /// product[{x, y, z}][i][j] = e_i o e_j for e_i in Hom(y, z), e_j in Hom(x, y)
  std::map<std::array<int, 3>, std::vector<std::vector<Vec>>> product;
  /// identity[x] in Hom(x, x)
  std::vector<Vec> identity;

  int size() const { return static_cast<int>(objects.size()); }
  int hom_dim(int x, int y) const { return dim[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)]; }
  /// g o f for f: x -> y and g: y -> z.
  Vec compose(int x, int y, int z, const Vec& g, const Vec& f) const;
};

/// A linear functor between two LinearCategory instances.
struct LinearFunctor {
  std::vector<int> on_objects;
  /// on_homs[{x, y}] is the dim Hom(Fx, Fy) x dim Hom(x, y) matrix
  std::map<std::pair<int, int>, std::vector<Vec>> on_homs;

  Vec apply(int x, int y, const Vec& f) const;
};

/// A finite acyclic category given by its non-identity morphisms.
struct BaseCategory {
  struct Arrow {
    std::string name;
    int source = 0;
    int target = 0;
  };
  std::vector<std::string> objects;
  std::vector<Arrow> arrows;
  /// composite[{u, v}] = v o u for u: a -> b, v: b -> c
  std::map<std::pair<int, int>, int> composite;
};

/// A prestack over a finite acyclic base: fibers, restrictions u* (from the
/// fiber over the target of u to the fiber over its source) and twists
/// c^{v,u}: u* v* => (v o u)* for every composable pair u then v.
struct Prestack {
  BaseCategory base;
  std::vector<LinearCategory> fibers;
  std::vector<LinearFunctor> restrictions;  // per arrow
  /// twists[{u, v}][A] in Hom(u* v* A, (v o u)* A) of the fiber over source(u)
  std::map<std::pair<int, int>, std::vector<Vec>> twists;
};

Prestack prestack_from_json(const std::string& text);
std::string prestack_to_json(const Prestack& p);

struct PrestackReport {
  bool valid = true;
  bool presheaf = true;
  std::vector<std::string> problems;
};

/// Checks the category, functor, naturality, invertibility and coherence
/// axioms exactly. A valid prestack is a presheaf when every twist is an
/// identity.
PrestackReport validate_prestack(const Prestack& p);

/// The normalized reduced GS cochains C^{p,q} with the Hochschild component
/// d0 and, for presheaves, the simplicial component d1. A cochain is the
/// dense coordinate vector of one C^{p,q}.
class GSComplex {
 public:
  explicit GSComplex(Prestack p);

  const Prestack& prestack() const { return p_; }
  bool is_presheaf() const { return presheaf_; }

  /// Nondegenerate p-simplices: chains of p composable arrows (objects for p = 0).
  const std::vector<std::vector<int>>& simplices(int p) const;
  std::size_t dim(int p, int q) const;

  Vec d0(int p, int q, const Vec& theta) const;
  /// Throws std::logic_error unless the prestack is a presheaf.
  Vec d1(int p, int q, const Vec& theta) const;

  SparseMatrix d0_matrix(int p, int q) const;
  SparseMatrix d1_matrix(int p, int q) const;

  /// Totalization through total degree `top`, differential d0 + d1.
  ChainComplex total(int top) const;

 private:
  struct Block {
    std::vector<int> simplex;  // arrows, or {object} when p = 0
    std::vector<int> objects;  // A_0 .. A_q in the fiber over U_p
    std::size_t offset = 0;
    std::vector<std::size_t> in_dims;  // normalized dims of Hom(A_i, A_{i-1})
    int out_src = 0, out_dst = 0;      // sigma# A_q and sigma* A_0 in the fiber over U_0
    std::size_t out_dim = 0;
  };
  struct Layout {
    std::vector<Block> blocks;
    std::map<std::pair<std::vector<int>, std::vector<int>>, std::size_t> index;
    std::size_t dim = 0;
  };

  const Layout& layout(int p, int q) const;
  int first_object(const std::vector<int>& simplex, int p) const;
  int last_object(const std::vector<int>& simplex, int p) const;
  /// sigma# and sigma* on an object and on a morphism of the fiber over U_p.
  int sharp_object(const std::vector<int>& s, int x) const;
  int star_object(const std::vector<int>& s, int x) const;
  Vec sharp_map(const std::vector<int>& s, int x, int y, const Vec& f) const;
  Vec star_map(const std::vector<int>& s, int x, int y, const Vec& f) const;
  int composite_of(const std::vector<int>& s) const;

  /// Normalized coordinates of f in Hom(x, y) (the identity component dropped).
  Vec reduce(int fiber, int x, int y, const Vec& f) const;
  /// theta^s(A)(a_1, .., a_q) for arbitrary morphisms a_i.
  Vec evaluate(int p, int q, const Vec& theta, const std::vector<int>& s, const std::vector<int>& objs,
               const std::vector<Vec>& args) const;
  /// Enumerates the normalized basis tuples of a block, calling f(flat input index, tuple of basis morphisms).
  template <class F>
  void for_each_input(const Block& b, int fiber, F f) const;
  Vec basis_morphism(int fiber, int x, int y, std::size_t k) const;

  Prestack p_;
  bool presheaf_ = true;
  mutable std::map<int, std::vector<std::vector<int>>> simplices_;
  mutable std::map<std::pair<int, int>, Layout> layouts_;
};

/// Betti numbers H^n of the normalized reduced GS complex for n <= bound - 1,
/// from the totalization through degree bound + 1. Presheaves only.
BettiTable gs_cohomology(const Prestack& p, int bound);

}  // namespace qk

#endif  // QUILTKIT_GS_HPP
