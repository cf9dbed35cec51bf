#ifndef QUILTKIT_PERMUTATION_HPP
#define QUILTKIT_PERMUTATION_HPP

#include <string>
#include <vector>

namespace qk {

/// Bijection of {1..n}. Composition is (s*t)(k) = s(t(k)); the symmetric
/// groups act on operads from the right, b^(s*t) = (b^s)^t.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> images);

  static Permutation identity(int n);
  /// Transposition (a b) in S_n.
  static Permutation transposition(int n, int a, int b);
  /// All of S_n in lexicographic order of image sequences.
  static std::vector<Permutation> all(int n);

  int size() const { return static_cast<int>(img_.size()); }
  int operator()(int k) const { return img_[static_cast<std::size_t>(k - 1)]; }
  const std::vector<int>& images() const { return img_; }

  Permutation inverse() const;
  int sign() const;
  bool is_identity() const;

  friend Permutation operator*(const Permutation& s, const Permutation& t);
  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

  std::string str() const;

 private:
  std::vector<int> img_;
};

/// Block permutation s ∘_i t in S_{m+n-1} for s ∈ S_m, t ∈ S_n, chosen so
/// that x^s ∘_i y^t = (x ∘_{s(i)} y)^(s ∘_i t) for relabelling actions.
Permutation block_compose(const Permutation& s, int i, const Permutation& t);

/// Sign of the permutation sorting `seq` (distinct values) increasingly.
int sorting_sign(const std::vector<int>& seq);

}  // namespace qk

#endif  // QUILTKIT_PERMUTATION_HPP
