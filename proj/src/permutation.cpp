#include "quiltkit/permutation.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace qk {

Permutation::Permutation(std::vector<int> images) : img_(std::move(images)) {
  std::vector<bool> seen(img_.size() + 1, false);
  for (int v : img_) {
    if (v < 1 || v > size() || seen[static_cast<std::size_t>(v)])
      throw std::invalid_argument("not a permutation: " + str());
    seen[static_cast<std::size_t>(v)] = true;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 1);
  return Permutation(std::move(v));
}

Permutation Permutation::transposition(int n, int a, int b) {
  auto p = identity(n);
  std::swap(p.img_[static_cast<std::size_t>(a - 1)], p.img_[static_cast<std::size_t>(b - 1)]);
  return p;
}

std::vector<Permutation> Permutation::all(int n) {
  std::vector<Permutation> out;
  auto v = identity(n).img_;
  do {
    out.emplace_back(v);
  } while (std::next_permutation(v.begin(), v.end()));
  return out;
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(img_.size());
  for (std::size_t k = 0; k < img_.size(); ++k) inv[static_cast<std::size_t>(img_[k] - 1)] = static_cast<int>(k) + 1;
  return Permutation(std::move(inv));
}

int Permutation::sign() const { return sorting_sign(img_); }

bool Permutation::is_identity() const {
  for (std::size_t k = 0; k < img_.size(); ++k)
    if (img_[k] != static_cast<int>(k) + 1) return false;
  return true;
}

Permutation operator*(const Permutation& s, const Permutation& t) {
  if (s.size() != t.size()) throw std::invalid_argument("composing permutations of different size");
  std::vector<int> v(t.img_.size());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = s(t.img_[k]);
  return Permutation(std::move(v));
}

std::string Permutation::str() const {
  std::string s = "[";
  for (std::size_t k = 0; k < img_.size(); ++k) {
    if (k) s += ' ';
    s += std::to_string(img_[k]);
  }
  return s + "]";
}

Permutation block_compose(const Permutation& s, int i, const Permutation& t) {
  const int m = s.size(), n = t.size();
  const Permutation s_inv = s.inverse(), t_inv = t.inverse();
  const int slot = s(i);
  // rho_inv maps a position of x ∘_{s(i)} y to the matching position of x^s ∘_i y^t.
  std::vector<int> rho_inv(static_cast<std::size_t>(m + n - 1));
  for (int a = 1; a <= m; ++a) {
    if (a == slot) continue;
    const int first = a < slot ? a : a + n - 1;
    const int b = s_inv(a);
    const int second = b < i ? b : b + n - 1;
    rho_inv[static_cast<std::size_t>(first - 1)] = second;
  }
  for (int c = 1; c <= n; ++c) rho_inv[static_cast<std::size_t>(slot + c - 2)] = i + t_inv(c) - 1;
  return Permutation(std::move(rho_inv)).inverse();
}

int sorting_sign(const std::vector<int>& seq) {
  int inversions = 0;
  for (std::size_t a = 0; a < seq.size(); ++a)
    for (std::size_t b = a + 1; b < seq.size(); ++b)
      if (seq[a] > seq[b]) ++inversions;
  return inversions % 2 == 0 ? 1 : -1;
}

}  // namespace qk
