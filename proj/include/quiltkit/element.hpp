#ifndef QUILTKIT_ELEMENT_HPP
#define QUILTKIT_ELEMENT_HPP

#include <map>
#include <stdexcept>
#include <string>

#include "quiltkit/rational.hpp"

namespace qk {

/// Homogeneous finite linear combination of basis elements of type B.
///
/// B must be totally ordered (it is the map key) and provide the ADL free
/// functions `basis_arity(b)` and `basis_degree(b)`; every term added is
/// checked against the element's arity and degree.
template <class B>
class Element {
 public:
  using Basis = B;
  using Terms = std::map<B, Scalar>;

  Element() = default;
  Element(int arity, int degree) : arity_(arity), degree_(degree) {}

  static Element of(const B& b, const Scalar& c = 1) {
    Element e(basis_arity(b), basis_degree(b));
    e.add(b, c);
    return e;
  }

  int arity() const { return arity_; }
  int degree() const { return degree_; }
  const Terms& terms() const { return terms_; }
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  Scalar coefficient(const B& b) const {
    auto it = terms_.find(b);
    return it == terms_.end() ? Scalar(0) : it->second;
  }

  void add(const B& b, const Scalar& c) {
    if (c == 0) return;
    if (basis_arity(b) != arity_ || basis_degree(b) != degree_)
      throw std::logic_error("inhomogeneous term: arity " + std::to_string(basis_arity(b)) + " degree " +
                             std::to_string(basis_degree(b)) + " in element of arity " + std::to_string(arity_) +
                             " degree " + std::to_string(degree_));
    auto [it, inserted] = terms_.try_emplace(b, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  /// Adds c·other; a zero `other` of any shape is accepted.
  void add_scaled(const Element& other, const Scalar& c) {
    if (c == 0) return;
    for (const auto& [b, v] : other.terms_) add(b, c * v);
  }

  Element& operator+=(const Element& o) {
    add_scaled(o, 1);
    return *this;
  }
  Element& operator-=(const Element& o) {
    add_scaled(o, -1);
    return *this;
  }
  Element& operator*=(const Scalar& c) {
    if (c == 0)
      terms_.clear();
    else
      for (auto& [b, v] : terms_) v *= c;
    return *this;
  }

  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator*(const Scalar& c, Element a) { return a *= c; }
  friend Element operator-(Element a) { return a *= Scalar(-1); }

  /// Equality of linear combinations; zero elements compare equal regardless
  /// of their nominal arity and degree.
  friend bool operator==(const Element& a, const Element& b) {
    if (a.is_zero() && b.is_zero()) return true;
    return a.arity_ == b.arity_ && a.degree_ == b.degree_ && a.terms_ == b.terms_;
  }

 private:
  int arity_ = 0;
  int degree_ = 0;
  Terms terms_;
};

}  // namespace qk

#endif  // QUILTKIT_ELEMENT_HPP
