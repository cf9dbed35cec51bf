#ifndef QUILTKIT_OPERAD_HPP
#define QUILTKIT_OPERAD_HPP

#include <concepts>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "quiltkit/element.hpp"
#include "quiltkit/permutation.hpp"

namespace qk {

/// A symmetric dg operad presented by a finite labelled basis in each arity.
/// The symmetric action is sign-free relabelling from the right; all signs
/// live in composition and the differential.
template <class O>
concept OperadLike = requires(const O& op, const typename O::Basis& b, const Permutation& s, int i) {
  typename O::Basis;
  { op.name() } -> std::convertible_to<std::string>;
  { op.basis(i) } -> std::same_as<std::vector<typename O::Basis>>;
  { op.compose(b, i, b) } -> std::same_as<Element<typename O::Basis>>;
  { op.act(b, s) } -> std::same_as<typename O::Basis>;
  { op.differential(b) } -> std::same_as<Element<typename O::Basis>>;
  { op.unit() } -> std::same_as<typename O::Basis>;
  { op.encode(b) } -> std::convertible_to<std::string>;
};

template <OperadLike O>
using ElementOf = Element<typename O::Basis>;

/// Bilinear extension of the basis-level partial composition.
template <OperadLike O>
ElementOf<O> compose(const O& op, const ElementOf<O>& x, int i, const ElementOf<O>& y) {
  if (i < 1 || i > x.arity()) throw std::out_of_range("composition slot " + std::to_string(i) + " out of range");
  ElementOf<O> out(x.arity() + y.arity() - 1, x.degree() + y.degree());
  for (const auto& [a, ca] : x)
    for (const auto& [b, cb] : y) out.add_scaled(op.compose(a, i, b), ca * cb);
  return out;
}

template <OperadLike O>
ElementOf<O> differential(const O& op, const ElementOf<O>& x) {
  ElementOf<O> out(x.arity(), x.degree() + 1);
  for (const auto& [a, c] : x) out.add_scaled(op.differential(a), c);
  return out;
}

template <OperadLike O>
ElementOf<O> act(const O& op, const ElementOf<O>& x, const Permutation& s) {
  ElementOf<O> out(x.arity(), x.degree());
  for (const auto& [a, c] : x) out.add(op.act(a, s), c);
  return out;
}

template <OperadLike O>
std::string describe(const O& op, const ElementOf<O>& x) {
  if (x.is_zero()) return "0";
  std::string s;
  for (const auto& [b, c] : x) {
    if (!s.empty()) s += ' ';
    s += (c < 0 ? "- " : "+ ");
    const Scalar a = abs(c);
    if (a != 1) s += to_string(a) + "*";
    s += op.encode(b);
  }
  return s;
}

/// Outcome of an exhaustive or sampled identity check.
struct CheckReport {
  bool passed = true;
  std::size_t checks = 0;
  std::vector<std::string> failures;  // first few counterexamples

  void record(bool ok, const std::function<std::string()>& what) {
    ++checks;
    if (ok) return;
    passed = false;
    if (failures.size() < 5) failures.push_back(what());
  }
  void merge(const CheckReport& o) {
    passed = passed && o.passed;
    checks += o.checks;
    for (const auto& f : o.failures)
      if (failures.size() < 5) failures.push_back(f);
  }
};

struct AxiomOptions {
  int max_arity = 3;             ///< exhaustive range for operands
  int triple_arity = 5;          ///< exhaustive associativity when the composite has arity <= this
  std::size_t random_samples = 0;
  int random_arity = 4;          ///< sampled operands have arity up to this, the first exactly this
  std::uint64_t seed = 1;
};

namespace detail {

template <OperadLike O>
struct AxiomChecker {
  const O& op;

  using B = typename O::Basis;
  using E = ElementOf<O>;

  E comp(const B& x, int i, const B& y) const { return op.compose(x, i, y); }
  E comp(const E& x, int i, const E& y) const { return qk::compose(op, x, i, y); }

  void unit(const B& x, CheckReport& r) const {
    const E ex = E::of(x);
    const B u = op.unit();
    r.record(comp(u, 1, x) == ex, [&] { return "left unit fails on " + op.encode(x); });
    for (int i = 1; i <= basis_arity(x); ++i)
      r.record(comp(x, i, u) == ex, [&] { return "right unit fails on " + op.encode(x) + " slot " + std::to_string(i); });
  }

  void square_zero(const B& x, CheckReport& r) const {
    const E d = op.differential(x);
    r.record(qk::differential(op, d).is_zero(), [&] { return "d^2 != 0 on " + op.encode(x); });
  }

  void derivation(const B& x, int i, const B& y, CheckReport& r) const {
    const E lhs = qk::differential(op, comp(x, i, y));
    E rhs = comp(op.differential(x), i, E::of(y));
    rhs.add_scaled(comp(E::of(x), i, op.differential(y)), sign_scalar(basis_degree(x)));
    r.record(lhs == rhs, [&] {
      return "derivation rule fails: d(" + op.encode(x) + " o_" + std::to_string(i) + " " + op.encode(y) +
             ") = " + describe(op, lhs) + " but expected " + describe(op, rhs);
    });
  }

  void equivariance(const B& x, int i, const B& y, const Permutation& s, const Permutation& t, CheckReport& r) const {
    const E lhs = comp(op.act(x, s), i, op.act(y, t));
    const E rhs = qk::act(op, comp(x, s(i), y), block_compose(s, i, t));
    r.record(lhs == rhs, [&] {
      return "equivariance fails: " + op.encode(x) + "^" + s.str() + " o_" + std::to_string(i) + " " + op.encode(y) +
             "^" + t.str();
    });
  }

  void sequential(const B& x, int i, const B& y, int j, const B& z, CheckReport& r) const {
    const E lhs = comp(comp(x, i, y), i + j - 1, E::of(z));
    const E rhs = comp(E::of(x), i, comp(y, j, z));
    r.record(lhs == rhs, [&] {
      return "sequential associativity fails: " + op.encode(x) + " o_" + std::to_string(i) + " " + op.encode(y) +
             " o_" + std::to_string(j) + " " + op.encode(z);
    });
  }

  void parallel(const B& x, int i, const B& y, int k, const B& z, CheckReport& r) const {
    // i < k are both slots of x
    const int b = basis_arity(y);
    const E lhs = comp(comp(x, i, y), k + b - 1, E::of(z));
    E rhs = comp(comp(x, k, z), i, E::of(y));
    rhs *= sign_scalar(basis_degree(y) * basis_degree(z));
    r.record(lhs == rhs, [&] {
      return "parallel associativity fails: (" + op.encode(x) + " o_" + std::to_string(i) + " " + op.encode(y) +
             ") o_" + std::to_string(k + b - 1) + " " + op.encode(z);
    });
  }

  void all_triple_checks(const B& x, const B& y, const B& z, CheckReport& r) const {
    const int a = basis_arity(x), b = basis_arity(y);
    for (int i = 1; i <= a; ++i) {
      for (int j = 1; j <= b; ++j) sequential(x, i, y, j, z, r);
      for (int k = i + 1; k <= a; ++k) parallel(x, i, y, k, z, r);
    }
  }

  void all_pair_checks(const B& x, const B& y, CheckReport& r) const {
    const int a = basis_arity(x), b = basis_arity(y);
    for (int i = 1; i <= a; ++i) {
      derivation(x, i, y, r);
      const auto ida = Permutation::identity(a), idb = Permutation::identity(b);
      for (int t = 1; t < a; ++t) equivariance(x, i, y, Permutation::transposition(a, t, t + 1), idb, r);
      for (int t = 1; t < b; ++t) equivariance(x, i, y, ida, Permutation::transposition(b, t, t + 1), r);
    }
  }
};

}  // namespace detail

/// Checks unit laws, d^2 = 0, the derivation rule, equivariance (on adjacent
/// transpositions, which generate) and sequential/parallel associativity with
/// Koszul signs. Operands of arity <= max_arity are covered exhaustively for
/// pair identities; triples exhaustively while the composite arity stays
/// within triple_arity; then `random_samples` seeded random instances.
template <OperadLike O>
CheckReport check_operad_axioms(const O& op, const AxiomOptions& opt) {
  detail::AxiomChecker<O> ck{op};
  CheckReport r;
  using B = typename O::Basis;
  std::vector<std::vector<B>> by_arity(static_cast<std::size_t>(std::max(opt.max_arity, opt.random_arity) + 1));
  for (int n = 1; n < static_cast<int>(by_arity.size()); ++n) by_arity[static_cast<std::size_t>(n)] = op.basis(n);

  std::vector<B> universe;
  for (int n = 1; n <= opt.max_arity; ++n)
    universe.insert(universe.end(), by_arity[static_cast<std::size_t>(n)].begin(), by_arity[static_cast<std::size_t>(n)].end());

  for (const auto& x : universe) {
    ck.unit(x, r);
    ck.square_zero(x, r);
  }
  // right-action law on generators
  for (const auto& x : universe) {
    const int n = basis_arity(x);
    for (int t = 1; t < n; ++t)
      for (int u = 1; u < n; ++u) {
        const auto s = Permutation::transposition(n, t, t + 1), w = Permutation::transposition(n, u, u + 1);
        r.record(op.act(op.act(x, s), w) == op.act(x, s * w), [&] { return "right action law fails on " + op.encode(x); });
      }
  }
  for (const auto& x : universe)
    for (const auto& y : universe) ck.all_pair_checks(x, y, r);
  for (const auto& x : universe)
    for (const auto& y : universe)
      for (const auto& z : universe) {
        if (basis_arity(x) + basis_arity(y) + basis_arity(z) - 2 > opt.triple_arity) continue;
        ck.all_triple_checks(x, y, z, r);
      }

  std::mt19937_64 rng(opt.seed);
  auto pick_arity = [&](int hi) { return 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(hi)); };
  auto pick = [&](int n) -> const B& {
    const auto& pool = by_arity[static_cast<std::size_t>(n)];
    return pool[rng() % pool.size()];
  };
  for (std::size_t s = 0; s < opt.random_samples; ++s) {
    const B& x = pick(opt.random_arity);
    const B& y = pick(pick_arity(opt.random_arity));
    const B& z = pick(pick_arity(opt.random_arity));
    const int a = basis_arity(x), b = basis_arity(y);
    const int i = pick_arity(a);
    switch (s % 4) {
      case 0:
        ck.derivation(x, i, y, r);
        break;
      case 1: {
        const int t = pick_arity(a - 1 > 0 ? a - 1 : 1);
        const auto sig = a > 1 ? Permutation::transposition(a, t, t + 1) : Permutation::identity(a);
        const int u = pick_arity(b - 1 > 0 ? b - 1 : 1);
        const auto tau = b > 1 ? Permutation::transposition(b, u, u + 1) : Permutation::identity(b);
        ck.equivariance(x, i, y, sig, tau, r);
        break;
      }
      case 2:
        ck.sequential(x, i, y, pick_arity(b), z, r);
        break;
      default: {
        if (a < 2) {
          ck.square_zero(x, r);
          break;
        }
        const int lo = pick_arity(a - 1);
        const int hi = lo + pick_arity(a - lo);
        ck.parallel(x, lo, y, hi, z, r);
      }
    }
  }
  return r;
}

/// Checks that an arity-indexed linear map commutes with composition, the
/// differential and the symmetric action on basis elements of arity <= max_arity.
template <OperadLike S, OperadLike D>
CheckReport check_morphism(const std::function<ElementOf<D>(const typename S::Basis&)>& f, const S& src,
                           const D& dst, int max_arity) {
  CheckReport r;
  using BS = typename S::Basis;
  auto fe = [&](const ElementOf<S>& x) {
    ElementOf<D> out(x.arity(), x.degree());
    bool first = true;
    for (const auto& [b, c] : x) {
      auto img = f(b);
      if (first) {
        out = ElementOf<D>(img.arity(), img.degree());
        first = false;
      }
      out.add_scaled(img, c);
    }
    return out;
  };
  r.record(f(src.unit()) == ElementOf<D>::of(dst.unit()), [&] { return std::string("unit not preserved"); });
  std::vector<BS> universe;
  for (int n = 1; n <= max_arity; ++n) {
    auto b = src.basis(n);
    universe.insert(universe.end(), b.begin(), b.end());
  }
  for (const auto& x : universe) {
    r.record(fe(src.differential(x)) == qk::differential(dst, f(x)),
             [&] { return "does not commute with d on " + src.encode(x); });
    const int n = basis_arity(x);
    for (int t = 1; t < n; ++t) {
      const auto s = Permutation::transposition(n, t, t + 1);
      r.record(f(src.act(x, s)) == qk::act(dst, f(x), s), [&] { return "not equivariant on " + src.encode(x); });
    }
  }
  for (const auto& x : universe)
    for (const auto& y : universe) {
      if (basis_arity(x) + basis_arity(y) - 1 > max_arity + 1) continue;
      for (int i = 1; i <= basis_arity(x); ++i)
        r.record(fe(src.compose(x, i, y)) == qk::compose(dst, f(x), i, f(y)), [&] {
          return "does not commute with composition: " + src.encode(x) + " o_" + std::to_string(i) + " " + src.encode(y);
        });
    }
  return r;
}

}  // namespace qk

#endif  // QUILTKIT_OPERAD_HPP
