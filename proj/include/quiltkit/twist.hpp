#ifndef QUILTKIT_TWIST_HPP
#define QUILTKIT_TWIST_HPP

#include <algorithm>
#include <compare>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "quiltkit/brace.hpp"
#include "quiltkit/operad.hpp"
#include "quiltkit/quilt.hpp"

namespace qk {

/// Basis element of a twisted operad: `base` with the formal degree-1
/// constant plugged into its first `blacks` slots. Labels blacks+1.. are the
/// white inputs 1.. in order. Blacks are odd, so permuting them costs the
/// sign of the permutation; canonical representatives list them in preorder.
template <class B>
struct Black {
  B base;
  int blacks = 0;

  friend bool operator==(const Black&, const Black&) = default;
  friend std::strong_ordering operator<=>(const Black& a, const Black& b) {
    if (auto c = a.blacks <=> b.blacks; c != 0) return c;
    return a.base <=> b.base;
  }
};

template <class B>
int basis_arity(const Black<B>& b) {
  return basis_arity(b.base) - b.blacks;
}
template <class B>
int basis_degree(const Black<B>& b) {
  return basis_degree(b.base) + b.blacks;
}

inline const PlanarTree& shape_of(const PlanarTree& t) { return t; }
inline const PlanarTree& shape_of(const Quilt& q) { return q.tree; }

/// (-1)^(n(n+1)/2+1)/(n-1)!: coefficient of L_n(a, .., a, x) in d(x).
Scalar twist_coefficient(int n);
/// (n-1)(-1)^(n(n+1)/2+1)/n!: coefficient of L_n(a,..,a) in d(a).
Scalar curvature_coefficient(int n);

/// Coefficients of a twisted differential: d(x) = dx + sum_n tail(n) [L_n(a, .., a, -), x]
/// and d(a) = sum_n curvature(n) L_n(a, .., a).
struct TwistSeries {
  std::function<Scalar(int)> tail = twist_coefficient;
  std::function<Scalar(int)> curvature = curvature_coefficient;
};

/// Twisting of a dg operad O along an L-infinity morphism l_n -> lie(n),
/// truncated to at most `cap` black inputs. Every identity of the completed
/// operad holds exactly on the components it keeps, since composition and
/// the differential never lower the black count.
template <OperadLike O>
class TwOperad {
 public:
  using Base = typename O::Basis;
  using Basis = Black<Base>;
  using E = Element<Basis>;

  TwOperad(O op, std::string name, std::function<Element<Base>(int)> lie, int max_lie, int cap,
           TwistSeries series = {})
      : op_(std::move(op)),
        name_(std::move(name)),
        lie_(std::move(lie)),
        max_lie_(max_lie),
        cap_(cap),
        series_(std::move(series)) {}

  const O& base_operad() const { return op_; }
  int cap() const { return cap_; }
  std::string name() const { return name_; }
  Basis unit() const { return {op_.unit(), 0}; }
  Basis constant() const { return {op_.unit(), 1}; }

  std::string encode(const Basis& b) const {
    std::string s = op_.encode(b.base);
    if (b.blacks > 0) {
      s += " black{";
      for (int k = 1; k <= b.blacks; ++k) s += (k > 1 ? "," : "") + std::to_string(k);
      s += '}';
    }
    return s;
  }

  /// Sign s and representative c with (base, r) = s * c.
  std::pair<Basis, int> canonical(const Base& base, int r) const {
    if (r <= 1) return {{base, r}, 1};
    const PlanarTree& t = shape_of(base);
    std::vector<int> order(static_cast<std::size_t>(r));
    std::iota(order.begin(), order.end(), 1);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return t.preorder_position(a) < t.preorder_position(b); });
    bool sorted = true;
    for (int k = 0; k < r; ++k) sorted = sorted && order[static_cast<std::size_t>(k)] == k + 1;
    if (sorted) return {{base, r}, 1};
    const int n = basis_arity(base);
    std::vector<int> new_label(static_cast<std::size_t>(n));
    std::iota(new_label.begin(), new_label.end(), 1);
    for (int k = 0; k < r; ++k) new_label[static_cast<std::size_t>(order[static_cast<std::size_t>(k)] - 1)] = k + 1;
    return {Basis{rename(base, new_label), r}, sorting_sign(order)};
  }

  bool is_canonical(const Basis& b) const {
    const PlanarTree& t = shape_of(b.base);
    for (int k = 1; k < b.blacks; ++k)
      if (t.preorder_position(k) > t.preorder_position(k + 1)) return false;
    return true;
  }

  /// All canonical basis elements of arity n with black count <= cap.
  std::vector<Basis> basis(int n) const {
    std::vector<Basis> out;
    for (int r = 0; r <= cap_; ++r) {
      if (n + r == 0) continue;
      for (const auto& b : op_.basis(n + r)) {
        Basis x{b, r};
        if (is_canonical(x)) out.push_back(x);
      }
    }
    return out;
  }

  /// Reads a base element with its first r slots black as a twisted element.
  E from_base(const Element<Base>& x, int r) const {
    E out(x.arity() - r, x.degree() + r);
    if (r > cap_) return out;
    for (const auto& [b, c] : x) add_canonical(out, b, r, c);
    return out;
  }

  Basis act(const Basis& x, const Permutation& s) const {
    const int r = x.blacks, n = s.size();
    std::vector<int> img(static_cast<std::size_t>(r + n));
    for (int k = 1; k <= r; ++k) img[static_cast<std::size_t>(k - 1)] = k;
    for (int k = 1; k <= n; ++k) img[static_cast<std::size_t>(r + k - 1)] = r + s(k);
    // whites move among themselves, so the black preorder stays sorted
    return {op_.act(x.base, Permutation(std::move(img))), r};
  }

  E compose(const Basis& x, int i, const Basis& y) const {
    const int r = x.blacks, s = y.blacks;
    const int m = basis_arity(y);
    E out(basis_arity(x) + m - 1, basis_degree(x) + basis_degree(y));
    if (r + s > cap_) return out;
    const auto raw = op_.compose(x.base, r + i, y.base);
    const int total = raw.arity();
    // move the blacks of y (at r+i .. r+i+s-1) right after those of x
    std::vector<int> new_label(static_cast<std::size_t>(total));
    for (int v = 1; v <= total; ++v) {
      int w = v;
      if (v > r && v < r + i)
        w = v + s;
      else if (v >= r + i && v < r + i + s)
        w = v - (i - 1);
      new_label[static_cast<std::size_t>(v - 1)] = w;
    }
    const int sign = (r * basis_degree(y.base)) % 2 ? -1 : 1;
    for (const auto& [b, c] : raw) add_canonical(out, rename(b, new_label), r + s, sign * c);
    return out;
  }

  /// The image of l_n that the twisting uses.
  const Element<Base>& lie(int n) const {
    auto it = lies_.find(n);
    if (it == lies_.end()) it = lies_.emplace(n, lie_(n)).first;
    return it->second;
  }
  int max_lie() const { return max_lie_; }

  /// L_n(a, .., a, -) with n-1 blacks, arity 1.
  const E& lie_tail(int n) const { return cached(tails_, n, [&] { return from_base(lie(n), n - 1); }); }
  /// L_n(a, .., a), arity 0.
  const E& lie_full(int n) const { return cached(fulls_, n, [&] { return from_base(lie(n), n); }); }

  /// d(a) = sum_n curvature(n) L_n(a, .., a).
  E constant_differential() const { return differential(constant()); }

  E differential(const Basis& x) const {
    const int r = x.blacks, n = basis_arity(x);
    const int deg = basis_degree(x.base);
    E out(n, basis_degree(x) + 1);

    // (d mu) o (a, .., a, 1, .., 1): the first r whites of every term turn black
    for (const auto& [b, c] : base_twisted_differential(x.base, cap_ - r)) {
      if (b.blacks + r > cap_) continue;
      add_canonical(out, b.base, b.blacks + r, c);
    }
    // mu o (a, .., d(a), .., a, 1, .., 1)
    for (int k = 1; k <= r; ++k) {
      for (int l = 2; l <= max_lie_ && r + l - 1 <= cap_; ++l) {
        const auto& L = lie(l);
        if (L.is_zero()) continue;
        const int sign = ((deg + k - 1) + (k - 1) * (2 - l)) % 2 ? -1 : 1;
        const Scalar coef = series_.curvature(l) * sign;
        for (const auto& [lb, lc] : L)
          for (const auto& [b, c] : op_.compose(x.base, k, lb)) add_canonical(out, b, r + l - 1, coef * lc * c);
      }
    }
    return out;
  }

 private:
  /// d^a of an all-white base element viewed in arity N, keeping terms with
  /// at most `budget` blacks.
  E base_twisted_differential(const Base& mu, int budget) const {
    const int N = basis_arity(mu), deg = basis_degree(mu);
    E out(N, deg + 1);
    for (const auto& [b, c] : op_.differential(mu)) out.add({b, 0}, c);
    const Basis w{mu, 0};
    for (int l = 2; l <= max_lie_ && l - 1 <= budget; ++l) {
      const E& tail = lie_tail(l);
      if (tail.is_zero()) continue;
      const Scalar c_in = series_.tail(l);
      if (c_in == 0) continue;
      const Scalar c_out = -sign_scalar(deg) * c_in;
      for (const auto& [t, tc] : tail) {
        out.add_scaled(compose(t, 1, w), c_in * tc);
        for (int j = 1; j <= N; ++j) out.add_scaled(compose(w, j, t), c_out * tc);
      }
    }
    return out;
  }

  Base rename(const Base& b, const std::vector<int>& new_label) const {
    std::vector<int> img(new_label);
    return op_.act(b, Permutation(std::move(img)).inverse());
  }

  void add_canonical(E& out, const Base& b, int r, const Scalar& c) const {
    auto [cb, s] = canonical(b, r);
    out.add(cb, s * c);
  }

  template <class F>
  const E& cached(std::map<int, E>& cache, int n, F make) const {
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, make()).first;
    return it->second;
  }

  O op_;
  std::string name_;
  std::function<Element<Base>(int)> lie_;
  int max_lie_;
  int cap_;
  TwistSeries series_;
  mutable std::map<int, Element<Base>> lies_;
  mutable std::map<int, E> tails_, fulls_;
};

using TwBrace = TwOperad<BraceOperad>;
using TwQuilt = TwOperad<QuiltOperad>;

/// Twisting of Brace by m along l_2; higher l_n act by zero.
TwBrace make_twbrace(int cap);
/// (-1)^n L_n. The displayed twisting coefficients assume the L-infinity
/// relation with the opposite sign on its quadratic side, which this
/// rescaling of the L_n produces; for n = 2 nothing changes.
Element<Quilt> twisting_L(int n);
/// Twisting of Quilt by a along l_n -> twisting_L(n).
TwQuilt make_twquilt(int cap);

/// Each black vertex has at least two children.
bool in_twbrace_ge2(const Black<PlanarTree>& b);
/// Canonical basis of the suboperad in arity n (finite: at most n-1 blacks).
std::vector<Black<PlanarTree>> twbrace_ge2_basis(int n);

/// Applies p to the base and sends a to m.
Element<Black<PlanarTree>> tw_projection(const Element<Black<Quilt>>& x);

/// Plugs the constant into the first r slots (or the last r with at_front
/// false) of x, with cap `cap`.
Element<Black<Quilt>> insert_constants(const TwQuilt& tw, const Element<Quilt>& x, int r, bool at_front = true);

/// Rule (3) of Quilt_b[[c]]. A quilt is drawn with tree edges horizontal and
/// word nesting vertical. Corrected: a black vertex dies when it has a tree
/// child or more than two word children. Literal: only the tree-child clause
/// (the displayed "more than two horizontal children" is subsumed by it).
enum class QuiltbRule { corrected, literal };
/// Rule (3) of mQuilt, read on the quilt turned on its side (tree edges
/// vertical, word nesting horizontal): a black vertex dies when it has more
/// than two tree children or a word child. `with_word_parent` also kills a
/// black letter lying between two occurrences of another letter.
enum class MQuiltRule { basic, with_word_parent };

/// Kills every term with a black vertex violating rule (3). Linear, idempotent.
Element<Black<Quilt>> quiltb_normal_form(const Element<Black<Quilt>>& x, QuiltbRule rule = QuiltbRule::corrected);

/// Kills violating terms and moves each black letter to its earliest
/// admissible position (rule (4)); a term dies if any word reachable by such
/// moves violates rule (3).
Element<Black<Quilt>> mquilt_normal_form(const Element<Black<Quilt>>& x, MQuiltRule rule = MQuiltRule::basic);

enum class TwistKind { c, m };

/// L_n^c = sum_r (-1)^(rn + r(r+1)/2)/r! L_{n+r}(c, .., c, -, .., -) and
/// L_n^m = L_n + (-1)^(n+1) L_{n+1}(m, -, .., -), in the twisting
/// normalization of `tw`, before any normal form.
Element<Black<Quilt>> twisted_L(const TwQuilt& tw, TwistKind kind, int n);

/// Series of d^c = d + d_{L_1^c} and d^m = d + d_{L_1^m}; the constant is
/// sent to L_1^c(c) resp. L_1^m(m).
TwistSeries c_series();
TwistSeries m_series();
TwQuilt make_twquilt(int cap, TwistSeries series, int max_lie);

/// Exact reduction modulo the span of finitely many relation vectors of one
/// (arity, degree). Rows are kept with distinct leading (largest) terms, so
/// the remainder is a normal form.
template <class B>
class RelationSpan {
 public:
  void add(Element<B> v) {
    v = reduce(v);
    if (v.is_zero()) return;
    const auto lead = std::prev(v.end());
    const Scalar inv = 1 / lead->second;
    v *= inv;
    rows_.emplace(lead->first, std::move(v));
  }
  Element<B> reduce(Element<B> v) const {
    for (auto it = rows_.rbegin(); it != rows_.rend(); ++it) {
      const Scalar c = v.coefficient(it->first);
      if (c != 0) v.add_scaled(it->second, -c);
    }
    return v;
  }
  std::size_t rank() const { return rows_.size(); }

 private:
  std::map<B, Element<B>> rows_;
};

/// The quotient mQuilt on the range of a capped TwQuilt: rules (3) and (4)
/// through mquilt_normal_form, then relation (2) L_2(m,m) = 0, whose ideal is
/// spanned by the composites x o_i L_2(m,m).
class MQuiltQuotient {
 public:
  explicit MQuiltQuotient(const TwQuilt& tw, MQuiltRule rule = MQuiltRule::basic) : tw_(tw), rule_(rule) {}
  Element<Black<Quilt>> normal_form(const Element<Black<Quilt>>& x) const;
  std::size_t relation_rank(int arity, int degree) const;

 private:
  const RelationSpan<Black<Quilt>>& span(int arity, int degree) const;

  const TwQuilt& tw_;
  MQuiltRule rule_;
  mutable std::map<int, std::map<int, RelationSpan<Black<Quilt>>>> spans_;  // arity -> degree
  mutable std::map<int, bool> built_;
};

}  // namespace qk

#endif  // QUILTKIT_TWIST_HPP
