#include "quiltkit/homotopy.hpp"

#include <map>
#include <stdexcept>

namespace qk {

namespace {

const Element<Quilt>& cached_P(int n) {
  static std::map<int, Element<Quilt>> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  if (n < 2) throw std::invalid_argument("P_n needs n >= 2");
  Element<Quilt> p(n, 2 - n);
  const int base = n;
  for (const auto& t : enumerate_trees(n)) {
    if (!t.in_standard_order()) continue;
    for (const auto& w : words_quilting(t))
      if (w.degree() == 2 - n) p.add({w, t}, sign_scalar(base) * sorting_sign(interposed_set(w)));
  }
  return cache.emplace(n, std::move(p)).first->second;
}

}  // namespace

Element<Quilt> build_P(int n) { return cached_P(n); }

Element<Quilt> antisymmetrize(const Element<Quilt>& x, bool fix_first) {
  QuiltOperad op;
  Element<Quilt> out(x.arity(), x.degree());
  for (const auto& s : Permutation::all(x.arity())) {
    if (fix_first && s(1) != 1) continue;
    out.add_scaled(act(op, x, s), s.sign());
  }
  return out;
}

Element<Quilt> build_L(int n) { return antisymmetrize(cached_P(n), false); }
Element<Quilt> build_PL(int n) { return antisymmetrize(cached_P(n), true); }

Element<Quilt> quadratic_P_terms(int n) {
  QuiltOperad op;
  Element<Quilt> out(n, 3 - n);
  for (int k = 2; k <= n - 1; ++k) {
    const int l = n + 1 - k;
    for (int i = 1; i <= k; ++i)
      out.add_scaled(compose(op, cached_P(k), i, cached_P(l)), sign_scalar((k - 1) * l + (i - 1) * (l - 1)));
  }
  return out;
}

CheckReport check_prelieinf_relation(int n) {
  QuiltOperad op;
  CheckReport r;
  const auto lhs = differential(op, build_PL(n));
  const auto rhs = antisymmetrize(quadratic_P_terms(n), true);
  r.record(lhs == rhs, [&] {
    return "pre-Lie infinity relation fails at n=" + std::to_string(n) + ": d(PL_n) has " +
           std::to_string(lhs.size()) + " terms, quadratic side " + std::to_string(rhs.size());
  });
  return r;
}

CheckReport check_linf_relation(int n) {
  QuiltOperad op;
  CheckReport r;
  const auto lhs = differential(op, build_L(n));
  const auto rhs = antisymmetrize(quadratic_P_terms(n), false);
  r.record(lhs == rhs, [&] {
    return "L-infinity relation fails at n=" + std::to_string(n) + ": d(L_n) has " + std::to_string(lhs.size()) +
           " terms, quadratic side " + std::to_string(rhs.size());
  });
  return r;
}

CheckReport check_coset_identity(int n) {
  QuiltOperad op;
  CheckReport r;
  const auto pl = build_PL(n);
  Element<Quilt> sum(n, 2 - n);
  for (int j = 1; j <= n; ++j) {
    const auto t = Permutation::transposition(n, 1, j);
    sum.add_scaled(act(op, pl, t), j == 1 ? 1 : -1);
  }
  r.record(sum == build_L(n), [&] { return "L_n differs from the coset sum of PL_n at n=" + std::to_string(n); });
  return r;
}

}  // namespace qk
