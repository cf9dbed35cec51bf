#include "quiltkit/twist.hpp"

#include "quiltkit/homotopy.hpp"

namespace qk {

Scalar twist_coefficient(int n) { return sign_scalar(n * (n + 1) / 2 + 1) / factorial(static_cast<unsigned>(n - 1)); }

Scalar curvature_coefficient(int n) { return (n - 1) * sign_scalar(n * (n + 1) / 2 + 1) / factorial(static_cast<unsigned>(n)); }

TwBrace make_twbrace(int cap) {
  return TwBrace(BraceOperad{}, "twbrace",
                 [](int n) { return n == 2 ? lie_generator() : Element<PlanarTree>(n, 0); }, 2, cap);
}

Element<Quilt> twisting_L(int n) {
  auto l = build_L(n);
  l *= sign_scalar(n);
  return l;
}

TwQuilt make_twquilt(int cap) { return make_twquilt(cap, TwistSeries{}, cap + 1); }

TwQuilt make_twquilt(int cap, TwistSeries series, int max_lie) {
  return TwQuilt(QuiltOperad{}, "twquilt", twisting_L, max_lie, cap, std::move(series));
}

bool in_twbrace_ge2(const Black<PlanarTree>& b) {
  for (int v = 1; v <= b.blacks; ++v)
    if (b.base.children(v).size() < 2) return false;
  return true;
}

std::vector<Black<PlanarTree>> twbrace_ge2_basis(int n) {
  // Blacks are unlabelled up to sign: choose a shape, the black positions
  // (each with >= 2 children), then any labelling of the whites.
  std::vector<Black<PlanarTree>> out;
  for (int r = 0; r < std::max(n, 1); ++r) {
    const int N = n + r;
    if (N == 0) continue;
    for (const auto& par : planar_shapes(N)) {
      std::vector<int> nkids(static_cast<std::size_t>(N), 0);
      for (int p = 1; p < N; ++p) ++nkids[static_cast<std::size_t>(par[static_cast<std::size_t>(p)])];
      std::vector<int> mask(static_cast<std::size_t>(N), 0);
      std::fill(mask.end() - r, mask.end(), 1);
      do {
        bool ok = true;
        for (int p = 0; p < N; ++p)
          if (mask[static_cast<std::size_t>(p)] && nkids[static_cast<std::size_t>(p)] < 2) ok = false;
        if (!ok) continue;
        std::vector<int> whites(static_cast<std::size_t>(n));
        std::iota(whites.begin(), whites.end(), r + 1);
        do {
          std::vector<int> label(static_cast<std::size_t>(N));
          int nb = 0, nw = 0;
          for (int p = 0; p < N; ++p)
            label[static_cast<std::size_t>(p)] =
                mask[static_cast<std::size_t>(p)] ? ++nb : whites[static_cast<std::size_t>(nw++)];
          std::vector<std::vector<int>> kids(static_cast<std::size_t>(N + 1));
          kids[0] = {label[0]};
          for (int p = 1; p < N; ++p)
            kids[static_cast<std::size_t>(label[static_cast<std::size_t>(par[static_cast<std::size_t>(p)])])].push_back(
                label[static_cast<std::size_t>(p)]);
          out.push_back({PlanarTree(std::move(kids)), r});
        } while (std::next_permutation(whites.begin(), whites.end()));
      } while (std::next_permutation(mask.begin(), mask.end()));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Element<Black<PlanarTree>> tw_projection(const Element<Black<Quilt>>& x) {
  Element<Black<PlanarTree>> out(x.arity(), x.degree());
  for (const auto& [b, c] : x) {
    const auto p = project_to_brace(b.base);
    // the black preorder only depends on the tree, so p keeps canonical form
    for (const auto& [t, tc] : p) out.add({t, b.blacks}, c * tc);
  }
  return out;
}

Element<Black<Quilt>> insert_constants(const TwQuilt& tw, const Element<Quilt>& x, int r, bool at_front) {
  if (r < 0 || r > x.arity()) throw std::invalid_argument("insert_constants: bad count");
  if (at_front) return tw.from_base(x, r);
  // constants into the last r slots: relabel them to the front, which moves
  // only even inputs past them
  const int n = x.arity();
  std::vector<int> img(static_cast<std::size_t>(n));
  for (int v = 1; v <= n; ++v) img[static_cast<std::size_t>(v - 1)] = v > n - r ? v - (n - r) : v + r;
  const auto s = Permutation(std::move(img)).inverse();
  return tw.from_base(act(tw.base_operad(), x, s), r);
}

// ---- quotients ----

namespace {

bool quiltb_violates(const Quilt& q, int i, QuiltbRule rule) {
  const bool tree_child = !q.tree.children(i).empty();
  if (rule == QuiltbRule::literal) return tree_child;
  return tree_child || word_children(q.word, i).size() > 2;
}

bool mquilt_violates(const Quilt& q, int i, MQuiltRule rule) {
  if (q.tree.children(i).size() > 2 || !word_children(q.word, i).empty()) return true;
  if (rule == MQuiltRule::with_word_parent)
    for (int j = 1; j <= q.arity(); ++j)
      if (j != i && q.word.below(j, i)) return true;
  return false;
}

// Words obtained by moving the single occurrence of black letter i.
std::vector<Word> black_moves(const Quilt& q, int i) {
  std::vector<int> rest;
  for (int a : q.word.letters())
    if (a != i) rest.push_back(a);
  std::vector<Word> out;
  for (std::size_t p = 0; p <= rest.size(); ++p) {
    std::vector<int> letters(rest.begin(), rest.begin() + static_cast<std::ptrdiff_t>(p));
    letters.push_back(i);
    letters.insert(letters.end(), rest.begin() + static_cast<std::ptrdiff_t>(p), rest.end());
    Word w(q.arity(), std::move(letters));
    if (w != q.word && is_admissible(w) && is_quilt(w, q.tree)) out.push_back(std::move(w));
  }
  return out;
}

std::vector<int> black_positions(const Word& w, int r) {
  std::vector<int> pos(static_cast<std::size_t>(r), -1);
  for (int p = 0; p < w.length(); ++p) {
    const int a = w.letters()[static_cast<std::size_t>(p)];
    if (a <= r && pos[static_cast<std::size_t>(a - 1)] < 0) pos[static_cast<std::size_t>(a - 1)] = p;
  }
  return pos;
}

}  // namespace

Element<Black<Quilt>> quiltb_normal_form(const Element<Black<Quilt>>& x, QuiltbRule rule) {
  Element<Black<Quilt>> out(x.arity(), x.degree());
  for (const auto& [b, c] : x) {
    bool dead = false;
    for (int i = 1; i <= b.blacks && !dead; ++i) dead = quiltb_violates(b.base, i, rule);
    if (!dead) out.add(b, c);
  }
  return out;
}

Element<Black<Quilt>> mquilt_normal_form(const Element<Black<Quilt>>& x, MQuiltRule rule) {
  Element<Black<Quilt>> out(x.arity(), x.degree());
  for (const auto& [b, c] : x) {
    const int r = b.blacks;
    // the class of b under rule (4), explored breadth first
    std::vector<Quilt> seen{b.base};
    bool dead = false;
    for (std::size_t k = 0; k < seen.size() && !dead; ++k) {
      const Quilt q = seen[k];
      for (int i = 1; i <= r && !dead; ++i) dead = mquilt_violates(q, i, rule);
      if (dead) break;
      for (int i = 1; i <= r; ++i)
        for (auto& w : black_moves(q, i)) {
          Quilt next{std::move(w), q.tree};
          if (std::find(seen.begin(), seen.end(), next) == seen.end()) seen.push_back(std::move(next));
        }
    }
    if (dead) continue;
    const auto best = std::min_element(seen.begin(), seen.end(), [&](const Quilt& a, const Quilt& b2) {
      return black_positions(a.word, r) < black_positions(b2.word, r);
    });
    out.add({*best, r}, c);
  }
  return out;
}

Element<Black<Quilt>> twisted_L(const TwQuilt& tw, TwistKind kind, int n) {
  if (n < 1) throw std::invalid_argument("twisted_L needs n >= 1");
  Element<Black<Quilt>> out(n, 2 - n);
  auto lie = [&](int k) { return k >= 2 && k <= tw.max_lie() ? tw.lie(k) : Element<Quilt>(k, 2 - k); };
  if (kind == TwistKind::m) {
    out.add_scaled(tw.from_base(lie(n), 0), 1);
    out.add_scaled(tw.from_base(lie(n + 1), 1), sign_scalar(n + 1));
    return out;
  }
  for (int r = 0; r <= tw.cap(); ++r)
    out.add_scaled(tw.from_base(lie(n + r), r), sign_scalar(r * n + r * (r + 1) / 2) / factorial(static_cast<unsigned>(r)));
  return out;
}

TwistSeries c_series() {
  // L_1^c = sum_r (-1)^(r + r(r+1)/2)/r! L_{1+r}(c, .., c, -), and d(c) = L_1^c(c)
  auto k = [](int l) -> Scalar { return sign_scalar((l - 1) + (l - 1) * l / 2) / factorial(static_cast<unsigned>(l - 1)); };
  return {k, k};
}

TwistSeries m_series() {
  auto k = [](int l) -> Scalar { return Scalar(l == 2 ? 1 : 0); };
  return {k, k};
}

const RelationSpan<Black<Quilt>>& MQuiltQuotient::span(int arity, int degree) const {
  if (!built_[arity]) {
    built_[arity] = true;
    const auto& l2mm = tw_.lie_full(2);
    for (const auto& x : tw_.basis(arity + 1)) {
      if (x.blacks + 2 > tw_.cap()) continue;
      for (int i = 1; i <= arity + 1; ++i) {
        Element<Black<Quilt>> v(arity, basis_degree(x) + l2mm.degree());
        for (const auto& [b, c] : l2mm) v.add_scaled(tw_.compose(x, i, b), c);
        v = mquilt_normal_form(v, rule_);
        if (!v.is_zero()) spans_[arity][v.degree()].add(std::move(v));
      }
    }
  }
  return spans_[arity][degree];
}

Element<Black<Quilt>> MQuiltQuotient::normal_form(const Element<Black<Quilt>>& x) const {
  return span(x.arity(), x.degree()).reduce(mquilt_normal_form(x, rule_));
}

std::size_t MQuiltQuotient::relation_rank(int arity, int degree) const { return span(arity, degree).rank(); }

}  // namespace qk
