#include "quiltkit/quilt.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>

namespace qk {

bool is_quilt(const Word& w, const PlanarTree& t) {
  const int n = w.arity();
  if (t.size() != n) return false;
  for (int u = 1; u <= n; ++u)
    for (int v = 1; v <= n; ++v) {
      if (u == v) continue;
      if (t.below(u, v) && !w.left_of(u, v)) return false;
      if (w.below(u, v) && !t.left_of(v, u)) return false;
    }
  return true;
}

const std::vector<Word>& cached_words(int n) {
  static std::map<int, std::vector<Word>> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, enumerate_words(n)).first;
  return it->second;
}

namespace {

// Relation masks: bit v of below[u] is set when u < v, of left[u] when u ⊴ v.
struct RelationMasks {
  std::vector<std::uint32_t> below, left;
};

template <class X>
RelationMasks masks_of(const X& x, int n) {
  RelationMasks m{std::vector<std::uint32_t>(static_cast<std::size_t>(n + 1), 0),
                  std::vector<std::uint32_t>(static_cast<std::size_t>(n + 1), 0)};
  for (int u = 1; u <= n; ++u)
    for (int v = 1; v <= n; ++v) {
      if (u == v) continue;
      if (x.below(u, v)) m.below[static_cast<std::size_t>(u)] |= 1u << v;
      if (x.left_of(u, v)) m.left[static_cast<std::size_t>(u)] |= 1u << v;
    }
  return m;
}

const std::vector<RelationMasks>& cached_word_masks(int n) {
  static std::map<int, std::vector<RelationMasks>> cache;
  auto it = cache.find(n);
  if (it == cache.end()) {
    std::vector<RelationMasks> ms;
    for (const auto& w : cached_words(n)) ms.push_back(masks_of(w, n));
    it = cache.emplace(n, std::move(ms)).first;
  }
  return it->second;
}

}  // namespace

std::vector<Word> words_quilting(const PlanarTree& t) {
  const int n = t.size();
  if (n > 30) throw std::invalid_argument("words_quilting: arity too large");
  const auto tm = masks_of(t, n);
  // tree_right[u]: vertices v with v ⊴_T u
  std::vector<std::uint32_t> tree_right(static_cast<std::size_t>(n + 1), 0);
  for (int u = 1; u <= n; ++u)
    for (int v = 1; v <= n; ++v)
      if (tm.left[static_cast<std::size_t>(v)] >> u & 1u) tree_right[static_cast<std::size_t>(u)] |= 1u << v;
  const auto& words = cached_words(n);
  const auto& wms = cached_word_masks(n);
  std::vector<Word> out;
  for (std::size_t k = 0; k < words.size(); ++k) {
    const auto& wm = wms[k];
    bool ok = true;
    for (int u = 1; u <= n && ok; ++u) {
      const auto su = static_cast<std::size_t>(u);
      ok = (tm.below[su] & ~wm.left[su]) == 0 && (wm.below[su] & ~tree_right[su]) == 0;
    }
    if (ok) out.push_back(words[k]);
  }
  return out;
}

std::vector<Quilt> enumerate_quilts(int n) {
  std::vector<Quilt> out;
  for (const auto& t : enumerate_trees(n))
    for (auto& w : words_quilting(t)) out.push_back({std::move(w), t});
  return out;
}

Element<Quilt> QuiltOperad::compose(const Quilt& x, int i, const Quilt& y) const {
  Element<Quilt> out(x.arity() + y.arity() - 1, x.degree() + y.degree());
  const auto words = word_extensions(x.word, y.word, i);
  if (words.empty()) return out;
  const auto trees = tree_extensions(x.tree, y.tree, i);
  for (const auto& e : words)
    for (const auto& u : trees) {
      if (!is_quilt(e.result, u))
        throw std::logic_error("composition leaves Quilt: " + e.result.encode() + " " + u.encode());
      out.add({e.result, u}, e.sign);
    }
  return out;
}

Element<Quilt> QuiltOperad::differential(const Quilt& x) const {
  Element<Quilt> out(x.arity(), x.degree() + 1);
  for (const auto& [w, c] : boundary(x.word)) {
    if (!is_quilt(w, x.tree)) throw std::logic_error("boundary leaves Quilt: " + w.encode() + " " + x.tree.encode());
    out.add({w, x.tree}, c);
  }
  return out;
}

Element<PlanarTree> project_to_brace(const Quilt& q) {
  Element<PlanarTree> out(q.arity(), q.degree());
  if (q.word.length() == q.arity()) out.add(q.tree, 1);
  return out;
}

Element<PlanarTree> project_to_brace(const Element<Quilt>& x) {
  Element<PlanarTree> out(x.arity(), x.degree());
  for (const auto& [q, c] : x) out.add_scaled(project_to_brace(q), c);
  return out;
}

Quilt standardize(const Quilt& q) {
  const auto s = q.tree.standardizing_permutation();
  return QuiltOperad{}.act(q, s);
}

bool in_standard_order(const Quilt& q) { return q.tree.in_standard_order(); }

Word reduce_last(const Word& w) {
  const int n = w.arity();
  std::vector<int> letters;
  for (int a : w.letters())
    if (a != n) letters.push_back(a);
  return Word(n - 1, std::move(letters));
}

std::pair<int, int> bidegree(const Word& w) {
  const int dn = -w.occurrences(w.arity());
  return {dn, w.degree() - dn};
}

namespace {

Element<Word> partial_boundary(const Word& w, bool letter_n) {
  Element<Word> out(w.arity(), w.degree() + 1);
  for (int p = 0; p < w.length(); ++p) {
    if ((w[p] == w.arity()) != letter_n) continue;
    const int s = deletion_sign(w, p);
    if (s == 0) continue;
    auto letters = w.letters();
    letters.erase(letters.begin() + p);
    if (has_adjacent_repeat(letters)) continue;
    out.add(Word(w.arity(), std::move(letters)), s);
  }
  return out;
}

}  // namespace

Element<Word> boundary_n(const Word& w) { return partial_boundary(w, true); }
Element<Word> boundary_not_n(const Word& w) { return partial_boundary(w, false); }

std::vector<std::vector<int>> block_decompose(const Word& w) {
  const int n = w.arity();
  std::vector<int> minimal;
  for (int u = 1; u <= n; ++u) {
    if (w.occurrences(u) == 0) continue;
    bool is_min = true;
    for (int v = 1; v <= n && is_min; ++v) is_min = !w.below(v, u);
    if (is_min) minimal.push_back(u);
  }
  std::sort(minimal.begin(), minimal.end(),
            [&](int a, int b) { return w.positions(a).front() < w.positions(b).front(); });
  std::vector<std::vector<int>> blocks;
  int expected = 0;
  for (int u : minimal) {
    const auto pos = w.positions(u);
    if (pos.front() != expected) throw std::logic_error("word is not a concatenation of blocks: " + w.encode());
    blocks.emplace_back(w.letters().begin() + pos.front(), w.letters().begin() + pos.back() + 1);
    expected = pos.back() + 1;
  }
  if (expected != w.length()) throw std::logic_error("word is not a concatenation of blocks: " + w.encode());
  return blocks;
}

std::vector<std::vector<int>> fiber_blocks(const Word& w, const PlanarTree& t) {
  const int n = t.size();
  if (w.arity() != n - 1 || !t.in_standard_order()) throw std::invalid_argument("fiber needs a standard tree on one more vertex");
  auto blocks = block_decompose(w);
  std::size_t last = 0;
  for (std::size_t k = 0; k < blocks.size(); ++k)
    for (int a : blocks[k])
      if (t.below(a, n)) last = k;
  std::vector<std::vector<int>> out{{}};
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    if (k > last) out.emplace_back();
    out.back().insert(out.back().end(), blocks[k].begin(), blocks[k].end());
  }
  return out;
}

std::vector<std::pair<std::vector<int>, Word>> fiber_words(const Word& w, const PlanarTree& t) {
  const auto blocks = fiber_blocks(w, t);
  const int l = static_cast<int>(blocks.size());
  const int n = w.arity() + 1;
  std::vector<std::pair<std::vector<int>, Word>> out;
  for (unsigned mask = 1; mask < (1u << l); ++mask) {
    std::vector<int> subset;
    for (int k = 0; k < l; ++k)
      if (mask & (1u << k)) subset.push_back(k + 1);
    // n goes after blocks i_1, ..., i_l'
    std::vector<int> letters;
    std::size_t next = 0;
    for (int b = 1; b <= l; ++b) {
      letters.insert(letters.end(), blocks[static_cast<std::size_t>(b - 1)].begin(),
                     blocks[static_cast<std::size_t>(b - 1)].end());
      if (next < subset.size() && subset[next] == b) {
        letters.push_back(n);
        ++next;
      }
    }
    out.emplace_back(std::move(subset), Word(n, std::move(letters)));
  }
  return out;
}

BasedComplex<Word> fiber_complex(const Word& w, const PlanarTree& t) {
  std::vector<Word> words;
  for (auto& [s, x] : fiber_words(w, t)) words.push_back(std::move(x));
  return build_complex<Word>(std::move(words), [](const Word& x) { return boundary_n(x); });
}

bool fiber_matches_simplex(const Word& w, const PlanarTree& t, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg + " for " + w.encode();
    return false;
  };
  const auto fw = fiber_words(w, t);
  const int l = static_cast<int>(fiber_blocks(w, t).size());
  const auto fiber = fiber_complex(w, t);
  const auto cell = simplex_cellular_complex(l - 1);
  const int shift = w.degree();
  for (int d = cell.lowest_degree(); d <= cell.highest_degree(); ++d)
    if (fiber.complex.dim(d + shift) != cell.dim(d)) return fail("dimension mismatch in degree " + std::to_string(d));
  if (fiber.complex.lowest_degree() != cell.lowest_degree() + shift ||
      fiber.complex.highest_degree() != cell.highest_degree() + shift)
    return fail("degree range mismatch");

  // phi: subset {i_1..i_l'} -> face with vertices i_k - 1; cellular faces are
  // lexicographic subsets per size
  std::map<std::vector<int>, Word> by_subset(fw.begin(), fw.end());
  auto cell_index = [&](const std::vector<int>& subset) {
    std::vector<std::vector<int>> faces;
    for (const auto& [s, x] : fw)
      if (s.size() == subset.size()) faces.push_back(s);
    std::sort(faces.begin(), faces.end());
    return static_cast<std::size_t>(std::find(faces.begin(), faces.end(), subset) - faces.begin());
  };
  auto degree_of = [&](const std::vector<int>& s) { return 1 - static_cast<int>(s.size()); };
  std::map<std::vector<int>, int> eps;
  std::vector<std::vector<int>> order;
  for (const auto& [s, x] : fw) order.push_back(s);
  std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  for (const auto& s : order) {
    if (s.size() == 1) {
      eps[s] = 1;
      continue;
    }
    const int d = degree_of(s);
    const std::size_t col_c = cell_index(s);
    const std::size_t col_f = fiber.index(d + shift, by_subset.at(s));
    for (std::size_t drop = 0; drop < s.size(); ++drop) {
      auto t = s;
      t.erase(t.begin() + static_cast<long>(drop));
      const Scalar c = cell.differential(d).at(cell_index(t), col_c);
      const Scalar f = fiber.complex.differential(d + shift).at(fiber.index(d + 1 + shift, by_subset.at(t)), col_f);
      if (c == 0 || (f != c && f != -c)) return fail("boundary entries differ beyond sign");
      const int ratio = (f == c ? 1 : -1) * eps.at(t);
      auto [it, inserted] = eps.emplace(s, ratio);
      if (!inserted && it->second != ratio) return fail("no consistent diagonal sign change");
    }
  }
  // every fiber entry must be accounted for
  for (int d = cell.lowest_degree(); d < cell.highest_degree(); ++d)
    if (fiber.complex.differential(d + shift).nonzeros() != cell.differential(d).nonzeros())
      return fail("extra boundary entries");
  return true;
}

BasedComplex<Word> quilt_tree_complex(const PlanarTree& t) {
  return build_complex<Word>(words_quilting(t), [](const Word& w) { return boundary(w); });
}

BettiTable quilt_tree_homology(const PlanarTree& t) { return betti(quilt_tree_complex(t).complex); }

BasedComplex<Quilt> quilt_arity_complex(int n) {
  QuiltOperad op;
  return build_complex<Quilt>(enumerate_quilts(n), [&](const Quilt& q) { return op.differential(q); });
}

// ---- drawing ----

QuiltDiagram layout_quilt(const Quilt& q) {
  const auto& w = q.word;
  const auto& t = q.tree;
  if (!is_quilt(w, t)) throw std::invalid_argument("not a quilt: " + q.encode());
  const int n = q.arity();
  QuiltDiagram d;
  d.cols = w.length();
  // leaves in planar order give the rows
  std::vector<int> row_lo(static_cast<std::size_t>(n + 1), -1), row_hi(static_cast<std::size_t>(n + 1), -1);
  int row = 0;
  for (int v : t.preorder())
    if (t.children(v).empty()) {
      row_lo[static_cast<std::size_t>(v)] = row_hi[static_cast<std::size_t>(v)] = row++;
    }
  d.rows = row;
  // subtree row spans, children before parents
  for (auto it = t.preorder().rbegin(); it != t.preorder().rend(); ++it) {
    const int v = *it;
    if (t.children(v).empty()) continue;
    row_lo[static_cast<std::size_t>(v)] = row_lo[static_cast<std::size_t>(t.children(v).front())];
    row_hi[static_cast<std::size_t>(v)] = row_hi[static_cast<std::size_t>(t.children(v).back())];
  }
  d.cells.assign(static_cast<std::size_t>(d.rows), std::vector<int>(static_cast<std::size_t>(d.cols), 0));
  for (int u = 1; u <= n; ++u) {
    const auto pos = w.positions(u);
    QuiltRect r;
    r.label = u;
    r.col_lo = pos.front();
    r.col_hi = pos.back();
    r.row_lo = row_lo[static_cast<std::size_t>(u)];
    r.row_hi = row_hi[static_cast<std::size_t>(u)];
    r.nominal_height = std::max<int>(static_cast<int>(t.children(u).size()), 1);
    r.nominal_width = std::max<int>(static_cast<int>(word_children(w, u).size()), 1);
    for (int y = r.row_lo; y <= r.row_hi; ++y)
      for (int x = r.col_lo; x <= r.col_hi; ++x) {
        auto& cell = d.cells[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)];
        if (cell != 0) throw std::logic_error("rectangles overlap in quilt " + q.encode());
        cell = u;
      }
    d.rects.push_back(r);
    // W = ..u v .. w u.. with no u in between: double line on top of u
    for (std::size_t k = 0; k + 1 < pos.size(); ++k)
      d.double_lines.push_back({u, r.row_lo, pos[k] + 1, pos[k + 1] - 1});
  }
  return d;
}

Quilt parse_diagram(const QuiltDiagram& d) {
  const int n = static_cast<int>(d.rects.size());
  std::vector<const QuiltRect*> by_label(static_cast<std::size_t>(n + 1), nullptr);
  for (const auto& r : d.rects) {
    if (r.label < 1 || r.label > n || by_label[static_cast<std::size_t>(r.label)])
      throw std::invalid_argument("diagram labels must be 1..n, each once");
    by_label[static_cast<std::size_t>(r.label)] = &r;
  }
  // the word: in each column the covering rectangle with the narrowest span
  std::vector<int> letters;
  for (int x = 0; x < d.cols; ++x) {
    const QuiltRect* best = nullptr;
    for (const auto& r : d.rects)
      if (r.col_lo <= x && x <= r.col_hi && (!best || r.col_hi - r.col_lo < best->col_hi - best->col_lo)) best = &r;
    if (!best) throw std::invalid_argument("diagram column with no rectangle");
    letters.push_back(best->label);
  }
  // the tree: nearest ancestor = enclosing row span, entirely to the left,
  // narrowest span and then rightmost
  std::vector<int> parent(static_cast<std::size_t>(n + 1), 0);
  for (const auto& v : d.rects) {
    const QuiltRect* best = nullptr;
    for (const auto& u : d.rects) {
      if (&u == &v || u.row_lo > v.row_lo || u.row_hi < v.row_hi || u.col_hi >= v.col_lo) continue;
      const int span = u.row_hi - u.row_lo, best_span = best ? best->row_hi - best->row_lo : 0;
      if (!best || span < best_span || (span == best_span && u.col_lo > best->col_lo)) best = &u;
    }
    parent[static_cast<std::size_t>(v.label)] = best ? best->label : 0;
  }
  std::vector<std::vector<int>> kids(static_cast<std::size_t>(n + 1));
  for (int v = 1; v <= n; ++v) kids[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])].push_back(v);
  for (auto& k : kids)
    std::sort(k.begin(), k.end(), [&](int a, int b) {
      return by_label[static_cast<std::size_t>(a)]->row_lo < by_label[static_cast<std::size_t>(b)]->row_lo;
    });
  return {Word(n, std::move(letters)), PlanarTree(std::move(kids))};
}

std::string render_text(const QuiltDiagram& d) {
  int width = 1;
  for (const auto& r : d.rects) width = std::max(width, static_cast<int>(std::to_string(r.label).size()));
  std::ostringstream out;
  for (int y = 0; y < d.rows; ++y) {
    // a '=' row marks double lines on the top edge of rectangles starting here
    std::string dbl;
    bool any = false;
    for (int x = 0; x < d.cols; ++x) {
      bool here = false;
      for (const auto& l : d.double_lines) here = here || (l.row == y && l.col_lo <= x && x <= l.col_hi);
      any = any || here;
      dbl += std::string(static_cast<std::size_t>(width), here ? '=' : ' ');
      if (x + 1 < d.cols) dbl += ' ';
    }
    if (any) out << dbl << '\n';
    for (int x = 0; x < d.cols; ++x) {
      const int c = d.cells[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)];
      std::string s = c == 0 ? std::string(static_cast<std::size_t>(width), '#') : std::to_string(c);
      out << std::string(static_cast<std::size_t>(width) - s.size(), ' ') << s;
      if (x + 1 < d.cols) out << ' ';
    }
    out << '\n';
  }
  return out.str();
}

std::string render_svg(const QuiltDiagram& d) {
  const int cell = 40;
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << d.cols * cell << "\" height=\"" << d.rows * cell
      << "\" viewBox=\"0 0 " << d.cols * cell << ' ' << d.rows * cell << "\">\n";
  for (int y = 0; y < d.rows; ++y)
    for (int x = 0; x < d.cols; ++x)
      if (d.cells[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)] == 0)
        out << "  <rect class=\"shade\" x=\"" << x * cell << "\" y=\"" << y * cell << "\" width=\"" << cell
            << "\" height=\"" << cell << "\" fill=\"#bbbbbb\"/>\n";
  for (const auto& r : d.rects) {
    const int x = r.col_lo * cell, y = r.row_lo * cell;
    const int w = (r.col_hi - r.col_lo + 1) * cell, h = (r.row_hi - r.row_lo + 1) * cell;
    out << "  <rect data-label=\"" << r.label << "\" data-height=\"" << r.nominal_height << "\" data-width=\""
        << r.nominal_width << "\" x=\"" << x << "\" y=\"" << y << "\" width=\"" << w << "\" height=\"" << h
        << "\" fill=\"white\" stroke=\"black\"/>\n";
    out << "  <text x=\"" << x + w / 2 << "\" y=\"" << y + h / 2 + 5 << "\" text-anchor=\"middle\">" << r.label
        << "</text>\n";
  }
  for (const auto& l : d.double_lines) {
    const int x1 = l.col_lo * cell, x2 = (l.col_hi + 1) * cell, y = l.row * cell;
    out << "  <line class=\"double\" x1=\"" << x1 << "\" y1=\"" << y + 3 << "\" x2=\"" << x2 << "\" y2=\"" << y + 3
        << "\" stroke=\"black\"/>\n";
    out << "  <line class=\"double\" x1=\"" << x1 << "\" y1=\"" << y - 3 << "\" x2=\"" << x2 << "\" y2=\"" << y - 3
        << "\" stroke=\"black\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace qk
