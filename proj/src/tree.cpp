#include "quiltkit/tree.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace qk {

PlanarTree::PlanarTree(std::vector<std::vector<int>> children_of) : kids_(std::move(children_of)) {
  if (kids_.size() < 2 || kids_[0].size() != 1) throw std::invalid_argument("tree needs exactly one root");
  const int n = static_cast<int>(kids_.size()) - 1;
  parent_.assign(static_cast<std::size_t>(n + 1), -1);
  for (int v = 0; v <= n; ++v)
    for (int c : kids_[static_cast<std::size_t>(v)]) {
      if (c < 1 || c > n || parent_[static_cast<std::size_t>(c)] != -1)
        throw std::invalid_argument("malformed child lists");
      parent_[static_cast<std::size_t>(c)] = v;
    }
  for (int v = 1; v <= n; ++v)
    if (parent_[static_cast<std::size_t>(v)] == -1) throw std::invalid_argument("vertex without parent");
  parent_[0] = 0;
  finish();
}

void PlanarTree::finish() {
  const int n = size();
  pre_.clear();
  pos_.assign(static_cast<std::size_t>(n + 1), -1);
  subtree_end_.assign(static_cast<std::size_t>(n + 1), -1);
  std::function<void(int)> visit = [&](int v) {
    pos_[static_cast<std::size_t>(v)] = static_cast<int>(pre_.size());
    pre_.push_back(v);
    for (int c : kids_[static_cast<std::size_t>(v)]) visit(c);
    subtree_end_[static_cast<std::size_t>(v)] = static_cast<int>(pre_.size());
  };
  visit(root());
  if (static_cast<int>(pre_.size()) != n) throw std::invalid_argument("tree is not connected (cycle)");
  code_.clear();
  code_.reserve(static_cast<std::size_t>(2 * n));
  for (int v = 1; v <= n; ++v) {
    code_.push_back(parent(v));
    code_.push_back(child_index(v));
  }
}

PlanarTree PlanarTree::from_parent_and_children(const std::vector<int>& parent,
                                                const std::vector<std::vector<int>>& children) {
  if (parent.size() != children.size() || parent.size() < 2) throw std::invalid_argument("tree arrays size mismatch");
  std::vector<std::vector<int>> kids(children.size());
  int root = 0;
  for (std::size_t v = 1; v < parent.size(); ++v) {
    if (parent[v] == 0) {
      if (root != 0) throw std::invalid_argument("more than one root");
      root = static_cast<int>(v);
    }
    kids[v] = children[v];
  }
  if (root == 0) throw std::invalid_argument("no root");
  kids[0] = {root};
  PlanarTree t(std::move(kids));
  for (std::size_t v = 1; v < parent.size(); ++v)
    if (t.parent(static_cast<int>(v)) != parent[v]) throw std::invalid_argument("parent map disagrees with child lists");
  return t;
}

PlanarTree PlanarTree::single() { return PlanarTree({{1}, {}}); }

PlanarTree PlanarTree::chain(const std::vector<int>& labels) {
  std::vector<std::vector<int>> kids(labels.size() + 1);
  kids[0] = {labels.front()};
  for (std::size_t k = 0; k + 1 < labels.size(); ++k) kids[static_cast<std::size_t>(labels[k])] = {labels[k + 1]};
  return PlanarTree(std::move(kids));
}

PlanarTree PlanarTree::corolla(int root, const std::vector<int>& children) {
  std::vector<std::vector<int>> kids(children.size() + 2);
  kids[0] = {root};
  kids[static_cast<std::size_t>(root)] = children;
  return PlanarTree(std::move(kids));
}

int PlanarTree::child_index(int v) const {
  const auto& sib = kids_[static_cast<std::size_t>(parent(v))];
  return static_cast<int>(std::find(sib.begin(), sib.end(), v) - sib.begin());
}

bool PlanarTree::below(int u, int v) const {
  return u != v && pos_[static_cast<std::size_t>(u)] < pos_[static_cast<std::size_t>(v)] &&
         pos_[static_cast<std::size_t>(v)] < subtree_end_[static_cast<std::size_t>(u)];
}

bool PlanarTree::left_of(int u, int v) const {
  return subtree_end_[static_cast<std::size_t>(u)] <= pos_[static_cast<std::size_t>(v)];
}

std::vector<std::pair<int, int>> PlanarTree::code() const {
  std::vector<std::pair<int, int>> out;
  for (std::size_t k = 0; k + 1 < code_.size(); k += 2) out.emplace_back(code_[k], code_[k + 1]);
  return out;
}

std::string PlanarTree::encode() const {
  std::function<std::string(int)> bracket = [&](int v) {
    std::string b = std::to_string(v);
    if (!children(v).empty()) {
      b += '(';
      for (std::size_t k = 0; k < children(v).size(); ++k) {
        if (k) b += ',';
        b += bracket(children(v)[k]);
      }
      b += ')';
    }
    return b;
  };
  return bracket(root());
}

PlanarTree PlanarTree::parse(const std::string& text) {
  std::size_t i = 0;
  std::vector<std::pair<int, int>> edges;  // (parent, child) in planar order
  auto bad = [&] { return std::invalid_argument("bad tree text '" + text + "'"); };
  std::function<int(int)> vertex = [&](int depth) {
    if (depth > 10000) throw bad();
    std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == start || i - start > 6) throw bad();
    const int v = std::stoi(text.substr(start, i - start));
    if (i < text.size() && text[i] == '(') {
      ++i;
      for (;;) {
        edges.emplace_back(v, vertex(depth + 1));
        if (i < text.size() && text[i] == ',') {
          ++i;
          continue;
        }
        if (i < text.size() && text[i] == ')') {
          ++i;
          break;
        }
        throw bad();
      }
    }
    return v;
  };
  const int root = vertex(0);
  if (i != text.size()) throw bad();
  const int n = static_cast<int>(edges.size()) + 1;
  std::vector<std::vector<int>> kids(static_cast<std::size_t>(n + 1));
  if (root < 1 || root > n) throw bad();
  kids[0] = {root};
  for (const auto& [p, c] : edges) {
    if (p < 1 || p > n) throw bad();
    kids[static_cast<std::size_t>(p)].push_back(c);
  }
  return PlanarTree(std::move(kids));
}

PlanarTree PlanarTree::renamed(const std::vector<int>& new_label) const {
  std::vector<std::vector<int>> kids(kids_.size());
  for (std::size_t v = 0; v < kids_.size(); ++v) {
    const std::size_t nv = v == 0 ? 0 : static_cast<std::size_t>(new_label[v]);
    for (int c : kids_[v]) kids[nv].push_back(new_label[static_cast<std::size_t>(c)]);
  }
  return PlanarTree(std::move(kids));
}

PlanarTree PlanarTree::relabel_by_inverse(const Permutation& s) const {
  const auto inv = s.inverse();
  std::vector<int> lab(static_cast<std::size_t>(size() + 1), 0);
  for (int v = 1; v <= size(); ++v) lab[static_cast<std::size_t>(v)] = inv(v);
  return renamed(lab);
}

Permutation PlanarTree::standardizing_permutation() const { return Permutation(pre_); }

bool PlanarTree::in_standard_order() const {
  for (std::size_t k = 0; k < pre_.size(); ++k)
    if (pre_[k] != static_cast<int>(k) + 1) return false;
  return true;
}

PlanarTree PlanarTree::remove_leaf(int v) const {
  if (!children(v).empty()) throw std::invalid_argument("remove_leaf: vertex is not a leaf");
  if (size() == 1) throw std::invalid_argument("remove_leaf: cannot empty a tree");
  auto shift = [v](int w) { return w > v ? w - 1 : w; };
  std::vector<std::vector<int>> kids(static_cast<std::size_t>(size()));
  for (int w = 0; w <= size(); ++w) {
    if (w == v) continue;
    auto& dst = kids[static_cast<std::size_t>(shift(w))];
    for (int c : children(w))
      if (c != v) dst.push_back(shift(c));
  }
  return PlanarTree(std::move(kids));
}

int basis_arity(const PlanarTree& t) { return t.size(); }
int basis_degree(const PlanarTree&) { return 0; }

std::vector<std::vector<int>> planar_shapes(int n) {
  // preorder depth sequences d_0 = 0, 1 <= d_{p+1} <= d_p + 1
  std::vector<std::vector<int>> out;
  std::vector<int> depth(static_cast<std::size_t>(n), 0);
  std::function<void(int)> rec = [&](int p) {
    if (p == n) {
      std::vector<int> par(static_cast<std::size_t>(n), -1);
      for (int q = 1; q < n; ++q) {
        int r = q - 1;
        while (depth[static_cast<std::size_t>(r)] != depth[static_cast<std::size_t>(q)] - 1) --r;
        par[static_cast<std::size_t>(q)] = r;
      }
      out.push_back(std::move(par));
      return;
    }
    for (int d = 1; d <= depth[static_cast<std::size_t>(p - 1)] + 1; ++d) {
      depth[static_cast<std::size_t>(p)] = d;
      rec(p + 1);
    }
  };
  if (n == 1)
    out.push_back({-1});
  else if (n > 1)
    rec(1);
  return out;
}

std::vector<PlanarTree> enumerate_trees(int n) {
  if (n < 1) throw std::invalid_argument("enumerate_trees: n must be at least 1");
  std::vector<PlanarTree> out;
  const auto shapes = planar_shapes(n);
  std::vector<int> label(static_cast<std::size_t>(n));
  for (const auto& par : shapes) {
    std::iota(label.begin(), label.end(), 1);
    do {
      std::vector<std::vector<int>> kids(static_cast<std::size_t>(n + 1));
      kids[0] = {label[0]};
      for (int p = 1; p < n; ++p)
        kids[static_cast<std::size_t>(label[static_cast<std::size_t>(par[static_cast<std::size_t>(p)])])].push_back(
            label[static_cast<std::size_t>(p)]);
      out.emplace_back(std::move(kids));
    } while (std::next_permutation(label.begin(), label.end()));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<PlanarTree> tree_extensions(const PlanarTree& outer, const PlanarTree& inner, int slot) {
  const int m = outer.size(), n = inner.size();
  if (slot < 1 || slot > m) throw std::out_of_range("tree composition slot out of range");
  auto out_lab = [&](int a) { return a < slot ? a : a + n - 1; };
  auto in_lab = [&](int c) { return slot + c - 1; };

  std::vector<std::vector<int>> base(static_cast<std::size_t>(m + n));
  base[0] = {outer.root() == slot ? in_lab(inner.root()) : out_lab(outer.root())};
  for (int a = 1; a <= m; ++a) {
    if (a == slot) continue;
    auto& dst = base[static_cast<std::size_t>(out_lab(a))];
    for (int c : outer.children(a)) dst.push_back(c == slot ? in_lab(inner.root()) : out_lab(c));
  }
  std::vector<int> moving;
  for (int c : outer.children(slot)) moving.push_back(out_lab(c));

  // corners of the inner tree in contour order: (vertex, gap)
  std::vector<std::pair<int, int>> corners;
  std::function<void(int)> contour = [&](int v) {
    corners.emplace_back(v, 0);
    const auto& ch = inner.children(v);
    for (std::size_t g = 0; g < ch.size(); ++g) {
      contour(ch[g]);
      corners.emplace_back(v, static_cast<int>(g) + 1);
    }
  };
  contour(inner.root());

  std::vector<PlanarTree> out;
  const int k = static_cast<int>(moving.size());
  std::vector<int> assign(static_cast<std::size_t>(k), 0);
  std::function<void(int, int)> rec = [&](int idx, int from) {
    if (idx == k) {
      auto kids = base;
      // per inner vertex, what goes into each gap
      std::vector<std::vector<std::vector<int>>> gaps(static_cast<std::size_t>(n + 1));
      for (int c = 1; c <= n; ++c) gaps[static_cast<std::size_t>(c)].resize(inner.children(c).size() + 1);
      for (int t = 0; t < k; ++t) {
        const auto [v, g] = corners[static_cast<std::size_t>(assign[static_cast<std::size_t>(t)])];
        gaps[static_cast<std::size_t>(v)][static_cast<std::size_t>(g)].push_back(moving[static_cast<std::size_t>(t)]);
      }
      for (int c = 1; c <= n; ++c) {
        auto& dst = kids[static_cast<std::size_t>(in_lab(c))];
        const auto& ch = inner.children(c);
        for (std::size_t g = 0; g <= ch.size(); ++g) {
          for (int x : gaps[static_cast<std::size_t>(c)][g]) dst.push_back(x);
          if (g < ch.size()) dst.push_back(in_lab(ch[g]));
        }
      }
      out.emplace_back(std::move(kids));
      return;
    }
    for (int c = from; c < static_cast<int>(corners.size()); ++c) {
      assign[static_cast<std::size_t>(idx)] = c;
      rec(idx + 1, c);
    }
  };
  rec(0, 0);
  return out;
}

bool restrict_to_interval(const PlanarTree& u, int lo, int hi, PlanarTree& out) {
  auto inside = [&](int v) { return v >= lo && v <= hi; };
  int top = 0;
  for (int v = lo; v <= hi; ++v)
    if (!inside(u.parent(v))) {
      if (top != 0) return false;
      top = v;
    }
  if (top == 0) return false;
  std::vector<std::vector<int>> kids(static_cast<std::size_t>(hi - lo + 2));
  kids[0] = {top - lo + 1};
  for (int v = lo; v <= hi; ++v)
    for (int c : u.children(v))
      if (inside(c)) kids[static_cast<std::size_t>(v - lo + 1)].push_back(c - lo + 1);
  out = PlanarTree(std::move(kids));
  return true;
}

bool is_tree_extension(const PlanarTree& u, const PlanarTree& outer, const PlanarTree& inner, int slot) {
  const int m = outer.size(), n = inner.size();
  if (u.size() != m + n - 1) return false;
  const int lo = slot, hi = slot + n - 1;
  PlanarTree sub;
  if (!restrict_to_interval(u, lo, hi, sub) || !(sub == inner)) return false;
  auto inside = [&](int v) { return v >= lo && v <= hi; };
  auto collapse = [&](int v) { return v < lo ? v : (inside(v) ? slot : v - (n - 1)); };
  std::vector<std::vector<int>> kids(static_cast<std::size_t>(m + 1));
  std::vector<bool> placed(static_cast<std::size_t>(u.size() + 1), false);
  for (int v : u.preorder()) {
    const int p = u.parent(v);
    if (inside(v) && (p != 0 && inside(p))) continue;
    const std::size_t dst = p == 0 ? 0 : static_cast<std::size_t>(collapse(p));
    kids[dst].push_back(collapse(v));
  }
  // children of a parent must appear in planar order; preorder visits them left to right
  PlanarTree contracted;
  try {
    contracted = PlanarTree(std::move(kids));
  } catch (const std::invalid_argument&) {
    return false;
  }
  return contracted == outer;
}

}  // namespace qk
