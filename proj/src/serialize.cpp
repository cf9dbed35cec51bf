#include "quiltkit/serialize.hpp"

#include <sstream>

namespace qk {

namespace {

int get_int(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key) || !j[key].is_number_integer())
    throw FormatError(where + "/" + key, "missing integer");
  return j[key].get<int>();
}

const json& get_array(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key) || !j[key].is_array()) throw FormatError(where + "/" + key, "missing array");
  return j[key];
}

std::vector<int> int_list(const json& a, const std::string& where) {
  std::vector<int> out;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (!a[k].is_number_integer()) throw FormatError(where + "/" + std::to_string(k), "expected an integer");
    out.push_back(a[k].get<int>());
  }
  return out;
}

}  // namespace

json tree_to_json(const PlanarTree& t) {
  json parent = json::array(), kids = json::array();
  for (int v = 1; v <= t.size(); ++v) {
    parent.push_back(t.parent(v));
    kids.push_back(t.children(v));
  }
  return {{"n", t.size()}, {"parent", parent}, {"childOrder", kids}};
}

PlanarTree tree_from_json(const json& j, const std::string& where) {
  const int n = get_int(j, "n", where);
  if (n < 1) throw FormatError(where + "/n", "a tree needs at least one vertex");
  const auto parent = int_list(get_array(j, "parent", where), where + "/parent");
  const json& order = get_array(j, "childOrder", where);
  if (parent.size() != static_cast<std::size_t>(n)) throw FormatError(where + "/parent", "expected n entries");
  if (order.size() != static_cast<std::size_t>(n)) throw FormatError(where + "/childOrder", "expected n entries");
  std::vector<int> p{0};
  std::vector<std::vector<int>> kids{{}};
  for (int v = 1; v <= n; ++v) {
    const std::string w = where + "/childOrder/" + std::to_string(v - 1);
    if (!order[static_cast<std::size_t>(v - 1)].is_array()) throw FormatError(w, "expected an array");
    auto c = int_list(order[static_cast<std::size_t>(v - 1)], w);
    for (int x : c)
      if (x < 1 || x > n) throw FormatError(w, "vertex " + std::to_string(x) + " out of range");
    const int pv = parent[static_cast<std::size_t>(v - 1)];
    if (pv < 0 || pv > n) throw FormatError(where + "/parent/" + std::to_string(v - 1), "vertex out of range");
    p.push_back(pv);
    kids.push_back(std::move(c));
  }
  try {
    return PlanarTree::from_parent_and_children(p, kids);
  } catch (const std::exception& e) {
    throw FormatError(where, e.what());
  }
}

json word_to_json(const Word& w) { return {{"n", w.arity()}, {"letters", w.letters()}}; }

Word word_from_json(const json& j, const std::string& where) {
  const int n = get_int(j, "n", where);
  const auto letters = int_list(get_array(j, "letters", where), where + "/letters");
  for (std::size_t k = 0; k < letters.size(); ++k)
    if (letters[k] < 1 || letters[k] > n)
      throw FormatError(where + "/letters/" + std::to_string(k), "letter out of range");
  Word w(n, letters);
  if (!is_admissible(w)) throw FormatError(where, "not an admissible word");
  return w;
}

json quilt_to_json(const Quilt& q) { return {{"word", word_to_json(q.word)}, {"tree", tree_to_json(q.tree)}}; }

Quilt quilt_from_json(const json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("word")) throw FormatError(where + "/word", "missing word");
  if (!j.contains("tree")) throw FormatError(where + "/tree", "missing tree");
  Quilt q{word_from_json(j["word"], where + "/word"), tree_from_json(j["tree"], where + "/tree")};
  if (q.word.arity() != q.tree.size()) throw FormatError(where, "word and tree have different arities");
  if (!is_quilt(q.word, q.tree)) throw FormatError(where, "the word does not quilt the tree");
  return q;
}

PlanarTree parse_tree_text(const std::string& text) { return PlanarTree::parse(text); }

Word parse_word_text(const std::string& text) {
  Word w = Word::parse(text);
  if (!is_admissible(w)) throw std::invalid_argument("not an admissible word: " + text);
  return w;
}

Quilt parse_quilt_text(const std::string& text) {
  std::istringstream in(text);
  std::string w, t, rest;
  if (!(in >> w >> t) || (in >> rest)) throw std::invalid_argument("expected 'word tree', got '" + text + "'");
  const PlanarTree tree = PlanarTree::parse(t);
  Quilt q{Word::parse(tree.size(), w), tree};
  if (!is_admissible(q.word) || !is_quilt(q.word, q.tree))
    throw std::invalid_argument("not a quilt: " + text);
  return q;
}

std::string scalar_to_string(const Scalar& c) { return c.get_str(); }

Scalar scalar_from_json(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Scalar(j.get<long>());
  if (!j.is_string()) throw FormatError(where, "expected an integer or a \"p/q\" string");
  Scalar c;
  if (c.set_str(j.get<std::string>(), 10) != 0 || c.get_den() == 0)
    throw FormatError(where, "not a rational number: " + j.get<std::string>());
  c.canonicalize();
  return c;
}

}  // namespace qk
