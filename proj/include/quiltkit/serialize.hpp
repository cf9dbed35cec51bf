#ifndef QUILTKIT_SERIALIZE_HPP
#define QUILTKIT_SERIALIZE_HPP

#include <functional>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "quiltkit/element.hpp"
#include "quiltkit/quilt.hpp"
#include "quiltkit/twist.hpp"

namespace qk {

using json = nlohmann::json;

/// Malformed input document; `where` is a JSON-pointer-like location.
class FormatError : public std::runtime_error {
 public:
  FormatError(std::string where, const std::string& what)
      : std::runtime_error((where.empty() ? std::string("/") : where) + ": " + what), where_(std::move(where)) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

/// {"n", "parent", "childOrder"}: entry v-1 of parent is the parent of v (0
/// for the root) and entry v-1 of childOrder lists its children left to right.
json tree_to_json(const PlanarTree& t);
PlanarTree tree_from_json(const json& j, const std::string& where = "");

/// {"n", "letters"}.
json word_to_json(const Word& w);
Word word_from_json(const json& j, const std::string& where = "");

/// {"word", "tree"}; rejects pairs that are not quilts.
json quilt_to_json(const Quilt& q);
Quilt quilt_from_json(const json& j, const std::string& where = "");

/// Canonical text encodings: "1(2,3)", "1232", "1232 1(2(3))".
PlanarTree parse_tree_text(const std::string& text);
Word parse_word_text(const std::string& text);
Quilt parse_quilt_text(const std::string& text);

std::string scalar_to_string(const Scalar& c);
Scalar scalar_from_json(const json& j, const std::string& where);

/// {"operad", "arity", "degree", "terms": [{"basis", "coeff"}]} with terms in basis order.
template <class O>
json element_to_json(const O& op, const ElementOf<O>& x) {
  json j{{"operad", op.name()}, {"arity", x.arity()}, {"degree", x.degree()}, {"terms", json::array()}};
  for (const auto& [b, c] : x) j["terms"].push_back({{"basis", op.encode(b)}, {"coeff", scalar_to_string(c)}});
  return j;
}

/// Twisted elements store the base encoding and the black labels per term,
/// and the cap once.
template <class O>
json element_to_json(const TwOperad<O>& op, const Element<Black<typename O::Basis>>& x) {
  json j{{"operad", op.name()},   {"arity", x.arity()}, {"degree", x.degree()},
         {"cap", op.cap()},       {"terms", json::array()}};
  for (const auto& [b, c] : x) {
    json black = json::array();
    for (int k = 1; k <= b.blacks; ++k) black.push_back(k);
    j["terms"].push_back({{"basis", op.base_operad().encode(b.base)}, {"black", black}, {"coeff", scalar_to_string(c)}});
  }
  return j;
}

/// Reads an element of the named operad; `parse` turns a basis encoding into
/// a basis element and may throw std::invalid_argument.
template <class B>
Element<B> element_from_json(const json& j, const std::string& operad,
                             const std::function<B(const std::string&)>& parse) {
  if (!j.is_object()) throw FormatError("", "expected an object");
  if (!j.contains("operad") || !j["operad"].is_string()) throw FormatError("/operad", "missing operad name");
  if (j["operad"].get<std::string>() != operad)
    throw FormatError("/operad", "expected operad '" + operad + "', found '" + j["operad"].get<std::string>() + "'");
  for (const char* k : {"arity", "degree"})
    if (!j.contains(k) || !j[k].is_number_integer()) throw FormatError(std::string("/") + k, "missing integer");
  if (!j.contains("terms") || !j["terms"].is_array()) throw FormatError("/terms", "missing array");
  Element<B> out(j["arity"].get<int>(), j["degree"].get<int>());
  for (std::size_t k = 0; k < j["terms"].size(); ++k) {
    const std::string w = "/terms/" + std::to_string(k);
    const json& t = j["terms"][k];
    if (!t.is_object() || !t.contains("basis") || !t["basis"].is_string()) throw FormatError(w + "/basis", "missing string");
    B b;
    try {
      b = parse(t["basis"].get<std::string>());
    } catch (const std::exception& e) {
      throw FormatError(w + "/basis", e.what());
    }
    if (!t.contains("coeff")) throw FormatError(w + "/coeff", "missing coefficient");
    const Scalar c = scalar_from_json(t["coeff"], w + "/coeff");
    try {
      out.add(b, c);
    } catch (const std::logic_error& e) {
      throw FormatError(w, e.what());
    }
  }
  return out;
}

}  // namespace qk

#endif  // QUILTKIT_SERIALIZE_HPP
