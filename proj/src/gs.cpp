#include "quiltkit/gs.hpp"

#include <algorithm>
#include <functional>

#include "json.hpp"

namespace qk {

namespace {

using json = nlohmann::json;

Vec zeros(int n) { return Vec(static_cast<std::size_t>(n), Scalar(0)); }

bool is_zero_vec(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& x) { return x == 0; });
}

void add_to(Vec& acc, const Vec& v, const Scalar& c = 1) {
  for (std::size_t k = 0; k < v.size(); ++k) acc[k] += c * v[k];
}

Vec unit_vec(int n, int k) {
  Vec v = zeros(n);
  v[static_cast<std::size_t>(k)] = 1;
  return v;
}

// Solves A x = b over Q for a dense A given by rows; false if inconsistent.
bool solve(std::vector<Vec> a, Vec b, Vec& x) {
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t k = r;
    while (k < rows && a[k][c] == 0) ++k;
    if (k == rows) continue;
    std::swap(a[k], a[r]);
    std::swap(b[k], b[r]);
    const Scalar inv = 1 / a[r][c];
    for (auto& v : a[r]) v *= inv;
    b[r] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const Scalar f = a[i][c];
      for (std::size_t j = 0; j < cols; ++j) a[i][j] -= f * a[r][j];
      b[i] -= f * b[r];
    }
    pivots.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (b[i] != 0) return false;
  x = Vec(cols, Scalar(0));
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = b[i];
  return true;
}

Scalar read_scalar(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Scalar(j.get<long>());
  if (j.is_string()) {
    try {
      return parse_scalar(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw PrestackError(where, e.what());
    }
  }
  throw PrestackError(where, "expected an integer or a rational string");
}

Vec read_vec(const json& j, int n, const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != n)
    throw PrestackError(where, "expected a vector of length " + std::to_string(n));
  Vec v;
  for (std::size_t k = 0; k < j.size(); ++k) v.push_back(read_scalar(j[k], where + "/" + std::to_string(k)));
  return v;
}

json write_vec(const Vec& v) {
  json a = json::array();
  for (const auto& x : v) {
    if (x.get_den() == 1 && x.get_num().fits_slong_p())
      a.push_back(x.get_num().get_si());
    else
      a.push_back(to_string(x));
  }
  return a;
}

int lookup(const std::vector<std::string>& names, const json& j, const std::string& where) {
  if (!j.is_string()) throw PrestackError(where, "expected a name");
  const auto it = std::find(names.begin(), names.end(), j.get<std::string>());
  if (it == names.end()) throw PrestackError(where, "unknown name '" + j.get<std::string>() + "'");
  return static_cast<int>(it - names.begin());
}

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw PrestackError(where, std::string("missing field '") + key + "'");
  return j.at(key);
}

std::vector<std::string> read_names(const json& j, const std::string& where) {
  if (!j.is_array()) throw PrestackError(where, "expected a list of names");
  std::vector<std::string> out;
  for (const auto& x : j) {
    if (!x.is_string()) throw PrestackError(where, "expected a name");
    if (std::find(out.begin(), out.end(), x.get<std::string>()) != out.end())
      throw PrestackError(where, "duplicate name '" + x.get<std::string>() + "'");
    out.push_back(x.get<std::string>());
  }
  return out;
}

LinearCategory read_fiber(const json& j, const std::string& where) {
  LinearCategory f;
  f.objects = read_names(field(j, "objects", where), where + "/objects");
  const int n = f.size();
  f.dim.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 0));
  const json& homs = field(j, "homs", where);
  for (std::size_t k = 0; k < homs.size(); ++k) {
    const std::string w = where + "/homs/" + std::to_string(k);
    const int x = lookup(f.objects, field(homs[k], "source", w), w + "/source");
    const int y = lookup(f.objects, field(homs[k], "target", w), w + "/target");
    const json& d = field(homs[k], "dim", w);
    if (!d.is_number_integer() || d.get<int>() < 0) throw PrestackError(w + "/dim", "expected a nonnegative integer");
    f.dim[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = d.get<int>();
  }
  const json& ids = field(j, "identities", where);
  for (int x = 0; x < n; ++x) {
    const std::string& name = f.objects[static_cast<std::size_t>(x)];
    const std::string w = where + "/identities/" + name;
    f.identity.push_back(read_vec(field(ids, name.c_str(), where + "/identities"), f.hom_dim(x, x), w));
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) {
        std::vector<std::vector<Vec>> table(static_cast<std::size_t>(f.hom_dim(y, z)),
                                            std::vector<Vec>(static_cast<std::size_t>(f.hom_dim(x, y)), zeros(f.hom_dim(x, z))));
        f.product[{x, y, z}] = std::move(table);
      }
  if (j.contains("products")) {
    const json& prods = j.at("products");
    for (std::size_t k = 0; k < prods.size(); ++k) {
      const std::string w = where + "/products/" + std::to_string(k);
      const json& objs = field(prods[k], "objects", w);
      if (!objs.is_array() || objs.size() != 3) throw PrestackError(w + "/objects", "expected three objects");
      const int x = lookup(f.objects, objs[0], w + "/objects/0");
      const int y = lookup(f.objects, objs[1], w + "/objects/1");
      const int z = lookup(f.objects, objs[2], w + "/objects/2");
      const json& vals = field(prods[k], "values", w);
      auto& table = f.product[{x, y, z}];
      if (!vals.is_array() || vals.size() != table.size())
        throw PrestackError(w + "/values", "expected dim Hom(y, z) rows");
      for (std::size_t i = 0; i < table.size(); ++i) {
        if (!vals[i].is_array() || vals[i].size() != table[i].size())
          throw PrestackError(w + "/values/" + std::to_string(i), "expected dim Hom(x, y) entries");
        for (std::size_t jj = 0; jj < table[i].size(); ++jj)
          table[i][jj] = read_vec(vals[i][jj], f.hom_dim(x, z),
                                  w + "/values/" + std::to_string(i) + "/" + std::to_string(jj));
      }
    }
  }
  return f;
}

}  // namespace

Vec LinearCategory::compose(int x, int y, int z, const Vec& g, const Vec& f) const {
  Vec out = zeros(hom_dim(x, z));
  const auto& table = product.at({x, y, z});
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g[i] == 0) continue;
    for (std::size_t j = 0; j < f.size(); ++j)
      if (f[j] != 0) add_to(out, table[i][j], g[i] * f[j]);
  }
  return out;
}

Vec LinearFunctor::apply(int x, int y, const Vec& f) const {
  const auto& m = on_homs.at({x, y});
  Vec out(m.size(), Scalar(0));
  for (std::size_t r = 0; r < m.size(); ++r)
    for (std::size_t c = 0; c < f.size(); ++c)
      if (f[c] != 0) out[r] += m[r][c] * f[c];
  return out;
}

Prestack prestack_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw PrestackError("(input)", std::string("malformed JSON: ") + e.what());
  }
  Prestack p;
  const json& base = field(j, "base", "");
  p.base.objects = read_names(field(base, "objects", "/base"), "/base/objects");
  const json& arrows = field(base, "arrows", "/base");
  std::vector<std::string> arrow_names;
  for (std::size_t k = 0; k < arrows.size(); ++k) {
    const std::string w = "/base/arrows/" + std::to_string(k);
    BaseCategory::Arrow a;
    const json& name = field(arrows[k], "name", w);
    if (!name.is_string()) throw PrestackError(w + "/name", "expected a name");
    a.name = name.get<std::string>();
    if (std::find(arrow_names.begin(), arrow_names.end(), a.name) != arrow_names.end())
      throw PrestackError(w + "/name", "duplicate arrow '" + a.name + "'");
    a.source = lookup(p.base.objects, field(arrows[k], "source", w), w + "/source");
    a.target = lookup(p.base.objects, field(arrows[k], "target", w), w + "/target");
    arrow_names.push_back(a.name);
    p.base.arrows.push_back(a);
  }
  if (base.contains("composites")) {
    const json& comps = base.at("composites");
    for (std::size_t k = 0; k < comps.size(); ++k) {
      const std::string w = "/base/composites/" + std::to_string(k);
      const int u = lookup(arrow_names, field(comps[k], "first", w), w + "/first");
      const int v = lookup(arrow_names, field(comps[k], "then", w), w + "/then");
      const int r = lookup(arrow_names, field(comps[k], "result", w), w + "/result");
      p.base.composite[{u, v}] = r;
    }
  }

  const json& fibers = field(j, "fibers", "");
  for (const auto& name : p.base.objects)
    p.fibers.push_back(read_fiber(field(fibers, name.c_str(), "/fibers"), "/fibers/" + name));

  // restrictions default to nothing; every arrow must have one
  const json& rests = field(j, "restrictions", "");
  p.restrictions.resize(p.base.arrows.size());
  std::vector<bool> seen(p.base.arrows.size(), false);
  for (std::size_t k = 0; k < rests.size(); ++k) {
    const std::string w = "/restrictions/" + std::to_string(k);
    const int a = lookup(arrow_names, field(rests[k], "arrow", w), w + "/arrow");
    seen[static_cast<std::size_t>(a)] = true;
    const auto& arrow = p.base.arrows[static_cast<std::size_t>(a)];
    const LinearCategory& from = p.fibers[static_cast<std::size_t>(arrow.target)];
    const LinearCategory& to = p.fibers[static_cast<std::size_t>(arrow.source)];
    LinearFunctor& f = p.restrictions[static_cast<std::size_t>(a)];
    const json& objs = field(rests[k], "objects", w);
    for (int x = 0; x < from.size(); ++x) {
      const std::string& nm = from.objects[static_cast<std::size_t>(x)];
      f.on_objects.push_back(lookup(to.objects, field(objs, nm.c_str(), w + "/objects"), w + "/objects/" + nm));
    }
    for (int x = 0; x < from.size(); ++x)
      for (int y = 0; y < from.size(); ++y)
        f.on_homs[{x, y}] = std::vector<Vec>(
            static_cast<std::size_t>(to.hom_dim(f.on_objects[static_cast<std::size_t>(x)], f.on_objects[static_cast<std::size_t>(y)])),
            zeros(from.hom_dim(x, y)));
    if (rests[k].contains("maps")) {
      const json& maps = rests[k].at("maps");
      for (std::size_t m = 0; m < maps.size(); ++m) {
        const std::string wm = w + "/maps/" + std::to_string(m);
        const int x = lookup(from.objects, field(maps[m], "source", wm), wm + "/source");
        const int y = lookup(from.objects, field(maps[m], "target", wm), wm + "/target");
        auto& mat = f.on_homs[{x, y}];
        const json& rows = field(maps[m], "matrix", wm);
        if (!rows.is_array() || rows.size() != mat.size()) throw PrestackError(wm + "/matrix", "wrong number of rows");
        for (std::size_t r = 0; r < mat.size(); ++r)
          mat[r] = read_vec(rows[r], from.hom_dim(x, y), wm + "/matrix/" + std::to_string(r));
      }
    }
  }
  for (std::size_t a = 0; a < seen.size(); ++a)
    if (!seen[a]) throw PrestackError("/restrictions", "no restriction for arrow '" + arrow_names[a] + "'");

  // twists default to identities (a presheaf)
  for (const auto& [uv, r] : p.base.composite) {
    const auto& u = p.base.arrows[static_cast<std::size_t>(uv.first)];
    const auto& v = p.base.arrows[static_cast<std::size_t>(uv.second)];
    const LinearCategory& top = p.fibers[static_cast<std::size_t>(v.target)];
    const LinearCategory& bottom = p.fibers[static_cast<std::size_t>(u.source)];
    std::vector<Vec> comps;
    for (int x = 0; x < top.size(); ++x) {
      const int a = p.restrictions[static_cast<std::size_t>(uv.first)].on_objects[static_cast<std::size_t>(
          p.restrictions[static_cast<std::size_t>(uv.second)].on_objects[static_cast<std::size_t>(x)])];
      const int b = p.restrictions[static_cast<std::size_t>(r)].on_objects[static_cast<std::size_t>(x)];
      comps.push_back(a == b ? bottom.identity[static_cast<std::size_t>(a)] : zeros(bottom.hom_dim(a, b)));
    }
    p.twists[uv] = std::move(comps);
  }
  if (j.contains("twists")) {
    const json& tw = j.at("twists");
    for (std::size_t k = 0; k < tw.size(); ++k) {
      const std::string w = "/twists/" + std::to_string(k);
      const int u = lookup(arrow_names, field(tw[k], "first", w), w + "/first");
      const int v = lookup(arrow_names, field(tw[k], "then", w), w + "/then");
      const auto it = p.base.composite.find({u, v});
      if (it == p.base.composite.end()) throw PrestackError(w, "twist on a pair without composite");
      const LinearCategory& top = p.fibers[static_cast<std::size_t>(p.base.arrows[static_cast<std::size_t>(v)].target)];
      const LinearCategory& bottom =
          p.fibers[static_cast<std::size_t>(p.base.arrows[static_cast<std::size_t>(u)].source)];
      const json& comps = field(tw[k], "components", w);
      for (int x = 0; x < top.size(); ++x) {
        const std::string& nm = top.objects[static_cast<std::size_t>(x)];
        if (!comps.contains(nm)) continue;
        const int a = p.restrictions[static_cast<std::size_t>(u)].on_objects[static_cast<std::size_t>(
            p.restrictions[static_cast<std::size_t>(v)].on_objects[static_cast<std::size_t>(x)])];
        const int b = p.restrictions[static_cast<std::size_t>(it->second)].on_objects[static_cast<std::size_t>(x)];
        p.twists[{u, v}][static_cast<std::size_t>(x)] = read_vec(comps.at(nm), bottom.hom_dim(a, b), w + "/components/" + nm);
      }
    }
  }
  return p;
}

std::string prestack_to_json(const Prestack& p) {
  json j;
  j["base"]["objects"] = p.base.objects;
  j["base"]["arrows"] = json::array();
  for (const auto& a : p.base.arrows)
    j["base"]["arrows"].push_back({{"name", a.name},
                                   {"source", p.base.objects[static_cast<std::size_t>(a.source)]},
                                   {"target", p.base.objects[static_cast<std::size_t>(a.target)]}});
  j["base"]["composites"] = json::array();
  auto arrow = [&](int a) { return p.base.arrows[static_cast<std::size_t>(a)].name; };
  for (const auto& [uv, r] : p.base.composite)
    j["base"]["composites"].push_back({{"first", arrow(uv.first)}, {"then", arrow(uv.second)}, {"result", arrow(r)}});
  for (std::size_t u = 0; u < p.fibers.size(); ++u) {
    const auto& f = p.fibers[u];
    json fj;
    fj["objects"] = f.objects;
    fj["homs"] = json::array();
    fj["identities"] = json::object();
    fj["products"] = json::array();
    for (int x = 0; x < f.size(); ++x) {
      fj["identities"][f.objects[static_cast<std::size_t>(x)]] = write_vec(f.identity[static_cast<std::size_t>(x)]);
      for (int y = 0; y < f.size(); ++y)
        if (f.hom_dim(x, y) > 0)
          fj["homs"].push_back({{"source", f.objects[static_cast<std::size_t>(x)]},
                                {"target", f.objects[static_cast<std::size_t>(y)]},
                                {"dim", f.hom_dim(x, y)}});
    }
    for (const auto& [xyz, table] : f.product) {
      bool any = false;
      json vals = json::array();
      for (const auto& row : table) {
        json r = json::array();
        for (const auto& v : row) {
          any = any || !is_zero_vec(v);
          r.push_back(write_vec(v));
        }
        vals.push_back(r);
      }
      if (!any) continue;
      fj["products"].push_back({{"objects",
                                 {f.objects[static_cast<std::size_t>(xyz[0])], f.objects[static_cast<std::size_t>(xyz[1])],
                                  f.objects[static_cast<std::size_t>(xyz[2])]}},
                                {"values", vals}});
    }
    j["fibers"][p.base.objects[u]] = fj;
  }
  j["restrictions"] = json::array();
  for (std::size_t a = 0; a < p.restrictions.size(); ++a) {
    const auto& r = p.restrictions[a];
    const auto& from = p.fibers[static_cast<std::size_t>(p.base.arrows[a].target)];
    const auto& to = p.fibers[static_cast<std::size_t>(p.base.arrows[a].source)];
    json rj;
    rj["arrow"] = p.base.arrows[a].name;
    rj["objects"] = json::object();
    for (std::size_t x = 0; x < r.on_objects.size(); ++x)
      rj["objects"][from.objects[x]] = to.objects[static_cast<std::size_t>(r.on_objects[x])];
    rj["maps"] = json::array();
    for (const auto& [xy, mat] : r.on_homs) {
      if (mat.empty() || mat[0].empty()) continue;
      json m = json::array();
      for (const auto& row : mat) m.push_back(write_vec(row));
      rj["maps"].push_back({{"source", from.objects[static_cast<std::size_t>(xy.first)]},
                            {"target", from.objects[static_cast<std::size_t>(xy.second)]},
                            {"matrix", m}});
    }
    j["restrictions"].push_back(rj);
  }
  j["twists"] = json::array();
  for (const auto& [uv, comps] : p.twists) {
    const auto& top = p.fibers[static_cast<std::size_t>(p.base.arrows[static_cast<std::size_t>(uv.second)].target)];
    json cj = json::object();
    for (std::size_t x = 0; x < comps.size(); ++x) cj[top.objects[x]] = write_vec(comps[x]);
    j["twists"].push_back({{"first", arrow(uv.first)}, {"then", arrow(uv.second)}, {"components", cj}});
  }
  return j.dump(2);
}

PrestackReport validate_prestack(const Prestack& p) {
  PrestackReport rep;
  auto fail = [&](const std::string& msg) {
    rep.valid = false;
    rep.problems.push_back(msg);
  };
  const auto& B = p.base;
  auto arrow = [&](int a) -> const BaseCategory::Arrow& { return B.arrows[static_cast<std::size_t>(a)]; };
  const int na = static_cast<int>(B.arrows.size());

  // base: acyclic, composition total and associative
  for (int a = 0; a < na; ++a)
    if (arrow(a).source == arrow(a).target) fail("base: arrow " + arrow(a).name + " is an endomorphism");
  for (int u = 0; u < na; ++u)
    for (int v = 0; v < na; ++v) {
      if (arrow(u).target != arrow(v).source) continue;
      const auto it = B.composite.find({u, v});
      if (it == B.composite.end()) {
        fail("base: missing composite of " + arrow(u).name + " then " + arrow(v).name);
        continue;
      }
      if (arrow(it->second).source != arrow(u).source || arrow(it->second).target != arrow(v).target)
        fail("base: composite of " + arrow(u).name + " then " + arrow(v).name + " has the wrong ends");
    }
  for (const auto& [uv, r] : B.composite)
    if (arrow(uv.first).target != arrow(uv.second).source)
      fail("base: composite listed for the non-composable pair " + arrow(uv.first).name + ", " + arrow(uv.second).name);
  if (!rep.valid) return rep;
  for (const auto& [uv, r] : B.composite)
    for (int w = 0; w < na; ++w) {
      if (arrow(uv.second).target != arrow(w).source) continue;
      const int left = B.composite.at({r, w});
      const int right = B.composite.at({uv.first, B.composite.at({uv.second, w})});
      if (left != right)
        fail("base: composition is not associative on " + arrow(uv.first).name + ", " + arrow(uv.second).name + ", " +
             arrow(w).name);
    }

  // fibers: identities and associativity on basis elements
  for (std::size_t u = 0; u < p.fibers.size(); ++u) {
    const auto& f = p.fibers[u];
    const std::string where = "fiber " + B.objects[u];
    for (int x = 0; x < f.size(); ++x)
      if (is_zero_vec(f.identity[static_cast<std::size_t>(x)]))
        fail(where + ": the identity of " + f.objects[static_cast<std::size_t>(x)] + " is zero");
    for (int x = 0; x < f.size(); ++x)
      for (int y = 0; y < f.size(); ++y)
        for (int k = 0; k < f.hom_dim(x, y); ++k) {
          const Vec e = unit_vec(f.hom_dim(x, y), k);
          if (f.compose(x, y, y, f.identity[static_cast<std::size_t>(y)], e) != e ||
              f.compose(x, x, y, e, f.identity[static_cast<std::size_t>(x)]) != e)
            fail(where + ": identity axiom fails on a basis morphism " + f.objects[static_cast<std::size_t>(x)] +
                 " -> " + f.objects[static_cast<std::size_t>(y)]);
        }
    for (int w = 0; w < f.size(); ++w)
      for (int x = 0; x < f.size(); ++x)
        for (int y = 0; y < f.size(); ++y)
          for (int z = 0; z < f.size(); ++z)
            for (int i = 0; i < f.hom_dim(y, z); ++i)
              for (int j = 0; j < f.hom_dim(x, y); ++j)
                for (int k = 0; k < f.hom_dim(w, x); ++k) {
                  const Vec a = unit_vec(f.hom_dim(y, z), i), b = unit_vec(f.hom_dim(x, y), j),
                            c = unit_vec(f.hom_dim(w, x), k);
                  if (f.compose(w, y, z, a, f.compose(w, x, y, b, c)) != f.compose(w, x, z, f.compose(x, y, z, a, b), c))
                    fail(where + ": composition is not associative");
                }
  }
  if (!rep.valid) return rep;

  // restrictions are functors
  for (int a = 0; a < na; ++a) {
    const auto& F = p.restrictions[static_cast<std::size_t>(a)];
    const auto& from = p.fibers[static_cast<std::size_t>(arrow(a).target)];
    const auto& to = p.fibers[static_cast<std::size_t>(arrow(a).source)];
    const std::string where = "restriction " + arrow(a).name;
    auto Fo = [&](int x) { return F.on_objects[static_cast<std::size_t>(x)]; };
    for (int x = 0; x < from.size(); ++x)
      if (F.apply(x, x, from.identity[static_cast<std::size_t>(x)]) != to.identity[static_cast<std::size_t>(Fo(x))])
        fail(where + ": does not preserve the identity of " + from.objects[static_cast<std::size_t>(x)]);
    for (int x = 0; x < from.size(); ++x)
      for (int y = 0; y < from.size(); ++y)
        for (int z = 0; z < from.size(); ++z)
          for (int i = 0; i < from.hom_dim(y, z); ++i)
            for (int j = 0; j < from.hom_dim(x, y); ++j) {
              const Vec g = unit_vec(from.hom_dim(y, z), i), f = unit_vec(from.hom_dim(x, y), j);
              if (F.apply(x, z, from.compose(x, y, z, g, f)) !=
                  to.compose(Fo(x), Fo(y), Fo(z), F.apply(y, z, g), F.apply(x, y, f)))
                fail(where + ": does not preserve composition");
            }
  }
  if (!rep.valid) return rep;

  // twists: natural, invertible, coherent
  auto R = [&](int a) -> const LinearFunctor& { return p.restrictions[static_cast<std::size_t>(a)]; };
  auto obj = [&](int a, int x) { return R(a).on_objects[static_cast<std::size_t>(x)]; };
  for (const auto& [uv, r] : B.composite) {
    const auto [u, v] = uv;
    const auto& top = p.fibers[static_cast<std::size_t>(arrow(v).target)];
    const auto& bot = p.fibers[static_cast<std::size_t>(arrow(u).source)];
    const auto& c = p.twists.at(uv);
    const std::string where = "twist (" + arrow(u).name + ", " + arrow(v).name + ")";
    for (int x = 0; x < top.size(); ++x) {
      const int a = obj(u, obj(v, x)), b = obj(r, x);
      const Vec& cx = c[static_cast<std::size_t>(x)];
      if (a != b || cx != bot.identity[static_cast<std::size_t>(a)]) rep.presheaf = false;
      // invertibility: d o c = 1 and c o d = 1
      const int n = bot.hom_dim(b, a);
      std::vector<Vec> rows;
      Vec rhs;
      for (int side = 0; side < 2; ++side) {
        const int e = side == 0 ? a : b;
        for (int t = 0; t < bot.hom_dim(e, e); ++t) {
          Vec row = zeros(n);
          for (int k = 0; k < n; ++k) {
            const Vec d = unit_vec(n, k);
            row[static_cast<std::size_t>(k)] =
                (side == 0 ? bot.compose(a, b, a, d, cx) : bot.compose(b, a, b, cx, d))[static_cast<std::size_t>(t)];
          }
          rows.push_back(row);
          rhs.push_back(bot.identity[static_cast<std::size_t>(e)][static_cast<std::size_t>(t)]);
        }
      }
      Vec inv;
      if (rows.empty() || !solve(rows, rhs, inv))
        fail(where + ": component at " + top.objects[static_cast<std::size_t>(x)] + " is not invertible");
    }
    for (int x = 0; x < top.size(); ++x)
      for (int y = 0; y < top.size(); ++y)
        for (int k = 0; k < top.hom_dim(x, y); ++k) {
          const Vec f = unit_vec(top.hom_dim(x, y), k);
          const int ax = obj(u, obj(v, x)), ay = obj(u, obj(v, y)), bx = obj(r, x), by = obj(r, y);
          const Vec lhs = bot.compose(ax, bx, by, R(r).apply(x, y, f), c[static_cast<std::size_t>(x)]);
          const Vec rhs =
              bot.compose(ax, ay, by, c[static_cast<std::size_t>(y)], R(u).apply(obj(v, x), obj(v, y), R(v).apply(x, y, f)));
          if (lhs != rhs)
            fail(where + ": not natural on a morphism " + top.objects[static_cast<std::size_t>(x)] + " -> " +
                 top.objects[static_cast<std::size_t>(y)]);
        }
  }
  for (const auto& [f1f2, r12] : B.composite)
    for (int f3 = 0; f3 < na; ++f3) {
      const auto [f1, f2] = f1f2;
      if (arrow(f2).target != arrow(f3).source) continue;
      const int r23 = B.composite.at({f2, f3});
      const int r123 = B.composite.at({r12, f3});
      const auto& top = p.fibers[static_cast<std::size_t>(arrow(f3).target)];
      const auto& bot = p.fibers[static_cast<std::size_t>(arrow(f1).source)];
      for (int x = 0; x < top.size(); ++x) {
        const int x3 = obj(f3, x);
        const int start = obj(f1, obj(f2, x3)), end = obj(r123, x);
        // c^{f3, f2f1} o (c^{f2,f1} at f3* x)
        const int mid_l = obj(r12, x3);
        const Vec lhs = bot.compose(start, mid_l, end, p.twists.at({r12, f3})[static_cast<std::size_t>(x)],
                                    p.twists.at({f1, f2})[static_cast<std::size_t>(x3)]);
        // c^{f3f2, f1} o f1*(c^{f3,f2} at x)
        const int mid_r = obj(f1, obj(r23, x));
        const Vec lifted = R(f1).apply(obj(f2, x3), obj(r23, x), p.twists.at({f2, f3})[static_cast<std::size_t>(x)]);
        const Vec rhs = bot.compose(start, mid_r, end, p.twists.at({f1, r23})[static_cast<std::size_t>(x)], lifted);
        if (lhs != rhs)
          fail("coherence fails on the triple (" + arrow(f1).name + ", " + arrow(f2).name + ", " + arrow(f3).name +
               ") at " + top.objects[static_cast<std::size_t>(x)]);
      }
    }
  if (!rep.valid) rep.presheaf = false;
  return rep;
}

// ---- the complex ----

GSComplex::GSComplex(Prestack p) : p_(std::move(p)) {
  const auto rep = validate_prestack(p_);
  if (!rep.valid) throw std::invalid_argument("invalid prestack: " + rep.problems.front());
  presheaf_ = rep.presheaf;
}

const std::vector<std::vector<int>>& GSComplex::simplices(int p) const {
  auto it = simplices_.find(p);
  if (it != simplices_.end()) return it->second;
  std::vector<std::vector<int>> out;
  if (p == 0) {
    for (int u = 0; u < static_cast<int>(p_.base.objects.size()); ++u) out.push_back({u});
  } else if (p == 1) {
    for (int a = 0; a < static_cast<int>(p_.base.arrows.size()); ++a) out.push_back({a});
  } else {
    for (const auto& s : simplices(p - 1))
      for (int a = 0; a < static_cast<int>(p_.base.arrows.size()); ++a)
        if (p_.base.arrows[static_cast<std::size_t>(s.back())].target == p_.base.arrows[static_cast<std::size_t>(a)].source) {
          auto t = s;
          t.push_back(a);
          out.push_back(std::move(t));
        }
  }
  return simplices_.emplace(p, std::move(out)).first->second;
}

int GSComplex::first_object(const std::vector<int>& s, int p) const {
  return p == 0 ? s[0] : p_.base.arrows[static_cast<std::size_t>(s.front())].source;
}

int GSComplex::last_object(const std::vector<int>& s, int p) const {
  return p == 0 ? s[0] : p_.base.arrows[static_cast<std::size_t>(s.back())].target;
}

int GSComplex::composite_of(const std::vector<int>& s) const {
  int c = s[0];
  for (std::size_t k = 1; k < s.size(); ++k) c = p_.base.composite.at({c, s[k]});
  return c;
}

// Only called for p >= 1: sigma# and sigma* of a 0-simplex are identities.
int GSComplex::sharp_object(const std::vector<int>& s, int x) const {
  for (auto it = s.rbegin(); it != s.rend(); ++it) x = p_.restrictions[static_cast<std::size_t>(*it)].on_objects[static_cast<std::size_t>(x)];
  return x;
}

int GSComplex::star_object(const std::vector<int>& s, int x) const {
  return p_.restrictions[static_cast<std::size_t>(composite_of(s))].on_objects[static_cast<std::size_t>(x)];
}

Vec GSComplex::sharp_map(const std::vector<int>& s, int x, int y, const Vec& f) const {
  Vec g = f;
  for (auto it = s.rbegin(); it != s.rend(); ++it) {
    const auto& R = p_.restrictions[static_cast<std::size_t>(*it)];
    g = R.apply(x, y, g);
    x = R.on_objects[static_cast<std::size_t>(x)];
    y = R.on_objects[static_cast<std::size_t>(y)];
  }
  return g;
}

Vec GSComplex::star_map(const std::vector<int>& s, int x, int y, const Vec& f) const {
  return p_.restrictions[static_cast<std::size_t>(composite_of(s))].apply(x, y, f);
}

const GSComplex::Layout& GSComplex::layout(int p, int q) const {
  auto it = layouts_.find({p, q});
  if (it != layouts_.end()) return it->second;
  Layout L;
  for (const auto& s : simplices(p)) {
    const int up = last_object(s, p), u0 = first_object(s, p);
    const auto& F = p_.fibers[static_cast<std::size_t>(up)];
    const auto& G = p_.fibers[static_cast<std::size_t>(u0)];
    if (F.size() == 0) continue;
    std::vector<int> objs(static_cast<std::size_t>(q + 1), 0);
    while (true) {
      Block b;
      b.simplex = s;
      b.objects = objs;
      std::size_t in = 1;
      for (int i = 1; i <= q; ++i) {
        const int x = objs[static_cast<std::size_t>(i)], y = objs[static_cast<std::size_t>(i - 1)];
        const std::size_t d = static_cast<std::size_t>(F.hom_dim(x, y) - (x == y ? 1 : 0));
        b.in_dims.push_back(d);
        in *= d;
      }
      b.out_src = p == 0 ? objs.back() : sharp_object(s, objs.back());
      b.out_dst = p == 0 ? objs.front() : star_object(s, objs.front());
      b.out_dim = static_cast<std::size_t>(G.hom_dim(b.out_src, b.out_dst));
      if (in * b.out_dim > 0) {
        b.offset = L.dim;
        L.dim += in * b.out_dim;
        L.index[{s, objs}] = L.blocks.size();
        L.blocks.push_back(std::move(b));
      }
      int k = q;
      while (k >= 0 && ++objs[static_cast<std::size_t>(k)] == F.size()) objs[static_cast<std::size_t>(k--)] = 0;
      if (k < 0) break;
    }
  }
  return layouts_.emplace(std::make_pair(p, q), std::move(L)).first->second;
}

std::size_t GSComplex::dim(int p, int q) const { return layout(p, q).dim; }

Vec GSComplex::reduce(int fiber, int x, int y, const Vec& f) const {
  if (x != y) return f;
  const auto& id = p_.fibers[static_cast<std::size_t>(fiber)].identity[static_cast<std::size_t>(x)];
  std::size_t piv = 0;
  while (id[piv] == 0) ++piv;
  const Scalar lambda = f[piv] / id[piv];
  Vec out;
  for (std::size_t k = 0; k < f.size(); ++k)
    if (k != piv) out.push_back(f[k] - lambda * id[k]);
  return out;
}

Vec GSComplex::basis_morphism(int fiber, int x, int y, std::size_t k) const {
  const auto& F = p_.fibers[static_cast<std::size_t>(fiber)];
  Vec e = zeros(F.hom_dim(x, y));
  if (x == y) {
    const auto& id = F.identity[static_cast<std::size_t>(x)];
    std::size_t piv = 0;
    while (id[piv] == 0) ++piv;
    if (k >= piv) ++k;
  }
  e[k] = 1;
  return e;
}

template <class F>
void GSComplex::for_each_input(const Block& b, int fiber, F f) const {
  const std::size_t q = b.in_dims.size();
  std::vector<std::size_t> t(q, 0);
  std::size_t flat = 0;
  while (true) {
    std::vector<Vec> args;
    for (std::size_t i = 0; i < q; ++i)
      args.push_back(basis_morphism(fiber, b.objects[i + 1], b.objects[i], t[i]));
    f(flat++, args);
    std::size_t k = q;
    while (k > 0 && ++t[k - 1] == b.in_dims[k - 1]) t[--k] = 0;
    if (k == 0) break;
  }
}

Vec GSComplex::evaluate(int p, int q, const Vec& theta, const std::vector<int>& s, const std::vector<int>& objs,
                        const std::vector<Vec>& args) const {
  const int up = last_object(s, p), u0 = first_object(s, p);
  const auto& G = p_.fibers[static_cast<std::size_t>(u0)];
  const int src = p == 0 ? objs.back() : sharp_object(s, objs.back());
  const int dst = p == 0 ? objs.front() : star_object(s, objs.front());
  Vec out = zeros(G.hom_dim(src, dst));
  const auto& L = layout(p, q);
  const auto it = L.index.find({s, objs});
  if (it == L.index.end()) return out;
  const Block& b = L.blocks[it->second];
  std::vector<Vec> coords;
  for (int i = 1; i <= q; ++i)
    coords.push_back(reduce(up, objs[static_cast<std::size_t>(i)], objs[static_cast<std::size_t>(i - 1)],
                            args[static_cast<std::size_t>(i - 1)]));
  std::function<void(std::size_t, std::size_t, Scalar)> rec = [&](std::size_t i, std::size_t flat, Scalar c) {
    if (i == coords.size()) {
      const std::size_t base = b.offset + flat * b.out_dim;
      for (std::size_t k = 0; k < b.out_dim; ++k) out[k] += c * theta[base + k];
      return;
    }
    for (std::size_t t = 0; t < coords[i].size(); ++t)
      if (coords[i][t] != 0) rec(i + 1, flat * b.in_dims[i] + t, c * coords[i][t]);
  };
  rec(0, 0, Scalar(1));
  return out;
}

Vec GSComplex::d0(int p, int q, const Vec& theta) const {
  const auto& L = layout(p, q + 1);
  Vec out(L.dim, Scalar(0));
  for (const auto& b : L.blocks) {
    const auto& s = b.simplex;
    const int up = last_object(s, p), u0 = first_object(s, p);
    const auto& F = p_.fibers[static_cast<std::size_t>(up)];
    const auto& G = p_.fibers[static_cast<std::size_t>(u0)];
    const auto& A = b.objects;
    auto sharp_o = [&](int x) { return p == 0 ? x : sharp_object(s, x); };
    auto star_o = [&](int x) { return p == 0 ? x : star_object(s, x); };
    for_each_input(b, up, [&](std::size_t flat, const std::vector<Vec>& a) {
      Vec res = zeros(static_cast<int>(b.out_dim));
      const int Aq1 = A[static_cast<std::size_t>(q + 1)];
      // sigma*(a_1) o theta(a_2, .., a_{q+1})
      {
        std::vector<int> objs(A.begin() + 1, A.end());
        std::vector<Vec> args(a.begin() + 1, a.end());
        const Vec v = evaluate(p, q, theta, s, objs, args);
        const Vec w = p == 0 ? a[0] : star_map(s, A[1], A[0], a[0]);
        add_to(res, G.compose(sharp_o(Aq1), star_o(A[1]), star_o(A[0]), w, v));
      }
      for (int i = 1; i <= q; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        std::vector<int> objs(A);
        objs.erase(objs.begin() + i);
        std::vector<Vec> args;
        for (std::size_t k = 0; k + 1 < ui; ++k) args.push_back(a[k]);
        args.push_back(F.compose(A[ui + 1], A[ui], A[ui - 1], a[ui - 1], a[ui]));
        for (std::size_t k = ui + 1; k < a.size(); ++k) args.push_back(a[k]);
        add_to(res, evaluate(p, q, theta, s, objs, args), sign_scalar(i));
      }
      // theta(a_1, .., a_q) o sigma#(a_{q+1})
      {
        std::vector<int> objs(A.begin(), A.end() - 1);
        std::vector<Vec> args(a.begin(), a.end() - 1);
        const Vec v = evaluate(p, q, theta, s, objs, args);
        const int Aq = A[static_cast<std::size_t>(q)];
        const Vec w = p == 0 ? a.back() : sharp_map(s, Aq1, Aq, a.back());
        add_to(res, G.compose(sharp_o(Aq1), sharp_o(Aq), star_o(A[0]), v, w), sign_scalar(q + 1));
      }
      for (std::size_t k = 0; k < b.out_dim; ++k) out[b.offset + flat * b.out_dim + k] = res[k];
    });
  }
  return out;
}

Vec GSComplex::d1(int p, int q, const Vec& theta) const {
  if (!presheaf_) throw std::logic_error("the simplicial component is only implemented for presheaves");
  const auto& L = layout(p + 1, q);
  Vec out(L.dim, Scalar(0));
  const auto& arrows = p_.base.arrows;
  for (const auto& b : L.blocks) {
    const auto& s = b.simplex;  // u_1 .. u_{p+1}
    const int up1 = last_object(s, p + 1);
    const auto& A = b.objects;
    for_each_input(b, up1, [&](std::size_t flat, const std::vector<Vec>& a) {
      Vec res = zeros(static_cast<int>(b.out_dim));
      // u_1* theta^{(u_2 .. u_{p+1})}
      {
        std::vector<int> face = p == 0 ? std::vector<int>{arrows[static_cast<std::size_t>(s[0])].target}
                                       : std::vector<int>(s.begin() + 1, s.end());
        const Vec v = evaluate(p, q, theta, face, A, a);
        const int src = p == 0 ? A.back() : sharp_object(face, A.back());
        const int dst = p == 0 ? A.front() : star_object(face, A.front());
        add_to(res, p_.restrictions[static_cast<std::size_t>(s[0])].apply(src, dst, v), sign_scalar(p + q + 1));
      }
      for (int i = 1; i <= p; ++i) {
        std::vector<int> face;
        for (int k = 0; k < i - 1; ++k) face.push_back(s[static_cast<std::size_t>(k)]);
        face.push_back(p_.base.composite.at({s[static_cast<std::size_t>(i - 1)], s[static_cast<std::size_t>(i)]}));
        for (int k = i + 1; k <= p; ++k) face.push_back(s[static_cast<std::size_t>(k)]);
        add_to(res, evaluate(p, q, theta, face, A, a), sign_scalar(p + q + i + 1));
      }
      // theta^{(u_1 .. u_p)} restricted along u_{p+1}
      {
        const auto& R = p_.restrictions[static_cast<std::size_t>(s.back())];
        std::vector<int> face = p == 0 ? std::vector<int>{arrows[static_cast<std::size_t>(s[0])].source}
                                       : std::vector<int>(s.begin(), s.end() - 1);
        std::vector<int> objs;
        for (int x : A) objs.push_back(R.on_objects[static_cast<std::size_t>(x)]);
        std::vector<Vec> args;
        for (std::size_t i = 0; i < a.size(); ++i) args.push_back(R.apply(A[i + 1], A[i], a[i]));
        add_to(res, evaluate(p, q, theta, face, objs, args), sign_scalar(q));
      }
      for (std::size_t k = 0; k < b.out_dim; ++k) out[b.offset + flat * b.out_dim + k] = res[k];
    });
  }
  return out;
}

namespace {

template <class D>
SparseMatrix matrix_of(std::size_t rows, std::size_t cols, D apply) {
  SparseMatrix m(rows, cols);
  for (std::size_t c = 0; c < cols; ++c) {
    Vec e(cols, Scalar(0));
    e[c] = 1;
    const Vec v = apply(e);
    for (std::size_t r = 0; r < rows; ++r)
      if (v[r] != 0) m.set(r, c, v[r]);
  }
  return m;
}

}  // namespace

SparseMatrix GSComplex::d0_matrix(int p, int q) const {
  return matrix_of(dim(p, q + 1), dim(p, q), [&](const Vec& e) { return d0(p, q, e); });
}

SparseMatrix GSComplex::d1_matrix(int p, int q) const {
  return matrix_of(dim(p + 1, q), dim(p, q), [&](const Vec& e) { return d1(p, q, e); });
}

ChainComplex GSComplex::total(int top) const {
  if (!presheaf_) throw std::logic_error("the totalization needs d1, which is only implemented for presheaves");
  std::vector<std::size_t> dims;
  std::vector<std::map<int, std::size_t>> offsets;  // degree -> (p -> offset)
  for (int n = 0; n <= top; ++n) {
    std::map<int, std::size_t> off;
    std::size_t total = 0;
    for (int p = 0; p <= n; ++p) {
      off[p] = total;
      total += dim(p, n - p);
    }
    dims.push_back(total);
    offsets.push_back(off);
  }
  ChainComplex c(0, dims);
  for (int n = 0; n < top; ++n) {
    SparseMatrix m(dims[static_cast<std::size_t>(n + 1)], dims[static_cast<std::size_t>(n)]);
    for (int p = 0; p <= n; ++p) {
      const int q = n - p;
      const std::size_t col0 = offsets[static_cast<std::size_t>(n)][p];
      auto place = [&](const SparseMatrix& blk, std::size_t row0) {
        for (std::size_t r = 0; r < blk.rows(); ++r)
          for (const auto& [cc, v] : blk.row(r)) m.add(row0 + r, col0 + cc, v);
      };
      place(d0_matrix(p, q), offsets[static_cast<std::size_t>(n + 1)][p]);
      place(d1_matrix(p, q), offsets[static_cast<std::size_t>(n + 1)][p + 1]);
    }
    c.set_differential(n, std::move(m));
  }
  return c;
}

BettiTable gs_cohomology(const Prestack& p, int bound) {
  if (bound < 1) throw std::invalid_argument("gs_cohomology needs bound >= 1");
  const GSComplex gs(p);
  const auto all = betti(gs.total(bound + 1));
  BettiTable out;
  for (const auto& [d, k] : all)
    if (d <= bound - 1) out[d] = k;
  return out;
}

}  // namespace qk
