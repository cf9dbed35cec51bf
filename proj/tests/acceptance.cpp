// One PASS/FAIL line per acceptance criterion. Exits nonzero if any fails.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "hochschild_oracle.hpp"
#include "quiltkit/brace.hpp"
#include "quiltkit/cli.hpp"
#include "quiltkit/complex_builder.hpp"
#include "quiltkit/fsurj.hpp"
#include "quiltkit/gs.hpp"
#include "quiltkit/homotopy.hpp"
#include "quiltkit/quilt.hpp"
#include "quiltkit/twist.hpp"

using namespace qk;

namespace {

struct Outcome {
  bool ok = true;
  std::string note;

  void require(bool cond, const std::string& why) {
    if (cond) return;
    if (ok) note = why;
    else if (note.size() < 400) note += "; " + why;
    ok = false;
  }
};

int failures = 0;

void criterion(int k, const std::string& title, double limit_seconds, const std::function<Outcome()>& run) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = run();
  } catch (const std::exception& e) {
    o.ok = false;
    o.note = std::string("exception: ") + e.what();
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (limit_seconds > 0 && s > limit_seconds) o.require(false, "took longer than " + std::to_string(limit_seconds) + " s");
  if (!o.ok) ++failures;
  char time[32];
  std::snprintf(time, sizeof time, "%.2f s", s);
  std::cout << (o.ok ? "PASS" : "FAIL") << " " << k << " " << title << " [" << time << "]";
  if (!o.note.empty()) std::cout << ": " << o.note;
  std::cout << std::endl;
}

std::string table(const std::map<int, std::size_t>& t) {
  std::string s = "{";
  for (const auto& [d, k] : t) s += (s.size() > 1 ? ", " : "") + std::to_string(d) + ": " + std::to_string(k);
  return s + "}";
}

Element<Word> words(int n, std::initializer_list<std::pair<int, const char*>> terms) {
  Element<Word> e;
  bool first = true;
  for (const auto& [c, w] : terms) {
    const Word x = Word::parse(n, w);
    if (first) e = Element<Word>(n, x.degree());
    first = false;
    e.add(x, c);
  }
  return e;
}

std::vector<PlanarTree> standard_trees(int n) {
  std::vector<PlanarTree> out;
  for (const auto& t : enumerate_trees(n))
    if (t.in_standard_order()) out.push_back(t);
  return out;
}

std::size_t factorial_times_catalan(int n) {
  // n! * C(n-1), the number of planar rooted trees on n labelled vertices
  std::size_t f = 1, c = 1;
  for (int k = 2; k <= n; ++k) f *= static_cast<std::size_t>(k);
  for (int k = 0; k < n - 1; ++k) c = c * 2 * (2 * static_cast<std::size_t>(k) + 1) / (static_cast<std::size_t>(k) + 2);
  return f * c;
}

void absorb(Outcome& o, const CheckReport& r, const std::string& what) {
  o.require(r.passed, what + (r.failures.empty() ? "" : " (" + r.failures.front() + ")"));
}

void absorb(Outcome& o, const VerifyReport& r) {
  for (const auto& e : r.entries)
    o.require(e.passed, e.identity + (e.failures.empty() ? "" : " (" + e.failures.front() + ")"));
}

std::string load(const std::string& name) {
  std::ifstream in(std::string(QUILTKIT_DATA_DIR) + "/" + name);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string capture(const std::string& cmd, int& status) {
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) throw std::runtime_error("cannot run " + cmd);
  std::string out;
  char buf[4096];
  std::size_t k;
  while ((k = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, k);
  status = pclose(p);
  return out;
}

template <class Tw>
std::size_t square_failures(const Tw& tw, int max_arity, std::size_t& checked) {
  std::size_t bad = 0;
  for (int n = 0; n <= max_arity; ++n)
    for (const auto& b : tw.basis(n)) {
      ++checked;
      if (!differential(tw, tw.differential(b)).is_zero()) ++bad;
    }
  return bad;
}

}  // namespace

int main() {
  std::cout << std::unitbuf;

  criterion(1, "worked composition and boundaries in FSurj", 1.0, [] {
    Outcome o;
    FSurjOperad fs;
    const Word a = Word::parse(3, "1232"), b = Word::parse(3, "1213");
    const auto comp = fs.compose(a, 2, b);
    const auto want = words(5, {{1, "1252324"}, {-1, "1235324"}, {-1, "1232524"}, {-1, "1232454"}});
    o.require(comp == want, "1232 o_2 1213 = " + describe(fs, comp));
    o.require(fs.differential(a) == words(3, {{-1, "132"}, {1, "123"}}), "d(1232) = " + describe(fs, fs.differential(a)));
    o.require(fs.differential(b) == words(3, {{-1, "213"}, {1, "123"}}), "d(1213) = " + describe(fs, fs.differential(b)));
    return o;
  });

  criterion(2, "operad axioms for Brace, FSurj, Quilt (exhaustive arity <= 3, 10^4 arity 4 samples each)", 300.0, [] {
    Outcome o;
    AxiomOptions opt;
    opt.max_arity = 3;
    opt.triple_arity = 5;
    opt.random_samples = 10000;
    opt.random_arity = 4;
    opt.seed = 20240601;
    absorb(o, check_operad_axioms(BraceOperad{}, opt), "brace");
    absorb(o, check_operad_axioms(FSurjOperad{}, opt), "fsurj");
    absorb(o, check_operad_axioms(QuiltOperad{}, opt), "quilt");
    return o;
  });

  criterion(3, "betti(Quilt(n)) = {0: |Tree(n)|}, per tree {0: 1}, p bijective on degree 0 classes, n <= 4", 1800.0, [] {
    Outcome o;
    for (int n = 1; n <= 4; ++n) o.require(enumerate_trees(n).size() == factorial_times_catalan(n), "|Tree(n)| count");
    o.require(enumerate_trees(3).size() == 12, "|Tree(3)| != 12");
    o.require(enumerate_trees(4).size() == 120, "|Tree(4)| != 120");
    for (int n = 1; n <= 4; ++n) {
      const auto b = betti(quilt_arity_complex(n).complex);
      o.require(b == BettiTable{{0, factorial_times_catalan(n)}}, "betti(Quilt(" + std::to_string(n) + ")) = " + table(b));
    }
    RunConfig cfg;
    cfg.max_arity = 4;
    absorb(o, run_verify("hawkins-conjecture", cfg));
    return o;
  });

  criterion(4, "fiber complexes are cellular complexes of simplices, n <= 4", 0, [] {
    Outcome o;
    std::size_t tested = 0;
    for (int n = 2; n <= 4; ++n)
      for (const auto& t : standard_trees(n)) {
        // the fibers over the words quilting T minus n partition the words quilting T
        std::set<Word> covered;
        std::size_t total = 0;
        for (const auto& w : words_quilting(t.remove_leaf(n))) {
          std::string why;
          ++tested;
          o.require(fiber_matches_simplex(w, t, &why), w.encode() + " " + t.encode() + ": " + why);
          for (const auto& [s, x] : fiber_words(w, t)) {
            covered.insert(x);
            ++total;
          }
        }
        const auto all = words_quilting(t);
        o.require(total == all.size() && covered == std::set<Word>(all.begin(), all.end()),
                  "fibers do not partition the quilts of " + t.encode());
      }
    if (o.ok) o.note = std::to_string(tested) + " fibers";
    return o;
  });

  criterion(5, "d_n^2 = 0 and d_n d_not_n + d_not_n d_n = 0 for all trees, n <= 4", 0, [] {
    Outcome o;
    std::size_t tested = 0;
    for (int n = 1; n <= 4; ++n)
      for (const auto& t : enumerate_trees(n))
        for (const auto& w : words_quilting(t)) {
          ++tested;
          Element<Word> dn2(n, w.degree() + 2), mixed(n, w.degree() + 2);
          for (const auto& [x, c] : boundary_n(w)) {
            dn2.add_scaled(boundary_n(x), c);
            mixed.add_scaled(boundary_not_n(x), c);
          }
          for (const auto& [x, c] : boundary_not_n(w)) mixed.add_scaled(boundary_n(x), c);
          o.require(dn2.is_zero(), "d_n^2 on " + w.encode() + " " + t.encode());
          o.require(mixed.is_zero(), "anticommutator on " + w.encode() + " " + t.encode());
          o.require(boundary_n(w) + boundary_not_n(w) == boundary(w), "d_n + d_not_n != d on " + w.encode());
        }
    if (o.ok) o.note = std::to_string(tested) + " quilts";
    return o;
  });

  criterion(6, "L-infinity, pre-Lie-infinity and coset identities, n = 2, 3, 4", 0, [] {
    Outcome o;
    for (int n = 2; n <= 4; ++n) {
      absorb(o, check_linf_relation(n), "L_" + std::to_string(n));
      absorb(o, check_prelieinf_relation(n), "PL_" + std::to_string(n));
      absorb(o, check_coset_identity(n), "coset " + std::to_string(n));
    }
    return o;
  });

  criterion(7, "twisting: squares, projection, TwBrace>=2 closure and graded dims against FSurj", 0, [] {
    Outcome o;
    const auto tb = make_twbrace(3);
    const auto tq = make_twquilt(3);
    std::size_t checked = 0;
    o.require(square_failures(tb, 2, checked) == 0, "(d^m)^2 != 0 on TwBrace");
    o.require(square_failures(tq, 2, checked) == 0, "(d^alpha)^2 != 0 on TwQuilt");
    for (int n = 0; n <= 2; ++n)
      for (const auto& b : tq.basis(n))
        o.require(tw_projection(tq.differential(b)) == differential(tb, tw_projection(Element<Black<Quilt>>::of(b))),
                  "projection is not a chain map on " + tq.encode(b));
    for (int n = 1; n <= 4; ++n)
      for (const auto& b : twbrace_ge2_basis(n))
        for (const auto& [y, c] : tb.differential(b)) o.require(in_twbrace_ge2(y), "d leaves TwBrace>=2 on " + tb.encode(b));
    for (int m = 1; m <= 3; ++m)
      for (int k = 1; m + k - 1 <= 4; ++k)
        for (const auto& x : twbrace_ge2_basis(m))
          for (const auto& y : twbrace_ge2_basis(k))
            for (int i = 1; i <= m; ++i)
              for (const auto& [z, c] : tb.compose(x, i, y))
                o.require(in_twbrace_ge2(z), "composition leaves TwBrace>=2: " + tb.encode(z));
    // graded dimensions, compared after the shift by n - 1 that aligns the homology
    FSurjOperad fs;
    for (int n = 1; n <= 4; ++n) {
      std::map<int, std::size_t> tw, f;
      for (const auto& b : twbrace_ge2_basis(n)) ++tw[basis_degree(b) - (n - 1)];
      for (const auto& w : fs.basis(n)) ++f[basis_degree(w)];
      o.require(tw == f, "arity " + std::to_string(n) + ": TwBrace>=2 dims " + table(tw) + " vs FSurj " + table(f));
    }
    if (o.ok) o.note = std::to_string(checked) + " basis elements squared";
    return o;
  });

  criterion(8, "quotients: d descends and (d^c)^2 = (d^m)^2 = 0, arity <= 2, cap <= 2", 0, [] {
    Outcome o;
    for (int cap = 1; cap <= 2; ++cap) {
      RunConfig cfg;
      cfg.max_arity = 2;
      cfg.black_cap = cap;
      absorb(o, run_verify("quotients", cfg));
    }
    return o;
  });

  criterion(9, "GS: d0^2 = 0 on a twisted prestack, (d0 + d1)^2 = 0 on presheaves, dual numbers against Hochschild", 300.0, [] {
    Outcome o;
    const auto twisted = prestack_from_json(load("twisted_triangular.json"));
    const auto rep = validate_prestack(twisted);
    o.require(rep.valid && !rep.presheaf, "twisted example is not a valid prestack with nontrivial twists");
    const GSComplex gs(twisted);
    for (int n = 0; n <= 4; ++n)
      for (int p = 0; p <= n; ++p)
        o.require((gs.d0_matrix(p, n - p + 1) * gs.d0_matrix(p, n - p)).is_zero(),
                  "d0^2 at (" + std::to_string(p) + ", " + std::to_string(n - p) + ")");
    for (const char* f : {"triangular_to_diagonal.json", "path_category.json"}) {
      const GSComplex pre(prestack_from_json(load(f)));
      try {
        pre.total(5).check_square_zero();
      } catch (const std::exception& e) {
        o.require(false, std::string(f) + ": " + e.what());
      }
    }
    const auto h = gs_cohomology(prestack_from_json(load("dual_numbers.json")), 4);
    const auto hh = oracle::hochschild_dims(oracle::dual_numbers(), 4);
    for (int n = 1; n <= 3; ++n) {
      const std::size_t got = h.count(n) ? h.at(n) : 0;
      o.require(got == 1, "H^" + std::to_string(n) + " = " + std::to_string(got));
      o.require(got == hh[static_cast<std::size_t>(n)], "oracle disagrees in degree " + std::to_string(n));
    }
    return o;
  });

  criterion(10, "two runs of verify all with one seed are byte-identical", 0, [] {
    Outcome o;
    const std::string cmd = std::string(QUILTKIT_CLI) + " verify all --seed 42 2>&1";
    int s1 = 0, s2 = 0;
    const auto a = capture(cmd, s1);
    const auto b = capture(cmd, s2);
    o.require(s1 == 0 && s2 == 0, "verify all did not exit 0");
    o.require(!a.empty() && a == b, "reports differ");
    o.require(a.rfind("seed 42\n", 0) == 0, "report does not record the seed");
    if (o.ok) o.note = std::to_string(a.size()) + " bytes each";
    return o;
  });

  return failures == 0 ? 0 : 1;
}
