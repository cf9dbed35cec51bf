#include <map>
#include <set>

#include "doctest.h"
#include "quiltkit/complex_builder.hpp"
#include "quiltkit/fsurj.hpp"
#include "quiltkit/operad.hpp"

using namespace qk;

namespace {

Element<Word> terms(int n, std::initializer_list<std::pair<const char*, int>> list) {
  Element<Word> e;
  bool first = true;
  for (const auto& [w, c] : list) {
    const Word x = Word::parse(n, w);
    if (first) e = Element<Word>(x.arity(), x.degree());
    first = false;
    e.add(x, c);
  }
  return e;
}

// FSurj with the sign of every last-occurrence deletion flipped.
struct FlippedFSurj : FSurjOperad {
  Element<Word> differential(const Word& w) const {
    Element<Word> out(w.arity(), w.degree() + 1);
    for (int p = 0; p < w.length(); ++p) {
      int s = deletion_sign(w, p);
      if (s == 0) continue;
      const auto& L = w.letters();
      bool later = false;
      for (int q = p + 1; q < w.length(); ++q) later = later || L[static_cast<std::size_t>(q)] == w[p];
      if (!later) s = -s;
      auto letters = L;
      letters.erase(letters.begin() + p);
      if (has_adjacent_repeat(letters)) continue;
      out.add(Word(w.arity(), letters), s);
    }
    return out;
  }
};

}  // namespace

TEST_CASE("admissibility and degree") {
  CHECK(is_admissible(Word::parse(3, "1232")));
  CHECK_FALSE(is_admissible(Word::parse(2, "1212")));
  CHECK_FALSE(is_admissible(Word::parse(2, "122")));
  CHECK_FALSE(is_admissible(Word::parse(3, "121")));
  CHECK(Word::parse(2, "12").degree() == 0);
  CHECK(Word::parse(3, "1232").degree() == -1);
  CHECK(Word::parse(3, "1213").degree() == -1);
  CHECK(Word::parse("1.10.2").letters() == std::vector<int>{1, 10, 2});
  CHECK(Word(10, {1, 10, 2}).encode() == "1.10.2");
  CHECK_THROWS(Word::parse("12a"));
}

TEST_CASE("word orders") {
  const auto w = Word::parse(3, "1232");
  CHECK(w.below(2, 3));
  CHECK_FALSE(w.below(3, 2));
  CHECK(w.left_of(1, 2));
  CHECK_FALSE(w.left_of(2, 3));
}

TEST_CASE("enumeration") {
  CHECK(enumerate_words(1).size() == 1);
  const auto w2 = enumerate_words(2);
  std::set<std::string> s2;
  for (const auto& w : w2) s2.insert(w.encode());
  CHECK(s2 == std::set<std::string>{"12", "21", "121", "212"});
  for (int n = 1; n <= 4; ++n) {
    const auto ws = enumerate_words(n);
    CHECK(std::set<Word>(ws.begin(), ws.end()).size() == ws.size());
    for (const auto& w : ws) {
      CHECK(is_admissible(w));
      CHECK(w.length() <= 2 * n - 1);
    }
  }
  // brute force over all words of bounded length for n = 3
  std::size_t brute = 0;
  for (int len = 3; len <= 6; ++len) {
    std::vector<int> v(static_cast<std::size_t>(len), 1);
    while (true) {
      if (is_admissible(Word(3, v))) ++brute;
      int k = len - 1;
      while (k >= 0 && v[static_cast<std::size_t>(k)] == 3) v[static_cast<std::size_t>(k--)] = 1;
      if (k < 0) break;
      ++v[static_cast<std::size_t>(k)];
    }
  }
  CHECK(brute == enumerate_words(3).size());
}

TEST_CASE("boundary examples") {
  CHECK(boundary(Word::parse(3, "1232")) == terms(3, {{"132", -1}, {"123", 1}}));
  CHECK(boundary(Word::parse(3, "1213")) == terms(3, {{"213", -1}, {"123", 1}}));
  CHECK(boundary(Word::parse(2, "12")).is_zero());
}

TEST_CASE("boundary squares to zero") {
  for (int n = 1; n <= 4; ++n)
    for (const auto& w : enumerate_words(n)) {
      FSurjOperad op;
      CHECK(differential(op, boundary(w)).is_zero());
    }
}

TEST_CASE("interposed sets") {
  CHECK(interposed_set(Word::parse(3, "1232")) == std::vector<int>{3});
  CHECK(interposed_set(Word::parse(2, "12")).empty());
  CHECK(interposed_set(Word::parse(3, "1213")) == std::vector<int>{2});
  for (int n = 1; n <= 4; ++n)
    for (const auto& w : enumerate_words(n))
      CHECK(static_cast<int>(interposed_set(w).size()) == -w.degree());
}

TEST_CASE("the four-term composition") {
  FSurjOperad op;
  const auto x = op.compose(Word::parse(3, "1232"), 2, Word::parse(3, "1213"));
  CHECK(x == terms(5, {{"1252324", 1}, {"1235324", -1}, {"1232524", -1}, {"1232454", -1}}));
  CHECK(op.compose(Word::parse(3, "1232"), 2, op.unit()) == Element<Word>::of(Word::parse(3, "1232")));
}

TEST_CASE("extensions agree with the definitional filter") {
  std::map<int, std::vector<Word>> by_n;
  for (int n = 1; n <= 5; ++n) by_n[n] = enumerate_words(n);
  for (int m = 1; m <= 3; ++m)
    for (int n = 1; n <= 3; ++n) {
      if (m + n - 1 > 4) continue;
      for (const auto& w : by_n[m])
        for (const auto& v : by_n[n])
          for (int i = 1; i <= m; ++i) {
            std::set<Word> built;
            for (const auto& e : word_extensions(w, v, i)) {
              CHECK(e.result.length() == w.length() + v.length() - 1);
              built.insert(e.result);
            }
            std::set<Word> filtered;
            for (const auto& x : by_n[m + n - 1])
              if (is_word_extension(x, w, v, i)) filtered.insert(x);
            CHECK(built == filtered);
          }
    }
  // 12 o_1 12
  std::set<std::string> got;
  for (const auto& e : word_extensions(Word::parse(2, "12"), Word::parse(2, "12"), 1)) got.insert(e.result.encode());
  CHECK(got == std::set<std::string>{"123"});
}

TEST_CASE("fsurj axioms") {
  FSurjOperad op;
  AxiomOptions opt;
  opt.max_arity = 3;
  opt.triple_arity = 5;
  opt.random_samples = 400;
  const auto r = check_operad_axioms(op, opt);
  for (const auto& f : r.failures) MESSAGE(f);
  CHECK(r.passed);
}

TEST_CASE("a flipped deletion sign is caught") {
  FlippedFSurj op;
  AxiomOptions opt;
  opt.max_arity = 3;
  opt.triple_arity = 3;
  const auto r = check_operad_axioms(op, opt);
  CHECK_FALSE(r.passed);
  REQUIRE_FALSE(r.failures.empty());
}

TEST_CASE("fsurj to com is a morphism") {
  FSurjOperad src;
  ComOperad dst;
  const auto r = check_morphism<FSurjOperad, ComOperad>(fsurj_to_com, src, dst, 3);
  for (const auto& f : r.failures) MESSAGE(f);
  CHECK(r.passed);
}

TEST_CASE("homology of fsurj(n) has the Poincare polynomial of configuration space") {
  FSurjOperad op;
  for (int n = 1; n <= 4; ++n) {
    // coefficients of prod_{k<n} (1 + k t), t in degree -1
    std::vector<long> poly{1};
    for (int k = 1; k < n; ++k) {
      std::vector<long> next(poly.size() + 1, 0);
      for (std::size_t j = 0; j < poly.size(); ++j) {
        next[j] += poly[j];
        next[j + 1] += k * poly[j];
      }
      poly = next;
    }
    BettiTable expected;
    for (std::size_t j = 0; j < poly.size(); ++j) expected[-static_cast<int>(j)] = static_cast<std::size_t>(poly[j]);
    const auto c = build_complex<Word>(op.basis(n), [&](const Word& w) { return op.differential(w); });
    CHECK(betti(c.complex) == expected);
  }
}
