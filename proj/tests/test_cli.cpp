#include <sstream>

#include "doctest.h"
#include "quiltkit/cli.hpp"
#include "quiltkit/fsurj.hpp"
#include "quiltkit/serialize.hpp"

using namespace qk;

namespace {

struct Run {
  int code = 0;
  std::string out, err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  Run r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("enumerate") {
  auto r = cli({"enumerate", "brace", "3"});
  CHECK(r.code == 0);
  CHECK(lines(r.out) == 12);
  r = cli({"enumerate", "quilt", "2"});
  CHECK(r.out == "12 1(2)\n21 2(1)\n");
  CHECK(cli({"enumerate", "fsurj", "1"}).out == "1\n");
  CHECK(cli({"enumerate", "--operad", "fsurj", "--arity", "3", "--degree", "-2"}).out.size() > 0);
  CHECK(cli({"enumerate", "nope", "2"}).code == 2);
  CHECK(cli({"enumerate", "brace"}).code == 2);
}

TEST_CASE("homology, compose and differential") {
  CHECK(cli({"homology", "4"}).out == "Quilt(4): {0: 120}\n");
  CHECK(cli({"homology", "3", "--format", "json"}).out == "{\"betti\":[{\"degree\":0,\"dim\":12}],\"complex\":\"Quilt(3)\"}\n");
  CHECK(cli({"compose", "fsurj", "1232", "1213", "--slot", "2"}).out == "- 1232454 - 1232524 - 1235324 + 1252324\n");
  CHECK(cli({"differential", "fsurj", "1232"}).out == "+ 123 - 132\n");
  CHECK(cli({"compose", "fsurj", "1232", "1213", "--slot", "4"}).code == 2);
  CHECK(cli({"differential", "quilt", "121 1(2)"}).code == 2);
}

TEST_CASE("verify exit codes and determinism") {
  auto r = cli({"verify", "hawkins-conjecture", "--max-arity", "3"});
  CHECK(r.code == 0);
  CHECK(r.out.find("betti(Quilt(3)) = {0: |Tree(3)|} (1 checks): {0: 12}") != std::string::npos);
  CHECK(cli({"verify", "prelieinf", "--max-arity", "4"}).code == 0);
  r = cli({"verify", "axioms", "--mutate-signs", "--samples", "0", "--max-arity", "2", "--seed", "3"});
  CHECK(r.code == 1);
  CHECK(r.out.find("counterexample") != std::string::npos);
  CHECK(cli({"verify", "nonsense"}).code == 2);
  const auto a = cli({"verify", "linf", "--seed", "9", "--format", "json"});
  const auto b = cli({"verify", "linf", "--seed", "9", "--format", "json"});
  CHECK(a.out == b.out);
  CHECK(json::parse(a.out)["seed"] == 9);
}

TEST_CASE("gs command") {
  const std::string dir = QUILTKIT_DATA_DIR;
  auto r = cli({"gs", dir + "/dual_numbers.json", "--bound", "4"});
  CHECK(r.code == 0);
  CHECK(r.out == "H^0 = 2\nH^1 = 1\nH^2 = 1\nH^3 = 1\n");
  r = cli({"gs", "--prestack", dir + "/twisted_triangular.json", "--bound", "2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("E1^{0,0}") != std::string::npos);
  r = cli({"gs", dir + "/does_not_exist.json"});
  CHECK(r.code == 2);
}

TEST_CASE("json formats round trip") {
  for (int n = 1; n <= 3; ++n)
    for (const auto& q : enumerate_quilts(n)) {
      CHECK(quilt_from_json(quilt_to_json(q)) == q);
      CHECK(tree_from_json(tree_to_json(q.tree)) == q.tree);
      CHECK(word_from_json(word_to_json(q.word)) == q.word);
      CHECK(parse_quilt_text(q.encode()) == q);
    }
  CHECK(tree_to_json(PlanarTree::parse("1(2,3)")) == json::parse(R"({"n":3,"parent":[0,1,1],"childOrder":[[2,3],[],[]]})"));

  FSurjOperad fs;
  Element<Word> x(3, -1);
  x.add(Word::parse(3, "1232"), Scalar(1, 2));
  x.add(Word::parse(3, "1213"), -3);
  const auto j = element_to_json(fs, x);
  CHECK(j["terms"][0]["coeff"] == "-3");
  CHECK(j["terms"][1]["coeff"] == "1/2");
  CHECK(element_from_json<Word>(j, "fsurj", parse_word_text) == x);

  const auto tq = make_twquilt(2);
  const auto tj = element_to_json(tq, tq.constant_differential());
  CHECK(tj["cap"] == 2);
  CHECK(tj["terms"][0]["black"] == json::array({1, 2}));
}

TEST_CASE("json errors carry a location") {
  try {
    tree_from_json(json::parse(R"({"n":2,"parent":[0,1],"childOrder":[[2],[7]]})"));
    FAIL("accepted");
  } catch (const FormatError& e) {
    CHECK(e.where() == "/childOrder/1");
  }
  try {
    element_from_json<Word>(json::parse(R"({"operad":"fsurj","arity":3,"degree":-1,"terms":[{"basis":"1232","coeff":"x"}]})"),
                            "fsurj", parse_word_text);
    FAIL("accepted");
  } catch (const FormatError& e) {
    CHECK(e.where() == "/terms/0/coeff");
  }
  try {
    element_from_json<Word>(json::parse(R"({"operad":"fsurj","arity":3,"degree":-1,"terms":[{"basis":"123","coeff":1}]})"),
                            "fsurj", parse_word_text);
    FAIL("accepted");
  } catch (const FormatError& e) {
    CHECK(e.where() == "/terms/0");
  }
  CHECK_THROWS_AS(quilt_from_json(json::parse(R"({"word":{"n":2,"letters":[2,1]},"tree":{"n":2,"parent":[0,1],"childOrder":[[2],[]]}})")),
                  FormatError);
}
